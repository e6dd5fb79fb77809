"""Report rendering: DOT transition maps and human-readable summaries."""

from __future__ import annotations

from . import jsonutil
from .decode import AssessmentReport
from .topology import (EVOLUTION_ROWS, FLIGHT_PHASES, StateComponentId,
                       build_topology)

_ROW_NAMES = {"S": "schedule", "D": "decision", "O": "outcome"}
_LOOP_KEYS = {"S": "a", "D": "p", "O": "u"}


def _loop_share(report: AssessmentReport, node: StateComponentId) -> float:
    return report.group(node.phase, _ROW_NAMES[node.row])[_LOOP_KEYS[node.row]]


def _edge_share(report: AssessmentReport, edge) -> float:
    src, dst = edge
    if src.phase == dst.phase:
        # column edge: schedule->decision is "c", decision->outcome is "r"
        key = "c" if src.row == "S" else "r"
        return report.group(src.phase, _ROW_NAMES[src.row])[key]
    # row edge arriving at dst: "b"/"q"/"v" by evolution row
    key = {"S": "b", "D": "q", "O": "v"}[dst.row]
    return report.group(dst.phase, _ROW_NAMES[dst.row])[key]


def export_dot(report: AssessmentReport) -> str:
    """Stable-ordered DOT graph: 3 evolution rows x 4 flight phases.

    Each node carries its internal-loop probability, each of the 17 edges
    its transition probability, printed with 2 decimals.
    """
    topology = build_topology()
    lines = [
        "digraph utfm {",
        "  rankdir=TB;",
        "  node [shape=box];",
    ]
    for row in EVOLUTION_ROWS:
        members = " ".join(f"{StateComponentId.of(phase, row).value};"
                           for phase in FLIGHT_PHASES)
        lines.append(f"  {{ rank=same; {members} }}")
    for node in topology.intra_nodes:
        lines.append(f'  {node.value} [label="{node.value}\\n{_loop_share(report, node):.2f}"];')
    for edge in topology.inter_edges:
        share = _edge_share(report, edge)
        lines.append(f'  {edge[0].value} -> {edge[1].value} [label="{share:.2f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def summarize(report: AssessmentReport) -> str:
    """Narrative reading of the stochastic map, one phase per line."""
    lines = [f"flight {report.flight_id} (normalization: {report.mode})"]
    for phase in FLIGHT_PHASES:
        parts = []
        for row in EVOLUTION_ROWS:
            shares = report.group(phase, _ROW_NAMES[row])
            rendered = " ".join(f"{key}={value:.2f}" for key, value in shares.items())
            parts.append(f"{_ROW_NAMES[row]} {rendered}")
        lines.append(f"phase {phase}: " + " | ".join(parts))
    if report.findings:
        lines.append("findings:")
        lines.extend(f"- {finding}" for finding in report.findings)
    else:
        lines.append("findings: none")
    return "\n".join(lines) + "\n"


def render_report(report: AssessmentReport) -> str:
    return jsonutil.dumps(report.to_document()) + "\n"
