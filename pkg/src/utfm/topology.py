"""The fixed 12-node uncertainty-transfer graph.

Columns are the four flight-operation phases (turnaround, taxi-out,
enroute, taxi-in); rows are the three schedule-evolution stages (schedule,
decision, outcome). Twelve internal loops and seventeen external edges:
nine row edges advance a stage to the next flight phase, eight column
edges drop schedule->decision or decision->outcome within a phase.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InputError

FLIGHT_PHASES = ("TA", "TO", "E", "TI")
EVOLUTION_ROWS = ("S", "D", "O")


class StateComponentId(str, enum.Enum):
    TAS = "TAS"
    TOS = "TOS"
    ES = "ES"
    TIS = "TIS"
    TAD = "TAD"
    TOD = "TOD"
    ED = "ED"
    TID = "TID"
    TAO = "TAO"
    TOO = "TOO"
    EO = "EO"
    TIO = "TIO"

    @property
    def phase(self) -> str:
        return self.value[:-1]

    @property
    def row(self) -> str:
        return self.value[-1]

    @staticmethod
    def of(phase: str, row: str) -> "StateComponentId":
        return StateComponentId(phase + row)


COMPONENT_ORDER = tuple(StateComponentId)

# Row edges (stage advances to the next flight phase), then column edges
# (schedule drops to decision, decision drops to outcome), in table order.
INTER_EDGES: tuple[tuple[str, str], ...] = (
    ("TAS", "TOS"), ("TOS", "ES"), ("ES", "TIS"),
    ("TAD", "TOD"), ("TOD", "ED"), ("ED", "TID"),
    ("TAO", "TOO"), ("TOO", "EO"), ("EO", "TIO"),
    ("TAS", "TAD"), ("TOS", "TOD"), ("ES", "ED"), ("TIS", "TID"),
    ("TAD", "TAO"), ("TOD", "TOO"), ("ED", "EO"), ("TID", "TIO"),
)


@dataclass(frozen=True)
class UtfmTopology:
    intra_nodes: tuple[StateComponentId, ...]
    inter_edges: tuple[tuple[StateComponentId, StateComponentId], ...]

    def __post_init__(self):
        if len(self.intra_nodes) != 12 or len(set(self.intra_nodes)) != 12:
            raise InputError("topology must name exactly the 12 state components")
        if len(self.inter_edges) != 17 or len(set(self.inter_edges)) != 17:
            raise InputError("topology must carry exactly 17 external edges")

    def row_edge_into(self, node: StateComponentId):
        """The same-row edge arriving at ``node`` from the previous phase, if any."""
        phase_idx = FLIGHT_PHASES.index(node.phase)
        if phase_idx == 0:
            return None
        prev = StateComponentId.of(FLIGHT_PHASES[phase_idx - 1], node.row)
        return (prev, node)

    def column_edge_from(self, node: StateComponentId):
        """The within-phase edge leaving ``node`` toward the next row, if any."""
        row_idx = EVOLUTION_ROWS.index(node.row)
        if row_idx == len(EVOLUTION_ROWS) - 1:
            return None
        nxt = StateComponentId.of(node.phase, EVOLUTION_ROWS[row_idx + 1])
        return (node, nxt)


def build_topology() -> UtfmTopology:
    edges = tuple((StateComponentId(a), StateComponentId(b)) for a, b in INTER_EDGES)
    return UtfmTopology(intra_nodes=COMPONENT_ORDER, inter_edges=edges)


def edge_name(edge: tuple[StateComponentId, StateComponentId]) -> str:
    return f"{edge[0].value}->{edge[1].value}"
