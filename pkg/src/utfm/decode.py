"""Assessment of one disrupted flight against a trained model bundle.

Every component and transition model decodes the flight's encoded
observations with the Viterbi algorithm; within each flight phase the
competing alternatives (stay, arrive from the previous phase, drop to the
next evolution row) are normalized onto the probability simplex, giving
the stochastic transition map of the flight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .features.layout import build_observation_matrix
from .hmm.inference import viterbi
from .hmm.model import ObservationSequence
from .learn import TrainedComponentHmm, UtfmModel
from .topology import (EVOLUTION_ROWS, FLIGHT_PHASES, StateComponentId,
                       build_topology, edge_name)

NORMALIZATION_MODES = ("log-sum-exp", "raw-prob-sum")

# Share keys per evolution row: (stay, arrive-from-previous-phase, drop-to-next-row)
_GROUP_KEYS = {"S": ("a", "b", "c"), "D": ("p", "q", "r"), "O": ("u", "v", None)}


@dataclass(frozen=True)
class HmmDecodeDetail:
    name: str
    path_labels: tuple[str, ...]
    log_prob: float
    per_step_log_prob: float
    n_steps: int

    def to_document(self) -> dict:
        return {
            "name": self.name,
            "viterbi_path": list(self.path_labels),
            "log_prob": float(self.log_prob),
            "per_step_log_prob": float(self.per_step_log_prob),
            "n_steps": self.n_steps,
        }


@dataclass(frozen=True)
class AssessmentReport:
    """Per-phase stochastic groups plus the per-model decoding details."""

    flight_id: str
    mode: str
    phases: dict  # phase -> {"schedule": {...}, "decision": {...}, "outcome": {...}}
    hmm_details: dict  # name -> HmmDecodeDetail
    findings: tuple[str, ...]
    provenance: dict

    def group(self, phase: str, row_name: str) -> dict:
        return self.phases[phase][row_name]

    def to_document(self) -> dict:
        return {
            "flight_id": self.flight_id,
            "mode": self.mode,
            "phases": {
                phase: {row: dict(shares) for row, shares in rows.items()}
                for phase, rows in self.phases.items()
            },
            "findings": list(self.findings),
            "hmm_details": {name: detail.to_document()
                            for name, detail in self.hmm_details.items()},
            "provenance": self.provenance,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "AssessmentReport":
        details = {name: HmmDecodeDetail(
            name=sub["name"], path_labels=tuple(sub["viterbi_path"]),
            log_prob=float(sub["log_prob"]),
            per_step_log_prob=float(sub["per_step_log_prob"]),
            n_steps=int(sub["n_steps"]))
            for name, sub in doc["hmm_details"].items()}
        return cls(flight_id=doc["flight_id"], mode=doc["mode"],
                   phases={phase: {row: {k: float(v) for k, v in shares.items()}
                                   for row, shares in rows.items()}
                           for phase, rows in doc["phases"].items()},
                   hmm_details=details, findings=tuple(doc["findings"]),
                   provenance=doc["provenance"])


_ROW_NAMES = {"S": "schedule", "D": "decision", "O": "outcome"}


def _decode_one(trained: TrainedComponentHmm, flight) -> HmmDecodeDetail:
    matrix = build_observation_matrix([flight], trained.feature_spec, trained.standardizer)
    seq = ObservationSequence(matrix[0][:, None])
    result = viterbi(trained.hmm, seq)
    return HmmDecodeDetail(
        name=trained.name,
        path_labels=result.labels(trained.hmm),
        log_prob=result.log_prob,
        per_step_log_prob=result.per_step_log_prob,
        n_steps=len(seq),
    )


def _normalized_shares(scores: dict[str, float]) -> dict[str, float]:
    """Softmax over log-domain scores; exact zeros survive deep underflow."""
    keys = list(scores)
    values = np.array([scores[k] for k in keys], dtype=np.float64)
    peak = values.max()
    if not np.isfinite(peak):
        raise InputError(f"all group scores are -inf for members {keys}")
    weights = np.exp(values - peak)
    weights /= weights.sum()
    return {k: float(w) for k, w in zip(keys, weights)}


def utfm_decode(model: UtfmModel, flight, mode: str = "log-sum-exp") -> AssessmentReport:
    """Run Algorithm-style aggregate decoding for one flight leg.

    ``mode`` selects how Viterbi scores enter the group normalization:
    ``log-sum-exp`` (default) uses length-normalized per-step
    log-probabilities; ``raw-prob-sum`` uses the raw joint probabilities.
    """
    if mode not in NORMALIZATION_MODES:
        raise InputError(f"unknown normalization mode {mode!r}; choose from {NORMALIZATION_MODES}")
    flight.validate()
    topology = build_topology()

    details: dict[str, HmmDecodeDetail] = {}
    for component in topology.intra_nodes:
        details[component.value] = _decode_one(model.intra[component], flight)
    for edge in topology.inter_edges:
        details[edge_name(edge)] = _decode_one(model.inter[edge], flight)

    def score(name: str) -> float:
        detail = details[name]
        return detail.per_step_log_prob if mode == "log-sum-exp" else detail.log_prob

    phases: dict = {}
    findings: list[str] = []
    for phase in FLIGHT_PHASES:
        rows: dict = {}
        for row in EVOLUTION_ROWS:
            node = StateComponentId.of(phase, row)
            stay_key, arrive_key, drop_key = _GROUP_KEYS[row]
            members: dict[str, float] = {stay_key: score(node.value)}
            row_edge = topology.row_edge_into(node)
            if row_edge is not None:
                members[arrive_key] = score(edge_name(row_edge))
            column_edge = topology.column_edge_from(node)
            if column_edge is not None:
                members[drop_key] = score(edge_name(column_edge))
            rows[_ROW_NAMES[row]] = _normalized_shares(members)
        phases[phase] = rows
        arrival = rows["schedule"].get("b")
        if arrival == 0.0:
            prev = StateComponentId.of(FLIGHT_PHASES[FLIGHT_PHASES.index(phase) - 1], "S")
            findings.append(
                f"tactical measure ineffective: no transition mass from "
                f"{prev.value} to {StateComponentId.of(phase, 'S').value}")

    provenance = dict(model.provenance)
    provenance["normalization_mode"] = mode
    return AssessmentReport(
        flight_id=flight.flight_id,
        mode=mode,
        phases=phases,
        hmm_details=details,
        findings=tuple(findings),
        provenance=provenance,
    )
