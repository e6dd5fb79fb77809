"""Gaussian hidden Markov model representation.

A model couples an initial measure, a transition kernel (optionally with
absorbing end weights) and per-state diagonal Gaussian observation kernels.
Instances are immutable: arrays are copied in and marked read-only, so a
trained model is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError, ModelFileError, SchemaError
from .. import jsonutil

VARIANCE_FLOOR = 1e-6
SIMPLEX_TOL = 1e-12


def _as_readonly(values, shape_hint: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{shape_hint} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GaussianHmm:
    """K-state HMM with diagonal Gaussian emissions over D dimensions.

    ``end_probs`` holds per-state absorbing weights; each transition row
    plus its end weight lies on the probability simplex. An all-zero
    ``end_probs`` means the model is ergodic (no absorption).
    """

    state_labels: tuple[str, ...]
    initial: np.ndarray
    transitions: np.ndarray
    end_probs: np.ndarray
    emission_means: np.ndarray
    emission_vars: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "state_labels", tuple(str(s) for s in self.state_labels))
        object.__setattr__(self, "initial", _as_readonly(self.initial, "initial"))
        object.__setattr__(self, "transitions", _as_readonly(self.transitions, "transitions"))
        object.__setattr__(self, "end_probs", _as_readonly(self.end_probs, "end_probs"))
        object.__setattr__(self, "emission_means", _as_readonly(self.emission_means, "emission_means"))
        object.__setattr__(self, "emission_vars", _as_readonly(self.emission_vars, "emission_vars"))
        self._validate()

    def _validate(self) -> None:
        k = len(self.state_labels)
        if k < 1:
            raise InputError("model needs at least one state")
        if len(set(self.state_labels)) != k:
            raise InputError("state_labels must be unique")
        if self.initial.shape != (k,):
            raise SchemaError(f"initial must have shape ({k},), got {self.initial.shape}")
        if self.transitions.shape != (k, k):
            raise SchemaError(f"transitions must have shape ({k}, {k}), got {self.transitions.shape}")
        if self.end_probs.shape != (k,):
            raise SchemaError(f"end_probs must have shape ({k},), got {self.end_probs.shape}")
        if self.emission_means.ndim != 2 or self.emission_means.shape[0] != k:
            raise SchemaError(f"emission_means must have shape ({k}, D), got {self.emission_means.shape}")
        if self.emission_vars.shape != self.emission_means.shape:
            raise SchemaError("emission_vars shape must match emission_means")
        if self.emission_means.shape[1] < 1:
            raise InputError("model needs at least one observation dimension")
        if np.any(self.initial < 0) or abs(self.initial.sum() - 1.0) > SIMPLEX_TOL:
            raise InputError("initial measure must sum to 1 within 1e-12")
        if np.any(self.transitions < 0) or np.any(self.end_probs < 0) or np.any(self.end_probs > 1):
            raise InputError("transition and end probabilities must lie in [0, 1]")
        row_sums = self.transitions.sum(axis=1) + self.end_probs
        if np.any(np.abs(row_sums - 1.0) > SIMPLEX_TOL):
            raise InputError("each transitions row plus its end weight must sum to 1 within 1e-12")
        if np.any(self.emission_vars < VARIANCE_FLOOR):
            raise InputError(f"emission variances must be >= {VARIANCE_FLOOR}")

    @property
    def n_states(self) -> int:
        return len(self.state_labels)

    @property
    def n_dims(self) -> int:
        return self.emission_means.shape[1]

    @property
    def is_absorbing(self) -> bool:
        return bool(np.any(self.end_probs > 0))

    def log_end_weights(self) -> np.ndarray:
        """Log end factor applied at the final frame: log(end_probs) for
        absorbing models, zeros (factor 1) for ergodic ones."""
        if not self.is_absorbing:
            return np.zeros(self.n_states)
        with np.errstate(divide="ignore"):
            return np.log(self.end_probs)

    def log_initial(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.initial)

    def log_transitions(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.transitions)

    def frame_log_prob(self, values: np.ndarray) -> np.ndarray:
        """Per-frame diagonal-Gaussian log densities.

        ``values`` is (..., T, D); output is (..., T, K).
        """
        x = np.asarray(values, dtype=np.float64)
        diff = x[..., None, :] - self.emission_means  # (..., T, K, D)
        quad = np.sum(diff * diff / self.emission_vars, axis=-1)
        norm = np.sum(np.log(2.0 * np.pi * self.emission_vars), axis=-1)  # (K,)
        return -0.5 * (quad + norm)

    def to_document(self) -> dict:
        """Plain-dict form matching the serialized single-model schema."""
        return {
            "state_labels": list(self.state_labels),
            "initial": [float(v) for v in self.initial],
            "transitions": [[float(v) for v in row] for row in self.transitions],
            "end_probs": [float(v) for v in self.end_probs],
            "emission_means": [[float(v) for v in row] for row in self.emission_means],
            "emission_vars": [[float(v) for v in row] for row in self.emission_vars],
        }

    def to_json(self) -> str:
        return jsonutil.dumps(self.to_document())

    @classmethod
    def from_document(cls, doc: dict) -> "GaussianHmm":
        required = {"state_labels", "initial", "transitions", "end_probs",
                    "emission_means", "emission_vars"}
        missing = required - set(doc)
        if missing:
            raise ModelFileError(f"model document missing fields: {sorted(missing)}")
        return cls(
            state_labels=tuple(doc["state_labels"]),
            initial=doc["initial"],
            transitions=doc["transitions"],
            end_probs=doc["end_probs"],
            emission_means=doc["emission_means"],
            emission_vars=doc["emission_vars"],
        )


@dataclass(frozen=True)
class ObservationSequence:
    """A T x D matrix of standardized observations, one row per step."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise SchemaError(f"observation sequence must be a T x D matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InputError("observation sequence contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def n_dims(self) -> int:
        return self.values.shape[1]


def as_sequence(seq) -> ObservationSequence:
    if isinstance(seq, ObservationSequence):
        return seq
    return ObservationSequence(np.asarray(seq))


@dataclass(frozen=True)
class Posteriors:
    """Smoothed state posteriors from one forward-backward pass."""

    log_likelihood: float
    gamma: np.ndarray  # (T, K), rows sum to 1
    xi: np.ndarray  # (T-1, K, K), each slice sums to 1


@dataclass(frozen=True)
class ViterbiResult:
    """Most probable state path and its joint log-probability."""

    path: tuple[int, ...]
    log_prob: float
    per_step_log_prob: float = field(default=0.0)

    def labels(self, model: GaussianHmm) -> tuple[str, ...]:
        return tuple(model.state_labels[i] for i in self.path)


def check_dims(model: GaussianHmm, seq: ObservationSequence) -> None:
    if seq.n_dims != model.n_dims:
        raise SchemaError(
            f"observation dimension {seq.n_dims} does not match model dimension {model.n_dims}")
