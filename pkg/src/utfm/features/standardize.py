"""Second-degree transformation: per-column standardization.

Uses the population (1/N) standard deviation, fitted on the training split
only. Constant columns are flagged and map to 0 on apply, so a lot where a
feature never varies cannot produce infinities downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InputError, StateError


@dataclass(frozen=True)
class StandardizationParams:
    feature_names: tuple[str, ...]
    means: np.ndarray
    stds: np.ndarray
    constant_mask: np.ndarray  # True where the fitted column was constant

    def __post_init__(self):
        means = np.asarray(self.means, dtype=np.float64)
        stds = np.asarray(self.stds, dtype=np.float64)
        mask = np.asarray(self.constant_mask, dtype=bool)
        if not (len(self.feature_names) == means.shape[0] == stds.shape[0] == mask.shape[0]):
            raise InputError("standardizer fields must all have one entry per feature")
        if np.any(stds < 0):
            raise InputError("standard deviations must be >= 0")
        for arr in (means, stds, mask):
            arr.setflags(write=False)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "stds", stds)
        object.__setattr__(self, "constant_mask", mask)

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    def to_document(self) -> dict:
        return {
            "feature_names": list(self.feature_names),
            "means": [float(v) for v in self.means],
            "stds": [float(v) for v in self.stds],
            "constant": [bool(v) for v in self.constant_mask],
        }

    @classmethod
    def from_document(cls, doc: dict) -> "StandardizationParams":
        return cls(feature_names=tuple(doc["feature_names"]), means=doc["means"],
                   stds=doc["stds"], constant_mask=doc["constant"])


def fit_standardizer(matrix, feature_names) -> StandardizationParams:
    """Fit per-column mean/std on raw training columns."""
    x = np.asarray(matrix, dtype=np.float64)
    if x.ndim != 2:
        raise InputError(f"expected a 2-D feature matrix, got shape {x.shape}")
    if x.shape[0] < 1:
        raise InputError("cannot fit a standardizer on an empty matrix")
    if x.shape[1] != len(tuple(feature_names)):
        raise InputError("feature_names length must match the number of columns")
    if not np.all(np.isfinite(x)):
        raise InputError("feature matrix contains non-finite values")
    means = x.mean(axis=0)
    stds = x.std(axis=0)  # population convention
    constant = stds == 0.0
    return StandardizationParams(feature_names=tuple(feature_names), means=means,
                                 stds=stds, constant_mask=constant)


def apply_standardizer(params: StandardizationParams | None, rows):
    """(x - mean) / std per column; constant columns map to 0."""
    if params is None:
        raise StateError("standardizer has not been fitted")
    x = np.asarray(rows, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.shape[1] != params.n_features:
        raise InputError(
            f"row has {x.shape[1]} columns, standardizer expects {params.n_features}")
    safe_std = np.where(params.constant_mask, 1.0, params.stds)
    out = (x - params.means) / safe_std
    out[:, params.constant_mask] = 0.0
    return out[0] if single else out
