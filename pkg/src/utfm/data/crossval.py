"""K-fold cross-validation of HMM training with a uniformity check."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from ..hmm.inference import forward_backward
from ..hmm.train import NonConvergenceWarning, TrainConfig, baum_welch

DEFAULT_FLAG_MULTIPLIER = 3.0


@dataclass(frozen=True)
class FoldResult:
    fold: int
    train_log_likelihood: float
    test_log_likelihood: float
    test_per_observation: float
    state_marginals: tuple[float, ...]  # mean posterior occupancy on held-out data


@dataclass(frozen=True)
class CrossValidationReport:
    folds: tuple[FoldResult, ...]
    flagged: bool
    flag_multiplier: float

    def to_document(self) -> dict:
        return {
            "flagged": self.flagged,
            "flag_multiplier": float(self.flag_multiplier),
            "folds": [{
                "fold": f.fold,
                "train_log_likelihood": float(f.train_log_likelihood),
                "test_log_likelihood": float(f.test_log_likelihood),
                "test_per_observation": float(f.test_per_observation),
                "state_marginals": [float(v) for v in f.state_marginals],
            } for f in self.folds],
        }


def cross_validate(hmm_factory, sequences, k: int = 5,
                   config: TrainConfig | None = None,
                   fold_assignment=None,
                   flag_multiplier: float = DEFAULT_FLAG_MULTIPLIER) -> CrossValidationReport:
    """Train on k-1 folds, score the held-out fold, check consistency.

    ``hmm_factory(train_sequences)`` returns a fresh initial model per
    fold (it may ignore the sequences). The consistency flag raises when
    any fold's held-out per-observation log-likelihood deviates from the
    fold mean by more than ``flag_multiplier`` fold standard deviations.
    """
    sequences = list(sequences)
    if k < 2:
        raise ConfigError("cross-validation needs k >= 2 folds")
    if len(sequences) < k:
        raise ConfigError(f"need at least {k} sequences for {k}-fold CV, got {len(sequences)}")
    if fold_assignment is None:
        fold_assignment = [i % k for i in range(len(sequences))]
    else:
        fold_assignment = [int(f) for f in fold_assignment]
        if len(fold_assignment) != len(sequences):
            raise ConfigError("fold_assignment must have one entry per sequence")
        if set(fold_assignment) != set(range(k)):
            raise ConfigError(f"fold_assignment must cover folds 0..{k - 1}")

    config = config or TrainConfig()
    results: list[FoldResult] = []
    for fold in range(k):
        train = [s for s, f in zip(sequences, fold_assignment) if f != fold]
        test = [s for s, f in zip(sequences, fold_assignment) if f == fold]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonConvergenceWarning)
            model, trace = baum_welch(hmm_factory(train), train, config)
        test_ll = 0.0
        n_obs = 0
        occupancy = np.zeros(model.n_states)
        for seq in test:
            post = forward_backward(model, seq)
            test_ll += post.log_likelihood
            n_obs += post.gamma.shape[0]
            occupancy += post.gamma.sum(axis=0)
        results.append(FoldResult(
            fold=fold,
            train_log_likelihood=trace[-1],
            test_log_likelihood=test_ll,
            test_per_observation=test_ll / n_obs,
            state_marginals=tuple(occupancy / n_obs),
        ))

    per_obs = np.array([r.test_per_observation for r in results])
    spread = per_obs.std()
    flagged = bool(spread > 0 and np.any(np.abs(per_obs - per_obs.mean()) > flag_multiplier * spread))
    return CrossValidationReport(folds=tuple(results), flagged=flagged,
                                 flag_multiplier=flag_multiplier)
