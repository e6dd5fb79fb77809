"""Numerically robust Gaussian hidden Markov model engine."""

from .inference import forward_backward, log_likelihood, viterbi
from .model import (VARIANCE_FLOOR, GaussianHmm, ObservationSequence,
                    Posteriors, ViterbiResult, as_sequence)
from .sampling import sample
from .train import NonConvergenceWarning, TrainConfig, baum_welch, initial_model

__all__ = [
    "VARIANCE_FLOOR",
    "GaussianHmm",
    "ObservationSequence",
    "Posteriors",
    "ViterbiResult",
    "as_sequence",
    "forward_backward",
    "log_likelihood",
    "viterbi",
    "sample",
    "TrainConfig",
    "baum_welch",
    "initial_model",
    "NonConvergenceWarning",
]
