"""Likelihood, smoothing and decoding for a single observation sequence."""

from __future__ import annotations

import numpy as np

from .. import kernels
from .model import (GaussianHmm, Posteriors, ViterbiResult, as_sequence,
                    check_dims)


def log_likelihood(model: GaussianHmm, seq) -> float:
    """log P(seq | model), in log-space throughout."""
    seq = as_sequence(seq)
    check_dims(model, seq)
    frame = model.frame_log_prob(seq.values[None, :, :])
    _, loglik = kernels.forward(model.log_initial(), model.log_transitions(),
                                model.log_end_weights(), frame)
    return float(loglik[0])


def forward_backward(model: GaussianHmm, seq) -> Posteriors:
    """Exact smoothing: log-likelihood plus normalized gamma and xi."""
    seq = as_sequence(seq)
    check_dims(model, seq)
    frame = model.frame_log_prob(seq.values[None, :, :])
    log_pi = model.log_initial()
    log_trans = model.log_transitions()
    log_end = model.log_end_weights()
    log_alpha, loglik = kernels.forward(log_pi, log_trans, log_end, frame)
    log_beta = kernels.backward(log_trans, log_end, frame)
    gamma, xi = posteriors_from_messages(log_alpha, log_beta, log_trans, frame, loglik)
    return Posteriors(log_likelihood=float(loglik[0]), gamma=gamma[0], xi=xi[0])


def posteriors_from_messages(log_alpha, log_beta, log_trans, frame_logprob, loglik):
    """Batched gamma (N,T,K) and xi (N,T-1,K,K) from forward/backward messages."""
    log_gamma = log_alpha + log_beta - loglik[:, None, None]
    gamma = np.exp(log_gamma)
    t = frame_logprob.shape[1]
    if t < 2:
        xi = np.zeros((frame_logprob.shape[0], 0, log_trans.shape[0], log_trans.shape[0]))
        return gamma, xi
    log_xi = (log_alpha[:, :-1, :, None]
              + log_trans[None, None, :, :]
              + (frame_logprob[:, 1:] + log_beta[:, 1:])[:, :, None, :]
              - loglik[:, None, None, None])
    return gamma, np.exp(log_xi)


def viterbi(model: GaussianHmm, seq) -> ViterbiResult:
    """Most probable state path, log-space with backtracking.

    For absorbing models the final state's end weight is part of the joint
    log-probability. Ties break toward the lowest state index.
    """
    seq = as_sequence(seq)
    check_dims(model, seq)
    frame = model.frame_log_prob(seq.values[None, :, :])
    paths, log_prob = kernels.viterbi(model.log_initial(), model.log_transitions(),
                                      model.log_end_weights(), frame)
    lp = float(log_prob[0])
    return ViterbiResult(path=tuple(int(i) for i in paths[0]),
                         log_prob=lp,
                         per_step_log_prob=lp / len(seq))
