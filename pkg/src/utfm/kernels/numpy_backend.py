"""Pure-numpy log-space HMM recursions over batches of equal-length sequences.

All three kernels share the same contract as the compiled backend in
``_speedups.pyx``: inputs are the log initial measure ``log_pi`` (K,), the
log transition matrix ``log_trans`` (K, K), a log end-weight vector
``log_end`` (K,) (all zeros for ergodic models, ``log(end_probs)`` for
absorbing ones) and the per-frame emission log-densities ``frame_logprob``
of shape (N, T, K). Zero probabilities appear as ``-inf`` and propagate
through max/log-sum-exp arithmetic without special casing.
"""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

NAME = "numpy"


def forward(log_pi, log_trans, log_end, frame_logprob):
    """Forward recursion. Returns (log_alpha (N,T,K), log_likelihood (N,))."""
    n, t, k = frame_logprob.shape
    log_alpha = np.empty((n, t, k))
    log_alpha[:, 0] = log_pi[None, :] + frame_logprob[:, 0]
    for i in range(1, t):
        step = log_alpha[:, i - 1][:, :, None] + log_trans[None, :, :]
        log_alpha[:, i] = logsumexp(step, axis=1) + frame_logprob[:, i]
    loglik = logsumexp(log_alpha[:, t - 1] + log_end[None, :], axis=1)
    return log_alpha, loglik


def backward(log_trans, log_end, frame_logprob):
    """Backward recursion. Returns log_beta (N,T,K); log_beta[:, -1] = log_end."""
    n, t, k = frame_logprob.shape
    log_beta = np.empty((n, t, k))
    log_beta[:, t - 1] = log_end[None, :]
    for i in range(t - 2, -1, -1):
        step = log_trans[None, :, :] + (frame_logprob[:, i + 1] + log_beta[:, i + 1])[:, None, :]
        log_beta[:, i] = logsumexp(step, axis=2)
    return log_beta


def viterbi(log_pi, log_trans, log_end, frame_logprob):
    """Max-product recursion with backtracking.

    Returns (paths (N,T) int64, log_prob (N,)). Ties resolve to the lowest
    state index (``argmax`` picks the first maximum).
    """
    n, t, k = frame_logprob.shape
    backpointer = np.zeros((n, t, k), dtype=np.int64)
    delta = log_pi[None, :] + frame_logprob[:, 0]
    for i in range(1, t):
        cand = delta[:, :, None] + log_trans[None, :, :]
        best_prev = np.argmax(cand, axis=1)
        backpointer[:, i] = best_prev
        delta = np.take_along_axis(cand, best_prev[:, None, :], axis=1)[:, 0, :]
        delta = delta + frame_logprob[:, i]
    final = delta + log_end[None, :]
    paths = np.zeros((n, t), dtype=np.int64)
    paths[:, t - 1] = np.argmax(final, axis=1)
    log_prob = final[np.arange(n), paths[:, t - 1]]
    for i in range(t - 2, -1, -1):
        paths[:, i] = backpointer[np.arange(n), i + 1, paths[:, i + 1]]
    return paths, log_prob
