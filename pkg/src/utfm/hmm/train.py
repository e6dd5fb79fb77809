"""Baum-Welch expectation-maximization for Gaussian HMMs.

The E-step batches sequences of equal length into (N, T, K) arrays so the
recursion kernels run once per length group instead of once per sequence.
Training is fully deterministic given (initial model, data, config).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import DegenerateDataError, InputError
from .inference import posteriors_from_messages
from .model import VARIANCE_FLOOR, GaussianHmm, as_sequence, check_dims


@dataclass(frozen=True)
class TrainConfig:
    """Convergence controls: stop when |delta logL| < tol or at max_iter."""

    tol: float = 1e-9
    max_iter: int = 500
    variance_floor: float = VARIANCE_FLOOR

    def __post_init__(self):
        if self.tol <= 0:
            raise InputError("tol must be > 0")
        if self.max_iter < 1:
            raise InputError("max_iter must be >= 1")
        if self.variance_floor < VARIANCE_FLOOR:
            raise InputError(f"variance_floor must be >= {VARIANCE_FLOOR}")


class NonConvergenceWarning(UserWarning):
    """Raised as a warning when EM hits max_iter before the tolerance."""


def initial_model(state_labels, n_dims: int, absorbing: bool = False) -> GaussianHmm:
    """Deterministic starting point for EM.

    Uniform initial measure and uniform transition rows (absorbing models
    spread each row over K successors plus the end state). Emission means
    start at 0 with a per-state jitter of 0.01 * state_index, alternating
    in sign, to break EM symmetry; variances start at 1 to match
    standardized observations.
    """
    labels = tuple(state_labels)
    k = len(labels)
    if k < 1:
        raise InputError("need at least one state label")
    if n_dims < 1:
        raise InputError("need at least one observation dimension")
    if absorbing:
        transitions = np.full((k, k), 1.0 / (k + 1))
        end_probs = np.full(k, 1.0 / (k + 1))
    else:
        transitions = np.full((k, k), 1.0 / k)
        end_probs = np.zeros(k)
    jitter = np.array([0.01 * i * (-1.0) ** i for i in range(k)])
    means = np.tile(jitter[:, None], (1, n_dims))
    return GaussianHmm(
        state_labels=labels,
        initial=np.full(k, 1.0 / k),
        transitions=transitions,
        end_probs=end_probs,
        emission_means=means,
        emission_vars=np.ones((k, n_dims)),
    )


def initial_model_from_data(state_labels, data, absorbing: bool = False,
                            lloyd_iterations: int = 25) -> GaussianHmm:
    """Data-driven deterministic starting point for EM.

    Keeps the uniform initial measure and uniform transition rows but seeds
    emissions by pooled k-means: centers start on the pooled per-dimension
    quantiles, Lloyd iterations refine them, and each state's variance is
    its cluster variance (floored at 1e-2). A per-state jitter of
    0.01 * state_index (alternating sign) still breaks exact center ties.
    Starting near the pooled structure instead of at the origin cuts EM to
    a small fraction of the iterations on weakly separated data.
    """
    labels = tuple(state_labels)
    k = len(labels)
    sequences = [as_sequence(s) for s in data]
    if not sequences:
        raise InputError("initial_model_from_data requires at least one sequence")
    frames = np.concatenate([seq.values for seq in sequences], axis=0)
    d = frames.shape[1]
    centers = np.stack([np.quantile(frames, (i + 0.5) / k, axis=0) for i in range(k)])
    assign = np.zeros(len(frames), dtype=int)
    for _ in range(max(lloyd_iterations, 0) + 1):
        distances = ((frames[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        assign = distances.argmin(axis=1)
        for j in range(k):
            members = frames[assign == j]
            if len(members):
                centers[j] = members.mean(axis=0)
    variances = np.ones((k, d))
    for j in range(k):
        members = frames[assign == j]
        if len(members) > 1:
            variances[j] = np.maximum(members.var(axis=0), 1e-2)
    jitter = np.array([0.01 * i * (-1.0) ** i for i in range(k)])
    centers = centers + jitter[:, None]
    if absorbing:
        transitions = np.full((k, k), 1.0 / (k + 1))
        end_probs = np.full(k, 1.0 / (k + 1))
    else:
        transitions = np.full((k, k), 1.0 / k)
        end_probs = np.zeros(k)
    return GaussianHmm(
        state_labels=labels,
        initial=np.full(k, 1.0 / k),
        transitions=transitions,
        end_probs=end_probs,
        emission_means=centers,
        emission_vars=variances,
    )


def baum_welch(init: GaussianHmm, data, config: TrainConfig | None = None):
    """Fit by EM. Returns (trained model, per-iteration log-likelihood trace).

    The trace records the total log-likelihood of the model at the start of
    each iteration; it is non-decreasing up to floating-point slack. When
    the absolute improvement drops below ``config.tol`` the model that
    attained the last trace entry is returned.
    """
    config = config or TrainConfig()
    sequences = [as_sequence(s) for s in data]
    if not sequences:
        raise InputError("baum_welch requires at least one observation sequence")
    for seq in sequences:
        check_dims(init, seq)
    groups = _group_by_length(sequences)
    learn_transitions = init.n_states > 1
    if learn_transitions and all(batch.shape[1] < 2 for batch in groups):
        raise DegenerateDataError(
            "all sequences have length < 2: transition probabilities cannot be re-estimated")

    model = init
    trace: list[float] = []
    converged = False
    for _ in range(config.max_iter):
        stats, loglik = _e_step(model, groups)
        trace.append(loglik)
        if len(trace) >= 2 and abs(trace[-1] - trace[-2]) < config.tol:
            converged = True
            break
        model = _m_step(model, stats, config)
    if not converged:
        warnings.warn(
            f"EM did not reach tol={config.tol} within {config.max_iter} iterations "
            f"(last improvement {trace[-1] - trace[-2]:.3e})" if len(trace) >= 2 else
            f"EM stopped after {config.max_iter} iteration(s) without a convergence check",
            NonConvergenceWarning,
            stacklevel=2,
        )
    return model, trace


def has_converged(trace, tol: float) -> bool:
    """Whether a log-likelihood trace ended inside the tolerance."""
    return len(trace) >= 2 and abs(trace[-1] - trace[-2]) < tol


def _group_by_length(sequences):
    """Stack equal-length sequences into (N, T, D) batches, T ascending."""
    by_len: dict[int, list[np.ndarray]] = {}
    for seq in sequences:
        by_len.setdefault(len(seq), []).append(seq.values)
    return [np.stack(by_len[t]) for t in sorted(by_len)]


@dataclass
class _SufficientStats:
    post0: np.ndarray  # (K,) initial-state posterior mass
    trans_num: np.ndarray  # (K, K) expected transition counts
    trans_den: np.ndarray  # (K,) expected departures per state
    end_num: np.ndarray  # (K,) expected end transitions
    occup: np.ndarray  # (K,) total state occupancy
    obs_sum: np.ndarray  # (K, D)
    obs_sq: np.ndarray  # (K, D)


def _e_step(model: GaussianHmm, groups):
    k, d = model.n_states, model.n_dims
    stats = _SufficientStats(
        post0=np.zeros(k), trans_num=np.zeros((k, k)), trans_den=np.zeros(k),
        end_num=np.zeros(k), occup=np.zeros(k),
        obs_sum=np.zeros((k, d)), obs_sq=np.zeros((k, d)))
    log_pi = model.log_initial()
    log_trans = model.log_transitions()
    log_end = model.log_end_weights()
    absorbing = model.is_absorbing
    total = 0.0
    for batch in groups:  # (N, T, D)
        frame = model.frame_log_prob(batch)
        log_alpha, loglik = kernels.forward(log_pi, log_trans, log_end, frame)
        log_beta = kernels.backward(log_trans, log_end, frame)
        gamma, xi = posteriors_from_messages(log_alpha, log_beta, log_trans, frame, loglik)
        total += float(loglik.sum())
        stats.post0 += gamma[:, 0, :].sum(axis=0)
        stats.occup += gamma.sum(axis=(0, 1))
        stats.obs_sum += np.einsum("ntk,ntd->kd", gamma, batch)
        stats.obs_sq += np.einsum("ntk,ntd->kd", gamma, batch * batch)
        if batch.shape[1] >= 2:
            # Length-1 sequences contribute emission/initial statistics only.
            stats.trans_num += xi.sum(axis=(0, 1))
            if absorbing:
                stats.trans_den += gamma.sum(axis=(0, 1))
                stats.end_num += gamma[:, -1, :].sum(axis=0)
            else:
                stats.trans_den += gamma[:, :-1, :].sum(axis=(0, 1))
    return stats, total


def _m_step(model: GaussianHmm, stats: _SufficientStats, config: TrainConfig) -> GaussianHmm:
    k = model.n_states
    initial = stats.post0 / stats.post0.sum()

    transitions = np.array(model.transitions)
    end_probs = np.array(model.end_probs)
    live = stats.trans_den > 0  # states never departed keep their old rows
    transitions[live] = stats.trans_num[live] / stats.trans_den[live, None]
    if model.is_absorbing:
        end_probs[live] = stats.end_num[live] / stats.trans_den[live]
    row_total = transitions.sum(axis=1) + end_probs
    transitions /= row_total[:, None]
    end_probs /= row_total

    means = np.array(model.emission_means)
    variances = np.array(model.emission_vars)
    seen = stats.occup > 0
    means[seen] = stats.obs_sum[seen] / stats.occup[seen, None]
    variances[seen] = stats.obs_sq[seen] / stats.occup[seen, None] - means[seen] ** 2
    variances = np.maximum(variances, config.variance_floor)

    return GaussianHmm(
        state_labels=model.state_labels,
        initial=initial / initial.sum(),
        transitions=transitions,
        end_probs=end_probs,
        emission_means=means,
        emission_vars=variances,
    )
