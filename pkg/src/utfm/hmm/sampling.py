"""Generative sampling from a Gaussian HMM."""

from __future__ import annotations

import numpy as np

from ..errors import InputError
from .model import GaussianHmm, ObservationSequence


def sample(model: GaussianHmm, max_len: int, rng_seed: int) -> ObservationSequence:
    """Draw one observation sequence of length <= max_len.

    The state path follows the initial measure and transition rows; for
    absorbing models a drawn end transition terminates the sequence early.
    Ergodic models always emit exactly ``max_len`` frames. Deterministic
    per seed.
    """
    if max_len < 1:
        raise InputError("max_len must be >= 1")
    rng = np.random.default_rng(rng_seed)
    k = model.n_states
    std = np.sqrt(model.emission_vars)

    rows = np.hstack([model.transitions, model.end_probs[:, None]])  # K+1 outcomes per state
    state = int(rng.choice(k, p=model.initial))
    frames = [rng.normal(model.emission_means[state], std[state])]
    for _ in range(1, max_len):
        nxt = int(rng.choice(k + 1, p=rows[state]))
        if nxt == k:
            break
        state = nxt
        frames.append(rng.normal(model.emission_means[state], std[state]))
    return ObservationSequence(np.asarray(frames))
