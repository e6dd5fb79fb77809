import numpy as np
import pytest

from utfm.hmm.model import GaussianHmm, ObservationSequence


def random_hmm(rng, k, d, absorbing=False):
    if absorbing:
        rows = rng.dirichlet(np.ones(k + 1), size=k)
        transitions, end_probs = rows[:, :k], rows[:, k]
    else:
        transitions = rng.dirichlet(np.ones(k), size=k)
        end_probs = np.zeros(k)
    return GaussianHmm(
        state_labels=tuple(f"s{i}" for i in range(k)),
        initial=rng.dirichlet(np.ones(k)),
        transitions=transitions,
        end_probs=end_probs,
        emission_means=rng.normal(0.0, 2.0, size=(k, d)),
        emission_vars=rng.uniform(0.2, 2.0, size=(k, d)),
    )


def random_sequence(rng, t, d):
    return ObservationSequence(rng.normal(0.0, 1.5, size=(t, d)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
