"""Compare the compiled and numpy recursion kernels.

Times the three batched kernels and one full EM fit under each backend and
checks that both produce the same numbers. Run from the repository root:

    python benchmarks/bench_backends.py [--n 4000] [--t 12] [--k 4]
"""

from __future__ import annotations

import argparse
import time
import warnings

import numpy as np

import utfm.kernels as kernels
from utfm.hmm import GaussianHmm, TrainConfig, baum_welch
from utfm.hmm.model import ObservationSequence
from utfm.hmm.train import NonConvergenceWarning


def build_inputs(n, t, k, seed=0):
    rng = np.random.default_rng(seed)
    rows = rng.dirichlet(np.ones(k + 1), size=k)
    model = GaussianHmm(
        state_labels=tuple(f"s{i}" for i in range(k)),
        initial=rng.dirichlet(np.ones(k)),
        transitions=rows[:, :k],
        end_probs=rows[:, k],
        emission_means=rng.normal(0, 2, size=(k, 1)),
        emission_vars=rng.uniform(0.3, 2.0, size=(k, 1)),
    )
    batch = rng.normal(0, 1.5, size=(n, t, 1))
    frame = model.frame_log_prob(batch)
    return model, batch, frame


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def bench_kernels(n, t, k):
    model, batch, frame = build_inputs(n, t, k)
    args = (model.log_initial(), model.log_transitions(), model.log_end_weights())
    rows = []
    reference = {}
    for name, backend in kernels.available_backends().items():
        t_fwd, out_fwd = best_of(lambda: backend.forward(*args, frame))
        t_bwd, out_bwd = best_of(lambda: backend.backward(args[1], args[2], frame))
        t_vit, out_vit = best_of(lambda: backend.viterbi(*args, frame))
        rows.append((name, t_fwd, t_bwd, t_vit))
        if reference:
            np.testing.assert_allclose(out_fwd[1], reference["loglik"], rtol=1e-8)
            np.testing.assert_allclose(out_bwd, reference["beta"], rtol=1e-8, atol=1e-10)
            assert np.array_equal(out_vit[0], reference["paths"])
        else:
            reference = {"loglik": out_fwd[1], "beta": out_bwd, "paths": out_vit[0]}
    return rows


def bench_fit(n, t, k):
    model, batch, _ = build_inputs(n, t, k)
    data = [ObservationSequence(batch[i]) for i in range(min(n, 500))]
    results = {}
    original = (kernels.forward, kernels.backward, kernels.viterbi)
    try:
        for name, backend in kernels.available_backends().items():
            kernels.forward = backend.forward
            kernels.backward = backend.backward
            kernels.viterbi = backend.viterbi
            start = time.perf_counter()
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NonConvergenceWarning)
                _, trace = baum_welch(model, data, TrainConfig(tol=1e-8, max_iter=40))
            results[name] = (time.perf_counter() - start, trace[-1])
    finally:
        kernels.forward, kernels.backward, kernels.viterbi = original
    final_logliks = {v[1] for v in results.values()}
    assert max(final_logliks) - min(final_logliks) < 1e-6, "backends diverged"
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4000, help="sequences in the batch")
    parser.add_argument("--t", type=int, default=12, help="steps per sequence")
    parser.add_argument("--k", type=int, default=4, help="hidden states")
    args = parser.parse_args()

    available = list(kernels.available_backends())
    print(f"backends available: {available} (active: {kernels.BACKEND_NAME})")
    print(f"batch: n={args.n} t={args.t} k={args.k}\n")

    rows = bench_kernels(args.n, args.t, args.k)
    print(f"{'backend':<8} {'forward':>10} {'backward':>10} {'viterbi':>10}")
    for name, t_fwd, t_bwd, t_vit in rows:
        print(f"{name:<8} {t_fwd * 1e3:>9.2f}ms {t_bwd * 1e3:>9.2f}ms {t_vit * 1e3:>9.2f}ms")
    if len(rows) == 2:
        base = {row[0]: row[1:] for row in rows}
        speedups = [base["numpy"][i] / base["cython"][i] for i in range(3)]
        print(f"{'speedup':<8} {speedups[0]:>9.1f}x {speedups[1]:>9.1f}x {speedups[2]:>9.1f}x")

    print("\nfull EM fit (500 sequences, 40 iterations):")
    for name, (seconds, loglik) in bench_fit(args.n, args.t, args.k).items():
        print(f"{name:<8} {seconds:>8.2f}s  final loglik {loglik:.6f}")


if __name__ == "__main__":
    main()
