#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times each hot kernel on training-shaped inputs (full-batch MNIST sizes),
checks numerical agreement between the two paths, and reports a full
forward/backward/update epoch for a representative distance model under
both backends. BLAS matmul is included as the reference point for the
sequential-accumulation matmul kernel.

Usage:
    python benchmarks/bench_backends.py [--batch N] [--repeats R]
"""

import argparse
import time

import numpy as np

from distrep import backend
from distrep.mnist_io import Dataset
from distrep.model_zoo import build_model
from distrep.numerics import make_rng
from distrep.objective import cross_entropy


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(batch, repeats):
    rng = make_rng(0)
    hidden, classes, in_dim = 128, 10, 784
    x = rng.standard_normal((batch, hidden))
    alpha = rng.uniform(0.5, 2.0, (classes, hidden))
    mu = rng.standard_normal((classes, hidden)) * 0.1
    dy = rng.standard_normal((batch, classes))
    a_mm = rng.standard_normal((batch, in_dim))
    b_mm = rng.standard_normal((in_dim, hidden))

    cases = {
        "matmul (seq accumulation)": lambda: backend.matmul(a_mm, b_mm),
        "offsetl2 forward": lambda: backend.offsetl2_forward(x, alpha, mu, 1e-12),
        "offsetl2 backward": lambda: backend.offsetl2_backward(
            x, alpha, mu, backend.offsetl2_forward(x, alpha, mu, 1e-12), dy),
        "relu backward": lambda: backend.relu_backward(x, dy @ np.ones((classes,
                                                                        hidden))),
        "abs backward": lambda: backend.abs_backward(x, dy @ np.ones((classes,
                                                                      hidden))),
    }

    print(f"{'kernel':<28} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}")
    print("-" * 64)
    rows = {}
    for name, fn in cases.items():
        times = {}
        for which in backend.available_backends():
            backend.use_backend(which)
            fn()  # warm up (JIT compile on first numba call)
            times[which] = timeit(fn, repeats)
        rows[name] = times
        nb = times.get("numba", float("nan")) * 1e3
        npy = times.get("numpy", float("nan")) * 1e3
        speed = npy / nb if nb and not np.isnan(nb) else float("nan")
        print(f"{name:<28} {nb:>12.2f} {npy:>12.2f} {speed:>8.1f}x")

    backend.use_backend("numba")
    t_blas = timeit(lambda: a_mm @ b_mm, repeats)
    print(f"{'matmul (BLAS reference)':<28} {'-':>12} {'-':>12} "
          f"{t_blas * 1e3:>8.2f}ms")

    # agreement between both paths on identical inputs
    print("\nagreement (max |delta|, numba vs numpy):")
    for name, fn in cases.items():
        outs = {}
        for which in backend.available_backends():
            backend.use_backend(which)
            out = fn()
            outs[which] = out if isinstance(out, np.ndarray) else np.hstack(
                [o.ravel() for o in out])
        if len(outs) == 2:
            delta = np.max(np.abs(outs["numba"] - outs["numpy"]))
            exact = " (bitwise)" if delta == 0.0 else ""
            print(f"  {name:<26} {delta:.3e}{exact}")


def bench_epoch(batch, repeats):
    rng = make_rng(1)
    images = rng.standard_normal((batch, 784))
    labels = rng.integers(0, 10, batch)
    Dataset(images, labels, 0.0, 1.0)

    def epoch(model):
        res = cross_entropy(model.forward(images), labels)
        model.backward(res.dlogits)
        model.sgd_step(0.001)

    print(f"\nfull epoch, Abs-L2 model, batch {batch}:")
    for which in backend.available_backends():
        backend.use_backend(which)
        model = build_model("Abs-L2", make_rng(2))
        epoch(model)  # warm up
        t = timeit(lambda: epoch(model), repeats)
        print(f"  {which:<8} {t * 1e3:8.1f} ms/epoch")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=6000,
                    help="batch size for kernel shapes (default: 6000)")
    ap.add_argument("--repeats", type=int, default=5,
                    help="timing repeats, best-of (default: 5)")
    args = ap.parse_args()

    print(f"available backends: {backend.available_backends()}")
    original = backend.active_backend()
    try:
        bench_kernels(args.batch, args.repeats)
        bench_epoch(args.batch, args.repeats)
    finally:
        backend.use_backend(original)


if __name__ == "__main__":
    main()
