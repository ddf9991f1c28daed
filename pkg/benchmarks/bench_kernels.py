"""Compare the compiled and numpy LSTM kernels.

    python benchmarks/bench_kernels.py [--repeat 20] [--epoch]

Times one layer's forward and backward recurrence at a few sizes, checks the
two backends agree, and optionally times a full training epoch per backend.
"""
import argparse
import time

import numpy as np

from selfteach import kernels

SIZES = [
    # (T, B, input, cell, proj)
    (16, 32, 16, 32, 16),
    (16, 32, 32, 64, 32),
    (64, 8, 16, 32, 16),
    (16, 64, 64, 128, 64),
]


def _inputs(T, B, D, H, Pd, rng):
    xw = rng.normal(size=(T, B, 4 * H))
    R = rng.normal(size=(4 * H, Pd)) * 0.3
    P = rng.normal(size=(Pd, H)) * 0.3
    h0 = rng.normal(size=(B, Pd))
    c0 = rng.normal(size=(B, H))
    dh = rng.normal(size=(T, B, Pd))
    return xw, R, P, h0, c0, dh


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench_kernels(repeat):
    rng = np.random.default_rng(0)
    print(f"{'T':>3} {'B':>3} {'H':>4} {'P':>3} | " + " | ".join(
        f"{b:>7s} fwd  bwd (ms)" for b in kernels.available()) + " | max rel diff")
    for T, B, D, H, Pd in SIZES:
        xw, R, P, h0, c0, dh = _inputs(T, B, D, H, Pd, rng)
        cells, outs = [], {}
        for name in kernels.available():
            impl = kernels.BACKENDS[name]
            fwd = impl.lstm_forward(xw, R, P, h0, c0)
            bwd = impl.lstm_backward(*fwd, h0, c0, R, P, dh)
            outs[name] = fwd + bwd
            tf = _best(lambda: impl.lstm_forward(xw, R, P, h0, c0), repeat)
            tb = _best(lambda: impl.lstm_backward(*fwd, h0, c0, R, P, dh), repeat)
            cells.append(f"{1e3 * tf:12.3f} {1e3 * tb:6.3f}")
        diff = 0.0
        if len(outs) == 2:
            diff = max(float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))
                       for a, b in zip(*outs.values()))
        print(f"{T:>3} {B:>3} {H:>4} {Pd:>3} | " + " | ".join(cells) + f" | {diff:.2e}")


def bench_epoch():
    from selfteach.data import DatasetSpec, generate
    from selfteach.losses import LossConfig
    from selfteach.network import ArchSpec, init_params
    from selfteach.trainer import OptimizerConfig, train

    data = generate(DatasetSpec(n_sequences=2000, seed=1))
    params = init_params(ArchSpec(8, 32, 16, 4, 10, aux_layer=2), 1)
    for name in kernels.available():
        with kernels.backend(name):
            t = time.perf_counter()
            train(params, data, LossConfig("st-h", 0.01), OptimizerConfig(epochs=1))
            print(f"epoch ({name}): {time.perf_counter() - t:.2f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--epoch", action="store_true", help="also time a full desk-scale epoch")
    args = ap.parse_args()
    bench_kernels(args.repeat)
    if args.epoch:
        bench_epoch()


if __name__ == "__main__":
    main()
