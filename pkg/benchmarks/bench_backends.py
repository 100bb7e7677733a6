#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallback.

Three kernel microbenchmarks (filter convolution, event-driven layer
propagation, winner selection) run in-process against both backend modules,
then a whole-network forward pass runs once per backend in a subprocess
(the backend binds at import time, so a fair end-to-end comparison needs a
fresh interpreter).

Usage:
    python benchmarks/bench_backends.py [--repeats N]
"""

from __future__ import annotations

import argparse
import os
import statistics
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from spikeconv.backends import numpy_kernels  # noqa: E402
from spikeconv.core import NO_SPIKE, bin_csr  # noqa: E402

BINS = 15


def _wave(rng, h, w, c, frac):
    """Random spike-time grid with roughly `frac` of cells firing."""
    times = rng.integers(0, BINS, size=(h, w, c)).astype(np.int32)
    times[rng.random((h, w, c)) > frac] = NO_SPIKE
    return times


def bench(fn, repeats):
    fn()  # warm-up: triggers JIT compilation on the numba path
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def kernel_cases(mod, rng):
    image = rng.random((28, 28))
    kernel = rng.random((7, 7))

    times = _wave(rng, 14, 14, 30, 0.4)
    order, counts = bin_csr(times, BINS)
    weights = rng.random((3, 3, 30, 250))

    win_times = _wave(rng, 14, 14, 250, 0.3)
    win_pots = rng.random((14, 14, 250))

    def run_conv():
        for _ in range(50):
            mod.conv_same(image, kernel)

    def run_propagate():
        pot = np.zeros((14, 14, 250))
        fire_pot = np.zeros((14, 14, 250))
        out_times = np.full((14, 14, 250), NO_SPIKE, dtype=np.int32)
        mod.propagate(order, counts, 14, 14, 30, weights, 10.0, pot, fire_pot, out_times)

    def run_winners():
        mod.select_winners(win_times.copy(), win_pots, 8, 2)

    return (
        ("conv_same 28x28 k7 x50", run_conv),
        ("propagate 14x14x30 -> 250 maps", run_propagate),
        ("select_winners k8 r2 on 14x14x250", run_winners),
    )


FORWARD_SNIPPET = """
import sys, time
sys.path.insert(0, {src!r})
import numpy as np
from spikeconv.network import Network
from spikeconv.profiles import task1_config
from spikeconv.backends import backend_name

net = Network(task1_config(), seed=np.random.SeedSequence(0))
rng = np.random.default_rng(1)
images = rng.integers(0, 256, size=(20, 28, 28)).astype(np.uint8)
net.forward(images[0])  # warm-up
t0 = time.perf_counter()
for img in images:
    net.forward(img)
dt = (time.perf_counter() - t0) / len(images)
print(f"{{backend_name()}} {{dt:.6f}}")
"""


def bench_forward():
    src = str(Path(__file__).resolve().parents[1] / "src")
    rows = []
    for backend in ("numpy", "numba"):
        env = dict(os.environ, SPIKECONV_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-c", FORWARD_SNIPPET.format(src=src)],
            env=env,
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            rows.append((backend, None, proc.stderr.strip().splitlines()[-1]))
            continue
        name, dt = proc.stdout.split()
        rows.append((name, float(dt), None))
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    try:
        from spikeconv.backends import numba_kernels
    except ImportError:
        print("numba is not importable; benchmarking the numpy path alone")
        numba_kernels = None

    mods = [("numpy", numpy_kernels)]
    if numba_kernels is not None:
        mods.append(("numba", numba_kernels))

    print(f"{'kernel':<38} " + " ".join(f"{name:>12}" for name, _ in mods) + "  speedup")
    results = {}
    for name, mod in mods:
        rng = np.random.default_rng(42)
        for label, fn in kernel_cases(mod, rng):
            results.setdefault(label, {})[name] = bench(fn, args.repeats)
    for label, by_backend in results.items():
        cells = " ".join(f"{by_backend[name] * 1e3:>10.2f}ms" for name, _ in mods)
        if "numba" in by_backend:
            ratio = by_backend["numpy"] / by_backend["numba"]
            cells += f"  {ratio:>6.2f}x"
        print(f"{label:<38} {cells}")

    print("\nfull forward pass, digit pipeline (per image)")
    for name, dt, err in bench_forward():
        if err:
            print(f"  {name:<8} failed: {err}")
        else:
            print(f"  {name:<8} {dt * 1e3:.2f}ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
