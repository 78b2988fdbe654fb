"""Timing comparison of the compiled and pure-numpy kernel backends.

The backend is fixed at import time by CSRALOHA_BACKEND, so each backend
is measured in a fresh subprocess.  Run as:

    python benchmarks/benchmark_backends.py [--frames N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def measure(frames: int) -> dict:
    from csraloha import backend
    from csraloha.config import SystemConfig
    from csraloha.protocol_analog import analog_rates
    from csraloha.protocol_digital import digital_rates
    from csraloha.splitting import splitting_trials

    results = {"backend": backend.BACKEND}
    cfg_a = SystemConfig(n=100, s=5, c=2.0, frames=frames)
    cfg_d = SystemConfig(n=100, s=1, k=4, r=12, mode="digital", frames=frames)

    # warm-up triggers JIT compilation so it is not billed to the runs
    analog_rates(cfg_a, frames=64)
    digital_rates(cfg_d, frames=64)
    splitting_trials(100, 64, 1)

    t0 = time.perf_counter()
    rates = analog_rates(cfg_a)
    results["analog_s"] = time.perf_counter() - t0
    results["analog_mean"] = float(rates.mean())

    t0 = time.perf_counter()
    rates = digital_rates(cfg_d)
    results["digital_s"] = time.perf_counter() - t0
    results["digital_mean"] = float(rates.mean())

    t0 = time.perf_counter()
    betas, _, _ = splitting_trials(100, frames, 1)
    results["splitting_s"] = time.perf_counter() - t0
    results["splitting_mean"] = float(betas.mean())
    return results


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--frames", type=int, default=20000)
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.child:
        print(json.dumps(measure(args.frames)))
        return 0

    rows = []
    for backend in ("numba", "numpy"):
        env = dict(os.environ, CSRALOHA_BACKEND=backend)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--child",
             "--frames", str(args.frames)],
            env=env, capture_output=True, text=True, check=True)
        rows.append(json.loads(out.stdout.strip().splitlines()[-1]))

    print(f"frames per workload: {args.frames}")
    print(f"{'workload':<12} {'numba (s)':>10} {'numpy (s)':>10} {'speedup':>8}")
    for key in ("analog", "digital", "splitting"):
        tn, tp = rows[0][f"{key}_s"], rows[1][f"{key}_s"]
        print(f"{key:<12} {tn:>10.3f} {tp:>10.3f} {tp / tn:>7.1f}x")
        mn, mp = rows[0][f"{key}_mean"], rows[1][f"{key}_mean"]
        if mn != mp:
            print(f"  WARNING: backend means differ: {mn!r} vs {mp!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
