"""Frame-chunked Monte Carlo execution with order-independent reduction.

Frames are split into fixed-size chunks addressed by frame index, so the
assignment of chunks to worker threads can never change the result; the
final mean uses exact (fsum) accumulation.
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK_FRAMES = 4096


def run_chunked(frames: int, threads: int, worker) -> np.ndarray:
    """Assemble per-frame values from worker(frame_lo, frame_hi) calls."""
    if frames < 1:
        raise ValueError("need frames >= 1")
    bounds = [(lo, min(lo + CHUNK_FRAMES, frames))
              for lo in range(0, frames, CHUNK_FRAMES)]
    out = np.empty(frames)
    if threads <= 1 or len(bounds) == 1:
        for lo, hi in bounds:
            out[lo:hi] = worker(lo, hi)
        return out
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for (lo, hi), vals in zip(bounds, pool.map(lambda b: worker(*b), bounds)):
            out[lo:hi] = vals
    return out


def mean_stderr(values: np.ndarray) -> tuple[float, float]:
    """Exactly-rounded mean and standard error of the mean."""
    vals = [float(v) for v in values]
    f = len(vals)
    mean = math.fsum(vals) / f
    if f == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in vals) / (f - 1)
    return mean, math.sqrt(var / f)
