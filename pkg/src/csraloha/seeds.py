"""Counter-based seeding for reproducible, order-independent Monte Carlo.

Generator algorithm (version 1, frozen): every random number is produced
by the splitmix64 finalizer applied to a 64-bit counter.  Streams are
separated by domain constants and per-frame sub-seeds are derived as

    stream(master, domain) = mix64(master XOR domain * GOLDEN)
    frame_seed(stream, f)  = mix64(stream + (f + 1) * GOLDEN)
    u_i                    = mix64(seed + (i + 1) * GOLDEN) >> 11  (53-bit)

so any frame (and any value within a frame) can be generated without
generating its predecessors.  Parallel scheduling therefore cannot change
results.  Uniforms lie in [0, 1); exponential gains use -log1p(-u).
"""

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_U53 = 2.0 ** -53

# stream domains
DOMAIN_GAINS = 1
DOMAIN_MATRIX = 2
DOMAIN_SELECT = 3
DOMAIN_SPLIT = 4


def mix64(z):
    """splitmix64 finalizer; accepts uint64 scalar or array (wrapping mul)."""
    scalar = np.isscalar(z) or np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=np.uint64))
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        z = z ^ (z >> np.uint64(31))
    return z[0] if scalar else z


def stream(master_seed: int, domain: int) -> np.uint64:
    with np.errstate(over="ignore"):
        return mix64(np.uint64(master_seed) ^ (np.uint64(domain) * GOLDEN))


def frame_seeds(stream_seed, frame_lo: int, frame_hi: int) -> np.ndarray:
    idx = np.arange(frame_lo + 1, frame_hi + 1, dtype=np.uint64)
    return mix64(np.uint64(stream_seed) + idx * GOLDEN)


def uniforms(seed, count: int) -> np.ndarray:
    """`count` uniforms in [0, 1) for one sub-seed."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = mix64(np.uint64(seed) + idx * GOLDEN)
    return (z >> np.uint64(11)).astype(np.float64) * _U53


def uniform_block(seeds: np.ndarray, count: int) -> np.ndarray:
    """(len(seeds), count) uniforms, one row per sub-seed."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = mix64(seeds[:, None] + idx[None, :] * GOLDEN)
    return (z >> np.uint64(11)).astype(np.float64) * _U53


def gains_block(master_seed: int, n: int, frame_lo: int, frame_hi: int) -> np.ndarray:
    """(frames, n) i.i.d. unit-mean exponential gains via inverse CDF."""
    fs = frame_seeds(stream(master_seed, DOMAIN_GAINS), frame_lo, frame_hi)
    return -np.log1p(-uniform_block(fs, n))


def selection_block(master_seed: int, frame_lo: int, frame_hi: int) -> np.ndarray:
    """One uniform per frame, used for random user selection."""
    fs = frame_seeds(stream(master_seed, DOMAIN_SELECT), frame_lo, frame_hi)
    return uniform_block(fs, 1)[:, 0]
