"""
Deterministic seed derivation for Monte-Carlo runs.

Seeds are mixed with the splitmix64 finaliser using plain integer
arithmetic, so the same (base, index) pair gives the same seed on every
platform and Python build.
"""

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(value: int) -> int:
    """splitmix64 output function; a bijection on 64-bit integers."""
    z = value & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive(base_seed: int, run_index: int) -> int:
    """Seed for run `run_index` of an experiment started from `base_seed`.

    For a fixed base the map index -> seed is injective: the index enters
    through an odd multiplier modulo 2**64 and mix64 is a bijection.
    """
    if base_seed < 0 or run_index < 0:
        raise ValueError("base_seed and run_index must be non-negative")
    state = mix64(base_seed)
    return mix64(state + (run_index + 1) * GOLDEN_GAMMA)


def sklearn_seed(seed: int) -> int:
    """Fold a 64-bit seed into the 32-bit range accepted by scikit-learn."""
    return (seed ^ (seed >> 32)) & 0xFFFFFFFF
