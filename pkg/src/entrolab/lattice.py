"""Exact lattice-gas counting: the combinatorial ground truth.

Everything here is independent of the closed-form entropy: multiplicities
are counted (in log space with exact log-factorials, never Stirling),
brute-force enumeration cross-checks the formulas at tiny sizes, and a
seeded Monte Carlo estimates the localization probability (1/lamb)^(lamb*N)
directly.  The correspondence k * ln p == scaled entropy delta is what ties
this module back to the thermodynamic closed forms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

ENUMERATION_LIMIT = 10**7
_MC_CHUNK = 1 << 22


class EnumerationLimitError(ValueError):
    """Raised when an enumeration request exceeds the M^N guard."""


@dataclass(frozen=True)
class LatticeModel:
    """N particles on M cells, every occupancy allowed (ideal-gas limit)."""

    cells: int
    particles: int
    counting: str = "distinguishable"

    def __post_init__(self) -> None:
        if not isinstance(self.cells, int) or self.cells < 1:
            raise ValueError("cells must be an integer >= 1")
        if not isinstance(self.particles, int) or self.particles < 0:
            raise ValueError("particles must be an integer >= 0")
        if self.counting not in ("distinguishable", "boltzmann_corrected"):
            raise ValueError('counting must be "distinguishable" or "boltzmann_corrected"')


@dataclass(frozen=True)
class RegionConstraint:
    """Particles confined to the contiguous cell block [start, start + size)."""

    start: int
    size: int

    def __post_init__(self) -> None:
        if not isinstance(self.start, int) or self.start < 0:
            raise ValueError("start must be an integer >= 0")
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError("size must be an integer >= 1")


@lru_cache(maxsize=None)
def _log_factorial(n: int) -> float:
    """Exact cumulative-sum ln(n!); deliberately not a Stirling estimate."""
    if n < 0:
        raise ValueError("factorial argument must be >= 0")
    return math.fsum(math.log(i) for i in range(2, n + 1))


def _region_size(model: LatticeModel, constraint: RegionConstraint | None) -> int:
    if constraint is None:
        return model.cells
    if constraint.start + constraint.size > model.cells:
        raise ValueError("constraint block does not fit inside the lattice")
    return constraint.size


def log_multiplicity(model: LatticeModel, constraint: RegionConstraint | None = None) -> float:
    """ln of the number of assignments with all particles inside the region.

    Distinguishable counting gives N ln m; Boltzmann-corrected counting
    subtracts the exact ln N!.  The subtracted term is constraint-independent,
    which is why constrained-minus-unconstrained differences agree between
    the two counting modes.
    """
    m = _region_size(model, constraint)
    n = model.particles
    if m == 0 and n > 0:
        raise ValueError("no cells available for a positive particle count")
    raw = n * math.log(m)
    if model.counting == "boltzmann_corrected":
        return raw - _log_factorial(n)
    return raw


def enumerate_and_count(model: LatticeModel, constraint: RegionConstraint | None = None) -> int:
    """Count constraint-satisfying assignments by explicit enumeration.

    Every one of the M^N cell assignments is materialized (in chunks, as a
    base-M digit matrix) and tested; the result is an exact integer.  Guarded
    to M^N <= 10^7.
    """
    m = _region_size(model, constraint)
    total = model.cells ** model.particles
    if total > ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"M^N = {total} exceeds the enumeration guard {ENUMERATION_LIMIT}"
        )
    n = model.particles
    if n == 0:
        return 1  # the single empty assignment satisfies vacuously
    lo = 0 if constraint is None else constraint.start
    hi = model.cells if constraint is None else constraint.start + constraint.size
    powers = model.cells ** np.arange(n, dtype=np.int64)
    count = 0
    chunk = 1 << 18
    for first in range(0, total, chunk):
        idx = np.arange(first, min(first + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers) % model.cells
        count += int(np.sum(np.all((digits >= lo) & (digits < hi), axis=1)))
    assert m > 0 or count == 0
    return count


def localization_log_probability(lamb: int, n: int) -> float:
    """ln of the probability that all lamb*N particles sit in one region.

    Each of the lamb*N particles independently lands in the designated
    region of measure 1/lamb, so ln p = -lamb * N * ln(lamb).
    """
    if not isinstance(lamb, int) or lamb < 2:
        raise ValueError("lamb must be an integer >= 2")
    if n <= 0:
        raise ValueError("n must be positive")
    # Grouping matches the closed-form entropy delta bitwise in reduced units.
    return -lamb * n * math.log(lamb)


def stirling_gap(lamb: int, n: int) -> float:
    """|lamb ln N! - ln (lamb N)! + lamb N ln lamb| with exact log-factorials.

    This is the discrepancy between exact Boltzmann counting and the scaling
    identity's continuum form; it grows with N but shrinks relative to
    lamb N ln lamb.
    """
    if not isinstance(lamb, int) or lamb < 2:
        raise ValueError("lamb must be an integer >= 2")
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be an integer >= 1")
    exact = lamb * _log_factorial(n) - _log_factorial(lamb * n)
    return abs(exact + lamb * n * math.log(lamb))


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo localization estimate with its sampling pedigree."""

    p_hat: float
    std_err: float
    hits: int
    samples: int
    lamb: int
    n: int
    seed: int
    sample_offset: int
    p_exact: float
    low_statistics: bool


def _words_per_sample(lamb: int, total_particles: int) -> tuple[int, int]:
    """(words per sample, particles packed per word).

    Power-of-two lamb packs exact log2(lamb)-bit digits, several particles
    per 64-bit word, with zero bias.  Other lamb spend one word per particle
    and reduce it modulo lamb (bias ~ lamb/2^64, far below any tolerance
    here).
    """
    bits = lamb.bit_length() - 1
    if lamb == 1 << bits:
        per_word = 64 // bits
        return -(-total_particles // per_word), per_word
    return total_particles, 1


def sample_localization_mc(
    lamb: int,
    n: int,
    samples: int,
    seed: int,
    sample_offset: int = 0,
) -> McEstimate:
    """Estimate the all-in-one-region probability from uniform assignments.

    RNG contract: a Philox counter-based generator keyed by the seed; every
    sample consumes a fixed budget of raw 64-bit words, so a shard covering
    samples [a, b) starts by skipping exactly a * words_per_sample words.
    Philox advances in counter blocks of four words, so the skip is one
    advance plus an in-stream discard of the remainder. Estimates are
    therefore bitwise independent of how the sample range is split.
    """
    if not isinstance(lamb, int) or lamb < 2:
        raise ValueError("lamb must be an integer >= 2")
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be an integer >= 0")
    if samples < 1:
        raise ValueError("samples must be positive")
    if sample_offset < 0:
        raise ValueError("sample_offset must be >= 0")

    if n == 0:
        # Zero particles are localized with certainty.
        return McEstimate(
            p_hat=1.0, std_err=0.0, hits=samples, samples=samples, lamb=lamb,
            n=n, seed=seed, sample_offset=sample_offset, p_exact=1.0,
            low_statistics=False,
        )

    total_particles = lamb * n
    words, per_word = _words_per_sample(lamb, total_particles)
    p_exact = math.exp(localization_log_probability(lamb, n))
    expected_hits = samples * p_exact
    low = expected_hits < 10.0
    if low:
        warnings.warn(
            f"expected hits {expected_hits:.3g} < 10; the estimate will be noisy",
            stacklevel=2,
        )

    bit_gen = np.random.Philox(key=seed)
    skip = sample_offset * words
    if skip >= 4:
        # advance() counts whole counter blocks, four 64-bit words each
        bit_gen.advance(skip // 4)
    rng = np.random.Generator(bit_gen)
    if skip % 4:
        rng.integers(0, 2**64, size=skip % 4, dtype=np.uint64, endpoint=False)

    pow2 = per_word > 1
    if pow2:
        bits = lamb.bit_length() - 1
        # Mask covering the digit slots actually used across the words of
        # one sample; trailing unused slots in the last word are ignored.
        full_mask = np.uint64((1 << (bits * per_word)) - 1)
        tail_slots = total_particles - (words - 1) * per_word
        tail_mask = np.uint64((1 << (bits * tail_slots)) - 1)

    hits = 0
    done = 0
    while done < samples:
        count = min(_MC_CHUNK, samples - done)
        raw = rng.integers(0, 2**64, size=(count, words), dtype=np.uint64, endpoint=False)
        if pow2:
            masks = np.full(words, full_mask, dtype=np.uint64)
            masks[-1] = tail_mask
            ok = np.all((raw & masks) == 0, axis=1)
        else:
            ok = np.all(raw % np.uint64(lamb) == 0, axis=1)
        hits += int(np.sum(ok))
        done += count

    p_hat = hits / samples
    std_err = math.sqrt(p_hat * (1.0 - p_hat) / samples)
    return McEstimate(
        p_hat=p_hat, std_err=std_err, hits=hits, samples=samples, lamb=lamb,
        n=n, seed=seed, sample_offset=sample_offset, p_exact=p_exact,
        low_statistics=low,
    )
