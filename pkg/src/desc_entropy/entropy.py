"""Class sizes, class distributions, Boltzmann and Shannon entropies.

All counting is exact (Python ints and Fractions); floats appear only when
a logarithm is taken.  Logarithms are base 2 throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .models import CapExceeded, compositions
from .syntax import GMLU, MLU

MAX_K = 4
MAX_N = 60
MAX_CLASSES = 2_000_000


@dataclass(frozen=True)
class Partition:
    dialect: str
    k: int
    n: int
    universe_size: int
    classes: tuple[tuple[object, int], ...]

    def __post_init__(self):
        if not self.classes:
            raise ValueError("empty partition")
        if any(size <= 0 for _, size in self.classes):
            raise ValueError("class sizes must be positive")
        if sum(size for _, size in self.classes) != self.universe_size:
            raise ValueError("class sizes do not sum to the universe size")

    def sizes(self) -> list[int]:
        return [size for _, size in self.classes]

    def size_of(self, class_id) -> int:
        for cid, size in self.classes:
            if cid == class_id:
                return size
        raise KeyError(class_id)

    def probability(self, class_id) -> Fraction:
        return Fraction(self.size_of(class_id), self.universe_size)


@dataclass
class ClassStats:
    class_id: object
    size: int
    boltzmann: float
    probability: Fraction
    c_lower: int | None = None
    c_upper: int | None = None
    c_exact: int | None = None


@dataclass(frozen=True)
class EntropyStats:
    shannon: float
    expected_boltzmann: float
    log_universe: float

    @property
    def residual(self) -> float:
        return self.shannon + self.expected_boltzmann - self.log_universe


def _check_caps(k: int, n: int) -> None:
    if not 1 <= k <= MAX_K:
        raise CapExceeded(f"k must be in 1..{MAX_K}")
    if not 1 <= n <= MAX_N:
        raise CapExceeded(f"n must be in 1..{MAX_N}")


def surjection_count(m: int, n: int) -> int:
    """Maps from n worlds onto a fixed set of m types, by inclusion-exclusion."""
    return sum((-1) ** j * math.comb(m, j) * (m - j) ** n for j in range(m + 1))


def mlu_partition(k: int, n: int) -> Partition:
    """One class per nonempty type set with at most n members."""
    _check_caps(k, n)
    classes = []
    for ts in range(1, 1 << (1 << k)):
        m = bin(ts).count("1")
        if m <= n:
            classes.append((ts, surjection_count(m, n)))
    return Partition(MLU, k, n, 2 ** (k * n), tuple(classes))


def multinomial(counts) -> int:
    out, acc = 1, 0
    for c in counts:
        acc += c
        out *= math.comb(acc, c)
    return out


def gmlu_partition(k: int, n: int) -> Partition:
    """One class per type-count vector; the size is a multinomial coefficient."""
    _check_caps(k, n)
    ell = 1 << k
    if math.comb(n + ell - 1, ell - 1) > MAX_CLASSES:
        raise CapExceeded(f"too many GMLU classes for k={k}, n={n}")
    classes = tuple((c, multinomial(c)) for c in compositions(n, ell))
    return Partition(GMLU, k, n, 2 ** (k * n), classes)


def partition_for(dialect: str, k: int, n: int) -> Partition:
    if dialect == MLU:
        return mlu_partition(k, n)
    if dialect == GMLU:
        return gmlu_partition(k, n)
    raise ValueError(f"no closed-form partition for dialect {dialect!r}")


def class_stats(p: Partition) -> list[ClassStats]:
    return [
        ClassStats(cid, size, math.log2(size), Fraction(size, p.universe_size))
        for cid, size in p.classes
    ]


def entropy_stats(p: Partition) -> EntropyStats:
    total = p.universe_size
    log_total = math.log2(total)
    shannon = []
    boltz = []
    for _, size in p.classes:
        prob = size / total
        log_size = math.log2(size)
        shannon.append(prob * (log_total - log_size))
        boltz.append(prob * log_size)
    return EntropyStats(math.fsum(shannon), math.fsum(boltz), log_total)


def expected_boltzmann(k: int, n: int) -> float:
    return entropy_stats(gmlu_partition(k, n)).expected_boltzmann


def expected_boltzmann_ratio(k: int, n: int) -> float:
    """Expected Boltzmann entropy of the isomorphism partition divided by k*n."""
    return expected_boltzmann(k, n) / (k * n)


def per_element_entropy(k: int, n: int) -> float:
    """Expected Shannon entropy of the empirical type distribution n_i / n."""
    total = 2 ** (k * n)
    terms = []
    for counts in compositions(n, 1 << k):
        h = math.fsum(c / n * math.log2(n / c) for c in counts if c)
        terms.append(multinomial(counts) / total * h)
    return math.fsum(terms)


# ---------------------------------------------------------------- concentration


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _bounded_compositions(n: int, parts: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if lo <= n <= hi:
            yield (n,)
        return
    for first in range(max(lo, 0), min(hi, n) + 1):
        for rest in _bounded_compositions(n - first, parts - 1, lo, hi):
            yield (first,) + rest


def even_split_mass(k: int, n: int, delta) -> Fraction:
    """Probability that every type frequency is within ``delta`` of 2^-k (strictly)."""
    d = _as_fraction(delta)
    if d <= 0:
        raise ValueError("delta must be positive")
    ell = 1 << k
    # |n_i/n - 1/ell| < d  <=>  |n_i*ell - n| < d*n*ell
    slack = d * n * ell
    admissible = [c for c in range(n + 1) if abs(c * ell - n) < slack]
    if not admissible:
        return Fraction(0)
    total = 0
    for counts in _bounded_compositions(n, ell, admissible[0], admissible[-1]):
        total += multinomial(counts)
    return Fraction(total, 2 ** (k * n))


def even_split_threshold(k: int, delta, level=Fraction(9, 10), n_max: int = 200) -> int | None:
    """Smallest n <= n_max whose concentration mass exceeds ``level``."""
    for n in range(1, n_max + 1):
        if even_split_mass(k, n, delta) > level:
            return n
    return None


def type_entropy_floor(k: int, delta: float) -> float:
    """Lower bound on the expected per-element type entropy, in bits."""
    ell = 2.0 ** k
    if not 0 <= delta < 1 / ell:
        raise ValueError(f"delta must lie in [0, 2^-{k})")
    return ell * (1 / ell - delta) * math.log2(ell / (1 + delta * ell)) * (1 - delta)


def missing_type_probability(k: int, n: int) -> tuple[Fraction, float]:
    """(exact probability some type is unrealized, union bound 2^k (1 - 2^-k)^n)."""
    _check_caps(k, n)
    full = surjection_count(1 << k, n)
    exact = 1 - Fraction(full, 2 ** (k * n))
    union = (1 << k) * (1 - 2.0 ** -k) ** n
    return exact, union


def largest_class_threshold(k: int, n_max: int = MAX_N) -> int | None:
    """Least n0 such that the all-types class is strictly largest for all n0 <= n <= n_max."""
    ell = 1 << k
    good = [
        all(surjection_count(m, n) < surjection_count(ell, n) for m in range(1, ell))
        for n in range(1, n_max + 1)
    ]
    threshold = None
    for n in range(n_max, 0, -1):
        if not good[n - 1]:
            break
        threshold = n
    return threshold


def stirling_gap(n: int) -> float:
    """log2(n!) - (n log2 n - n log2 e)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return math.lgamma(n + 1) / math.log(2) - (n * math.log2(n) - n * math.log2(math.e))


def lln_demo(k: int, n: int, trials: int, seed: int) -> float:
    """Mean over trials of max_i |n_i/n - 2^-k| for uniformly random models."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    ell = 1 << k
    devs = []
    for _ in range(trials):
        counts = np.bincount(rng.integers(0, ell, size=n), minlength=ell)
        devs.append(float(np.max(np.abs(counts / n - 1 / ell))))
    return math.fsum(devs) / trials
