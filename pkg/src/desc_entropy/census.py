"""Structure counts for relational vocabularies: labeled, up to isomorphism,
rigid; plus the sentence-counting and entropy-versus-complexity bounds.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .models import CapExceeded

BURNSIDE_MAX_N = 7
EXHAUSTIVE_MAX_CELLS = 16


@dataclass(frozen=True)
class CensusRow:
    n: int
    labeled: int
    iso: int
    rigid_labeled: int | None
    fagin_ratio: float

    @property
    def rigid_fraction(self) -> Fraction | None:
        if self.rigid_labeled is None:
            return None
        return Fraction(self.rigid_labeled, self.labeled)


def cell_count(arities, n: int) -> int:
    """p(n): number of relation cells (atomic facts) over a domain of size n."""
    return sum(n ** a for a in arities)


def _integer_partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _integer_partitions(n - first, first):
            yield (first,) + rest


def _class_size(cycle_type) -> int:
    """Number of permutations of sum(cycle_type) points with this cycle type."""
    n = sum(cycle_type)
    z = 1
    for length, mult in ((l, cycle_type.count(l)) for l in set(cycle_type)):
        z *= length ** mult * math.factorial(mult)
    return math.factorial(n) // z


def _permutation_from_type(cycle_type) -> list[int]:
    perm, start = [], 0
    for length in cycle_type:
        perm += [start + (i + 1) % length for i in range(length)]
        start += length
    return perm


def _tuple_cycles(perm, arity: int) -> int:
    n = len(perm)
    seen = set()
    cycles = 0
    for tup in itertools.product(range(n), repeat=arity):
        if tup in seen:
            continue
        cycles += 1
        cur = tup
        while cur not in seen:
            seen.add(cur)
            cur = tuple(perm[e] for e in cur)
    return cycles


def burnside_iso_count(arities, n: int) -> int:
    """Isomorphism classes of structures on n points, by orbit counting over cycle types."""
    if n > BURNSIDE_MAX_N:
        raise CapExceeded(f"orbit counting capped at n = {BURNSIDE_MAX_N}")
    total = 0
    for ct in _integer_partitions(n):
        perm = _permutation_from_type(ct)
        fixed = 1
        for a in arities:
            fixed *= 2 ** _tuple_cycles(perm, a)
        total += _class_size(ct) * fixed
    assert total % math.factorial(n) == 0
    return total // math.factorial(n)


def exhaustive_counts(arities, n: int) -> tuple[int, int]:
    """(isomorphism classes, rigid labeled structures) by brute force over all labeled structures."""
    cells = [(r, t) for r, a in enumerate(arities) for t in itertools.product(range(n), repeat=a)]
    if len(cells) > EXHAUSTIVE_MAX_CELLS:
        raise CapExceeded(f"{len(cells)} cells is too many for exhaustive census")
    index = {c: i for i, c in enumerate(cells)}
    masks = np.arange(1 << len(cells), dtype=np.int64)
    canon = masks.copy()
    fixed_by = np.zeros(masks.shape, dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        image = np.zeros_like(masks)
        for i, (r, t) in enumerate(cells):
            j = index[(r, tuple(perm[e] for e in t))]
            image |= ((masks >> i) & 1) << j
        canon = np.minimum(canon, image)
        fixed_by += image == masks
    iso = int(np.unique(canon).size)
    rigid = int(np.count_nonzero(fixed_by == 1))
    return iso, rigid


def census(arities=(2,), n_max: int = 4, exhaustive_max: int = 4) -> list[CensusRow]:
    arities = tuple(arities)
    if n_max > BURNSIDE_MAX_N:
        raise CapExceeded(f"census capped at n = {BURNSIDE_MAX_N}")
    rows = []
    for n in range(1, n_max + 1):
        labeled = 2 ** cell_count(arities, n)
        iso = burnside_iso_count(arities, n)
        rigid = None
        if n <= exhaustive_max:
            iso_check, rigid = exhaustive_counts(arities, n)
            if iso_check != iso:
                raise AssertionError(f"orbit count {iso} disagrees with brute force {iso_check} at n={n}")
        ratio = float(Fraction(iso * math.factorial(n), labeled))
        rows.append(CensusRow(n, labeled, iso, rigid, ratio))
    return rows


# ---------------------------------------------------------------- sentence counting


def sentence_count_bound(arities, n: int, s: int) -> int:
    """2^ceil(10 s log2(N + 4)) with N the number of atomic formulas over the domain."""
    if s < 2:
        raise ValueError("s must be >= 2")
    atoms = cell_count(arities, n)
    exponent = 10 * s * math.log2(atoms + 4)
    return 2 ** math.ceil(exponent - 1e-9)


def fo_sentence_counts(arities, max_size: int, nvars: int = 2) -> list[int]:
    """Number of closed FO formulas (NNF, binary connectives) of each size 1..max_size
    over ``nvars`` variables.  Counts syntax trees, grouped by free-variable set."""
    by_size: list[dict[int, int]] = [dict() for _ in range(max_size + 1)]

    def add(s, fv, count):
        by_size[s][fv] = by_size[s].get(fv, 0) + count

    def mask(vs):
        out = 0
        for v in vs:
            out |= 1 << v
        return out

    for x, y in itertools.product(range(nvars), repeat=2):
        add(1, mask((x, y)), 2)
    for a in arities:
        for args in itertools.product(range(nvars), repeat=a):
            add(1, mask(args), 2)
    for s in range(2, max_size + 1):
        for fv, cnt in by_size[s - 1].items():
            for v in range(nvars):
                add(s, fv & ~(1 << v), 2 * cnt)
        for s1 in range(1, s - 1):
            s2 = s - 1 - s1
            for f1, c1 in by_size[s1].items():
                for f2, c2 in by_size[s2].items():
                    add(s, f1 | f2, 2 * c1 * c2)
    return [by_size[s].get(0, 0) for s in range(1, max_size + 1)]


def ratio_test(arities, n: int, c: float, d: float) -> float:
    """Base b of the short-sentence-to-class ratio bound b^(n^m)."""
    if c <= 0 or d <= 0:
        raise ValueError("c and d must be positive")
    if n < 2:
        raise ValueError("n must be >= 2")
    m = max(arities)
    return 2.0 ** (10 * c * d + math.log2(n) / n ** (m - 1) - 1)


# ---------------------------------------------------------------- bound comparison


@dataclass(frozen=True)
class BoundComparison:
    n: int
    entropy_upper: float
    complexity_lower: float
    m: int
    c: float

    @property
    def ratio(self) -> float:
        return self.complexity_lower / self.entropy_upper


def entropy_upper(n):
    """Upper estimate of the expected Boltzmann entropy: log2 n! with the log term as 2 log2 n."""
    n = np.asarray(n, dtype=float)
    return n * np.log2(n) - n * np.log2(np.e) + 2 * np.log2(n)


def complexity_lower(n, m: int, c: float):
    n = np.asarray(n, dtype=float)
    return 0.5 * c * n ** m / np.log2(n)


def find_crossover(m: int, c: float, n_max: int = 10 ** 6) -> int | None:
    """Least n in 2..n_max with complexity_lower(n) > entropy_upper(n)."""
    ns = np.arange(2, n_max + 1)
    hit = np.nonzero(complexity_lower(ns, m, c) > entropy_upper(ns))[0]
    return int(ns[hit[0]]) if hit.size else None


def bounds_compare(m: int, c: float, n_range) -> tuple[list[BoundComparison], int | None]:
    """Both curves over ``n_range`` and the least n in it where the complexity bound wins."""
    if m < 2:
        raise ValueError("m must be >= 2")
    ns = [int(n) for n in n_range]
    if not ns:
        raise ValueError("empty n range")
    if min(ns) < 2:
        raise ValueError("n must be >= 2")
    hu = entropy_upper(ns)
    cl = complexity_lower(ns, m, c)
    rows = [BoundComparison(n, float(h), float(l), m, c) for n, h, l in zip(ns, hu, cl)]
    crossover = next((r.n for r in sorted(rows, key=lambda r: r.n) if r.complexity_lower > r.entropy_upper), None)
    return rows, crossover


def log_grid(lo: int, hi: int, per_decade: int = 4) -> list[int]:
    """Sorted distinct integers spread evenly in log scale between lo and hi inclusive."""
    steps = max(1, round(per_decade * math.log10(hi / lo)))
    vals = {int(round(lo * (hi / lo) ** (i / steps))) for i in range(steps + 1)}
    return sorted(vals | {lo, hi})
