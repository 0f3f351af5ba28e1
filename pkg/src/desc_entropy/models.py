"""Finite Kripke models (no accessibility relation) and relational structures.

Worlds and domain elements are numbered 1..n.  A 1-type over k propositions
is an integer mask in [0, 2^k) where bit i set means p_{i+1} is false, so
mask 0 is the all-positive type and type-count vectors list it first.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

KRIPKE_ENUM_CAP = 24  # max k * n for full enumeration
PERMUTATION_CAP = 6   # max n for brute-force canonical forms


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class KripkeModel:
    k: int
    types: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if len(self.types) < 1:
            raise ValueError("models need at least one world")
        limit = 1 << self.k
        if any(not 0 <= t < limit for t in self.types):
            raise ValueError(f"world types must lie in [0, {limit})")

    @property
    def n(self) -> int:
        return len(self.types)

    def type_of(self, world: int) -> int:
        return self.types[world - 1]


@dataclass(frozen=True)
class PointedModel:
    model: KripkeModel
    point: int

    def __post_init__(self):
        if not 1 <= self.point <= self.model.n:
            raise ValueError(f"point {self.point} outside 1..{self.model.n}")

    @property
    def point_type(self) -> int:
        return self.model.type_of(self.point)


@dataclass(frozen=True)
class RelationalStructure:
    n: int
    arities: tuple[int, ...]
    relations: tuple[frozenset, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("structures need a nonempty domain")
        if len(self.arities) != len(self.relations):
            raise ValueError("one tuple set per relation symbol required")
        for arity, rel in zip(self.arities, self.relations):
            for tup in rel:
                if len(tup) != arity or any(not 1 <= e <= self.n for e in tup):
                    raise ValueError(f"bad tuple {tup!r} for arity {arity} over 1..{self.n}")

    @classmethod
    def make(cls, n: int, arities: Sequence[int], relations: Sequence) -> "RelationalStructure":
        return cls(n, tuple(arities), tuple(frozenset(tuple(t) for t in rel) for rel in relations))

    def key(self) -> tuple:
        return tuple(tuple(sorted(rel)) for rel in self.relations)

    def permuted(self, perm: Sequence[int]) -> "RelationalStructure":
        """Image under the relabelling element e -> perm[e-1] (1-based values)."""
        rels = tuple(frozenset(tuple(perm[e - 1] for e in tup) for tup in rel) for rel in self.relations)
        return RelationalStructure(self.n, self.arities, rels)


# ---------------------------------------------------------------- Kripke side


def enumerate_kripke(k: int, n: int) -> Iterator[KripkeModel]:
    """All (2^k)^n models over worlds 1..n in lexicographic order of type tuples."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    if k * n > KRIPKE_ENUM_CAP:
        raise CapExceeded(f"k*n = {k * n} exceeds enumeration cap {KRIPKE_ENUM_CAP}")
    for types in itertools.product(range(1 << k), repeat=n):
        yield KripkeModel(k, types)


def classify(model: KripkeModel) -> tuple[int, tuple[int, ...]]:
    """(type-set mask over the 2^k types, type-count vector)."""
    counts = [0] * (1 << model.k)
    for t in model.types:
        counts[t] += 1
    typeset = 0
    for t, c in enumerate(counts):
        if c:
            typeset |= 1 << t
    return typeset, tuple(counts)


def typeset_members(typeset: int) -> list[int]:
    return [t for t in range(typeset.bit_length()) if typeset >> t & 1]


def compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative integer vectors of length ``parts`` summing to ``n``, lexicographic."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def kripke_from_counts(k: int, counts: Sequence[int]) -> KripkeModel:
    """Representative model: worlds filled type by type in mask order."""
    if len(counts) != 1 << k:
        raise ValueError(f"need {1 << k} counts for k={k}")
    types = [t for t, c in enumerate(counts) for _ in range(c)]
    return KripkeModel(k, tuple(types))


def kripke_from_typeset(k: int, typeset: int, n: int) -> KripkeModel:
    """Representative model of the class realizing exactly ``typeset`` on n worlds."""
    members = typeset_members(typeset)
    if not members or len(members) > n:
        raise ValueError(f"type set {typeset:b} not realizable on {n} worlds")
    types = members + [members[-1]] * (n - len(members))
    return KripkeModel(k, tuple(types))


def type_name(k: int, t: int) -> str:
    return ",".join(("!" if t >> i & 1 else "") + f"p{i + 1}" for i in range(k))


_WORLD = re.compile(r"w(\d+)\s*:\s*(.*)")


def parse_kripke(text: str, k: int) -> KripkeModel:
    """Parse ``n=3; w1:p1; w2:p1; w3:!p1`` (each world lists its full literal set)."""
    parts = [p.strip() for p in text.split(";") if p.strip()]
    if not parts or not parts[0].startswith("n="):
        raise ValueError("model text must start with n=<size>")
    n = int(parts[0][2:])
    types: list[int | None] = [None] * n
    for part in parts[1:]:
        m = _WORLD.fullmatch(part)
        if not m:
            raise ValueError(f"bad world entry {part!r}")
        w = int(m.group(1))
        if not 1 <= w <= n:
            raise ValueError(f"world w{w} outside 1..{n}")
        seen: dict[int, bool] = {}
        for lit in re.split(r"[,&\s]+", m.group(2).strip()):
            lm = re.fullmatch(r"(!?)p(\d+)", lit)
            if not lm:
                raise ValueError(f"bad literal {lit!r}")
            i = int(lm.group(2))
            if not 1 <= i <= k:
                raise ValueError(f"unknown proposition p{i}")
            seen[i] = lm.group(1) == ""
        if set(seen) != set(range(1, k + 1)):
            raise ValueError(f"world w{w} must list a literal for every proposition")
        types[w - 1] = sum((0 if seen[i] else 1) << (i - 1) for i in range(1, k + 1))
    if any(t is None for t in types):
        raise ValueError("every world needs a type")
    return KripkeModel(k, tuple(types))  # type: ignore[arg-type]


def render_kripke(model: KripkeModel) -> str:
    worlds = "; ".join(f"w{w}:{type_name(model.k, t)}" for w, t in enumerate(model.types, start=1))
    return f"n={model.n}; {worlds}"


# ---------------------------------------------------------------- relational side

_REL = re.compile(r"R(\d+)\s*=\s*\{(.*)\}")


def parse_structure(text: str, arities: Sequence[int]) -> RelationalStructure:
    """Parse ``n=3; R1={(1,2),(2,3)}``; unmentioned relations are empty."""
    parts = [p.strip() for p in text.split(";") if p.strip()]
    if not parts or not parts[0].startswith("n="):
        raise ValueError("structure text must start with n=<size>")
    n = int(parts[0][2:])
    rels: list[set] = [set() for _ in arities]
    for part in parts[1:]:
        m = _REL.fullmatch(part)
        if not m:
            raise ValueError(f"bad relation entry {part!r}")
        idx = int(m.group(1))
        if not 1 <= idx <= len(arities):
            raise ValueError(f"unknown relation R{idx}")
        for tup in re.findall(r"\(([^)]*)\)", m.group(2)):
            rels[idx - 1].add(tuple(int(x) for x in tup.split(",")))
    return RelationalStructure.make(n, arities, rels)


def render_structure(s: RelationalStructure) -> str:
    body = "; ".join(
        f"R{i}={{{','.join('(' + ','.join(map(str, t)) + ')' for t in sorted(rel))}}}"
        for i, rel in enumerate(s.relations, start=1)
    )
    return f"n={s.n}; {body}" if body else f"n={s.n}"


def enumerate_structures(arities: Sequence[int], n: int) -> Iterator[RelationalStructure]:
    """All labeled structures over 1..n (2^p(n) of them)."""
    cells = [list(itertools.product(range(1, n + 1), repeat=a)) for a in arities]
    total = sum(len(c) for c in cells)
    if total > 20:
        raise CapExceeded(f"{total} relation cells is too many to enumerate")
    flat = [(r, c) for r, cs in enumerate(cells) for c in cs]
    for mask in range(1 << total):
        rels = [set() for _ in arities]
        for b, (r, c) in enumerate(flat):
            if mask >> b & 1:
                rels[r].add(c)
        yield RelationalStructure.make(n, arities, rels)


def _check_perm_cap(n: int) -> None:
    if n > PERMUTATION_CAP:
        raise CapExceeded(f"n = {n} exceeds brute-force permutation cap {PERMUTATION_CAP}")


def canonical_form(s: RelationalStructure) -> RelationalStructure:
    """Lexicographically least isomorphic copy (minimizes the sorted tuple lists)."""
    _check_perm_cap(s.n)
    best = None
    for perm in itertools.permutations(range(1, s.n + 1)):
        cand = s.permuted(perm)
        if best is None or cand.key() < best.key():
            best = cand
    return best


def automorphism_count(s: RelationalStructure) -> int:
    _check_perm_cap(s.n)
    return sum(1 for perm in itertools.permutations(range(1, s.n + 1)) if s.permuted(perm) == s)


def is_rigid(s: RelationalStructure) -> bool:
    return automorphism_count(s) == 1
