"""Truth evaluation and denotations over class universes.

A denotation is a plain ``int`` bitset: bit i is set iff the formula holds in
the i-th class of a :class:`Universe`.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from .models import (
    CapExceeded,
    KripkeModel,
    RelationalStructure,
    canonical_form,
    compositions,
    enumerate_structures,
    kripke_from_counts,
    kripke_from_typeset,
)
from .syntax import (
    FO,
    GMLU,
    MLU,
    And,
    Atom,
    Box,
    Dia,
    Eq,
    Exists,
    Forall,
    Formula,
    FormulaError,
    Lit,
    Or,
    free_vars,
    is_global,
    render,
)

FO_EVAL_CAP = 6


def world_truth(model: KripkeModel, f: Formula) -> tuple[bool, ...]:
    """Truth value of ``f`` at every world (pointed semantics)."""
    if isinstance(f, Lit):
        if not 1 <= f.prop <= model.k:
            raise FormulaError(f"proposition p{f.prop} not in the model's vocabulary")
        bit = f.prop - 1
        return tuple(((t >> bit) & 1 == 0) == f.positive for t in model.types)
    if isinstance(f, And):
        return tuple(a and b for a, b in zip(world_truth(model, f.left), world_truth(model, f.right)))
    if isinstance(f, Or):
        return tuple(a or b for a, b in zip(world_truth(model, f.left), world_truth(model, f.right)))
    if isinstance(f, Dia):
        value = sum(world_truth(model, f.child)) >= f.grade
        return (value,) * model.n
    if isinstance(f, Box):
        value = model.n - sum(world_truth(model, f.child)) < f.grade
        return (value,) * model.n
    raise FormulaError(f"{type(f).__name__} is not a modal construct")


def eval_gmlu(model: KripkeModel, f: Formula) -> bool:
    """Point-free truth of a GMLU (or MLU) formula."""
    if not is_global(f):
        raise FormulaError("literal outside the scope of a modality")
    return world_truth(model, f)[0]


def eval_fo(s: RelationalStructure, sentence: Formula, assignment: dict[int, int] | None = None) -> bool:
    """Tarskian truth; ``sentence`` must be closed unless an assignment covers its free variables."""
    if s.n > FO_EVAL_CAP:
        raise CapExceeded(f"FO evaluation capped at n = {FO_EVAL_CAP}")
    assignment = dict(assignment or {})
    missing = free_vars(sentence) - set(assignment)
    if missing:
        raise FormulaError(f"free variables {sorted(missing)} without assignment")

    def go(g: Formula, env: dict[int, int]) -> bool:
        if isinstance(g, Eq):
            return (env[g.left] == env[g.right]) == g.positive
        if isinstance(g, Atom):
            return (tuple(env[v] for v in g.args) in s.relations[g.rel - 1]) == g.positive
        if isinstance(g, And):
            return go(g.left, env) and go(g.right, env)
        if isinstance(g, Or):
            return go(g.left, env) or go(g.right, env)
        if isinstance(g, (Exists, Forall)):
            results = (go(g.child, {**env, g.var: e}) for e in range(1, s.n + 1))
            return any(results) if isinstance(g, Exists) else all(results)
        raise FormulaError(f"{type(g).__name__} is not a first-order construct")

    return go(sentence, assignment)


# ---------------------------------------------------------------- universes


@dataclass(frozen=True)
class Universe:
    """Indexed equivalence classes of Mod_n together with one representative each."""

    dialect: str
    n: int
    classes: tuple
    representatives: tuple
    k: int = 0
    arities: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def full(self) -> int:
        return (1 << len(self.classes)) - 1

    def index(self, class_id) -> int:
        return self.classes.index(class_id)

    def bitset(self, class_ids) -> int:
        out = 0
        for c in class_ids:
            out |= 1 << self.index(c)
        return out

    def members(self, den: int) -> list:
        return [c for i, c in enumerate(self.classes) if den >> i & 1]

    def restrict(self, class_ids: Sequence) -> "Universe":
        """Sub-universe over the given classes, in their existing order."""
        keep = sorted({self.index(c) for c in class_ids})
        return Universe(
            self.dialect,
            self.n,
            tuple(self.classes[i] for i in keep),
            tuple(self.representatives[i] for i in keep),
            self.k,
            self.arities,
        )


@functools.lru_cache(maxsize=None)
def mlu_universe(k: int, n: int) -> Universe:
    """Nonempty type sets realizable on n worlds, ordered by mask."""
    ids = tuple(ts for ts in range(1, 1 << (1 << k)) if bin(ts).count("1") <= n)
    reps = tuple(kripke_from_typeset(k, ts, n) for ts in ids)
    return Universe(MLU, n, ids, reps, k=k)


@functools.lru_cache(maxsize=None)
def gmlu_universe(k: int, n: int) -> Universe:
    ids = tuple(compositions(n, 1 << k))
    reps = tuple(kripke_from_counts(k, c) for c in ids)
    return Universe(GMLU, n, ids, reps, k=k)


@functools.lru_cache(maxsize=None)
def fo_universe(arities: tuple[int, ...], n: int) -> Universe:
    """Isomorphism classes of structures of size n, ordered by canonical key."""
    forms = {canonical_form(s) for s in enumerate_structures(arities, n)}
    ordered = tuple(sorted(forms, key=lambda s: s.key()))
    return Universe(FO, n, tuple(s.key() for s in ordered), ordered, arities=tuple(arities))


def universe_for(dialect: str, n: int, k: int = 1, arities: tuple[int, ...] = (2,)) -> Universe:
    if dialect == MLU:
        return mlu_universe(k, n)
    if dialect == GMLU:
        return gmlu_universe(k, n)
    if dialect == FO:
        return fo_universe(tuple(arities), n)
    raise ValueError(f"unknown dialect {dialect!r}")


@functools.lru_cache(maxsize=65536)
def _denotation_cached(text: str, f: Formula, universe: Universe) -> int:
    den = 0
    for i, rep in enumerate(universe.representatives):
        holds = eval_fo(rep, f) if universe.dialect == FO else eval_gmlu(rep, f)
        if holds:
            den |= 1 << i
    return den


def denotation(f: Formula, universe: Universe) -> int:
    """Bitset of classes satisfying ``f``; truth is class-invariant, so representatives suffice."""
    if universe.dialect == MLU and any(isinstance(g, (Dia, Box)) and g.grade != 1 for g in _walk(f)):
        raise FormulaError("MLU universe needs grade-1 modalities")
    return _denotation_cached(render(f), f, universe)


def _walk(f):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        for attr in ("left", "right", "child"):
            child = getattr(g, attr, None)
            if child is not None and not isinstance(child, int):
                stack.append(child)
