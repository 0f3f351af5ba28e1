"""Minimal formula sizes by bottom-up search over denotations, plus the
explicit defining formulas for MLU and GMLU classes.

The modal search runs in two layers.  Propositional bodies are minimized
per set of 1-types they accept; graded modalities then lift each body to a
class-level denotation, and conjunction/disjunction close the result.  A
minimal formula only ever needs minimal children (sizes add), so keeping
one minimal witness per denotation is exact.  Modalities over global
subformulas are never needed: a global body is constant on each model, so
the wrapper only adds cost or yields a constant that a propositional body
already reaches more cheaply.  The exhaustive enumerator at the bottom of
this module checks that claim on small cases.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .models import CapExceeded, typeset_members
from .semantics import Universe, fo_universe, gmlu_universe, mlu_universe, world_truth
from .syntax import (
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
    Lit,
    Or,
    conj,
    disj,
    dual_negate,
    type_formula,
)

SEEN_ARRAY_MAX_BITS = 24


# ---------------------------------------------------------------- propositional layer


@functools.lru_cache(maxsize=None)
def propositional_table(k: int, max_size: int) -> dict[int, tuple[int, Formula]]:
    """Minimal propositional formula per accepted type set (bitmask over the 2^k types)."""
    ell = 1 << k
    best: dict[int, tuple[int, Formula]] = {}
    levels: dict[int, list[int]] = {}
    level1 = []
    for i in range(k):
        pos = sum(1 << t for t in range(ell) if not t >> i & 1)
        for den, lit in ((pos, Lit(i + 1, True)), (((1 << ell) - 1) ^ pos, Lit(i + 1, False))):
            if den not in best:
                best[den] = (1, lit)
                level1.append(den)
    levels[1] = level1
    for s in range(2, max_size + 1):
        levels[s] = []
        for s1 in range(1, s - 1):
            s2 = s - 1 - s1
            if s1 > s2:
                break
            for a in levels.get(s1, ()):
                for b in levels.get(s2, ()):
                    for den, ctor in ((a & b, And), (a | b, Or)):
                        if den not in best:
                            best[den] = (s, ctor(best[a][1], best[b][1]))
                            levels[s].append(den)
    return best


# ---------------------------------------------------------------- class-level closure


@dataclass(frozen=True)
class SizeTable:
    """Minimal size and a back-pointer per denotation reached within ``budget``."""

    universe: Universe
    budget: int
    entries: dict  # den -> (size, how)
    atom_formulas: tuple

    def min_size(self, den: int) -> int | None:
        entry = self.entries.get(den)
        return entry[0] if entry else None

    def witness(self, den: int) -> Formula | None:
        if den not in self.entries:
            return None
        return self._build(den)

    def _build(self, den: int) -> Formula:
        _, how = self.entries[den]
        if how[0] == "atom":
            return self.atom_formulas[how[1]]
        ctor = And if how[0] == "and" else Or
        return ctor(self._build(how[1]), self._build(how[2]))


def _modal_atoms(universe: Universe, budget: int):
    """Graded modal atoms over minimal propositional bodies: (size, den, formula)."""
    k, n = universe.k, universe.n
    ell = 1 << k
    props = propositional_table(k, max(1, budget - 1))
    grades = [1] if universe.dialect == MLU else list(range(1, n + 2))
    atoms = []
    for pden in sorted(props):
        psize, pform = props[pden]
        for d in grades:
            if psize + d > budget:
                continue
            dia_den = box_den = 0
            for idx, cls in enumerate(universe.classes):
                if universe.dialect == MLU:
                    inside = cls & pden
                    dia_ok = inside != 0
                    box_ok = cls & ~pden == 0
                else:
                    inside = sum(cls[t] for t in range(ell) if pden >> t & 1)
                    dia_ok = inside >= d
                    box_ok = n - inside < d
                if dia_ok:
                    dia_den |= 1 << idx
                if box_ok:
                    box_den |= 1 << idx
            atoms.append((psize + d, dia_den, Dia(d, pform)))
            atoms.append((psize + d, box_den, Box(d, pform)))
    return atoms


def _closure(universe: Universe, budget: int, atoms, prune_constants: bool) -> SizeTable:
    width = len(universe)
    full = (1 << width) - 1
    use_array = width <= SEEN_ARRAY_MAX_BITS
    use_numpy = width <= 63
    seen_arr = np.zeros(1 << width, dtype=bool) if use_array else None
    entries: dict[int, tuple] = {}
    levels: dict[int, list[int]] = {}
    level_arrays: dict[int, np.ndarray] = {}
    atom_formulas = tuple(f for _, _, f in atoms)

    def record(den: int, s: int, how: tuple, level: list[int]):
        entries[den] = (s, how)
        if seen_arr is not None:
            seen_arr[den] = True
        if not (prune_constants and den in (0, full)):
            level.append(den)

    for s in range(1, budget + 1):
        level: list[int] = []
        for idx, (asize, aden, _) in enumerate(atoms):
            if asize == s and aden not in entries:
                record(aden, s, ("atom", idx), level)
        for s1 in range(1, s - 1):
            s2 = s - 1 - s1
            if s1 > s2:
                break
            left, right = levels.get(s1), levels.get(s2)
            if not left or not right:
                continue
            for op in ("and", "or"):
                if use_numpy:
                    a, b = level_arrays[s1], level_arrays[s2]
                    vals = (np.bitwise_and if op == "and" else np.bitwise_or).outer(a, b).ravel()
                    if seen_arr is not None:
                        fresh = np.nonzero(~seen_arr[vals])[0]
                    else:
                        fresh = np.array([i for i, v in enumerate(vals.tolist()) if v not in entries], dtype=np.int64)
                    if fresh.size == 0:
                        continue
                    uniq, first = np.unique(vals[fresh], return_index=True)
                    pos = fresh[first]
                    order = np.argsort(pos, kind="stable")
                    for v, p in zip(uniq[order].tolist(), pos[order].tolist()):
                        if v in entries:
                            continue
                        i, j = divmod(p, len(b))
                        record(v, s, (op, left[i], right[j]), level)
                else:
                    for x in left:
                        for y in right:
                            v = x & y if op == "and" else x | y
                            if v not in entries:
                                record(v, s, (op, x, y), level)
        levels[s] = level
        if use_numpy:
            level_arrays[s] = np.array(level, dtype=np.uint64)
    return SizeTable(universe, budget, entries, atom_formulas)


@functools.lru_cache(maxsize=64)
def modal_size_table(universe: Universe, budget: int, prune_constants: bool = False) -> SizeTable:
    if universe.dialect not in (MLU, GMLU):
        raise ValueError("modal size tables need an MLU or GMLU universe")
    return _closure(universe, budget, _modal_atoms(universe, budget), prune_constants)


def _check_modal_caps(dialect: str, k: int, n: int, budget: int) -> None:
    if dialect == MLU:
        ok = k <= 2 and n <= 6 and budget <= 24
    elif k == 1:
        ok = n <= 6 and budget <= 14
    else:
        ok = k == 2 and n <= 3 and budget <= 10
    if not ok:
        raise CapExceeded(f"{dialect} search outside caps (k={k}, n={n}, budget={budget})")


def min_size_mlu(k: int, n: int, target: int, budget: int, prune_constants: bool = False):
    """(size, witness) of a minimal MLU formula denoting ``target`` over mlu_universe(k, n), or None."""
    _check_modal_caps(MLU, k, n, budget)
    table = modal_size_table(mlu_universe(k, n), budget, prune_constants)
    s = table.min_size(target)
    return None if s is None else (s, table.witness(target))


def min_size_gmlu(k: int, n: int, target: int, budget: int, prune_constants: bool = False):
    """(size, witness) of a minimal GMLU formula denoting ``target`` over gmlu_universe(k, n), or None."""
    _check_modal_caps(GMLU, k, n, budget)
    table = modal_size_table(gmlu_universe(k, n), budget, prune_constants)
    s = table.min_size(target)
    return None if s is None else (s, table.witness(target))


def min_separating_size(universe: Universe, true_classes, false_classes, budget: int):
    """Minimal formula true on every class in ``true_classes`` and false on every class in
    ``false_classes``; None if none exists within ``budget`` (or the sets overlap)."""
    true_classes, false_classes = set(true_classes), set(false_classes)
    if true_classes & false_classes:
        return None
    sub = universe.restrict(sorted(true_classes | false_classes, key=universe.index))
    table = modal_size_table(sub, budget)
    target = sub.bitset(true_classes)
    s = table.min_size(target)
    return None if s is None else (s, table.witness(target))


# ---------------------------------------------------------------- explicit constructions


def typeset_defining_formula(k: int, typeset: int) -> Formula:
    """Defining MLU formula of the class realizing exactly the types in ``typeset``."""
    ell = 1 << k
    members = typeset_members(typeset)
    if not members or typeset >> ell:
        raise ValueError("type set must be a nonempty subset of the 2^k types")
    parts: list[Formula] = [Dia(1, type_formula(k, t)) for t in members]
    missing = [t for t in range(ell) if not typeset >> t & 1]
    if missing:
        parts.append(Box(1, conj(dual_negate(type_formula(k, t)) for t in missing)))
    return conj(parts)


def typeset_defining_size(k: int, typeset: int) -> int:
    m = bin(typeset).count("1")
    return k * 2 ** (k + 1) + (2 ** k - 1 if m == 2 ** k else m)


def _realized(counts) -> list[int]:
    return [t for t, c in enumerate(counts) if c]


def largest_type(counts) -> int:
    """Index of the most frequent type (first on ties)."""
    return max(range(len(counts)), key=lambda t: (counts[t], -t))


def at_least_formula(k: int, counts) -> Formula:
    """Conjunction of at-least-|pi_i| counting conjuncts over the realized types."""
    if len(counts) != 1 << k or sum(counts) < 1:
        raise ValueError("counts must be a realizable type-count vector")
    return conj(Dia(counts[t], type_formula(k, t)) for t in _realized(counts))


def exact_count_formula(k: int, counts) -> Formula:
    """Exact counts for every realized type except the largest, plus a global closure conjunct."""
    if len(counts) != 1 << k or sum(counts) < 1:
        raise ValueError("counts must be a realizable type-count vector")
    realized = _realized(counts)
    m = largest_type(counts)
    others = [t for t in realized if t != m]
    parts: list[Formula] = [Box(1, disj(type_formula(k, t) for t in realized))]
    parts += [Dia(counts[t], type_formula(k, t)) for t in others]
    parts += [Box(counts[t] + 1, dual_negate(type_formula(k, t))) for t in others]
    return conj(parts)


def at_least_formula_size(k: int, counts) -> int:
    i = len(_realized(counts))
    return sum(counts) + i * (2 * k - 1) + i - 1


def exact_count_formula_size(k: int, counts) -> int:
    """Closed form of size(exact_count_formula): 2(n - |pi_m|) + 6kq + 2k + q with q = |I| - 1."""
    q = len(_realized(counts)) - 1
    if q == 0:
        return 2 * k
    n = sum(counts)
    return 2 * (n - max(counts)) + 6 * k * q + 2 * k + q


def gmlu_lower_bound(counts) -> int:
    n = sum(counts)
    return min(n, 2 * (n - max(counts)))


# ---------------------------------------------------------------- first-order search


@dataclass(frozen=True)
class FOTable:
    universe: Universe
    nvars: int
    budget: int
    entries: dict  # (den, freevar mask) -> (size, how)
    atom_formulas: tuple
    class_bits: tuple  # per class, mask of its (structure, assignment) bits

    def sentence_den(self, class_den: int) -> int:
        out = 0
        for i, bits in enumerate(self.class_bits):
            if class_den >> i & 1:
                out |= bits
        return out

    def witness(self, key) -> Formula:
        _, how = self.entries[key]
        if how[0] == "atom":
            return self.atom_formulas[how[1]]
        if how[0] in ("exists", "forall"):
            ctor = Exists if how[0] == "exists" else Forall
            return ctor(how[1], self.witness(how[2]))
        ctor = And if how[0] == "and" else Or
        return ctor(self.witness(how[1]), self.witness(how[2]))


@functools.lru_cache(maxsize=16)
def fo_size_table(arities: tuple[int, ...], n: int, budget: int, nvars: int = 2) -> FOTable:
    universe = fo_universe(arities, n)
    assigns = list(itertools.product(range(1, n + 1), repeat=nvars))
    na = len(assigns)
    aidx = {a: i for i, a in enumerate(assigns)}

    def bit(struct_i, assign_i):
        return 1 << (struct_i * na + assign_i)

    class_bits = tuple(sum(bit(si, ai) for ai in range(na)) for si in range(len(universe)))

    # groups of bits that differ only in variable v
    groups = {}
    for v in range(1, nvars + 1):
        gs = []
        for si in range(len(universe)):
            done = set()
            for a in assigns:
                base = a[: v - 1] + (0,) + a[v:]
                if base in done:
                    continue
                done.add(base)
                gs.append(sum(bit(si, aidx[a[: v - 1] + (e,) + a[v:]]) for e in range(1, n + 1)))
        groups[v] = gs

    def quantify(den: int, v: int, existential: bool) -> int:
        out = 0
        for g in groups[v]:
            hit = den & g
            if (hit if existential else hit == g):
                out |= g
        return out

    atoms = []
    var_list = range(1, nvars + 1)
    for x, y in itertools.product(var_list, repeat=2):
        den = 0
        for si in range(len(universe)):
            for ai, a in enumerate(assigns):
                if a[x - 1] == a[y - 1]:
                    den |= bit(si, ai)
        fv = (1 << x) | (1 << y)
        atoms.append((den, fv, Eq(x, y, True)))
        atoms.append((((1 << (len(universe) * na)) - 1) ^ den, fv, Eq(x, y, False)))
    for r, arity in enumerate(arities, start=1):
        for args in itertools.product(var_list, repeat=arity):
            den = 0
            for si, s in enumerate(universe.representatives):
                for ai, a in enumerate(assigns):
                    if tuple(a[v - 1] for v in args) in s.relations[r - 1]:
                        den |= bit(si, ai)
            fv = 0
            for v in args:
                fv |= 1 << v
            atoms.append((den, fv, Atom(r, tuple(args), True)))
            atoms.append((((1 << (len(universe) * na)) - 1) ^ den, fv, Atom(r, tuple(args), False)))

    entries: dict = {}
    levels: dict[int, list] = {1: []}
    for idx, (den, fv, _) in enumerate(atoms):
        key = (den, fv)
        if key not in entries:
            entries[key] = (1, ("atom", idx))
            levels[1].append(key)
    for s in range(2, budget + 1):
        level = []
        for key in levels[s - 1]:
            den, fv = key
            for v in var_list:
                for existential in (True, False):
                    new = (quantify(den, v, existential), fv & ~(1 << v))
                    if new not in entries:
                        entries[new] = (s, ("exists" if existential else "forall", v, key))
                        level.append(new)
        for s1 in range(1, s - 1):
            s2 = s - 1 - s1
            if s1 > s2:
                break
            for ka in levels[s1]:
                for kb in levels[s2]:
                    fv = ka[1] | kb[1]
                    for op, den in (("and", ka[0] & kb[0]), ("or", ka[0] | kb[0])):
                        new = (den, fv)
                        if new not in entries:
                            entries[new] = (s, (op, ka, kb))
                            level.append(new)
        levels[s] = level
    return FOTable(universe, nvars, budget, entries, tuple(f for _, _, f in atoms), class_bits)


def min_size_fo(arities, n: int, target: int, budget: int, var_cap: int = 2):
    """(size, witness) of a minimal FO sentence defining the classes in ``target``
    (bitset over fo_universe(arities, n)), or None within ``budget``."""
    arities = tuple(arities)
    if n > 2 or var_cap > 2 or budget > 10 or max(arities, default=0) > 2:
        raise CapExceeded("FO search is capped at n <= 2, two variables, budget <= 10, arity <= 2")
    table = fo_size_table(arities, n, budget, var_cap)
    key = (table.sentence_den(target), 0)
    if key not in table.entries:
        return None
    return table.entries[key][0], table.witness(key)


# ---------------------------------------------------------------- exhaustive enumeration


def enumerate_modal_formulas(k: int, max_size: int, max_grade: int):
    """Every formula of size <= max_size built from literals, &, | and graded modalities
    up to ``max_grade``, grouped by size.  Includes non-global formulas."""
    by_size: dict[int, list[Formula]] = {s: [] for s in range(1, max_size + 1)}
    for i in range(1, k + 1):
        by_size[1] += [Lit(i, True), Lit(i, False)]
    for s in range(2, max_size + 1):
        out = by_size[s]
        for d in range(1, min(max_grade, s - 1) + 1):
            for child in by_size[s - d]:
                out.append(Dia(d, child))
                out.append(Box(d, child))
        for s1 in range(1, s - 1):
            for a in by_size[s1]:
                for b in by_size[s - 1 - s1]:
                    out.append(And(a, b))
                    out.append(Or(a, b))
    return by_size


def exhaustive_min_sizes(universe: Universe, max_size: int) -> dict[int, int]:
    """Slow independent path: evaluate every enumerated global formula on the class
    representatives and keep the smallest size per denotation."""
    if universe.dialect not in (MLU, GMLU):
        raise ValueError("modal universes only")
    max_grade = 1 if universe.dialect == MLU else universe.n + 1
    reps = universe.representatives
    truth: dict[Formula, tuple] = {}
    best: dict[int, int] = {}
    by_size = enumerate_modal_formulas(universe.k, max_size, max_grade)
    for s in range(1, max_size + 1):
        for f in by_size[s]:
            if isinstance(f, Lit):
                vec = tuple(world_truth(m, f) for m in reps)
            elif isinstance(f, (And, Or)):
                l, r = truth[f.left], truth[f.right]
                op = (lambda a, b: a and b) if isinstance(f, And) else (lambda a, b: a or b)
                vec = tuple(tuple(op(x, y) for x, y in zip(lm, rm)) for lm, rm in zip(l, r))
            else:
                child = truth[f.child]
                vec = []
                for m, cm in zip(reps, child):
                    sat = sum(cm)
                    value = sat >= f.grade if isinstance(f, Dia) else m.n - sat < f.grade
                    vec.append((value,) * m.n)
                vec = tuple(vec)
            truth[f] = vec
            glob = all(len(set(wv)) == 1 for wv in vec) and _is_global(f)
            if glob:
                den = sum(1 << i for i, wv in enumerate(vec) if wv[0])
                best.setdefault(den, s)
    return best


def _is_global(f: Formula) -> bool:
    if isinstance(f, Lit):
        return False
    if isinstance(f, (Dia, Box)):
        return True
    return _is_global(f.left) and _is_global(f.right)
