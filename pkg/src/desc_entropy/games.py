"""Formula size games for MLU (FS) and GMLU (FSc), plus the two Delilah
strategies from the lower-bound proofs, checked move by move.

Solvers work on abstract pointed models: a pointed model is replaced by
(class of its model, type of its point).  Every move of both games only
depends on that pair, so the abstraction is exact.  Instead of deciding
the game for one resource at a time, the solver computes the least
resource with which S wins; winning is monotone in r, so S wins at r iff
r is at least that value.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .models import CapExceeded, KripkeModel, PointedModel, classify, type_name
from .syntax import Lit, render

S_WINS = "S"
D_WINS = "D"
MAX_POINTED = 12
MAX_RESOURCE = 10
STRATEGIES = ("hardness", "hardness_floored", "cover")


@dataclass(frozen=True)
class GamePosition:
    r: int
    A: frozenset
    B: frozenset
    modal_move_made: bool = False

    @classmethod
    def make(cls, r: int, A: Iterable, B: Iterable, modal_move_made: bool = False) -> "GamePosition":
        return cls(r, frozenset(A), frozenset(B), modal_move_made)


def _literal_holds(t: int, prop: int, positive: bool) -> bool:
    return (t >> (prop - 1) & 1 == 0) == positive


def separating_literal(k: int, a_types: Iterable[int], b_types: Iterable[int]) -> Lit | None:
    """First literal true at every A point and false at every B point."""
    a_types, b_types = set(a_types), set(b_types)
    for prop in range(1, k + 1):
        for positive in (True, False):
            if all(_literal_holds(t, prop, positive) for t in a_types) and not any(
                _literal_holds(t, prop, positive) for t in b_types
            ):
                return Lit(prop, positive)
    return None


def _point_sets(counts, size: int, minimal: bool) -> list[frozenset]:
    """Type sets realizable by choosing ``size`` distinct points of a model with these counts."""
    types = [t for t, c in enumerate(counts) if c]
    if size <= 0:
        return [frozenset()]
    out = []
    for m in range(1, min(size, len(types)) + 1):
        for combo in itertools.combinations(types, m):
            if sum(counts[t] for t in combo) >= size:
                out.append(frozenset(combo))
    if minimal:
        out = [s for s in out if not any(o < s for o in out)]
    return out


class _Solver:
    """Least winning resource for abstract FS / FSc positions.

    Elements are (class, point type); class is a type-set mask (FS) or a
    count vector (FSc).
    """

    def __init__(self, k: int, n: int | None, graded: bool, pruned: bool = True, strict_diamond: bool = False):
        self.k, self.n, self.graded = k, n, graded
        self.pruned, self.strict = pruned, strict_diamond
        self.memo: dict = {}  # key -> [lower bound, exact or None, best move]

    # ------------------------------------------------ class helpers

    def _types(self, cls) -> list[int]:
        if self.graded:
            return [t for t, c in enumerate(cls) if c]
        return [t for t in range(1 << self.k) if cls >> t & 1]

    def _all_points(self, side) -> frozenset:
        return frozenset((cls, t) for cls in {c for c, _ in side} for t in self._types(cls))

    # ------------------------------------------------ moves

    def _splits(self, side: frozenset):
        items = sorted(side, key=repr)
        if self.pruned:
            if len(items) < 2:
                return
            first, rest = items[0], items[1:]
            for mask in range(1 << len(rest)):
                left = [first] + [x for i, x in enumerate(rest) if mask >> i & 1]
                right = [x for i, x in enumerate(rest) if not mask >> i & 1]
                if right:
                    yield frozenset(left), frozenset(right)
        else:
            for assign in itertools.product((0, 1, 2), repeat=len(items)):
                left = frozenset(x for x, a in zip(items, assign) if a != 1)
                right = frozenset(x for x, a in zip(items, assign) if a != 0)
                yield left, right

    def _choices(self, side: frozenset, size_of) -> list[frozenset] | None:
        """All sides obtainable when S picks points for every element; None if some element cannot."""
        if self.pruned:
            owners = sorted({cls for cls, _ in side}, key=repr)
            groups = [[cls] for cls in owners]
        else:
            owners = sorted(side, key=repr)
            groups = [[cls] for cls, _ in owners]
        options = []
        for (cls,) in groups:
            if self.graded:
                sets = _point_sets(cls, size_of, self.pruned)
            else:
                sets = [frozenset([t]) for t in self._types(cls)]
            if not sets:
                return None
            options.append([frozenset((cls, t) for t in s) for s in sets])
        results = set()
        for combo in itertools.product(*options):
            results.add(frozenset().union(*combo))
        return sorted(results, key=lambda s: sorted(map(repr, s)))

    def _modal_moves(self, A, B, budget):
        """(cost, label, A', B', enables literals) for every modal move within ``budget``."""
        if not self.graded:
            if budget < 2:
                return
            for a_side in self._choices(A, 1) or []:
                yield 1, ("DIA", 1), a_side, self._all_points(B), True
            for b_side in self._choices(B, 1) or []:
                yield 1, ("BOX", 1), self._all_points(A), b_side, not self.strict
            return
        n = self.n
        for d in range(1, min(n + 1, budget - 1) + 1):
            for kind, big, small in (("DIA", A, B), ("BOX", B, A)):
                big_opts = self._choices(big, d) if big else [frozenset()]
                if big_opts is None:
                    continue
                small_opts = self._choices(small, n - d + 1) if small else [frozenset()]
                if small_opts is None:
                    continue
                for x in big_opts:
                    for y in small_opts:
                        a_side, b_side = (x, y) if kind == "DIA" else (y, x)
                        yield d, (kind, d), a_side, b_side, kind == "DIA" or not self.strict

    # ------------------------------------------------ search

    def least(self, A: frozenset, B: frozenset, flag: bool, budget: int):
        """Least winning resource if it is <= budget, else None."""
        if budget < 1:
            return None
        key = (A, B, flag)
        entry = self.memo.get(key)
        if entry is None:
            entry = self.memo[key] = [1, None, None]
            if A & B or (not flag and {c for c, _ in A} & {c for c, _ in B}):
                entry[0] = float("inf")
        if entry[1] is not None:
            return entry[1] if entry[1] <= budget else None
        if entry[0] > budget:
            return None
        best, move = self._search(A, B, flag, budget)
        if best is None:
            entry[0] = budget + 1
            return None
        entry[1], entry[2] = best, move
        return best

    def _search(self, A, B, flag, budget):
        if flag:
            lit = separating_literal(self.k, (t for _, t in A), (t for _, t in B))
            if lit is not None:
                return 1, ("PROP", lit)
        best, move = None, None
        cap = budget  # find something <= cap; tighten as we go

        for cost, label, a_side, b_side, enables in self._modal_moves(A, B, cap):
            if cost + 1 > cap:
                continue
            sub = self.least(a_side, b_side, flag or enables, cap - cost)
            if sub is not None:
                best, move, cap = cost + sub, (label, a_side, b_side, flag or enables), cost + sub - 1

        for kind, side in (("OR", A), ("AND", B)):
            if cap < 3:
                break
            for left, right in self._splits(side):
                if cap < 3:
                    break
                pa = (left, B) if kind == "OR" else (A, left)
                c1 = self.least(pa[0], pa[1], flag, cap - 2)
                if c1 is None:
                    continue
                pb = (right, B) if kind == "OR" else (A, right)
                c2 = self.least(pb[0], pb[1], flag, cap - 1 - c1)
                if c2 is None:
                    continue
                best, move, cap = c1 + c2 + 1, ((kind, c1, c2), pa, pb, flag), c1 + c2
        return best, move

    def trace(self, A, B, flag, r) -> list[str]:
        lines = []
        while True:
            c = self.least(A, B, flag, r)
            if c is None:
                need = self.least(A, B, flag, MAX_RESOURCE * 4)
                tail = f"needs {need}" if need is not None else "no separating formula"
                lines.append(f"r={r} | move=none ({tail}) | D wins")
                return lines
            move = self.memo[(A, B, flag)][2]
            label = move[0]
            if label == "PROP":
                lines.append(f"r={r} | move=PROP lit={render(move[1])} | S wins")
                return lines
            if label[0] in ("OR", "AND"):
                _, c1, _ = label
                r1, r2 = c1, r - 1 - c1
                lines.append(f"r={r} | move={label[0]} r1={r1} r2={r2} | D->left")
                (A, B), flag, r = move[1], move[3], r1
                continue
            kind, d = label
            lines.append(f"r={r} | move={kind} d={d} | -")
            A, B, flag, r = move[1], move[2], move[3], r - d


def _check_game_caps(position: GamePosition) -> None:
    if len(position.A) + len(position.B) > MAX_POINTED:
        raise CapExceeded(f"at most {MAX_POINTED} pointed models per game")
    if not 1 <= position.r <= MAX_RESOURCE:
        raise CapExceeded(f"resource must lie in 1..{MAX_RESOURCE}")


def _abstract(pm: PointedModel, graded: bool):
    typeset, counts = classify(pm.model)
    return (counts if graded else typeset, pm.point_type)


def _abstract_sides(position: GamePosition, graded: bool, k: int, n: int | None):
    for pm in itertools.chain(position.A, position.B):
        if pm.model.k != k:
            raise ValueError("pointed model vocabulary does not match k")
        if n is not None and pm.model.n != n:
            raise ValueError(f"all models must have {n} worlds")
    A = frozenset(_abstract(pm, graded) for pm in position.A)
    B = frozenset(_abstract(pm, graded) for pm in position.B)
    return A, B


def least_winning_resource(position: GamePosition, k: int, n: int | None = None, *,
                           graded: bool = False, pruned: bool = True, strict_diamond: bool = False,
                           limit: int = MAX_RESOURCE):
    """Least r with which S wins from this position's sets, or None above ``limit``."""
    A, B = _abstract_sides(position, graded, k, n)
    solver = _Solver(k, n, graded, pruned, strict_diamond)
    return solver.least(A, B, position.modal_move_made, limit)


def solve_fs(position: GamePosition, k: int, *, pruned: bool = True, strict_diamond: bool = False) -> str:
    _check_game_caps(position)
    A, B = _abstract_sides(position, False, k, None)
    solver = _Solver(k, None, False, pruned, strict_diamond)
    return S_WINS if solver.least(A, B, position.modal_move_made, position.r) is not None else D_WINS


def solve_fsc(position: GamePosition, k: int, n: int, *, pruned: bool = True, strict_diamond: bool = False) -> str:
    _check_game_caps(position)
    A, B = _abstract_sides(position, True, k, n)
    solver = _Solver(k, n, True, pruned, strict_diamond)
    return S_WINS if solver.least(A, B, position.modal_move_made, position.r) is not None else D_WINS


def game_trace(position: GamePosition, k: int, n: int | None = None, graded: bool = False) -> list[str]:
    """One line per ply along a winning line for S (D takes the left branch of splits)."""
    _check_game_caps(position)
    A, B = _abstract_sides(position, graded, k, n if graded else None)
    solver = _Solver(k, n, graded)
    return solver.trace(A, B, position.modal_move_made, position.r)


# ---------------------------------------------------------------- hardness instance


@dataclass(frozen=True)
class HardnessInstance:
    """Models[0] realizes every type once; models[i] lacks type i-1 (mask order)."""

    k: int
    models: tuple[KripkeModel, ...]
    A0: frozenset
    B0: frozenset

    @property
    def n(self) -> int:
        return 1 << self.k

    def model_id(self, model: KripkeModel) -> int:
        return self.models.index(model)


def build_hardness_instance(k: int) -> HardnessInstance:
    if not 1 <= k <= 2:
        raise CapExceeded("hardness instance supports k in 1..2")
    n = 1 << k
    base = tuple(range(n))  # point i (1-based) has type mask i-1
    models = [KripkeModel(k, base)]
    for i in range(1, n + 1):
        j = 2 if i == 1 else 1
        types = list(base)
        types[i - 1] = j - 1
        models.append(KripkeModel(k, tuple(types)))
    A0 = frozenset([PointedModel(models[0], 1)])
    B0 = frozenset(PointedModel(models[i], 1) for i in range(1, n + 1))
    return HardnessInstance(k, tuple(models), A0, B0)


@dataclass(frozen=True)
class HardnessReport:
    kinds: tuple[int, ...]
    h: tuple[int, ...]
    poshard: int
    total: int


def _differ_in_one(a: int, b: int) -> bool:
    return bin(a ^ b).count("1") == 1


def hardness(position: GamePosition, k: int, instance: HardnessInstance, floor_kind3: bool = False) -> HardnessReport:
    """Kinds 1-4 and h values.  ``floor_kind3`` clamps a kind-3 value of -1 (no qualifying
    B points) to 0; the unclamped potential can drop below the resource after an OR/AND split
    even though D still wins."""
    if instance.k != k:
        raise ValueError("instance built for a different k")
    try:
        a_ids = {(instance.model_id(pm.model), pm.point) for pm in position.A}
        b_ids = {(instance.model_id(pm.model), pm.point) for pm in position.B}
    except ValueError:
        raise ValueError("position uses models outside the instance") from None
    if any(m != 0 for m, _ in a_ids) or any(m == 0 for m, _ in b_ids):
        raise ValueError("position outside the instance family")
    models = instance.models
    mods_b = {m for m, _ in b_ids}
    a_types = {models[0].type_of(w) for _, w in a_ids}
    kinds, hs = [], []
    for i in range(1, instance.n + 1):
        if not position.modal_move_made and a_ids and i in mods_b:
            kind, h = 1, 2 * k
        elif any(m == i and models[i].type_of(w) in a_types for m, w in b_ids):
            kind, h = 2, 2 * k
        elif (0, i) in a_ids and i in mods_b:
            kind = 3
            cnt = sum(1 for m, j in b_ids if m == i and j != i and _differ_in_one(i - 1, j - 1))
            h = 2 * cnt - 1
            if floor_kind3:
                h = max(h, 0)
        else:
            kind, h = 4, 0
        kinds.append(kind)
        hs.append(h)
    pos = sum(1 for h in hs if h > 0)
    return HardnessReport(tuple(kinds), tuple(hs), pos, sum(hs) + pos - 1)


# ---------------------------------------------------------------- cover instance


@dataclass(frozen=True)
class CoverGraph:
    vertices: tuple[int, ...]
    edges: frozenset

    def __post_init__(self):
        if any(i == j for i, j in self.edges):
            raise ValueError("cover graphs are irreflexive")
        vs = set(self.vertices)
        if any(i not in vs or j not in vs for i, j in self.edges):
            raise ValueError("edge endpoint outside the vertex set")


def min_cover_cost(graph: CoverGraph, weights) -> tuple[int, tuple]:
    """(least cost, cover) where tokens are (i, 0) for i+ and (i, 1) for i-; ties go to the
    lexicographically smallest sorted token tuple."""
    if len(graph.vertices) > 10:
        raise CapExceeded("cover search supports at most 10 vertices")
    tokens = [(i, s) for i in graph.vertices for s in (0, 1)]
    best = None
    for mask in range(1 << len(tokens)):
        chosen = tuple(t for b, t in enumerate(tokens) if mask >> b & 1)
        cs = set(chosen)
        if all((i, 0) in cs or (j, 1) in cs for i, j in graph.edges):
            cost = sum(weights[i] for i, _ in chosen)
            cand = (cost, tuple(sorted(chosen)))
            if best is None or cand < best:
                best = cand
    return best


def render_cover(cover) -> str:
    return "{" + ", ".join(f"{i}{'+' if s == 0 else '-'}" for i, s in cover) + "}"


@dataclass(frozen=True)
class CoverInstance:
    """A0 = {(M,1)}; B0 holds (M_{i->j}, 1) for ordered pairs of distinct realized types."""

    k: int
    n: int
    counts: tuple[int, ...]
    model: KripkeModel
    moved: dict = field(hash=False, compare=False)  # (i, j) -> KripkeModel
    A0: frozenset = frozenset()
    B0: frozenset = frozenset()

    @property
    def realized(self) -> tuple[int, ...]:
        return tuple(t for t, c in enumerate(self.counts) if c)


def build_cover_instance(k: int, n: int, counts) -> CoverInstance:
    counts = tuple(counts)
    if len(counts) != 1 << k or sum(counts) != n or min(counts) < 0:
        raise ValueError("counts must be a type-count vector over 2^k types summing to n")
    repeated = [t for t, c in enumerate(counts) if c >= 2]
    if not repeated:
        raise ValueError("instance needs a type realized at least twice (points 1 and 2 must agree)")
    rep = repeated[0]
    rest = list(counts)
    rest[rep] -= 2
    types = [rep, rep] + [t for t, c in enumerate(rest) for _ in range(c)]
    model = KripkeModel(k, tuple(types))
    realized = [t for t, c in enumerate(counts) if c]
    moved = {}
    for i in realized:
        for j in realized:
            if i == j:
                continue
            w = max(idx for idx, t in enumerate(types) if t == i)
            new = list(types)
            new[w] = j
            moved[(i, j)] = KripkeModel(k, tuple(new))
    A0 = frozenset([PointedModel(model, 1)])
    B0 = frozenset(PointedModel(m, 1) for m in moved.values())
    return CoverInstance(k, n, counts, model, moved, A0, B0)


def cover_graph(instance: CoverInstance, A, B) -> CoverGraph:
    """Edges (i, j) with a propositionally equivalent pair (M, w) in A and (M_{i->j}, v) in B.
    A and B hold (model id, point type) with model id None for M."""
    a_types = {t for mid, t in A if mid is None}
    edges = frozenset(mid for mid, t in B if mid is not None and t in a_types)
    return CoverGraph(instance.realized, edges)


def cover_value(instance: CoverInstance, A, B) -> int:
    return min_cover_cost(cover_graph(instance, A, B), instance.counts)[0]


# ---------------------------------------------------------------- strategy verification


@dataclass
class Certificate:
    strategy: str
    r: int
    valid: bool
    positions_checked: int
    violations: list = field(default_factory=list)  # (move sequence, reason)

    def summary(self) -> str:
        state = "valid" if self.valid else f"{len(self.violations)} violation(s)"
        return f"{self.strategy} r={self.r}: {state}, {self.positions_checked} positions checked"


def _covering_pairs(side: frozenset):
    items = sorted(side, key=repr)
    for assign in itertools.product((0, 1, 2), repeat=len(items)):
        yield (
            frozenset(x for x, a in zip(items, assign) if a != 1),
            frozenset(x for x, a in zip(items, assign) if a != 0),
        )


class _Explorer:
    """Walks every S move; D answers splits with the first branch keeping the invariant."""

    def __init__(self, k: int, invariant, literal_types, modal_children):
        self.k = k
        self.invariant = invariant          # (r, A, B, flag) -> reason string or None
        self.literal_types = literal_types  # side -> point types
        self.modal_children = modal_children
        self.seen: set = set()
        self.violations: list = []

    def run(self, r, A, B, flag):
        reason = self.invariant(r, A, B, flag)
        if reason:
            self.violations.append(((), reason))
            return
        stack = [(r, A, B, flag, ())]
        while stack:
            r, A, B, flag, path = stack.pop()
            key = (r, A, B, flag)
            if key in self.seen:
                continue
            self.seen.add(key)
            if flag:
                lit = separating_literal(self.k, self.literal_types(A), self.literal_types(B))
                if lit is not None:
                    self.violations.append((path + (f"PROP {render(lit)}",), "S wins by a literal"))
            for kind, side in (("OR", A), ("AND", B)):
                for left, right in _covering_pairs(side):
                    for r1 in range(1, r - 1):
                        r2 = r - 1 - r1
                        p1 = (r1, left, B, flag) if kind == "OR" else (r1, A, left, flag)
                        p2 = (r2, right, B, flag) if kind == "OR" else (r2, A, right, flag)
                        label = f"{kind} r1={r1} r2={r2} sizes={len(left)}/{len(right)}"
                        if self.invariant(*p1) is None:
                            stack.append(p1 + (path + (label + " D->left",),))
                        elif self.invariant(*p2) is None:
                            stack.append(p2 + (path + (label + " D->right",),))
                        else:
                            self.violations.append((path + (label,), "no branch keeps the invariant"))
            for label, child in self.modal_children(r, A, B, flag):
                reason = self.invariant(*child)
                if reason:
                    self.violations.append((path + (label,), reason))
                else:
                    stack.append(child + (path + (label,),))


def _verify_hardness(k: int, r: int, floor_kind3: bool) -> Certificate:
    inst = build_hardness_instance(k)
    n = inst.n
    models = inst.models

    def to_pos(r, A, B, flag):
        return GamePosition(
            r,
            frozenset(PointedModel(models[m], w) for m, w in A),
            frozenset(PointedModel(models[m], w) for m, w in B),
            flag,
        )

    def invariant(r, A, B, flag):
        rep = hardness(to_pos(r, A, B, flag), k, inst, floor_kind3)
        if not r < rep.total:
            return f"invariant (a) fails: r={r} >= h={rep.total}"
        if rep.kinds.count(3) > 1:
            return "invariant (b) fails: more than one kind-3 type"
        return None

    def types(side):
        return {models[m].type_of(w) for m, w in side}

    def modal_children(r, A, B, flag):
        if r < 2:
            return
        for kind, chooser, other in (("DIA", A, B), ("BOX", B, A)):
            items = sorted(chooser)
            blown = frozenset((m, v) for m in {m for m, _ in other} for v in range(1, n + 1))
            for pick in itertools.product(range(1, n + 1), repeat=len(items)):
                chosen = frozenset((m, v) for (m, _), v in zip(items, pick))
                label = f"{kind} picks={pick}"
                child = (r - 1, chosen, blown, True) if kind == "DIA" else (r - 1, blown, chosen, True)
                yield label, child

    A0 = frozenset([(0, 1)])
    B0 = frozenset((i, 1) for i in range(1, n + 1))
    ex = _Explorer(k, invariant, types, modal_children)
    ex.run(r, A0, B0, False)
    name = "hardness_floored" if floor_kind3 else "hardness"
    return Certificate(name, r, not ex.violations, len(ex.seen), ex.violations)


def _verify_cover(k: int, n: int, counts, r: int) -> Certificate:
    inst = build_cover_instance(k, n, counts)
    model_counts = {None: inst.counts}
    for key, m in inst.moved.items():
        model_counts[key] = classify(m)[1]

    def invariant(r, A, B, flag):
        R = cover_value(inst, A, B)
        return None if r < R else f"invariant fails: r={r} >= R={R}"

    def types(side):
        return {t for _, t in side}

    def options(side, size):
        # one choice per element; elements of the same model choose independently
        elems = sorted(side, key=repr)
        per = []
        for mid, _ in elems:
            sets = _point_sets(model_counts[mid], size, minimal=False)
            if not sets:
                return None
            per.append([frozenset((mid, t) for t in s) for s in sets])
        return {frozenset().union(*c) for c in itertools.product(*per)} if per else {frozenset()}

    def modal_children(r, A, B, flag):
        for d in range(1, min(r - 1, n + 1) + 1):
            for kind, big, small in (("DIA", A, B), ("BOX", B, A)):
                xs = options(big, d)
                ys = options(small, n - d + 1)
                if xs is None or ys is None:
                    continue
                for x in sorted(xs, key=lambda s: sorted(map(repr, s))):
                    for y in sorted(ys, key=lambda s: sorted(map(repr, s))):
                        a_side, b_side = (x, y) if kind == "DIA" else (y, x)
                        yield f"{kind} d={d}", (r - d, a_side, b_side, True)

    A0 = frozenset([(None, inst.model.type_of(1))])
    B0 = frozenset((key, m.type_of(1)) for key, m in inst.moved.items())
    ex = _Explorer(k, invariant, types, modal_children)
    if r >= 1:
        ex.run(r, A0, B0, False)
    return Certificate("cover", r, not ex.violations, len(ex.seen), ex.violations)


def initial_cover_value(k: int, n: int, counts) -> int:
    inst = build_cover_instance(k, n, counts)
    A0 = frozenset([(None, inst.model.type_of(1))])
    B0 = frozenset((key, m.type_of(1)) for key, m in inst.moved.items())
    return cover_value(inst, A0, B0)


def initial_hardness(k: int) -> HardnessReport:
    inst = build_hardness_instance(k)
    return hardness(GamePosition(1, inst.A0, inst.B0, False), k, inst)


def verify_d_strategy(instance: dict, r: int, strategy: str) -> Certificate:
    """``instance`` is {"k": ...} for the hardness strategy and {"k", "n", "counts"} for the cover one."""
    k = instance.get("k", 1)
    if k != 1:
        raise CapExceeded("strategy verification explores the full S-move tree only for k = 1")
    if strategy in ("hardness", "hardness_floored"):
        return _verify_hardness(k, r, strategy.endswith("floored"))
    if strategy == "cover":
        return _verify_cover(k, instance["n"], tuple(instance["counts"]), r)
    raise ValueError(f"unknown strategy {strategy!r}")


def describe_point(k: int, cls, t: int) -> str:
    return f"{cls}@{type_name(k, t)}"
