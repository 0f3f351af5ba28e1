"""Formula syntax for MLU, GMLU and FO in negation normal form.

Formulas are immutable trees of the node classes below.  Proposition and
relation symbols are referred to by 1-based index, variables likewise
(``x1`` is variable 1).  Negation lives only in the ``positive`` flag of
literals, equalities and relational atoms.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

MLU = "MLU"
GMLU = "GMLU"
FO = "FO"
DIALECTS = (MLU, GMLU, FO)


class FormulaError(ValueError):
    """Raised for syntax and well-formedness errors.  ``pos`` is a character offset or None."""

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


@dataclass(frozen=True)
class Vocabulary:
    propositions: tuple[str, ...] = ()
    relations: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        names = list(self.propositions) + [name for name, _ in self.relations]
        if len(set(names)) != len(names):
            raise ValueError("vocabulary symbol names must be unique")
        for name, arity in self.relations:
            if arity < 1:
                raise ValueError(f"relation {name} must have arity >= 1")

    @classmethod
    def modal(cls, k: int) -> "Vocabulary":
        if k < 1:
            raise ValueError("modal vocabularies need k >= 1")
        return cls(propositions=tuple(f"p{i}" for i in range(1, k + 1)))

    @classmethod
    def relational(cls, arities: Iterable[int]) -> "Vocabulary":
        return cls(relations=tuple((f"R{i}", a) for i, a in enumerate(arities, start=1)))

    @property
    def k(self) -> int:
        return len(self.propositions)

    @property
    def max_arity(self) -> int:
        return max((a for _, a in self.relations), default=0)

    @property
    def arities(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.relations)


# ---------------------------------------------------------------- nodes


@dataclass(frozen=True)
class Lit:
    prop: int
    positive: bool = True


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Dia:
    """At least ``grade`` points satisfy the child."""

    grade: int
    child: "Formula"


@dataclass(frozen=True)
class Box:
    """Fewer than ``grade`` points falsify the child."""

    grade: int
    child: "Formula"


@dataclass(frozen=True)
class Exists:
    var: int
    child: "Formula"


@dataclass(frozen=True)
class Forall:
    var: int
    child: "Formula"


@dataclass(frozen=True)
class Eq:
    left: int
    right: int
    positive: bool = True


@dataclass(frozen=True)
class Atom:
    rel: int
    args: tuple[int, ...] = field(default=())
    positive: bool = True


Formula = Union[Lit, And, Or, Dia, Box, Exists, Forall, Eq, Atom]
MODAL_NODES = (Dia, Box)
BINARY_NODES = (And, Or)


def diamond(d: int, child: Formula) -> Dia:
    return Dia(d, child)


def box(d: int, child: Formula) -> Box:
    return Box(d, child)


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; a c-ary conjunction costs c - 1 connectives."""
    it = iter(parts)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("empty conjunction") from None
    for part in it:
        acc = And(acc, part)
    return acc


def disj(parts: Iterable[Formula]) -> Formula:
    it = iter(parts)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("empty disjunction") from None
    for part in it:
        acc = Or(acc, part)
    return acc


# ---------------------------------------------------------------- measures


def size(f: Formula) -> int:
    if isinstance(f, (Lit, Eq, Atom)):
        return 1
    if isinstance(f, BINARY_NODES):
        return size(f.left) + size(f.right) + 1
    if isinstance(f, MODAL_NODES):
        return size(f.child) + f.grade
    if isinstance(f, (Exists, Forall)):
        return size(f.child) + 1
    raise TypeError(f"not a formula node: {f!r}")


def dual_negate(f: Formula) -> Formula:
    """Negation normal form of the negation of ``f``.  Size-preserving."""
    if isinstance(f, Lit):
        return Lit(f.prop, not f.positive)
    if isinstance(f, Eq):
        return Eq(f.left, f.right, not f.positive)
    if isinstance(f, Atom):
        return Atom(f.rel, f.args, not f.positive)
    if isinstance(f, And):
        return Or(dual_negate(f.left), dual_negate(f.right))
    if isinstance(f, Or):
        return And(dual_negate(f.left), dual_negate(f.right))
    if isinstance(f, Dia):
        return Box(f.grade, dual_negate(f.child))
    if isinstance(f, Box):
        return Dia(f.grade, dual_negate(f.child))
    if isinstance(f, Exists):
        return Forall(f.var, dual_negate(f.child))
    if isinstance(f, Forall):
        return Exists(f.var, dual_negate(f.child))
    raise TypeError(f"not a formula node: {f!r}")


def type_literals(k: int, mask: int) -> list[Lit]:
    """Literals of the 1-type ``mask``: bit i set means p_{i+1} occurs negated."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0 <= mask < (1 << k):
        raise ValueError(f"type mask {mask} out of range for k={k}")
    return [Lit(i + 1, not (mask >> i) & 1) for i in range(k)]


def type_formula(k: int, mask: int) -> Formula:
    return conj(type_literals(k, mask))


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, BINARY_NODES):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Dia, Box, Exists, Forall)):
        yield from subformulas(f.child)


def free_vars(f: Formula) -> frozenset[int]:
    if isinstance(f, Eq):
        return frozenset((f.left, f.right))
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, Lit):
        return frozenset()
    if isinstance(f, BINARY_NODES):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.child) - {f.var}
    if isinstance(f, MODAL_NODES):
        return free_vars(f.child)
    raise TypeError(f"not a formula node: {f!r}")


def is_global(f: Formula) -> bool:
    """True iff every literal of ``f`` lies in the scope of some modality."""
    if isinstance(f, Lit):
        return False
    if isinstance(f, MODAL_NODES):
        return True
    if isinstance(f, BINARY_NODES):
        return is_global(f.left) and is_global(f.right)
    return False


def check_well_formed(f: Formula, vocab: Vocabulary, dialect: str) -> None:
    if dialect not in DIALECTS:
        raise FormulaError(f"unknown dialect {dialect!r}")
    fo_nodes = (Exists, Forall, Eq, Atom)
    for g in subformulas(f):
        if dialect == FO:
            if isinstance(g, MODAL_NODES):
                raise FormulaError("modalities are not part of FO")
            if isinstance(g, Lit):
                raise FormulaError("propositional literal in FO formula")
            if isinstance(g, Atom):
                if not 1 <= g.rel <= len(vocab.relations):
                    raise FormulaError(f"unknown relation index {g.rel}")
                if len(g.args) != vocab.relations[g.rel - 1][1]:
                    raise FormulaError(f"relation {vocab.relations[g.rel - 1][0]} applied to wrong number of variables")
        else:
            if isinstance(g, fo_nodes):
                raise FormulaError(f"first-order construct in {dialect} formula")
            if isinstance(g, Lit) and not 1 <= g.prop <= vocab.k:
                raise FormulaError(f"unknown proposition p{g.prop}")
            if isinstance(g, MODAL_NODES):
                if g.grade < 1:
                    raise FormulaError("grades must be positive")
                if dialect == MLU and g.grade != 1:
                    raise FormulaError("MLU only allows grade 1")
    if dialect != FO and not is_global(f):
        raise FormulaError("literal outside the scope of a modality")


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<dia><(?P<dg>\d*)>)|(?P<box>\[(?P<bg>\d*)\])|(?P<op>[&|!(),=])|(?P<name>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup) if m.lastgroup else pos
        if m.group("dia") is not None:
            tokens.append(("dia", m.group("dg") or "1", start))
        elif m.group("box") is not None:
            tokens.append(("box", m.group("bg") or "1", start))
        elif m.group("op") is not None:
            tokens.append((m.group("op"), m.group("op"), start))
        else:
            tokens.append(("name", m.group("name"), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vocab: Vocabulary):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vocab = vocab
        self.props = {name: i for i, name in enumerate(vocab.propositions, start=1)}
        self.rels = {name: i for i, (name, _) in enumerate(vocab.relations, start=1)}

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise FormulaError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.disjunction()
        tok = self.peek()
        if tok[0] != "eof":
            raise FormulaError(f"unexpected {tok[1]!r}", tok[2])
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek()[0] == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def _var(self) -> int:
        kind, val, pos = self.take("name")
        m = re.fullmatch(r"x(\d+)", val)
        if not m or int(m.group(1)) < 1:
            raise FormulaError(f"expected a variable, found {val!r}", pos)
        return int(m.group(1))

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if kind in ("dia", "box"):
            self.take()
            d = int(val)
            if d < 1:
                raise FormulaError("grades must be positive", pos)
            child = self.unary()
            return Dia(d, child) if kind == "dia" else Box(d, child)
        if kind == "(":
            self.take()
            f = self.disjunction()
            self.take(")")
            return f
        if kind == "!":
            self.take()
            atom = self.atom()
            return dual_negate(atom)
        if kind == "name" and val in ("E", "A"):
            self.take()
            var = self._var()
            child = self.unary()
            return Exists(var, child) if val == "E" else Forall(var, child)
        return self.atom()

    def atom(self) -> Formula:
        kind, val, pos = self.take("name")
        if val in self.props:
            return Lit(self.props[val])
        if val in self.rels:
            idx = self.rels[val]
            self.take("(")
            args = [self._var()]
            while self.peek()[0] == ",":
                self.take()
                args.append(self._var())
            self.take(")")
            return Atom(idx, tuple(args))
        if re.fullmatch(r"x\d+", val):
            self.i -= 1
            left = self._var()
            self.take("=")
            return Eq(left, self._var())
        raise FormulaError(f"unknown symbol {val!r}", pos)


def parse(text: str, vocab: Vocabulary, dialect: str) -> Formula:
    """Parse ``text`` and check it is well formed in ``dialect``."""
    f = _Parser(text, vocab).parse()
    check_well_formed(f, vocab, dialect)
    return f


# ---------------------------------------------------------------- printing


def render(f: Formula, vocab: Vocabulary | None = None) -> str:
    """Canonical text.  ``parse(render(f)) == f`` for well-formed ``f``."""
    prop_name = (lambda i: vocab.propositions[i - 1]) if vocab and vocab.propositions else (lambda i: f"p{i}")
    rel_name = (lambda i: vocab.relations[i - 1][0]) if vocab and vocab.relations else (lambda i: f"R{i}")

    def go(g: Formula) -> str:
        if isinstance(g, Lit):
            return ("" if g.positive else "!") + prop_name(g.prop)
        if isinstance(g, Eq):
            return ("" if g.positive else "!") + f"x{g.left}=x{g.right}"
        if isinstance(g, Atom):
            return ("" if g.positive else "!") + f"{rel_name(g.rel)}({','.join(f'x{v}' for v in g.args)})"
        if isinstance(g, Or):
            right = go(g.right)
            if isinstance(g.right, Or):
                right = f"({right})"
            return f"{go(g.left)} | {right}"
        if isinstance(g, And):
            left, right = go(g.left), go(g.right)
            if isinstance(g.left, Or):
                left = f"({left})"
            if isinstance(g.right, BINARY_NODES):
                right = f"({right})"
            return f"{left} & {right}"
        body = go(g.child)
        if isinstance(g.child, BINARY_NODES):
            body = f"({body})"
        if isinstance(g, Dia):
            return f"<{g.grade}>{body}"
        if isinstance(g, Box):
            return f"[{g.grade}]{body}"
        if isinstance(g, Exists):
            return f"E x{g.var} {body}"
        if isinstance(g, Forall):
            return f"A x{g.var} {body}"
        raise TypeError(f"not a formula node: {g!r}")

    return go(f)
