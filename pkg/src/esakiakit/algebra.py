"""Upset algebras of finite posets, with a small term language.

The algebra of all upsets of a finite poset is a Heyting algebra:
meet and join are intersection and union, and the relative
pseudo-complement of U with respect to V is the complement of the
down-closure of U minus V. Negation is sugar for (t -> 0), not a
primitive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (InvalidId, TooLarge, TooManyAssignments,
                     UnboundVariable)
from .poset import Poset, ids_of

SIZE_BOUND = 20
ASSIGNMENT_CAP = 200_000


class UpsetAlgebra:
    """Carrier is every upset of the base poset, in a fixed canonical order
    (by popcount, then mask value). Elements are referred to by index."""

    __slots__ = ("base", "carrier", "index", "_meet", "_join", "_imp", "_down_of")

    def __init__(self, base: Poset, carrier: tuple[int, ...]):
        self.base = base
        self.carrier = carrier
        self.index = {m: i for i, m in enumerate(carrier)}
        self._meet = None
        self._join = None
        self._imp = None
        self._down_of = None

    @property
    def bot(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.carrier) - 1

    def __len__(self):
        return len(self.carrier)

    def mask(self, i: int) -> int:
        return self.carrier[i]

    def leq(self, i: int, j: int) -> bool:
        return self.carrier[i] & ~self.carrier[j] == 0

    # Tables are built once, on first use.
    def _tables(self):
        if self._meet is None:
            k = len(self.carrier)
            idx = self.index
            full = self.base.full_mask()
            down = [self.base.down_set(m) for m in self.carrier]
            meet = [[0] * k for _ in range(k)]
            join = [[0] * k for _ in range(k)]
            for i, a in enumerate(self.carrier):
                for j, b in enumerate(self.carrier):
                    meet[i][j] = idx[a & b]
                    join[i][j] = idx[a | b]
            imp = [[0] * k for _ in range(k)]
            for i, a in enumerate(self.carrier):
                for j, b in enumerate(self.carrier):
                    imp[i][j] = idx[full & ~self.base.down_set(a & ~b)]
            self._meet, self._join, self._imp, self._down_of = meet, join, imp, down
        return self._meet, self._join, self._imp

    def meet(self, i: int, j: int) -> int:
        return self._tables()[0][i][j]

    def join(self, i: int, j: int) -> int:
        return self._tables()[1][i][j]

    def imp(self, i: int, j: int) -> int:
        return self._tables()[2][i][j]

    def neg(self, i: int) -> int:
        return self.imp(i, self.bot)


def upset_algebra(p: Poset, bound: int = SIZE_BOUND) -> UpsetAlgebra:
    """Dual algebra of p. Raises TooLarge above the element bound."""
    if p.n > bound:
        raise TooLarge(f"poset has {p.n} elements, bound is {bound}")
    carrier = tuple(sorted(p.upsets(), key=lambda m: (bin(m).count("1"), m)))
    return UpsetAlgebra(p, carrier)


def is_si(a: UpsetAlgebra) -> bool:
    """Subdirect irreducibility, read off the base poset: a least element
    must exist (the trivial algebra, with empty base, is not SI)."""
    return a.base.has_root()


# ----- terms ---------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    op: str                      # 'var', 'bot', 'top', 'and', 'or', 'imp'
    var: int | None = None
    left: "Term | None" = None
    right: "Term | None" = None

    def variables(self) -> set[int]:
        if self.op == "var":
            return {self.var}
        out = set()
        if self.left is not None:
            out |= self.left.variables()
        if self.right is not None:
            out |= self.right.variables()
        return out

    def __str__(self):
        if self.op == "var":
            return f"x{self.var}"
        if self.op == "bot":
            return "0"
        if self.op == "top":
            return "1"
        sym = {"and": "&", "or": "|", "imp": "->"}[self.op]
        return f"({self.left} {sym} {self.right})"


def var(i: int) -> Term:
    return Term("var", var=i)


BOT = Term("bot")
TOP = Term("top")


def t_and(l: Term, r: Term) -> Term:
    return Term("and", left=l, right=r)


def t_or(l: Term, r: Term) -> Term:
    return Term("or", left=l, right=r)


def t_imp(l: Term, r: Term) -> Term:
    return Term("imp", left=l, right=r)


def t_not(t: Term) -> Term:
    return Term("imp", left=t, right=BOT)


class _Parser:
    """Recursive descent for  ~  &  |  ->  over 0, 1, x<k>.

    Precedence: ~ binds tightest, then &, then |, then -> (right
    associative).
    """

    def __init__(self, text: str):
        self.toks = self._lex(text)
        self.pos = 0

    @staticmethod
    def _lex(text):
        toks = []
        i = 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
            elif c in "()&|~01":
                toks.append(c)
                i += 1
            elif text.startswith("->", i):
                toks.append("->")
                i += 2
            elif c == "x":
                j = i + 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j == i + 1:
                    raise ValueError(f"bad variable at {i!r} in {text!r}")
                toks.append(text[i:j])
                i = j
            else:
                raise ValueError(f"unexpected character {c!r} in {text!r}")
        return toks

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, tok=None):
        got = self.peek()
        if got is None or (tok is not None and got != tok):
            raise ValueError(f"expected {tok!r}, got {got!r}")
        self.pos += 1
        return got

    def parse(self) -> Term:
        t = self.imp()
        if self.peek() is not None:
            raise ValueError(f"trailing input at token {self.peek()!r}")
        return t

    def imp(self) -> Term:
        l = self.disj()
        if self.peek() == "->":
            self.take()
            return t_imp(l, self.imp())
        return l

    def disj(self) -> Term:
        t = self.conj()
        while self.peek() == "|":
            self.take()
            t = t_or(t, self.conj())
        return t

    def conj(self) -> Term:
        t = self.atom()
        while self.peek() == "&":
            self.take()
            t = t_and(t, self.atom())
        return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok == "~":
            self.take()
            return t_not(self.atom())
        if tok == "(":
            self.take()
            t = self.imp()
            self.take(")")
            return t
        if tok == "0":
            self.take()
            return BOT
        if tok == "1":
            self.take()
            return TOP
        if tok is not None and tok.startswith("x"):
            self.take()
            return var(int(tok[1:]))
        raise ValueError(f"unexpected token {tok!r}")


def parse_term(text: str) -> Term:
    return _Parser(text).parse()


def parse_equation(text: str) -> tuple[Term, Term]:
    if text.count("=") != 1:
        raise ValueError("equation needs exactly one '='")
    lhs, rhs = text.split("=")
    return parse_term(lhs), parse_term(rhs)


def evaluate(a: UpsetAlgebra, t: Term, assignment: Mapping[int, int]) -> int:
    """Value of t under an index-valued assignment, as a carrier index."""
    if t.op == "var":
        if t.var not in assignment:
            raise UnboundVariable(f"x{t.var}")
        v = assignment[t.var]
        if not 0 <= v < len(a.carrier):
            raise InvalidId(f"carrier index {v}")
        return v
    if t.op == "bot":
        return a.bot
    if t.op == "top":
        return a.top
    l = evaluate(a, t.left, assignment)
    r = evaluate(a, t.right, assignment)
    if t.op == "and":
        return a.meet(l, r)
    if t.op == "or":
        return a.join(l, r)
    return a.imp(l, r)


def validates(a: UpsetAlgebra, lhs: Term, rhs: Term,
              cap: int = ASSIGNMENT_CAP) -> tuple[bool, dict[int, int] | None]:
    """Exhaustively check lhs = rhs over all assignments.

    Returns (True, None) or (False, falsifying assignment). Never samples;
    raises TooManyAssignments when the full sweep would exceed cap.
    """
    vs = sorted(lhs.variables() | rhs.variables())
    total = len(a.carrier) ** len(vs)
    if total > cap:
        raise TooManyAssignments(f"{total} assignments exceed cap {cap}")
    for combo in itertools.product(range(len(a.carrier)), repeat=len(vs)):
        asg = dict(zip(vs, combo))
        if evaluate(a, lhs, asg) != evaluate(a, rhs, asg):
            return False, asg
    return True, None


# ----- subalgebras ----------------------------------------------------------


def generated_subalgebra(a: UpsetAlgebra, gens: Iterable[int]) -> frozenset[int]:
    """Indices of the subalgebra generated by the given carrier indices.
    Always contains bot and top."""
    current = {a.bot, a.top}
    for g in gens:
        if not 0 <= g < len(a.carrier):
            raise InvalidId(f"carrier index {g}")
        current.add(g)
    return _close(a, frozenset(current))


def _close(a: UpsetAlgebra, seed: frozenset[int]) -> frozenset[int]:
    # Worklist closure: every final pair is combined in at least one order,
    # and imp is applied in both orders.
    members = set(seed)
    queue = list(seed)
    everything = len(a.carrier)
    while queue:
        x = queue.pop()
        for y in list(members):
            for z in (a.meet(x, y), a.join(x, y), a.imp(x, y), a.imp(y, x)):
                if z not in members:
                    members.add(z)
                    queue.append(z)
        if len(members) == everything:
            return frozenset(range(everything))
    return frozenset(members)


def min_generators(a: UpsetAlgebra, cap: int = 3) -> int | None:
    """Least m <= cap such that some m-subset generates the whole algebra,
    or None when no subset of size <= cap works."""
    full = frozenset(range(len(a.carrier)))
    for m in range(cap + 1):
        for combo in itertools.combinations(range(len(a.carrier)), m):
            if generated_subalgebra(a, combo) == full:
                return m
    return None


def subalgebras(a: UpsetAlgebra) -> list[frozenset[int]]:
    """Every subalgebra, by closing upward from the 0-generated one."""
    first = generated_subalgebra(a, ())
    found = {first}
    queue = [first]
    while queue:
        s = queue.pop()
        for x in range(len(a.carrier)):
            if x not in s:
                t = _close(a, frozenset(s | {x}))
                if t not in found:
                    found.add(t)
                    queue.append(t)
    return sorted(found, key=lambda s: (len(s), sorted(s)))
