"""Finitely presented groups: parsing and realization by coset enumeration.

Grammar (ASCII)::

    presentation := "<" genlist "|" relation ("," relation)* ">"
    genlist      := name ("," name)*
    relation     := word "=" word | word
    word         := term+ | "1"
    term         := name ("^" signed-int)? | name "^" name | "(" word ")" ("^" signed-int)?

``*`` between terms is optional.  A name is a letter followed by digits or
underscores, so ``xy`` reads as ``x`` then ``y``.  ``x^y`` is ``y^-1 x y``.
The parenthesised form is an extension used by the stored catalog.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .groups import GroupError, GroupTable, isomorphic

DEFAULT_MAX_COSETS = 1_000_000

Word = tuple[tuple[str, int], ...]


class PresentationError(ValueError):
    """Malformed presentation text; ``pos`` is the offending offset."""

    def __init__(self, msg: str, text: str = "", pos: int | None = None):
        self.pos = pos
        self.text = text
        if pos is not None:
            msg = f"{msg} at position {pos}"
        super().__init__(msg)


class CosetLimitError(GroupError):
    """Enumeration defined more cosets than allowed."""


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        for w in self.relators:
            for g, e in w:
                if g not in self.generators:
                    raise PresentationError(f"undeclared generator {g!r}")
                if e == 0:
                    raise PresentationError(f"zero exponent on {g!r}")

    def render(self) -> str:
        rels = ", ".join(render_word(w) for w in self.relators) or "1"
        return f"<{', '.join(self.generators)} | {rels}>"

    def __str__(self) -> str:
        return self.render()


def render_word(w: Word) -> str:
    if not w:
        return "1"
    return "*".join(g if e == 1 else f"{g}^{e}" for g, e in w)


def reduce_word(w) -> Word:
    """Merge adjacent powers of the same generator and drop zeros."""
    out: list[list] = []
    for g, e in w:
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        elif e:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def invert_word(w) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][0-9_]*)|(?P<int>[+-]?\d+)|(?P<sym>[<>|,=^*()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            while pos < n and text[pos].isspace():
                pos += 1
            raise PresentationError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.gens: list[str] = []

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None, kind=None):
        tok = self.toks[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise PresentationError(f"expected {want}, got {got}", self.text, tok[2])
        self.i += 1
        return tok

    def name(self):
        tok = self.take(kind="name")
        if tok[1] not in self.gens:
            raise PresentationError(f"undeclared generator {tok[1]!r}", self.text, tok[2])
        return tok[1]

    def integer(self):
        tok = self.take(kind="int")
        e = int(tok[1])
        if e == 0:
            raise PresentationError("zero exponent", self.text, tok[2])
        return e

    def parse(self) -> Presentation:
        self.take("<")
        while True:
            tok = self.take(kind="name")
            if tok[1] in self.gens:
                raise PresentationError(f"duplicate generator {tok[1]!r}", self.text, tok[2])
            self.gens.append(tok[1])
            if self.peek()[1] != ",":
                break
            self.take(",")
        self.take("|")
        rels = [self.relation()]
        while self.peek()[1] == ",":
            self.take(",")
            rels.append(self.relation())
        self.take(">")
        self.take(kind="end")
        return Presentation(tuple(self.gens), tuple(r for r in rels if r))

    def relation(self) -> Word:
        lhs = self.word()
        if self.peek()[1] == "=":
            self.take("=")
            rhs = self.word()
            return reduce_word(lhs + invert_word(rhs))
        return reduce_word(lhs)

    def word(self) -> Word:
        tok = self.peek()
        if tok[0] == "int":
            if tok[1] != "1":
                raise PresentationError("only 1 may stand for the empty word", self.text, tok[2])
            self.take()
            return ()
        terms: list[tuple[str, int]] = list(self.term())
        while True:
            tok = self.peek()
            if tok[1] == "*":
                self.take("*")
                terms.extend(self.term())
            elif tok[0] == "name" or tok[1] == "(":
                terms.extend(self.term())
            else:
                return tuple(terms)

    def term(self) -> Word:
        tok = self.peek()
        if tok[1] == "(":
            self.take("(")
            inner = self.word()
            self.take(")")
            if self.peek()[1] == "^":
                self.take("^")
                e = self.integer()
                base = inner if e > 0 else invert_word(inner)
                return base * abs(e)
            return inner
        g = self.name()
        if self.peek()[1] != "^":
            return ((g, 1),)
        self.take("^")
        if self.peek()[0] == "name":
            h = self.name()
            return ((h, -1), (g, 1), (h, 1))
        return ((g, self.integer()),)


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# coset enumeration over the trivial subgroup


class CosetTable:
    """Coset table filled by relator scanning with coincidence processing.

    Columns are ``2*i`` for generator ``i`` and ``2*i + 1`` for its inverse.
    ``max_cosets`` bounds the total number of coset definitions.
    """

    def __init__(self, pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS):
        if not pres.generators:
            raise GroupError("presentation has no generators")
        self.pres = pres
        self.ncols = 2 * len(pres.generators)
        col = {g: 2 * i for i, g in enumerate(pres.generators)}
        self.relators = []
        for w in pres.relators:
            letters = []
            for g, e in w:
                c = col[g] if e > 0 else col[g] ^ 1
                letters.extend([c] * abs(e))
            self.relators.append(letters)
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.queue: list[int] = []

    def rep(self, c: int) -> int:
        p = self.parent
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise CosetLimitError(f"coset limit {self.max_cosets} exceeded")
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        self.queue = []
        self.merge(a, b)
        T = self.table
        i = 0
        while i < len(self.queue):
            g = self.queue[i]
            i += 1
            for x in range(self.ncols):
                d = T[g][x]
                if d < 0:
                    continue
                T[d][x ^ 1] = -1
                mu, nu = self.rep(g), self.rep(d)
                if T[mu][x] >= 0:
                    self.merge(nu, T[mu][x])
                elif T[nu][x ^ 1] >= 0:
                    self.merge(mu, T[nu][x ^ 1])
                else:
                    T[mu][x] = nu
                    T[nu][x ^ 1] = mu

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        T = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and T[f][w[i]] >= 0:
                f = T[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and T[b][w[j] ^ 1] >= 0:
                b = T[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][w[i]] = b
                T[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def enumerate(self) -> "CosetTable":
        c = 0
        while c < len(self.table):
            if self.parent[c] == c:
                for w in self.relators:
                    if self.parent[c] != c:
                        break
                    self.scan_and_fill(c, w)
                if self.parent[c] == c:
                    for x in range(self.ncols):
                        if self.table[c][x] < 0:
                            self.define(c, x)
            c += 1
        return self

    def live(self) -> list[int]:
        return [c for c in range(len(self.table)) if self.parent[c] == c]

    def compact(self) -> np.ndarray:
        """Completed table on live cosets renumbered ``0..n-1`` in definition order."""
        live = self.live()
        renum = {c: i for i, c in enumerate(live)}
        out = np.empty((len(live), self.ncols), dtype=np.int64)
        for i, c in enumerate(live):
            row = self.table[c]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    raise GroupError("coset table incomplete after enumeration")
                out[i, x] = renum[self.rep(d)]
        for x in range(self.ncols):
            if len(set(out[:, x].tolist())) != len(live):
                raise GroupError(f"column {x} of the coset table is not a permutation")
        return out


def coset_table(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> np.ndarray:
    return CosetTable(pres, max_cosets).enumerate().compact()


def realize(pres: Presentation | str, max_cosets: int = DEFAULT_MAX_COSETS,
            label: str | None = None) -> GroupTable:
    """Group table of a finite presentation via its regular permutation action.

    Element ``i`` is the group element sending coset 0 to coset ``i``, so the
    identity is index 0 and numbering follows coset definition order.
    """
    if isinstance(pres, str):
        pres = parse_presentation(pres)
    ct = coset_table(pres, max_cosets)
    n = ct.shape[0]
    # spanning tree from coset 0: every coset c reached as parent[c] * letter[c]
    par = np.full(n, -1)
    letter = np.full(n, -1)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    order = [0]
    for c in order:
        for x in range(ct.shape[1]):
            d = int(ct[c, x])
            if not seen[d]:
                seen[d] = True
                par[d], letter[d] = c, x
                order.append(d)
    # column b of mul is the right action of element b on all cosets
    mul = np.empty((n, n), dtype=np.int64)
    mul[:, 0] = np.arange(n)
    for b in order[1:]:
        mul[:, b] = ct[mul[:, par[b]], letter[b]]
    named = {}
    for i, g in enumerate(pres.generators):
        named[g] = int(ct[0, 2 * i])
    return GroupTable.from_table(mul, label=label or pres.render(), named=named)


# ---------------------------------------------------------------------------
# order-16 catalog


def read_catalog(text: str) -> list[tuple[str, Presentation]]:
    """Parse catalog lines ``<presentation>  # name``; blank and ``#`` lines skip."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        body, _, name = line.partition("#")
        try:
            pres = parse_presentation(body.strip())
        except PresentationError as e:
            raise PresentationError(f"catalog line {lineno}: {e}") from e
        out.append((name.strip() or body.strip(), pres))
    return out


def order16_presentations() -> list[tuple[str, Presentation]]:
    text = resources.files("epgraph.data").joinpath("order16.txt").read_text(encoding="utf-8")
    return read_catalog(text)


@lru_cache(maxsize=1)
def _catalog16() -> tuple[GroupTable, ...]:
    tables = [realize(p, label=name) for name, p in order16_presentations()]
    for g in tables:
        if g.order != 16:
            raise GroupError(f"catalog entry {g.label} has order {g.order}, expected 16")
    for i, a in enumerate(tables):
        for b in tables[i + 1:]:
            if isomorphic(a, b):
                raise GroupError(f"catalog entries {a.label} and {b.label} are isomorphic")
    if len(tables) != 14:
        raise GroupError(f"catalog has {len(tables)} groups, expected 14")
    return tuple(tables)


def catalog_order16() -> list[GroupTable]:
    """The 14 groups of order 16, validated as pairwise non-isomorphic."""
    return list(_catalog16())
