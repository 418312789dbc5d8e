"""Group descriptors such as ``C(4)xC(2)``, ``D(16)`` or ``P"<x | x^5>"``.

Atoms name groups by their total order::

    C(n)     cyclic of order n
    D(n)     dihedral of order n = 2^(a+1), n >= 8
    Q(n)     generalized quaternion of order n = 2^(a+1), n >= 8
    SD(n)    semidihedral of order n = 2^(a+1), n >= 16
    M(p,k)   x^(p^(k-1)) = y^p = 1, x^y = x^(p^(k-2)+1); order p^k,
             k >= 3, and k >= 4 when p = 2
    H(p)     Heisenberg group mod an odd prime p, order p^3
    P"<..>"  a finite presentation, realized by coset enumeration

and ``spec := atom ("x" atom)*`` is their direct product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import groups
from .groups import GroupError, GroupTable, OrderCapError
from .presentations import PresentationError, parse_presentation, realize

DEFAULT_CLI_MAX_ORDER = 4096


class SpecError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} at position {pos}")


@dataclass(frozen=True)
class Atom:
    kind: str
    args: tuple[int, ...] = ()
    presentation: str = ""

    def render(self) -> str:
        if self.kind == "P":
            return f'P"{self.presentation}"'
        return f"{self.kind}({','.join(map(str, self.args))})"

    @property
    def order(self) -> int | None:
        """Order without building the table; None for presentations."""
        if self.kind in ("C", "D", "Q", "SD"):
            return self.args[0]
        if self.kind == "M":
            p, k = self.args
            return p ** k
        if self.kind == "H":
            return self.args[0] ** 3
        return None

    def build(self, max_cosets: int | None = None) -> GroupTable:
        k, a = self.kind, self.args
        if k == "C":
            return groups.make_cyclic(a[0])
        if k == "D":
            return groups.dihedral_group(_log2(a[0]) - 1)
        if k == "Q":
            return groups.generalized_quaternion(_log2(a[0]) - 1)
        if k == "SD":
            return groups.semidihedral_group(_log2(a[0]) - 1)
        if k == "M":
            return groups.modular_group(a[0], a[1] - 1)
        if k == "H":
            return groups.heisenberg(a[0])
        kw = {} if max_cosets is None else {"max_cosets": max_cosets}
        return realize(self.presentation, **kw)


@dataclass(frozen=True)
class GroupSpec:
    atoms: tuple[Atom, ...]
    name: str = ""

    def render(self) -> str:
        return "x".join(a.render() for a in self.atoms)

    @property
    def label(self) -> str:
        return self.name or self.render()

    def order_bound(self) -> int | None:
        total = 1
        for a in self.atoms:
            if a.order is None:
                return None
            total *= a.order
        return total

    def build(self, max_order: int = DEFAULT_CLI_MAX_ORDER) -> GroupTable:
        bound = self.order_bound()
        if bound is not None and bound > max_order:
            raise OrderCapError(f"{self.render()} has order {bound}, above the cap {max_order}")
        g = self.atoms[0].build(max_cosets=max_order * 64)
        for a in self.atoms[1:]:
            g = groups.direct_product(g, a.build(max_cosets=max_order * 64), max_order=max_order)
        if g.order > max_order:
            raise OrderCapError(f"{self.render()} has order {g.order}, above the cap {max_order}")
        return _relabel(g, self.label)

    def __str__(self) -> str:
        return self.render()


def _relabel(g: GroupTable, label: str) -> GroupTable:
    if g.label == label:
        return g
    return GroupTable(g.mul, g.inv, g.elt_order, label, g.family, dict(g.named))


def _log2(n: int) -> int:
    return n.bit_length() - 1


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


_ATOM = re.compile(r'(SD|C|D|Q|M|H)\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)|P"([^"]*)"')


def _check_atom(atom: Atom, pos: int) -> None:
    k, a = atom.kind, atom.args
    nargs = 2 if k == "M" else 1
    if k != "P" and len(a) != nargs:
        raise SpecError(f"{k} takes {nargs} argument{'s' if nargs > 1 else ''}", pos)
    if k == "C" and a[0] < 1:
        raise SpecError("C(n) needs n >= 1", pos)
    if k in ("D", "Q") and not (_is_pow2(a[0]) and a[0] >= 8):
        raise SpecError(f"{k}(n) needs n a power of 2 with n >= 8", pos)
    if k == "SD" and not (_is_pow2(a[0]) and a[0] >= 16):
        raise SpecError("SD(n) needs n a power of 2 with n >= 16", pos)
    if k == "M":
        p, kk = a
        if not groups.is_prime(p):
            raise SpecError(f"M(p,k) needs p prime, got {p}", pos)
        if kk < 3:
            raise SpecError("modular group M(p,k) requires k >= 3 (alpha >= 2)", pos)
        if p == 2 and kk < 4:
            raise SpecError("modular group requires alpha >= 3 for p = 2, i.e. M(2,k) with k >= 4", pos)
    if k == "H" and (a[0] == 2 or not groups.is_prime(a[0])):
        raise SpecError(f"H(p) needs an odd prime, got {a[0]}", pos)
    if k == "P":
        try:
            parse_presentation(atom.presentation)
        except PresentationError as e:
            raise SpecError(f"bad presentation: {e}", pos) from e


def parse_spec(text: str, name: str = "") -> GroupSpec:
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    atoms = []
    pos = 0
    while True:
        m = _ATOM.match(s, pos)
        if not m:
            raise SpecError(f"expected a group atom, got {s[pos:pos + 10]!r}", pos + offset)
        if m.group(4) is not None:
            atom = Atom("P", (), m.group(4))
        else:
            args = tuple(int(v) for v in m.group(2, 3) if v is not None)
            atom = Atom(m.group(1), args)
        _check_atom(atom, pos + offset)
        atoms.append(atom)
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos == len(s):
            break
        if s[pos] != "x":
            raise SpecError(f"expected 'x' between atoms, got {s[pos]!r}", pos + offset)
        pos += 1
        while pos < len(s) and s[pos].isspace():
            pos += 1
    return GroupSpec(tuple(atoms), name)


def build_spec(text: str, max_order: int = DEFAULT_CLI_MAX_ORDER) -> GroupTable:
    try:
        return parse_spec(text).build(max_order)
    except GroupError as e:
        if text in str(e):
            raise
        raise type(e)(f"{text}: {e}") from e
