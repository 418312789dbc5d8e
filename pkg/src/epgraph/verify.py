"""Machine checks of the n_G results over constructed groups.

Each check takes a table and returns a :class:`VerdictReport`.  ``p`` and
``alpha`` are recovered from the table when not given: ``p`` from the prime
dividing ``|G|`` and ``alpha`` from ``exp(G) = p^alpha``.
"""

from __future__ import annotations

import csv
import io
import json
import weakref
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import groups
from .epg import adjacent, build_epg, closed_neighborhood_masks, n_G, universal_vertices
from .groups import GroupError, GroupTable, exponent, is_cyclic, is_dihedral_2group, prime_power
from .groupspec import GroupSpec, parse_spec
from .presentations import catalog_order16, order16_presentations

PASS, FAIL, NA = "pass", "fail", "not-applicable"
FIELDS = ("label", "claim", "status", "nG", "exp", "order", "p", "alpha", "witness")
CENSUS_MAX_ORDER = 1024
CENSUS_ABELIAN_MAX_ORDER = 625
ORACLE_MAX_ORDER = 128


@dataclass(frozen=True)
class VerdictReport:
    label: str
    claim: str
    status: str
    nG: int | None = None
    exp: int | None = None
    order: int | None = None
    p: int | None = None
    alpha: int | None = None
    witness: object = None
    detail: str = field(default="", compare=False)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, NA):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def record(self) -> dict:
        return {k: getattr(self, k) for k in FIELDS}


@dataclass(frozen=True)
class _Stats:
    order: int
    nG: int
    exp: int
    p: int | None
    alpha: int | None
    sizes: tuple[int, ...]  # |I(x)| indexed by element, 0 for the identity

    def argmax(self) -> int:
        return self.sizes.index(self.nG)


_STATS: "weakref.WeakKeyDictionary[GroupTable, _Stats]" = weakref.WeakKeyDictionary()


def _stats(g: GroupTable) -> _Stats:
    st = _STATS.get(g)
    if st is None:
        masks = closed_neighborhood_masks(g)
        sizes = (0,) + tuple(m.bit_count() for m in masks[1:])
        e = exponent(g)
        pk = prime_power(g.order)
        p = alpha = None
        if pk is not None:
            p = pk[0]
            alpha = prime_power(e)[1]
        st = _Stats(g.order, max(sizes), e, p, alpha, sizes)
        _STATS[g] = st
    return st


def _report(g: GroupTable, claim: str, status: str, witness=None, detail="", alpha=None) -> VerdictReport:
    st = _stats(g) if g.order > 1 else None
    return VerdictReport(
        label=g.label, claim=claim, status=status,
        nG=st.nG if st else None, exp=st.exp if st else 1, order=g.order,
        p=st.p if st else None, alpha=alpha if alpha is not None else (st.alpha if st else None),
        witness=witness, detail=detail,
    )


def _p_group(g: GroupTable, p: int | None) -> int | None:
    """The prime of ``g`` if it is a nontrivial p-group (for ``p`` when given)."""
    pk = prime_power(g.order)
    if pk is None or (p is not None and pk[0] != p):
        return None
    return pk[0]


def _second_value(p: int, alpha: int) -> int:
    return p ** (alpha + 1) - p ** alpha + p ** (alpha - 1)


def _iff(a: bool, b: bool) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# individual checks


def check_bounds(g: GroupTable) -> VerdictReport:
    st = _stats(g)
    ok = st.exp <= st.nG <= st.order
    return _report(g, "bounds", PASS if ok else FAIL, witness=st.argmax(),
                   detail=f"{st.exp} <= {st.nG} <= {st.order}")


def check_theorem_main(g: GroupTable, p: int | None = None) -> VerdictReport:
    if _p_group(g, p) is None:
        return _report(g, "thm-main", NA, detail="not a p-group")
    st = _stats(g)
    lhs = st.nG == st.exp
    rhs = is_cyclic(g) or st.exp == st.p or is_dihedral_2group(g)
    return _report(g, "thm-main", PASS if _iff(lhs, rhs) else FAIL, witness=st.argmax(),
                   detail=f"nG=exp: {lhs}; cyclic/exp p/dihedral: {rhs}")


def check_prop_second_value(g: GroupTable, p: int | None = None) -> VerdictReport:
    if _p_group(g, p) is None:
        return _report(g, "prop-second-value", NA, detail="not a p-group")
    st = _stats(g)
    if st.nG == st.exp:
        return _report(g, "prop-second-value", NA, detail="nG = exp")
    bound = _second_value(st.p, st.alpha)
    ok = st.nG >= bound
    return _report(g, "prop-second-value", PASS if ok else FAIL, witness=st.argmax(),
                   detail=f"nG={st.nG} >= {bound}" + (" (equality)" if st.nG == bound else ""))


def check_lemma_order_p(g: GroupTable, p: int | None = None) -> VerdictReport:
    if _p_group(g, p) is None:
        return _report(g, "lemma-order-p", NA, detail="not a p-group")
    st = _stats(g)
    best = 0
    for z in range(1, g.order):
        if g.orders[z] == st.p:
            if st.sizes[z] == st.nG:
                return _report(g, "lemma-order-p", PASS, witness=z)
            best = max(best, st.sizes[z])
    return _report(g, "lemma-order-p", FAIL, witness=best,
                   detail=f"largest |I(z)| over order-p z is {best} < nG")


def check_abelian_characterization(g: GroupTable, p: int | None = None) -> VerdictReport:
    if _p_group(g, p) is None or not g.is_abelian:
        return _report(g, "prop-abelian", NA, detail="not an abelian p-group")
    st = _stats(g)
    lhs = st.nG == st.exp
    rhs = is_cyclic(g) or st.exp == st.p
    return _report(g, "prop-abelian", PASS if _iff(lhs, rhs) else FAIL, witness=st.argmax())


def check_noncyclic_abelian_bound(g: GroupTable, p: int | None = None) -> VerdictReport:
    if _p_group(g, p) is None or not g.is_abelian or is_cyclic(g):
        return _report(g, "lemma-noncyc", NA, detail="not a noncyclic abelian p-group")
    st = _stats(g)
    if st.alpha < 2:
        return _report(g, "lemma-noncyc", NA, detail="exponent p")
    bound = _second_value(st.p, st.alpha)
    ok = st.nG >= bound and st.nG > st.exp
    return _report(g, "lemma-noncyc", PASS if ok else FAIL, witness=st.argmax(),
                   detail=f"nG={st.nG} >= {bound}")


def check_maxcyclic_prop(g: GroupTable, p: int | None = None, alpha: int | None = None) -> VerdictReport:
    """``alpha`` here is defined by ``|G| = p^(alpha+1)``."""
    q = _p_group(g, p)
    if q is None:
        return _report(g, "prop-maxcyc", NA, detail="not a p-group")
    k = prime_power(g.order)[1]
    if alpha is None:
        alpha = k - 1
    if alpha != k - 1 or alpha < 1 or (q ** alpha) not in g.orders:
        return _report(g, "prop-maxcyc", NA, detail="no cyclic subgroup of index p",
                       alpha=alpha)
    st = _stats(g)
    lhs = st.nG == st.exp
    rhs = is_cyclic(g) or st.exp == q or (q == 2 and is_dihedral_2group(g))
    return _report(g, "prop-maxcyc", PASS if _iff(lhs, rhs) else FAIL, witness=st.argmax(),
                   alpha=alpha, detail=f"nG={st.nG}, exp={st.exp}")


def check_components(g: GroupTable, p: int | None = None) -> VerdictReport:
    """In a p-group, ``n_G`` is one more than the largest component, and the
    elements of order p in a component are adjacent to all of it."""
    if _p_group(g, p) is None:
        return _report(g, "components", NA, detail="not a p-group")
    st = _stats(g)
    e = build_epg(g)
    largest = max(len(c) for c in e.components)
    if st.nG != largest + 1:
        return _report(g, "components", FAIL, witness=largest,
                       detail=f"largest component {largest}, nG {st.nG}")
    for comp in e.components:
        need = len(comp) - 1
        for z in comp:
            if g.orders[z] == st.p and e.degree[z] != need:
                return _report(g, "components", FAIL, witness=z,
                               detail="order-p element not adjacent to its whole component")
    return _report(g, "components", PASS, witness=largest)


def check_universal(g: GroupTable) -> VerdictReport:
    st = _stats(g)
    uv = universal_vertices(g)
    if (st.nG == st.order) != bool(uv):
        return _report(g, "universal", FAIL, witness=st.argmax())
    if g.family == "Q" and len(uv) != 1:
        return _report(g, "universal", FAIL, witness=len(uv),
                       detail="generalized quaternion group without a unique universal vertex")
    return _report(g, "universal", PASS, witness=min(uv) if uv else None)


def cyclic_pair_oracle(g: GroupTable) -> set[tuple[int, int]]:
    """Pairs ``x < y`` of nontrivial elements lying in a common ``<z>``,
    found by running over every z and its powers."""
    pairs = set()
    row = g.rows
    for z in range(1, g.order):
        pw = []
        cur = z
        while cur != 0:
            pw.append(cur)
            cur = row[cur][z]
        for a in pw:
            for b in pw:
                if a < b:
                    pairs.add((a, b))
    return pairs


def check_adjacency_oracle(g: GroupTable, max_order: int = ORACLE_MAX_ORDER) -> VerdictReport:
    if g.order > max_order:
        return _report(g, "adjacency-oracle", NA, detail=f"order above {max_order}")
    oracle = cyclic_pair_oracle(g)
    e = build_epg(g)
    for x in range(1, g.order):
        for y in range(x + 1, g.order):
            want = (x, y) in oracle
            if adjacent(g, x, y) != want or e.is_adjacent(x, y) != want:
                return _report(g, "adjacency-oracle", FAIL, witness=[x, y])
    return _report(g, "adjacency-oracle", PASS, detail=f"{len(oracle)} edges")


def check_class_family(g: GroupTable) -> VerdictReport:
    """M/D/S/Q tables: order p^(alpha+1), an element of order p^alpha, nonabelian."""
    if g.family not in ("M", "D", "S", "Q"):
        return _report(g, "class-families", NA, detail="not an M/D/S/Q family table")
    pk = prime_power(g.order)
    if pk is None:
        return _report(g, "class-families", FAIL, witness=g.order)
    p, k = pk
    x = g.named["x"]
    ok = g.orders[x] == p ** (k - 1) and not g.is_abelian
    return _report(g, "class-families", PASS if ok else FAIL, witness=x, alpha=k - 1)


def check_maxcyc_identities(g: GroupTable) -> VerdictReport:
    """Power identities for ``yx`` in M and S tables with the named ``x, y``."""
    if g.family not in ("M", "S"):
        return _report(g, "maxcyc-identities", NA, detail="not an M or S table")
    x, y = g.named["x"], g.named["y"]
    ox = g.orders[x]
    p = prime_power(g.order)[0]
    alpha = prime_power(ox)[1]
    yx = g.op(y, x)
    if g.family == "M" and p != 2:
        lhs, rhs, what = g.power(yx, p), g.power(x, p), "(yx)^p = x^p"
    elif g.family == "M":
        lhs, rhs, what = g.power(yx, 2), g.power(x, 2 ** (alpha - 1) + 2), "(yx)^2 = x^(2^(a-1)+2)"
    else:
        lhs, rhs, what = g.power(yx, 2), g.power(x, 2 ** (alpha - 1)), "(yx)^2 = x^(2^(a-1))"
    return _report(g, "maxcyc-identities", PASS if lhs == rhs else FAIL,
                   witness=yx, detail=what, alpha=alpha)


def check_dihedral_aut_fact(alpha: int) -> VerdictReport:
    """No automorphism of order 4 of ``D_{2^(alpha+1)}`` squares to inversion
    on the rotation ``x``."""
    if not 2 <= alpha <= 5:
        raise GroupError(f"dihedral automorphism scan supports 2 <= alpha <= 5, got {alpha}")
    g = groups.dihedral_group(alpha)
    x = g.named["x"]
    xinv = g.inverse(x)
    auts = groups.automorphisms(g)
    ident = tuple(range(g.order))
    for s in auts:
        s2 = groups.compose(s, s)
        if s2 != ident and groups.compose(s2, s2) == ident and s2[x] == xinv:
            return _report(g, "dihedral-aut", FAIL, witness=list(s), alpha=alpha)
    return _report(g, "dihedral-aut", PASS, witness=len(auts), alpha=alpha,
                   detail=f"|Aut| = {len(auts)}")


SUITES: dict[str, Callable[[GroupTable], VerdictReport]] = {
    "bounds": check_bounds,
    "thm-main": check_theorem_main,
    "prop-second-value": check_prop_second_value,
    "lemma-order-p": check_lemma_order_p,
    "prop-abelian": check_abelian_characterization,
    "lemma-noncyc": check_noncyclic_abelian_bound,
    "prop-maxcyc": check_maxcyclic_prop,
    "components": check_components,
    "universal": check_universal,
    "adjacency-oracle": check_adjacency_oracle,
    "class-families": check_class_family,
    "maxcyc-identities": check_maxcyc_identities,
}


def check_all(g: GroupTable) -> list[VerdictReport]:
    return [f(g) for f in SUITES.values()]


# ---------------------------------------------------------------------------
# census


def census_order16() -> list[VerdictReport]:
    return [check_theorem_main(g) for g in catalog_order16()]


def order16_with_nG_equal_exp() -> list[str]:
    return [g.label for g in catalog_order16() if n_G(g) == exponent(g)]


def _abelian_types(p: int, k: int) -> list[tuple[int, ...]]:
    """Partitions of k as descending cyclic factor orders p^a."""
    def parts(n, top):
        if n == 0:
            yield ()
            return
        for a in range(min(n, top), 0, -1):
            for rest in parts(n - a, a):
                yield (a,) + rest
    return [tuple(p ** a for a in lam) for lam in parts(k, k)]


def _abelian_spec(factors: Sequence[int]) -> str:
    return "x".join(f"C({q})" for q in factors)


def default_census() -> list[GroupSpec]:
    """Built-in census: p in {2, 3, 5}, family orders up to 1024 and
    abelian orders up to 625."""
    out: list[str] = []
    seen = set()

    def add(text):
        if text not in seen:
            seen.add(text)
            out.append(text)

    for p in (2, 3, 5):
        for k in range(1, 7):
            if p ** k <= CENSUS_MAX_ORDER:
                add(f"C({p ** k})")
        abelian = []
        for k in range(1, 5):
            for t in _abelian_types(p, k):
                if len(t) > 1:
                    abelian.append(t)
                    add(_abelian_spec(t))
        for t in abelian + [(p ** k,) for k in range(1, 5)]:
            if p * _prod(t) <= CENSUS_ABELIAN_MAX_ORDER:
                add(_abelian_spec(t + (p,)))
        nonabelian = []
        if p == 2:
            for a in range(2, 10):
                n = 2 ** (a + 1)
                nonabelian += [f"D({n})", f"Q({n})"]
                if a >= 3:
                    nonabelian += [f"SD({n})", f"M(2,{a + 1})"]
        else:
            a = 2
            while p ** (a + 1) <= CENSUS_MAX_ORDER:
                nonabelian.append(f"M({p},{a + 1})")
                a += 1
            nonabelian.append(f"H({p})")
        for s in nonabelian:
            add(s)
        for s in nonabelian:
            if parse_spec(s).order_bound() * p <= CENSUS_MAX_ORDER:
                add(f"{s}xC({p})")
    specs = [parse_spec(s) for s in out]
    for name, pres in order16_presentations():
        specs.append(GroupSpec(parse_spec(f'P"{pres.render()}"').atoms, name=f"cat16:{name}"))
        specs.append(GroupSpec(parse_spec(f'P"{pres.render()}"xC(2)').atoms,
                               name=f"cat16:{name}xC2"))
    return specs


def _prod(t):
    r = 1
    for q in t:
        r *= q
    return r


def run_census(specs: Iterable[GroupSpec], suites: Sequence[str] | None = None,
               max_order: int = CENSUS_MAX_ORDER) -> list[VerdictReport]:
    """Every spec against every suite, in (spec, suite) order.

    Construction failures become a failing ``construct`` verdict for that spec.
    """
    names = list(SUITES) if suites is None else list(suites)
    for s in names:
        if s not in SUITES:
            raise KeyError(f"unknown suite {s!r}; available: {', '.join(SUITES)}")
    out = []
    for spec in specs:
        try:
            g = spec.build(max_order)
        except (GroupError, ValueError) as e:
            out.append(VerdictReport(spec.label, "construct", FAIL, witness=str(e)))
            continue
        out.extend(SUITES[s](g) for s in names)
    return out


def summarize(reports: Iterable[VerdictReport]) -> Counter:
    return Counter(r.status for r in reports)


def failures(reports: Iterable[VerdictReport]) -> list[VerdictReport]:
    return [r for r in reports if r.status == FAIL]


def to_jsonl(reports: Iterable[VerdictReport]) -> str:
    return "".join(json.dumps(r.record()) + "\n" for r in reports)


def to_csv(reports: Iterable[VerdictReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        rec = r.record()
        rec = {k: ("" if v is None else json.dumps(v) if isinstance(v, list) else v)
               for k, v in rec.items()}
        w.writerow(rec)
    return buf.getvalue()
