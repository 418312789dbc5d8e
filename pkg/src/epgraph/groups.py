"""Finite groups as explicit multiplication tables.

Every group is stored as an ``n x n`` table of element indices with the
identity at index 0.  Constructors normalize their encodings so that this
holds; everything downstream (graphs, verification) relies on it.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 65536
SEARCH_MAX_ORDER = 256
EXHAUSTIVE_ASSOC_MAX = 512
SAMPLED_ASSOC_TRIPLES = 100_000


class GroupError(ValueError):
    """Invalid construction parameters or a table that is not a group."""


class OrderCapError(GroupError):
    """A construction or search would exceed its configured order limit."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GroupTable:
    """Immutable Cayley table of a finite group.

    ``mul[a, b]`` is the index of ``a*b``.  ``named`` maps generator names
    used by the family constructors (``x``, ``y``) to element indices and
    ``family`` tags the construction ("C", "D", "S", "Q", "M", "H" or "").
    """

    mul: np.ndarray
    inv: np.ndarray
    elt_order: np.ndarray
    label: str = "G"
    family: str = ""
    named: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_table(cls, mul, label="G", family="", named=None) -> "GroupTable":
        """Build from a raw table, deriving inverses and element orders.

        Checks that 0 is a two-sided identity and that every row and column
        is a permutation; associativity is left to :func:`check_axioms`.
        """
        mul = np.asarray(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise GroupError(f"table must be square and nonempty, got shape {mul.shape}")
        n = mul.shape[0]
        ar = np.arange(n)
        if mul.min() < 0 or mul.max() >= n:
            raise GroupError("table entries out of range")
        if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
            raise GroupError("index 0 is not a two-sided identity")
        srt = np.sort(mul, axis=1)
        if not (srt == ar).all() or not (np.sort(mul, axis=0) == ar[:, None]).all():
            raise GroupError("table is not a Latin square")
        inv = np.argmax(mul == 0, axis=1)
        if not (mul[ar, inv] == 0).all() or not (mul[inv, ar] == 0).all():
            raise GroupError("missing two-sided inverses")
        orders = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            if k > n:
                raise GroupError("element powers never reach the identity")
            cur = mul[cur, ar]
            k += 1
        return cls(_readonly(mul), _readonly(inv), _readonly(orders),
                   label, family, dict(named or {}))

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GroupTable({self.label!r}, order={self.order})"

    @cached_property
    def rows(self) -> list[list[int]]:
        # plain lists are much faster than numpy scalars in Python-level loops
        return self.mul.tolist()

    @cached_property
    def orders(self) -> list[int]:
        return self.elt_order.tolist()

    def op(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def power(self, g: int, k: int) -> int:
        o = self.orders[g]
        k %= o
        r = 0
        row = self.rows
        base = g
        while k:
            if k & 1:
                r = row[r][base]
            base = row[base][base]
            k >>= 1
        return r

    def word(self, *letters: int) -> int:
        r = 0
        for g in letters:
            r = self.rows[r][g]
        return r

    def powers(self, g: int) -> list[int]:
        """``[g^0, g^1, ..., g^(o-1)]``."""
        out = [0]
        row = self.rows
        cur = g
        while cur != 0:
            out.append(cur)
            cur = row[cur][g]
        return out

    @cached_property
    def cyclic_subgroups(self) -> tuple[tuple[int, ...], ...]:
        """All distinct cyclic subgroups, each listed as the powers of its
        smallest-index generator, ordered by that generator."""
        n = self.order
        done = bytearray(n)
        subs = []
        for z in range(n):
            if done[z]:
                continue
            pw = self.powers(z)
            o = len(pw)
            for k in range(o):
                if math.gcd(k, o) == 1:
                    done[pw[k]] = 1
            done[z] = 1
            subs.append(tuple(pw))
        return tuple(subs)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())


# ---------------------------------------------------------------------------
# constructors


def make_cyclic(n: int) -> GroupTable:
    if n < 1:
        raise GroupError(f"invalid group order {n}")
    ar = np.arange(n)
    mul = (ar[:, None] + ar[None, :]) % n
    return GroupTable.from_table(mul, label=f"C{n}", family="C",
                                 named={"x": 1 % n})


def direct_product(a: GroupTable, b: GroupTable, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """``a x b`` with pair ``(i, j)`` stored at index ``i*|b| + j``."""
    n = a.order * b.order
    if n > max_order:
        raise OrderCapError(f"product order {n} exceeds the maximum {max_order}")
    nb = b.order
    mul = (a.mul[:, None, :, None] * nb + b.mul[None, :, None, :]).reshape(n, n)
    named = {f"a.{k}": v * nb for k, v in a.named.items()}
    named.update({f"b.{k}": v for k, v in b.named.items()})
    return GroupTable.from_table(mul, label=f"{a.label}x{b.label}", named=named)


def semidirect_cyclic(m: int, k: int, t: int, label: str | None = None,
                      family: str = "") -> GroupTable:
    """``C_m ⋊ C_k`` where the generator of ``C_k`` acts by ``a -> t*a``.

    Elements are pairs ``(a, b)`` at index ``a*k + b`` with
    ``(a1, b1)(a2, b2) = (a1 + t^b1 a2, b1 + b2)``.  The named generators are
    ``x = (1, 0)`` and ``y = (0, k-1)``, so that ``y^-1 x y = x^t``.
    """
    if m < 1 or k < 1:
        raise GroupError(f"invalid factor orders m={m}, k={k}")
    if math.gcd(t, m) != 1:
        raise GroupError(f"gcd(t, m) = gcd({t}, {m}) != 1: t is not a unit mod m")
    if pow(t, k, m) != 1 % m:
        raise GroupError(f"t^k = {t}^{k} is not 1 mod {m}: the action has the wrong order")
    ar_a = np.arange(m)
    ar_b = np.arange(k)
    tpow = np.array([pow(t, int(b), m) for b in ar_b], dtype=np.int64)
    a1 = ar_a[:, None, None, None]
    b1 = ar_b[None, :, None, None]
    a2 = ar_a[None, None, :, None]
    b2 = ar_b[None, None, None, :]
    na = (a1 + tpow[b1] * a2) % m
    nb = (b1 + b2) % k
    n = m * k
    mul = (na * k + nb).reshape(n, n)
    # (0,1) x (0,1)^-1 = x^t, so y = (0,1)^-1 = (0,k-1) gives y^-1 x y = x^t
    return GroupTable.from_table(mul, label=label or f"C{m}:C{k}[{t}]", family=family,
                                 named={"x": (1 % m) * k, "y": (k - 1) % k})


def dihedral_group(alpha: int) -> GroupTable:
    """Dihedral group of order ``2^(alpha+1)``."""
    if alpha < 1:
        raise GroupError("dihedral 2-groups need alpha >= 1")
    m = 2 ** alpha
    return semidirect_cyclic(m, 2, m - 1, label=f"D{2 * m}", family="D")


def semidihedral_group(alpha: int) -> GroupTable:
    """Semidihedral group of order ``2^(alpha+1)``, ``x^y = x^(2^(alpha-1)-1)``."""
    if alpha < 3:
        raise GroupError("semidihedral groups need alpha >= 3 (order >= 16)")
    m = 2 ** alpha
    return semidirect_cyclic(m, 2, m // 2 - 1, label=f"SD{2 * m}", family="S")


def modular_group(p: int, alpha: int) -> GroupTable:
    """``M_{p^(alpha+1)}``: ``x^(p^alpha) = y^p = 1``, ``x^y = x^(p^(alpha-1)+1)``."""
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    if alpha < (3 if p == 2 else 2):
        raise GroupError(f"modular group M needs alpha >= {3 if p == 2 else 2} for p = {p}")
    m = p ** alpha
    return semidirect_cyclic(m, p, p ** (alpha - 1) + 1, label=f"M{m * p}", family="M")


def generalized_quaternion(alpha: int) -> GroupTable:
    """``Q_{2^(alpha+1)}`` with ``x^(2^alpha) = 1``, ``x^(2^(alpha-1)) = y^2``,
    ``x^y = x^-1``.

    Built on ``Z_{2^alpha} x Z_2`` with the cocycle
    ``(a1,b1)(a2,b2) = (a1 + (-1)^b1 a2 + b1 b2 2^(alpha-1), b1 xor b2)``.
    """
    if alpha < 2:
        raise GroupError("generalized quaternion groups need alpha >= 2")
    m = 2 ** alpha
    ar_a = np.arange(m)
    ar_b = np.arange(2)
    a1 = ar_a[:, None, None, None]
    b1 = ar_b[None, :, None, None]
    a2 = ar_a[None, None, :, None]
    b2 = ar_b[None, None, None, :]
    na = (a1 + (1 - 2 * b1) * a2 + b1 * b2 * (m // 2)) % m
    nb = b1 ^ b2
    n = 2 * m
    mul = (na * 2 + nb).reshape(n, n)
    return GroupTable.from_table(mul, label=f"Q{n}", family="Q", named={"x": 2, "y": 1})


def heisenberg(p: int) -> GroupTable:
    """Upper unitriangular 3x3 matrices over ``Z_p``, ``p`` an odd prime.

    ``(a, b, c)`` is the matrix with superdiagonal ``a, b`` and corner ``c``,
    stored at index ``(a*p + b)*p + c``.
    """
    if p == 2 or not is_prime(p):
        raise GroupError(f"Heisenberg group needs an odd prime, got {p}")
    e = np.arange(p ** 3)
    a, b, c = e // (p * p), (e // p) % p, e % p
    A1, B1, C1 = a[:, None], b[:, None], c[:, None]
    A2, B2, C2 = a[None, :], b[None, :], c[None, :]
    na = (A1 + A2) % p
    nb = (B1 + B2) % p
    nc = (C1 + C2 + A1 * B2) % p
    mul = (na * p + nb) * p + nc
    return GroupTable.from_table(mul, label=f"H{p}", family="H",
                                 named={"x": p * p, "y": p, "z": 1})


def abelian_group(parts: Sequence[int], max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Direct product of cyclic groups of the given orders, left to right."""
    if not parts:
        return make_cyclic(1)
    g = make_cyclic(parts[0])
    for q in parts[1:]:
        g = direct_product(g, make_cyclic(q), max_order=max_order)
    return g


# ---------------------------------------------------------------------------
# arithmetic


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``n = p^k``, ``k >= 1``, or None."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def element_order(g: GroupTable, x: int) -> int:
    if not 0 <= x < g.order:
        raise GroupError(f"element {x} out of range for order {g.order}")
    k, cur = 1, x
    while cur != 0:
        cur = g.rows[cur][x]
        k += 1
    return k


def exponent(g: GroupTable) -> int:
    return math.lcm(*set(g.orders))


def closure(g: GroupTable, gens: Iterable[int]) -> frozenset[int]:
    gens = sorted(set(gens))
    if not gens:
        raise GroupError("closure needs at least one generator")
    row = g.rows
    seen = {0}
    queue = deque([0])
    while queue:
        e = queue.popleft()
        r = row[e]
        for s in gens:
            f = r[s]
            if f not in seen:
                seen.add(f)
                queue.append(f)
    return frozenset(seen)


def is_cyclic(g: GroupTable) -> bool:
    return max(g.orders) == g.order


def commute(g: GroupTable, a: int, b: int) -> bool:
    return g.rows[a][b] == g.rows[b][a]


def is_dihedral_2group(g: GroupTable) -> bool:
    """True for dihedral groups of order ``2^(alpha+1)`` with ``alpha >= 2``."""
    n = g.order
    pk = prime_power(n)
    if pk is None or pk[0] != 2 or n < 8:
        return False
    half = n // 2
    involutions = np.flatnonzero(g.elt_order == 2)
    for sub in g.cyclic_subgroups:
        if len(sub) != half:
            continue
        x = sub[1]
        xinv = int(g.inv[x])
        inside = np.zeros(n, dtype=bool)
        inside[list(sub)] = True
        for y in involutions:
            if inside[y]:
                continue
            # y is an involution so y^-1 x y = y x y
            if g.rows[g.rows[y][x]][y] == xinv:
                return True
    return False


def check_axioms(g: GroupTable, seed: int = 0, samples: int = SAMPLED_ASSOC_TRIPLES) -> None:
    """Raise :class:`GroupError` if identity, inverse or associativity fails.

    Associativity is checked on every triple up to order 512 and on
    ``samples`` random triples (fixed ``seed``) above that.
    """
    n = g.order
    mul = g.mul
    ar = np.arange(n)
    if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
        raise GroupError(f"{g.label}: identity law fails")
    if not (mul[ar, g.inv] == 0).all():
        raise GroupError(f"{g.label}: inverse law fails")
    if n <= EXHAUSTIVE_ASSOC_MAX:
        for a in range(n):
            left = mul[mul[a]]          # (a b) c indexed [b, c]
            right = mul[a][mul]         # a (b c)
            if not np.array_equal(left, right):
                b, c = map(int, np.argwhere(left != right)[0])
                raise GroupError(f"{g.label}: associativity fails at ({a}, {b}, {c})")
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        bad = mul[mul[a, b], c] != mul[a, mul[b, c]]
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise GroupError(f"{g.label}: associativity fails at ({a[i]}, {b[i]}, {c[i]})")


# ---------------------------------------------------------------------------
# structure


def center(g: GroupTable) -> frozenset[int]:
    return frozenset(np.flatnonzero((g.mul == g.mul.T).all(axis=1)).tolist())


def derived_subgroup(g: GroupTable) -> frozenset[int]:
    inv = g.inv
    mul = g.mul
    comms = mul[mul[inv[:, None], inv[None, :]], mul]
    return closure(g, np.unique(comms).tolist())


def abelianization_invariants(g: GroupTable) -> tuple[int, tuple[tuple[int, int], ...]]:
    """``|G/G'|`` and the histogram of element orders in ``G/G'``.

    The order histogram determines a finite abelian group up to isomorphism.
    """
    d = derived_subgroup(g)
    coset_of = {}
    reps = []
    for e in range(g.order):
        if e in coset_of:
            continue
        cid = len(reps)
        reps.append(e)
        for h in d:
            coset_of[g.rows[e][h]] = cid
    hist = Counter()
    for r in reps:
        k, cur = 1, r
        while cur not in d:
            cur = g.rows[cur][r]
            k += 1
        hist[k] += 1
    return len(reps), tuple(sorted(hist.items()))


def fingerprint(g: GroupTable) -> tuple:
    from .epg import neighborhood_sizes

    return (
        g.order,
        exponent(g),
        tuple(sorted(Counter(g.orders).items())),
        len(center(g)),
        len(derived_subgroup(g)),
        abelianization_invariants(g),
        tuple(sorted(Counter(neighborhood_sizes(g).values()).items())) if g.order > 1 else (),
    )


def generating_set(g: GroupTable) -> list[int]:
    """Greedy generating set, taking elements by descending order."""
    gens: list[int] = []
    span = frozenset([0])
    for e in sorted(range(g.order), key=lambda e: (-g.orders[e], e)):
        if len(span) == g.order:
            break
        if e not in span:
            gens.append(e)
            span = closure(g, gens)
    return gens


def _homomorphism_search(a: GroupTable, b: GroupTable, first_only: bool) -> list[list[int]]:
    """Injective homomorphisms ``a -> b`` with ``|a| == |b|`` by generator-image
    backtracking; each level extends the partial map to the subgroup generated
    so far and rejects inconsistent or non-injective extensions."""
    gens = generating_set(a)
    arow, brow = a.rows, b.rows
    by_order: dict[int, list[int]] = {}
    for e in range(b.order):
        by_order.setdefault(b.orders[e], []).append(e)
    found: list[list[int]] = []

    def extend(phi: dict[int, int], level: int) -> dict[int, int] | None:
        gs = gens[: level + 1]
        phi = dict(phi)
        queue = deque(phi.keys())
        while queue:
            u = queue.popleft()
            fu = phi[u]
            for s in gs:
                v = arow[u][s]
                fv = brow[fu][phi[s]]
                got = phi.get(v)
                if got is None:
                    phi[v] = fv
                    queue.append(v)
                elif got != fv:
                    return None
        if len(set(phi.values())) != len(phi):
            return None
        return phi

    def rec(phi: dict[int, int], level: int) -> bool:
        if level == len(gens):
            found.append([phi[e] for e in range(a.order)])
            return first_only
        s = gens[level]
        for cand in by_order.get(a.orders[s], ()):
            if s in phi:
                break
            trial = dict(phi)
            trial[s] = cand
            ext = extend(trial, level)
            if ext is not None and rec(ext, level + 1):
                return True
        return False

    if a.order == 1:
        return [[0]]
    rec({0: 0}, 0)
    return found


def automorphisms(g: GroupTable, max_order: int = SEARCH_MAX_ORDER) -> list[tuple[int, ...]]:
    """All automorphisms as image tuples, sorted lexicographically."""
    if g.order > max_order:
        raise OrderCapError(f"automorphism search limited to order {max_order}, got {g.order}")
    return sorted(tuple(m) for m in _homomorphism_search(g, g, first_only=False))


def find_isomorphism(a: GroupTable, b: GroupTable, max_order: int = SEARCH_MAX_ORDER) -> tuple[int, ...] | None:
    if max(a.order, b.order) > max_order:
        raise OrderCapError(f"isomorphism search limited to order {max_order}")
    if fingerprint(a) != fingerprint(b):
        return None
    maps = _homomorphism_search(a, b, first_only=True)
    return tuple(maps[0]) if maps else None


def isomorphic(a: GroupTable, b: GroupTable, max_order: int = SEARCH_MAX_ORDER) -> bool:
    return find_isomorphism(a, b, max_order) is not None


def compose(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """``f`` after ``g`` as image tuples."""
    return tuple(f[x] for x in g)
