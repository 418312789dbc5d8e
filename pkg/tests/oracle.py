"""Brute-force reference groups built from concrete objects (permutations,
matrices, tuples), independent of the table constructors.

A group here is ``(elements, mul, identity)`` with hashable elements.
"""

from __future__ import annotations

from collections import Counter, deque
from itertools import product


def generate(gens, mul, identity):
    seen = {identity}
    queue = deque([identity])
    while queue:
        e = queue.popleft()
        for s in gens:
            f = mul(e, s)
            if f not in seen:
                seen.add(f)
                queue.append(f)
    return sorted(seen), mul, identity


def perm_mul(a, b):
    # apply a, then b
    return tuple(b[i] for i in a)


def affine_group(m, t):
    """Maps i -> u*i + v on Z_m generated by a translation and i -> t*i."""
    ident = tuple(range(m))
    trans = tuple((i + 1) % m for i in range(m))
    scale = tuple((t * i) % m for i in range(m))
    return generate([trans, scale], perm_mul, ident)


def dihedral(alpha):
    return affine_group(2 ** alpha, 2 ** alpha - 1)


def semidihedral(alpha):
    return affine_group(2 ** alpha, 2 ** (alpha - 1) - 1)


def modular(p, alpha):
    return affine_group(p ** alpha, p ** (alpha - 1) + 1)


def cyclic(n):
    return generate([1 % n], lambda a, b: (a + b) % n, 0)


def quaternion(alpha):
    """Generalized quaternion as 2x2 matrices over Z[zeta] encoded exactly:
    entries are (zeta exponent) or None for zero, zeta of order 2^(alpha+1)."""
    n = 2 ** (alpha + 1)  # zeta^(n/2) = -1 ; rotation uses zeta^2 of order 2^alpha

    # monomial matrices: (perm, (e0, e1)) means row i has entry zeta^e_i in column perm[i]
    def mul(a, b):
        pa, ea = a
        pb, eb = b
        perm = tuple(pb[pa[i]] for i in range(2))
        exps = tuple((ea[i] + eb[pa[i]]) % n for i in range(2))
        return perm, exps

    ident = ((0, 1), (0, 0))
    x = ((0, 1), (2, n - 2))          # diag(z^2, z^-2)
    y = ((1, 0), (n // 2, 0))         # [[0, -1], [1, 0]]
    return generate([x, y], mul, ident)


def heisenberg(p):
    def mul(a, b):
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2] + a[0] * b[1]) % p)
    return generate([(1, 0, 0), (0, 1, 0)], mul, (0, 0, 0))


def product_group(*factors):
    elems = list(product(*(f[0] for f in factors)))
    muls = [f[1] for f in factors]

    def mul(a, b):
        return tuple(m(x, y) for m, x, y in zip(muls, a, b))
    return elems, mul, tuple(f[2] for f in factors)


def powers(grp, z):
    _, mul, e = grp
    out = [e]
    cur = z
    while cur != e:
        out.append(cur)
        cur = mul(cur, z)
    return out


def order(grp, z):
    return len(powers(grp, z))


def closed_neighborhoods(grp):
    """|I(x)| for every nontrivial x: y counts when x and y share some <z>."""
    elems, _, e = grp
    cyc = [set(powers(grp, z)) for z in elems]
    out = {}
    for x in elems:
        if x == e:
            continue
        nb = set()
        for c in cyc:
            if x in c:
                nb |= c
        out[x] = len(nb)
    return out


def n_G(grp):
    return max(closed_neighborhoods(grp).values())


def exponent(grp):
    return max(order(grp, z) for z in grp[0])


def involutions(grp):
    return sum(1 for z in grp[0] if order(grp, z) == 2)


def order_histogram(grp):
    return Counter(order(grp, z) for z in grp[0])


def components(grp):
    """Component sizes of the enhanced power graph by flood fill."""
    elems, _, e = grp
    cyc = [set(powers(grp, z)) - {e} for z in elems]
    verts = [x for x in elems if x != e]
    left = set(verts)
    sizes = []
    while left:
        start = left.pop()
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for c in cyc:
                if v in c:
                    for w in c:
                        if w not in comp:
                            comp.add(w)
                            left.discard(w)
                            stack.append(w)
        sizes.append(len(comp))
    return sorted(sizes, reverse=True)


def automorphism_count(grp):
    """|Aut| by trying every image pair for a 2-generated group."""
    elems, mul, e = grp
    gens = _two_generators(grp)
    count = 0
    for a in elems:
        for b in elems:
            phi = _extend(grp, gens, (a, b))
            if phi is not None:
                count += 1
    return count


def _two_generators(grp):
    elems = grp[0]
    for a in elems:
        for b in elems:
            if len(generate([a, b], grp[1], grp[2])[0]) == len(elems):
                return a, b
    raise ValueError("not 2-generated")


def _extend(grp, gens, imgs):
    elems, mul, e = grp
    phi = {e: e}
    queue = deque([e])
    while queue:
        u = queue.popleft()
        for s, t in zip(gens, imgs):
            v = mul(u, s)
            fv = mul(phi[u], t)
            if v in phi:
                if phi[v] != fv:
                    return None
            else:
                phi[v] = fv
                queue.append(v)
    if len(set(phi.values())) != len(elems):
        return None
    return phi
