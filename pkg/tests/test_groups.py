import math

import numpy as np
import pytest

import oracle
from epgraph import groups as gr
from epgraph.groups import (
    GroupError,
    OrderCapError,
    automorphisms,
    closure,
    dihedral_group,
    direct_product,
    element_order,
    exponent,
    generalized_quaternion,
    heisenberg,
    is_cyclic,
    is_dihedral_2group,
    isomorphic,
    make_cyclic,
    modular_group,
    semidihedral_group,
    semidirect_cyclic,
)


def involutions(g):
    return sum(1 for o in g.orders if o == 2)


class TestCyclic:
    def test_trivial(self):
        g = make_cyclic(1)
        assert g.order == 1
        assert exponent(g) == 1

    def test_c8(self):
        assert exponent(make_cyclic(8)) == 8

    def test_generator_of_c6(self):
        assert element_order(make_cyclic(6), 1) == 6

    def test_orders_formula(self):
        g = make_cyclic(12)
        assert g.orders == [12 // math.gcd(12, k) for k in range(12)]

    def test_zero_rejected(self):
        with pytest.raises(GroupError):
            make_cyclic(0)


class TestDirectProduct:
    def test_c4_c2(self):
        g = direct_product(make_cyclic(4), make_cyclic(2))
        assert g.order == 8
        assert exponent(g) == 4

    def test_klein_pairs_not_cyclic(self):
        g = direct_product(make_cyclic(2), make_cyclic(2))
        for x in range(1, 4):
            for y in range(x + 1, 4):
                assert len(closure(g, [x, y])) == 4
                assert max(g.orders) == 2

    def test_encoding(self):
        a, b = make_cyclic(4), make_cyclic(3)
        g = direct_product(a, b)
        # (1, 2) * (3, 2) = (0, 1)
        assert g.op(1 * 3 + 2, 3 * 3 + 2) == 0 * 3 + 1

    def test_cap(self):
        with pytest.raises(OrderCapError):
            direct_product(make_cyclic(300), make_cyclic(300))
        with pytest.raises(OrderCapError):
            direct_product(make_cyclic(8), make_cyclic(8), max_order=32)


class TestSemidirect:
    def test_dihedral_16(self):
        g = semidirect_cyclic(8, 2, 7)
        assert g.order == 16
        assert is_dihedral_2group(g)
        x, y = g.named["x"], g.named["y"]
        assert element_order(g, x) == 8
        assert element_order(g, y) == 2

    def test_modular_27(self):
        g = semidirect_cyclic(9, 3, 4)
        assert g.order == 27
        x, y = g.named["x"], g.named["y"]
        assert element_order(g, x) == 9
        assert g.word(g.inverse(y), x, y) == g.power(x, 4)

    def test_semidihedral_16(self):
        g = semidirect_cyclic(8, 2, 3)
        assert g.order == 16
        assert not is_dihedral_2group(g)
        x, y = g.named["x"], g.named["y"]
        assert g.word(g.inverse(y), x, y) == g.power(x, 3)

    def test_multiplication_rule(self):
        m, k, t = 9, 3, 4
        g = semidirect_cyclic(m, k, t)
        for a1 in range(m):
            for b1 in range(k):
                for a2, b2 in [(1, 0), (2, 1), (5, 2)]:
                    want = ((a1 + pow(t, b1, m) * a2) % m) * k + (b1 + b2) % k
                    assert g.op(a1 * k + b1, a2 * k + b2) == want

    def test_bad_action(self):
        with pytest.raises(GroupError, match="t\\^k"):
            semidirect_cyclic(9, 2, 4)
        with pytest.raises(GroupError, match="gcd"):
            semidirect_cyclic(8, 2, 2)


class TestQuaternion:
    def test_q8_one_involution(self):
        g = generalized_quaternion(2)
        assert g.order == 8
        assert involutions(g) == 1

    def test_q16_exponent(self):
        assert exponent(generalized_quaternion(3)) == 8

    def test_q16_involution_is_x4(self):
        g = generalized_quaternion(3)
        x = g.named["x"]
        assert element_order(g, x) == 8
        z = g.power(x, 4)
        assert g.orders[z] == 2
        for sub in g.cyclic_subgroups:
            if len(sub) > 1:
                assert z in sub

    def test_relations(self):
        for alpha in range(2, 6):
            g = generalized_quaternion(alpha)
            x, y = g.named["x"], g.named["y"]
            assert g.power(x, 2 ** (alpha - 1)) == g.power(y, 2)
            assert g.word(g.inverse(y), x, y) == g.inverse(x)

    @pytest.mark.parametrize("alpha", [2, 3, 4, 5, 6])
    def test_unique_involution(self, alpha):
        assert involutions(generalized_quaternion(alpha)) == 1

    def test_alpha_too_small(self):
        with pytest.raises(GroupError):
            generalized_quaternion(1)


class TestHeisenberg:
    def test_h3(self):
        g = heisenberg(3)
        assert g.order == 27
        assert exponent(g) == 3
        assert not g.is_abelian

    def test_h5(self):
        g = heisenberg(5)
        assert (g.order, exponent(g)) == (125, 5)

    @pytest.mark.parametrize("p", [2, 4, 9, 1])
    def test_rejects(self, p):
        with pytest.raises(GroupError):
            heisenberg(p)


class TestElementOrder:
    def test_identity(self):
        assert element_order(dihedral_group(3), 0) == 1

    def test_c4_c2_pair(self):
        g = direct_product(make_cyclic(4), make_cyclic(2))
        assert element_order(g, 1 * 2 + 1) == 4

    def test_agrees_with_cache(self):
        g = modular_group(3, 2)
        assert [element_order(g, e) for e in range(g.order)] == g.orders

    def test_out_of_range(self):
        with pytest.raises(GroupError):
            element_order(make_cyclic(3), 3)


class TestExponent:
    def test_elementary(self):
        assert exponent(gr.abelian_group([2, 2, 2, 2])) == 2

    def test_m27(self):
        assert exponent(modular_group(3, 2)) == 9

    def test_non_p_group_uses_lcm(self):
        assert exponent(direct_product(make_cyclic(4), make_cyclic(6))) == 12


class TestClosure:
    def test_identity(self):
        assert closure(make_cyclic(5), [0]) == {0}

    def test_generator(self):
        assert len(closure(make_cyclic(8), [1])) == 8

    def test_dihedral_subgroup(self):
        g = dihedral_group(3)
        x, y = g.named["x"], g.named["y"]
        h = closure(g, [g.power(x, 2), y])
        assert len(h) == 8

    def test_empty(self):
        with pytest.raises(GroupError):
            closure(make_cyclic(3), [])


class TestCyclicity:
    def test_examples(self):
        assert is_cyclic(make_cyclic(16))
        assert not is_cyclic(gr.abelian_group([4, 4]))
        assert not is_cyclic(generalized_quaternion(2))

    def test_dihedral_recognition(self):
        assert is_dihedral_2group(dihedral_group(3))
        assert not is_dihedral_2group(semidihedral_group(3))
        assert not is_dihedral_2group(make_cyclic(8))
        # small orders fall under the exponent-p clause instead
        assert not is_dihedral_2group(gr.abelian_group([2, 2]))
        assert not is_dihedral_2group(make_cyclic(2))
        assert not is_dihedral_2group(generalized_quaternion(3))
        assert not is_dihedral_2group(modular_group(2, 3))
        assert not is_dihedral_2group(direct_product(dihedral_group(2), make_cyclic(2)))

    @pytest.mark.parametrize("alpha", range(2, 9))
    def test_all_dihedral(self, alpha):
        assert is_dihedral_2group(semidirect_cyclic(2 ** alpha, 2, 2 ** alpha - 1))


class TestAutomorphisms:
    def test_c4(self):
        assert len(automorphisms(make_cyclic(4))) == 2

    def test_klein(self):
        assert len(automorphisms(gr.abelian_group([2, 2]))) == 6

    def test_d16(self):
        # independent count: oracle.automorphism_count(oracle.dihedral(3)) == 32 == 8 * phi(8)
        auts = automorphisms(dihedral_group(3))
        assert len(auts) == 32 == 8 * 4

    def test_sorted_and_homomorphic(self):
        g = dihedral_group(2)
        auts = automorphisms(g)
        assert auts == sorted(auts)
        for phi in auts:
            for a in range(g.order):
                for b in range(g.order):
                    assert phi[g.op(a, b)] == g.op(phi[a], phi[b])

    def test_cap(self):
        with pytest.raises(OrderCapError):
            automorphisms(make_cyclic(512))

    @pytest.mark.parametrize("n", [5, 8, 9, 12])
    def test_cyclic_counts(self, n):
        phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
        assert len(automorphisms(make_cyclic(n))) == phi


class TestIsomorphic:
    def test_d8_q8(self):
        assert not isomorphic(dihedral_group(2), generalized_quaternion(2))

    def test_product_orderings(self):
        a = direct_product(make_cyclic(4), make_cyclic(2))
        b = direct_product(make_cyclic(2), make_cyclic(4))
        assert isomorphic(a, b)
        phi = gr.find_isomorphism(a, b)
        for x in range(8):
            for y in range(8):
                assert phi[a.op(x, y)] == b.op(phi[x], phi[y])

    def test_d16_s16(self):
        assert not isomorphic(dihedral_group(3), semidihedral_group(3))

    def test_fingerprint_tie_needs_search(self):
        # same order statistics, still isomorphic through a relabelling
        g = modular_group(3, 2)
        perm = np.r_[0, np.random.default_rng(1).permutation(np.arange(1, 27))]
        inv = np.argsort(perm)
        mul = perm[g.mul[inv][:, inv]]
        h = gr.GroupTable.from_table(mul, label="shuffled")
        assert isomorphic(g, h)
        assert not isomorphic(g, heisenberg(3))

    def test_cap(self):
        with pytest.raises(OrderCapError):
            isomorphic(make_cyclic(300), make_cyclic(300))


class TestTableValidation:
    def test_rejects_bad_identity(self):
        with pytest.raises(GroupError):
            gr.GroupTable.from_table([[1, 0], [0, 1]])

    def test_rejects_non_latin(self):
        with pytest.raises(GroupError):
            gr.GroupTable.from_table([[0, 1, 2], [1, 1, 0], [2, 0, 1]])

    def test_associativity_caught(self):
        # a Latin square with identity 0 that is not associative (order 5 loop)
        loop = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        g = gr.GroupTable.from_table(loop)
        with pytest.raises(GroupError, match="associativity"):
            gr.check_axioms(g)

    def test_immutable(self):
        g = make_cyclic(4)
        with pytest.raises(ValueError):
            g.mul[0, 0] = 1
        with pytest.raises(AttributeError):
            g.label = "other"

    def test_sampled_check_large(self):
        g = direct_product(make_cyclic(32), make_cyclic(32))
        gr.check_axioms(g, seed=7, samples=20_000)


class TestAgainstOracle:
    """Element-order statistics agree with the concrete reference groups."""

    @pytest.mark.parametrize("ours, ref", [
        (lambda: dihedral_group(4), lambda: oracle.dihedral(4)),
        (lambda: semidihedral_group(4), lambda: oracle.semidihedral(4)),
        (lambda: modular_group(2, 4), lambda: oracle.modular(2, 4)),
        (lambda: modular_group(5, 2), lambda: oracle.modular(5, 2)),
        (lambda: generalized_quaternion(4), lambda: oracle.quaternion(4)),
        (lambda: heisenberg(3), lambda: oracle.heisenberg(3)),
    ])
    def test_order_histogram(self, ours, ref):
        g, r = ours(), ref()
        from collections import Counter
        assert Counter(g.orders) == oracle.order_histogram(r)
