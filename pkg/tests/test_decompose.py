from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from groupgraphs.decompose import (
    build_supersoluble_instance,
    classify_frattini_quotient,
    coprime_direct_factors,
    find_supersoluble_decomposition,
    is_p_group,
    ratio_of_primes,
    recover_primes_from_ratio,
)
from groupgraphs.errors import (
    DecompositionNotFoundError,
    NotAnActionError,
    NotTwoGeneratedError,
    UnrecoverableRatioError,
)
from groupgraphs.groups import (
    alternating,
    cyclic,
    cyclic_scalar_action,
    dihedral,
    direct_product,
    quaternion,
    semidirect_product,
    symmetric,
)
from groupgraphs.structure import group_isomorphic

PRIMES_97 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


class TestRatioRecovery:
    def test_empty_product(self):
        assert recover_primes_from_ratio(Fraction(1)) == ()

    def test_two_and_three(self):
        assert recover_primes_from_ratio(Fraction(1, 3)) == (2, 3)

    def test_repeated_prime(self):
        assert recover_primes_from_ratio(Fraction(8, 27)) == (3, 3, 3)

    def test_unrecoverable_ratio(self):
        with pytest.raises(UnrecoverableRatioError):
            recover_primes_from_ratio(Fraction(5, 7))

    def test_out_of_range(self):
        with pytest.raises(UnrecoverableRatioError):
            recover_primes_from_ratio(Fraction(3, 2))
        with pytest.raises(UnrecoverableRatioError):
            recover_primes_from_ratio(Fraction(0))

    def test_prime_beyond_bound(self):
        with pytest.raises(UnrecoverableRatioError):
            recover_primes_from_ratio(ratio_of_primes((1009,)), bound=997)

    @settings(max_examples=150)
    @given(st.lists(st.sampled_from(PRIMES_97), max_size=6))
    def test_round_trip(self, primes):
        multiset = tuple(sorted(primes))
        assert recover_primes_from_ratio(ratio_of_primes(multiset)) == multiset


class TestSupersolubleDecomposition:
    def test_symmetric_three(self):
        dec = find_supersoluble_decomposition(symmetric(3))
        assert dec.module_orders == (3,)
        assert dec.complement.order == 2
        assert dec.action_scalars[0][0] == 1  # identity acts trivially
        assert dec.action_scalars[0][1] == 2  # the involution inverts

    def test_dihedral_thirty(self):
        g = build_supersoluble_instance([3, 5], [2], [[2], [4]])
        assert g.n == 30
        dec = find_supersoluble_decomposition(g)
        assert sorted(dec.module_orders) == [3, 5]
        assert dec.complement.order == 2

    def test_abelian_group_has_no_modules(self):
        dec = find_supersoluble_decomposition(cyclic(6))
        assert dec.module_orders == () and dec.complement.order == 6

    def test_rejects_nontrivial_frattini(self):
        with pytest.raises(DecompositionNotFoundError):
            find_supersoluble_decomposition(quaternion(2))

    def test_rejects_non_supersoluble(self):
        with pytest.raises(DecompositionNotFoundError):
            find_supersoluble_decomposition(alternating(4))

    def test_built_instance_matches_symmetric_three(self):
        built = build_supersoluble_instance([3], [2], [[2]])
        assert group_isomorphic(built, symmetric(3)) is not None

    def test_builder_rejects_wrong_scalar_order(self):
        with pytest.raises(NotAnActionError):
            build_supersoluble_instance([5], [2], [[2]])  # 2^2 != 1 mod 5

    def test_builder_rejects_composite_module(self):
        with pytest.raises(NotAnActionError):
            build_supersoluble_instance([4], [2], [[3]])

    def test_builder_rejects_isomorphic_modules(self):
        # two copies of the same action are never 2-generated
        with pytest.raises(NotAnActionError):
            build_supersoluble_instance([3, 3], [2], [[2], [2]])


class TestClassifier:
    def test_cyclic(self):
        assert classify_frattini_quotient(cyclic(6)).tag == "cyclic"

    def test_p_group(self):
        assert classify_frattini_quotient(quaternion(2)).tag == "p-group"

    def test_single_prime_complement(self):
        cls = classify_frattini_quotient(symmetric(3))
        assert cls.tag == "prime-complement"
        assert cls.detail["p"] == 2
        assert cls.detail["module_orders"] == [3]

    def test_module_of_composite_order(self):
        # the Klein four-subgroup is one irreducible module for the
        # three-cycle action
        cls = classify_frattini_quotient(alternating(4))
        assert cls.tag == "prime-complement"
        assert cls.detail["p"] == 3
        assert cls.detail["module_orders"] == [4]

    def test_biprime_complement(self):
        cls = classify_frattini_quotient(dihedral(6))
        assert cls.tag == "biprime-complement"
        assert cls.detail["p"] == 2

    def test_connected_cases(self):
        assert classify_frattini_quotient(symmetric(4)).tag == "connected"
        c6c6 = direct_product(cyclic(6), cyclic(6))
        assert classify_frattini_quotient(c6c6).tag == "connected"

    def test_frobenius_twenty_connected(self):
        c5, c4 = cyclic(5), cyclic(4)
        f20 = semidirect_product(c5, c4, cyclic_scalar_action(c5, c4, 2), name="F20")
        assert classify_frattini_quotient(f20).tag == "connected"

    def test_requires_two_generation(self):
        with pytest.raises(NotTwoGeneratedError):
            classify_frattini_quotient(direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)))


class TestPGroupRecognizer:
    def test_dihedral_six_is_p_group(self):
        assert is_p_group(dihedral(3))

    def test_klein_is_p_group(self):
        assert is_p_group(direct_product(cyclic(2), cyclic(2)))

    def test_frobenius_21_is_p_group(self):
        c7, c3 = cyclic(7), cyclic(3)
        f21 = semidirect_product(c7, c3, cyclic_scalar_action(c7, c3, 2), name="F21")
        assert is_p_group(f21)

    def test_cyclic_groups_are_not(self):
        assert not is_p_group(cyclic(6))
        assert not is_p_group(cyclic(4))

    def test_frobenius_twenty_is_not(self):
        c5, c4 = cyclic(5), cyclic(4)
        f20 = semidirect_product(c5, c4, cyclic_scalar_action(c5, c4, 2))
        assert not is_p_group(f20)

    def test_quaternion_group_is_not(self):
        assert not is_p_group(quaternion(2))

    def test_power_action_required_not_just_any_action(self):
        # C7^2 extended by C3: scaling both coordinates by 2 is a power
        # automorphism, scaling by (2, 4) is not
        base = direct_product(cyclic(7), cyclic(7))

        def diag_action(m1, m2):
            action = []
            for z in range(3):
                s1, s2 = pow(m1, z, 7), pow(m2, z, 7)
                action.append([7 * ((s1 * a) % 7) + (s2 * b) % 7 for a in range(7) for b in range(7)])
            return action

        uniform = semidirect_product(base, cyclic(3), diag_action(2, 2))
        mixed = semidirect_product(base, cyclic(3), diag_action(2, 4))
        assert is_p_group(uniform)
        assert not is_p_group(mixed)


class TestCoprimeFactors:
    def test_cyclic_six_splits(self):
        factors = sorted(f.n for f in coprime_direct_factors(cyclic(6)))
        assert factors == [2, 3]

    def test_dihedral_six_does_not_split(self):
        assert [f.n for f in coprime_direct_factors(dihedral(3))] == [6]

    def test_s3_times_c6_does_not_split(self):
        g = direct_product(symmetric(3), cyclic(6))
        assert [f.n for f in coprime_direct_factors(g)] == [36]

    def test_pairwise_entangled_primes_split(self):
        # {2,3} x {5,11}: no single prime splits off, the pair does
        c11, c5 = cyclic(11), cyclic(5)
        b = semidirect_product(c11, c5, cyclic_scalar_action(c11, c5, 4))
        g = direct_product(symmetric(3), b)
        assert sorted(f.n for f in coprime_direct_factors(g)) == [6, 55]

    def test_factor_orders_multiply_and_are_coprime(self, catalog32):
        import math

        for g in catalog32[:40]:
            factors = coprime_direct_factors(g)
            prod = 1
            for f in factors:
                prod *= f.n
            assert prod == g.n
            for i, a in enumerate(factors):
                for b in factors[i + 1:]:
                    assert math.gcd(a.n, b.n) == 1
