import math

import numpy as np
import pytest
from hypothesis import given, settings

from bilms.bicomplex import (
    E1, E2, I, J, K, ONE, ZERO, Bicomplex, BicomplexMatrix, BicomplexVector,
    DimensionError, IdempotentPair, ZeroDivisorError, add, conj_bar, conj_dagger,
    conj_star, conj_vec, dot, finsler_pow4, finsler_product, from_idempotent, inverse,
    matvec, mul, mul_cartesian, norm_euclid, norm_hyperbolic, scale_add, to_idempotent,
)

from .conftest import assert_close, bicomplexes

Q = Bicomplex.from_coords(1, 1, 1, 1)  # 1 + i + j + k


class TestIdempotent:
    def test_zero(self):
        assert to_idempotent(ZERO) == IdempotentPair(0, 0)

    def test_one_plus_i_plus_j_plus_k(self):
        assert to_idempotent(Q) == IdempotentPair(2, 2j)

    def test_cartesian_map_agrees(self):
        x1, x2, x3, x4 = 0.3, -1.2, 2.5, 0.7
        P = to_idempotent(Bicomplex.from_coords(x1, x2, x3, x4))
        assert P.l1 == pytest.approx(complex(x1 + x4, x2 - x3))
        assert P.l2 == pytest.approx(complex(x1 - x4, x2 + x3))

    def test_k(self):
        assert to_idempotent(K) == IdempotentPair(1, -1)

    @pytest.mark.parametrize("pair, expected", [
        ((1, 1), ONE),
        ((1, -1), K),
        ((2, 2j), Q),
    ])
    def test_from_idempotent(self, pair, expected):
        assert_close(from_idempotent(IdempotentPair(*pair)), expected, 0)

    @given(bicomplexes())
    def test_round_trip(self, Z):
        back = from_idempotent(to_idempotent(Z))
        for a, b in zip(back.coords(), Z.coords()):
            assert abs(a - b) <= 1e-14 * max(1.0, Z.norm())

    @given(bicomplexes())
    def test_complex_pair_round_trip_is_exact(self, Z):
        assert Bicomplex.from_complex_pair(Z.z1, Z.z2) == Z

    def test_pair_arithmetic_is_componentwise(self):
        a = IdempotentPair(1 + 2j, 3)
        b = IdempotentPair(-1j, 0.5)
        assert a + b == IdempotentPair(1 + 1j, 3.5)
        assert a * b == IdempotentPair((1 + 2j) * -1j, 1.5)


class TestArithmetic:
    def test_add(self):
        assert add(ONE + J, I + K) == Q
        assert Q + ZERO == Q

    def test_unit_products(self):
        assert I * J == K
        assert J * I == K
        assert I * I == -ONE
        assert J * J == -ONE
        assert K * K == ONE

    def test_idempotent_identities_exact(self):
        assert E1 * E2 == ZERO
        assert E1 * E1 == E1
        assert E2 * E2 == E2
        assert E1 + E2 == ONE
        assert E1 - E2 == K

    def test_componentwise_product(self):
        Z = 2 * E1 + 3 * E2
        W = 5 * E1 + 7 * E2
        assert_close(Z * W, 10 * E1 + 21 * E2)

    def test_python_numbers_embed_in_ci(self):
        assert Q * 2 == Bicomplex.from_coords(2, 2, 2, 2)
        assert 1j * J == K
        assert 1 - Q == Bicomplex.from_coords(0, -1, -1, -1)

    @given(bicomplexes(), bicomplexes())
    def test_mul_matches_cartesian_expansion(self, Z, W):
        assert_close(Z * W, mul_cartesian(Z, W), 1e-12 * max(1.0, Z.norm() * W.norm()))

    @given(bicomplexes(), bicomplexes(), bicomplexes())
    def test_ring_axioms(self, Z, W, V):
        scale = max(1.0, Z.norm() * W.norm() * V.norm())
        assert_close((Z * W) * V, Z * (W * V), 1e-12 * scale)
        assert_close(Z * W, W * Z, 1e-12 * scale)
        assert_close(Z * (W + V), Z * W + Z * V, 1e-12 * scale)
        assert_close((Z + W) + V, Z + (W + V), 1e-12 * scale)

    @given(bicomplexes())
    def test_power(self, Z):
        assert_close(Z ** 3, Z * Z * Z, 1e-12 * max(1.0, Z.norm() ** 3))

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(ValueError):
            Bicomplex(bad)
        with pytest.raises(ValueError):
            Bicomplex.from_coords(0, 0, 0, bad)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            Q._z1 = 0


class TestInverse:
    def test_real(self):
        assert inverse(Bicomplex(2)) == Bicomplex(0.5)

    def test_idempotent_components(self):
        Z = Bicomplex.from_idempotent(2, 2j)
        assert_close(inverse(Z), Bicomplex.from_idempotent(0.5, -0.5j))

    @pytest.mark.parametrize("Z", [E1, E2, ZERO, 3 * E1, (1 + 1j) * E2])
    def test_zero_divisors_raise(self, Z):
        with pytest.raises(ZeroDivisorError):
            inverse(Z)

    def test_threshold_is_relative(self):
        near = Bicomplex.from_idempotent(1e-14, 1.0)
        with pytest.raises(ZeroDivisorError):
            near.inverse()
        fine = Bicomplex.from_idempotent(1e-9, 1.0)
        assert_close(fine * fine.inverse(), ONE, 1e-6)

    @given(bicomplexes())
    def test_inverse_times_self(self, Z):
        m1, m2 = norm_hyperbolic(Z)
        if min(m1, m2) < 1e-3:
            return
        assert_close(Z * Z.inverse(), ONE, 1e-10 * max(1.0, Z.norm() / min(m1, m2)))

    def test_division(self):
        assert_close(Q / Bicomplex(2), Q * 0.5)
        assert_close(1 / Bicomplex(4), Bicomplex(0.25))


class TestConjugations:
    def test_sign_table(self):
        assert conj_bar(Q) == Bicomplex.from_coords(1, -1, 1, -1)
        assert conj_dagger(Q) == Bicomplex.from_coords(1, 1, -1, -1)
        assert conj_star(Q) == Bicomplex.from_coords(1, -1, -1, 1)

    def test_bar_swaps_idempotents(self):
        assert conj_bar(E1) == E2
        assert conj_bar(E2) == E1

    def test_star_conjugates_idempotent_components(self):
        Z = Bicomplex.from_idempotent(2, 2j)
        assert_close(conj_star(Z), Bicomplex.from_idempotent(2, -2j), 0)

    @given(bicomplexes())
    def test_idempotent_forms(self, Z):
        l1, l2 = Z.idempotent()
        tol = 1e-14 * max(1.0, Z.norm())
        assert_close(Z.conj_star(), Bicomplex.from_idempotent(l1.conjugate(), l2.conjugate()), tol)
        assert_close(Z.conj_bar(), Bicomplex.from_idempotent(l2.conjugate(), l1.conjugate()), tol)
        assert_close(Z.conj_dagger(), Bicomplex.from_idempotent(l2, l1), tol)

    @given(bicomplexes())
    def test_composition_table(self, Z):
        assert Z.conj_bar().conj_bar() == Z
        assert Z.conj_dagger().conj_dagger() == Z
        assert Z.conj_star().conj_star() == Z
        assert Z.conj_bar().conj_dagger() == Z.conj_star()
        assert Z.conj_dagger().conj_bar() == Z.conj_star()
        assert Z.conj_bar().conj_star() == Z.conj_dagger()
        assert Z.conj_dagger().conj_star() == Z.conj_bar()

    @given(bicomplexes(), bicomplexes())
    def test_homomorphisms(self, Z, W):
        for mode in ("bar", "dagger", "star"):
            tol = 1e-12 * max(1.0, Z.norm() * W.norm())
            assert_close((Z * W).conj(mode), Z.conj(mode) * W.conj(mode), tol)
            assert_close((Z + W).conj(mode), Z.conj(mode) + W.conj(mode), 1e-12 * max(1.0, Z.norm()))

    @given(bicomplexes())
    def test_z_dagger_product_is_ci_scalar(self, Z):
        P = Z * Z.conj_dagger()
        assert_close(P, Bicomplex(Z.z1 ** 2 + Z.z2 ** 2), 1e-12 * max(1.0, Z.norm_sq()))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            Q.conj("tilde")


class TestNorms:
    @pytest.mark.parametrize("Z, expected", [(Q, 2.0), (ZERO, 0.0), (E1, 1 / math.sqrt(2))])
    def test_euclid(self, Z, expected):
        assert norm_euclid(Z) == pytest.approx(expected, abs=1e-15)

    @given(bicomplexes())
    def test_euclid_idempotent_formula(self, Z):
        l1, l2 = Z.idempotent()
        assert norm_euclid(Z) == pytest.approx(math.sqrt(abs(l1) ** 2 + abs(l2) ** 2) / math.sqrt(2),
                                               rel=1e-12, abs=1e-12)

    @given(bicomplexes(), bicomplexes())
    def test_product_inequality(self, Z, W):
        assert (Z * W).norm() <= math.sqrt(2) * Z.norm() * W.norm() + 1e-12

    def test_product_inequality_is_sharp(self):
        # e1 * e1 = e1 with ||e1|| = 1/sqrt(2)
        assert (E1 * E1).norm() == pytest.approx(math.sqrt(2) * E1.norm() ** 2)

    @pytest.mark.parametrize("Z, expected", [
        (Bicomplex.from_idempotent(2, 2j), (2.0, 2.0)),
        (E1, (1.0, 0.0)),
        (ONE, (1.0, 1.0)),
    ])
    def test_hyperbolic(self, Z, expected):
        assert tuple(norm_hyperbolic(Z)) == pytest.approx(expected)

    @given(bicomplexes(), bicomplexes())
    def test_hyperbolic_multiplicative(self, Z, W):
        lhs = norm_hyperbolic(Z * W)
        rhs = norm_hyperbolic(Z) * norm_hyperbolic(W)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    @given(bicomplexes())
    def test_hyperbolic_vs_euclid(self, Z):
        m1, m2 = norm_hyperbolic(Z)
        assert Z.norm_sq() == pytest.approx((m1 ** 2 + m2 ** 2) / 2, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("Z, expected", [(Q, 16.0), (E1, 0.0), (Bicomplex(3), 81.0)])
    def test_finsler(self, Z, expected):
        assert finsler_pow4(Z) == pytest.approx(expected)

    @given(bicomplexes())
    def test_finsler_product_is_real(self, Z):
        P = finsler_product(Z)
        f4 = finsler_pow4(Z)
        scale = max(1.0, f4)
        assert abs(P.x1 - f4) <= 1e-10 * scale
        assert max(abs(P.x2), abs(P.x3), abs(P.x4)) <= 1e-10 * scale

    @given(bicomplexes())
    def test_invertible_iff_finsler_positive(self, Z):
        try:
            Z.inverse()
        except ZeroDivisorError:
            m1, m2 = norm_hyperbolic(Z)
            assert min(m1, m2) <= 1e-13 * max(1.0, Z.norm())
        else:
            assert finsler_pow4(Z) > 0


class TestVectors:
    def test_dot(self):
        assert dot(BicomplexVector.from_elements([ONE, J]), BicomplexVector.from_elements([ONE, ONE])) == ONE + J
        e1 = BicomplexVector.from_elements([E1])
        assert_close(dot(e1, e1), E1)
        assert dot(e1, BicomplexVector.from_elements([E2])) == ZERO

    def test_dot_symmetric(self, rng):
        X = BicomplexVector.from_coords(rng.normal(size=(5, 4)))
        W = BicomplexVector.from_coords(rng.normal(size=(5, 4)))
        assert_close(X.dot(W), W.dot(X))
        direct = ZERO
        for a, b in zip(X, W):
            direct = direct + mul_cartesian(a, b)
        assert_close(X.dot(W), direct, 1e-12)

    def test_dot_length_mismatch(self):
        with pytest.raises(DimensionError):
            dot(BicomplexVector.zeros(2), BicomplexVector.zeros(3))

    def test_matvec_identity(self):
        v = BicomplexVector.from_elements([ONE, J])
        assert matvec(BicomplexMatrix.identity(2), v) == v

    def test_matvec_matches_scalar_loop(self, rng):
        R = BicomplexMatrix(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)),
                            rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
        v = BicomplexVector.from_coords(rng.normal(size=(3, 4)))
        out = R @ v
        for r in range(3):
            expected = ZERO
            for c in range(3):
                expected = expected + mul_cartesian(R[r, c], v[c])
            assert_close(out[r], expected, 1e-12)

    def test_matvec_mismatch(self):
        with pytest.raises(DimensionError):
            matvec(BicomplexMatrix.identity(2), BicomplexVector.zeros(3))

    def test_conj_vec(self):
        v = BicomplexVector.from_elements([E1, E2])
        out = conj_vec(v, "bar")
        assert_close(out[0], E2, 0)
        assert_close(out[1], E1, 0)

    def test_scale_add(self):
        out = scale_add(BicomplexVector.zeros(1), 2 * 0.1 * I, BicomplexVector.from_elements([ONE]))
        assert_close(out[0], Bicomplex(0.2j), 1e-16)

    def test_elementwise_mul_matches_scalar(self, rng):
        a = BicomplexVector.from_coords(rng.normal(size=(4, 4)))
        b = BicomplexVector.from_coords(rng.normal(size=(4, 4)))
        for k, p in enumerate(a * b):
            assert_close(p, a[k] * b[k], 1e-14)

    def test_rejects_empty_and_non_finite(self):
        with pytest.raises(DimensionError):
            BicomplexVector([])
        with pytest.raises(ValueError):
            BicomplexVector([1.0, np.nan])

    def test_coords_round_trip(self, rng):
        c = rng.normal(size=(3, 4))
        assert np.array_equal(BicomplexVector.from_coords(c).coords(), c)

    def test_immutable(self):
        v = BicomplexVector.zeros(2)
        with pytest.raises(ValueError):
            v.z1[0] = 1
