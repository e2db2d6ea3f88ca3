import numpy as np
import pytest

from bilms.bicomplex import E1, E2, I, J, K, ONE, ZERO, Bicomplex, BicomplexVector, finsler_product
from bilms.gradients import (
    DEFAULT_FD, FDConfig, PartialKind, bc_partial, complex_grad, grad, idempotent_partial,
    leibniz_residual, wirtinger,
)

from .conftest import assert_close, assert_vec_close

Q = Bicomplex.from_coords(1, 1, 1, 1)

IDENTITY = {
    PartialKind.D_Z: lambda Z: Z,
    PartialKind.D_ZBAR: lambda Z: Z.conj_bar(),
    PartialKind.D_ZSTAR: lambda Z: Z.conj_star(),
    PartialKind.D_ZDAGGER: lambda Z: Z.conj_dagger(),
}


def random_point(rng):
    return Bicomplex.from_coords(*rng.normal(size=4))


class TestWirtinger:
    def test_modulus_squared(self):
        assert wirtinger(lambda z: abs(z) ** 2, 1 + 2j, "dzbar") == pytest.approx(1 + 2j, abs=1e-8)

    def test_holomorphic_has_no_dzbar(self):
        assert abs(wirtinger(lambda z: z, 0.3 - 2j, "dzbar")) < 1e-10
        assert wirtinger(lambda z: z, 0.3 - 2j, "dz") == pytest.approx(1, abs=1e-10)

    def test_z_squared_zbar(self):
        assert wirtinger(lambda z: z * z * z.conjugate(), 1 + 1j, "dzbar") == pytest.approx(2j, abs=1e-8)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_power_of_modulus(self, k):
        z = 0.7 - 0.4j
        expected = k * z * abs(z) ** (2 * k - 2)
        got = wirtinger(lambda w: abs(w) ** (2 * k), z, "dzbar")
        assert got == pytest.approx(expected, rel=1e-7)

    def test_bad_which(self):
        with pytest.raises(ValueError):
            wirtinger(lambda z: z, 0, "dx")

    def test_complex_grad_quadratic_form(self, rng):
        n = 3
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        R = A @ A.conj().T
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        F = lambda v: v.conj() @ R @ v
        assert np.allclose(complex_grad(F, z, "dzbar"), R @ z, atol=1e-6)
        assert np.allclose(complex_grad(F, z, "dz"), R.T @ z.conj(), atol=1e-6)


class TestPartialKind:
    def test_signs_and_conjugation(self):
        assert PartialKind.D_ZSTAR.signs == (1, 1, 1, 1)
        assert PartialKind.D_Z.conjugation is None
        assert PartialKind.D_ZDAGGER.conjugation == "dagger"

    @pytest.mark.parametrize("name, kind", [
        ("zstar", PartialKind.D_ZSTAR), ("D_Zbar", PartialKind.D_ZBAR), ("d-zdagger", PartialKind.D_ZDAGGER),
    ])
    def test_parse(self, name, kind):
        assert PartialKind.parse(name) is kind


class TestFDConfig:
    @pytest.mark.parametrize("kwargs", [{"h": 0}, {"h": -1e-5}, {"h": float("inf")}, {"c": 0.3}])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            FDConfig(**kwargs)

    def test_step_scaling(self):
        assert FDConfig(h=1e-5).step_for(100.0) == pytest.approx(1e-3)
        assert FDConfig(h=1e-5).step_for(0.1) == 1e-5
        assert FDConfig(h=1e-5, scale_h_by_coordinate=False).step_for(100.0) == 1e-5


class TestBCPartial:
    def test_zstar_kills_z(self):
        assert bc_partial(lambda Z: Z, Q, PartialKind.D_ZSTAR).norm() <= 1e-7

    def test_zstar_of_zstar(self):
        assert_close(bc_partial(lambda Z: Z.conj_star(), Q, PartialKind.D_ZSTAR), Bicomplex(2), 1e-7)

    def test_zbar_of_zbar(self):
        assert_close(bc_partial(lambda Z: Z.conj_bar(), Q, PartialKind.D_ZBAR), Bicomplex(2), 1e-7)

    @pytest.mark.parametrize("op", list(PartialKind))
    @pytest.mark.parametrize("target", list(PartialKind))
    def test_annihilation_table(self, rng, op, target):
        Z = random_point(rng)
        value = bc_partial(IDENTITY[target], Z, op)
        expected = Bicomplex(2) if op is target else ZERO
        assert_close(value, expected, 1e-7)

    @pytest.mark.parametrize("c", [1.0, 0.5, 0.25])
    def test_self_value_scales_with_c(self, c):
        value = bc_partial(lambda Z: Z.conj_star(), Q, PartialKind.D_ZSTAR, FDConfig(c=c))
        assert_close(value, Bicomplex(4 * c), 1e-7)

    @pytest.mark.parametrize("kind", list(PartialKind))
    def test_matches_idempotent_form(self, rng, kind):
        Z = random_point(rng)
        f = lambda W: W * W.conj_star() * W.conj_bar() + W.conj_dagger() * K
        assert_close(bc_partial(f, Z, kind), idempotent_partial(f, Z, kind), 1e-6)

    def test_finsler_gradient_proportional(self, rng):
        # D_Zstar of Z Zbar Z* Zdagger is 2 (Z Zbar Zdagger) at c = 1/2
        Z = random_point(rng)
        got = bc_partial(finsler_product, Z, PartialKind.D_ZSTAR)
        expected = 2 * Z * Z.conj_bar() * Z.conj_dagger()
        assert (got - expected).norm() <= 1e-5 * expected.norm()


class TestLeibniz:
    def test_identity_product(self, rng):
        ident = lambda Z: Z
        assert leibniz_residual(ident, ident, random_point(rng), PartialKind.D_ZSTAR) <= 1e-6

    def test_z_times_zstar(self):
        assert leibniz_residual(lambda Z: Z, lambda Z: Z.conj_star(), Q, PartialKind.D_ZSTAR) <= 1e-6

    def test_finsler_factorization(self, rng):
        f = lambda Z: Z * Z.conj_bar()
        g = lambda Z: Z.conj_star() * Z.conj_dagger()
        assert leibniz_residual(f, g, random_point(rng), PartialKind.D_ZBAR) <= 1e-6


class TestGrad:
    def test_linear_in_zstar(self, rng):
        a = BicomplexVector.from_coords(rng.normal(size=(3, 4)))
        Z = BicomplexVector.from_coords(rng.normal(size=(3, 4)))
        g = grad(lambda V: V.conj("star").dot(a), Z, PartialKind.D_ZSTAR)
        assert_vec_close(g, a * Bicomplex(4 * DEFAULT_FD.c), 1e-6)

    def test_kills_holomorphic_linear(self, rng):
        a = BicomplexVector.from_coords(rng.normal(size=(3, 4)))
        Z = BicomplexVector.from_coords(rng.normal(size=(3, 4)))
        g = grad(lambda V: a.conj("bar").dot(V), Z, PartialKind.D_ZSTAR)
        assert np.sqrt(g.norm_sq()) <= 1e-7

    def test_constant(self, rng):
        Z = BicomplexVector.from_coords(rng.normal(size=(2, 4)))
        for kind in PartialKind:
            g = grad(lambda V: Q, Z, kind)
            assert np.sqrt(g.norm_sq()) == 0.0

    def test_shape_follows_input(self):
        Z = BicomplexVector.from_elements([ONE, I, J, E1, E2])
        assert len(grad(lambda V: V.dot(V), Z, PartialKind.D_Z)) == 5
