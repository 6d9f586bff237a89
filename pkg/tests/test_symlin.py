import cmath
import math

import numpy as np
import pytest
from scipy.linalg import expm

from helpers import block_diag, rot2, sym_inverse
from symindex.errors import ClassificationError, InputError, NumericalError
from symindex.symlin import (
    assert_symplectic,
    check_symplectic,
    eigen_classify,
    quad_invariants,
    rho,
    rho_phase_parts,
    signature,
    standard_J,
)


def test_standard_J_is_the_interleaved_rotation():
    assert np.array_equal(standard_J(1), np.array([[0.0, -1.0], [1.0, 0.0]]))
    for m in (1, 2, 3):
        J = standard_J(m)
        assert np.array_equal(J @ J, -np.eye(2 * m))
        assert np.array_equal(J.T, -J)
    # exp(theta J) pushes the p-axis toward the q-axis
    v = expm(0.3 * standard_J(1)) @ np.array([1.0, 0.0])
    assert v[1] > 0
    assert np.allclose(v, [math.cos(0.3), math.sin(0.3)])


def test_check_symplectic_defect():
    rng = np.random.default_rng(0)
    J = standard_J(2)
    A = (lambda x: (x + x.T) / 2)(rng.normal(size=(4, 4)))
    M = expm(J @ A)
    assert check_symplectic(M) < 1e-12
    assert check_symplectic(rot2(1.1)) < 1e-15
    assert check_symplectic(2.0 * np.eye(2)) > 1.0
    assert_symplectic(M)
    with pytest.raises(NumericalError):
        assert_symplectic(2.0 * np.eye(2))


class TestClassify:
    def test_plain_rotation(self):
        cls = eigen_classify(rot2(0.7))
        assert cls.elliptic_angles == pytest.approx((0.7,))
        assert cls.hyperbolic == ()
        assert cls.unit_block_dim == 0
        assert cls.quadruples == 0

    def test_clockwise_rotation_has_negative_angle(self):
        cls = eigen_classify(rot2(-0.7))
        assert cls.elliptic_angles == pytest.approx((-0.7,))

    def test_minus_identity(self):
        cls = eigen_classify(-np.eye(2))
        assert cls.elliptic_angles == pytest.approx((math.pi,))

    def test_identity_is_one_unit_block(self):
        cls = eigen_classify(np.eye(4))
        assert cls.unit_block_dim == 4
        assert cls.elliptic_angles == ()

    def test_hyperbolic_pairs(self):
        cls = eigen_classify(np.diag([2.0, 0.5]))
        assert cls.hyperbolic == ((1, pytest.approx(2.0)),)
        cls = eigen_classify(np.diag([-2.0, -0.5]))
        assert cls.hyperbolic == ((-1, pytest.approx(2.0)),)

    def test_mixed_blocks(self):
        M = block_diag(rot2(0.9), np.diag([1.7, 1 / 1.7]))
        cls = eigen_classify(M)
        assert cls.elliptic_angles == pytest.approx((0.9,))
        assert len(cls.hyperbolic) == 1
        sign, modulus = cls.hyperbolic[0]
        assert sign == 1 and modulus == pytest.approx(1.7)
        assert cls.total_dim == 4

    def test_krein_signs_split_a_shared_eigenvalue(self):
        # R(t) and its transpose carry e^{i t} with opposite Krein signs
        M = block_diag(rot2(0.8), rot2(0.8).T)
        cls = eigen_classify(M)
        assert cls.elliptic_angles == pytest.approx((-0.8, 0.8))
        assert abs(rho(M) - 1.0) < 1e-9

    def test_quadruple(self):
        # the second draw of this seed lands on a Krein quadruple
        rng = np.random.default_rng(5)
        rng.normal(size=(4, 4))
        A = rng.normal(size=(4, 4))
        M = expm(standard_J(2) @ ((A + A.T) / 2))
        ev = np.linalg.eigvals(M)
        assert np.all(np.abs(np.abs(ev) - 1.0) > 0.1)
        assert np.all(np.abs(ev.imag) > 0.1)
        cls = eigen_classify(M)
        assert cls.quadruples == 1
        assert cls.elliptic_angles == () and cls.hyperbolic == ()
        assert cls.total_dim == 4

    def test_rejects_odd_dimension(self):
        with pytest.raises(InputError):
            eigen_classify(np.eye(3))

    def test_rejects_unpaired_spectrum(self):
        with pytest.raises(ClassificationError):
            eigen_classify(np.diag([2.0, 3.0]))


def test_rho_anchors():
    assert rho(np.eye(2)) == pytest.approx(1.0)
    assert rho(np.eye(6)) == pytest.approx(1.0)
    assert rho(np.diag([-2.0, -0.5])) == pytest.approx(-1.0)
    assert rho(np.diag([2.0, 0.5])) == pytest.approx(1.0)
    assert rho(rot2(0.6)) == pytest.approx(cmath.exp(0.6j))
    assert rho(block_diag(rot2(0.6), rot2(1.1))) == pytest.approx(cmath.exp(1.7j))


def test_rho_is_a_conjugation_invariant():
    rng = np.random.default_rng(11)
    J = standard_J(2)
    for _ in range(5):
        S = (lambda x: (x + x.T) / 2)(rng.normal(size=(4, 4)))
        M = expm(J @ S)
        P = expm(J @ (lambda x: (x + x.T) / 2)(0.4 * rng.normal(size=(4, 4))))
        assert rho(P @ M @ sym_inverse(P)) == pytest.approx(rho(M), abs=1e-8)


def test_rho_phase_parts():
    phase, negatives = rho_phase_parts(block_diag(rot2(0.6), np.diag([-3.0, -1 / 3.0])))
    assert phase == pytest.approx(0.6)
    assert negatives == 1
    got = cmath.exp(1j * (phase + math.pi * negatives))
    assert got == pytest.approx(rho(block_diag(rot2(0.6), np.diag([-3.0, -1 / 3.0]))))


def test_signature_and_quad_invariants():
    assert signature(np.diag([3.0, -1.0, 0.0])) == 0
    assert signature(np.diag([3.0, 1.0, 0.5])) == 3
    assert quad_invariants(np.diag([3.0, -1.0, 0.0])) == (0, 1)
    assert quad_invariants(np.zeros((2, 2))) == (0, 2)
    with pytest.raises(InputError):
        signature(np.array([[0.0, 1.0], [0.0, 0.0]]))
