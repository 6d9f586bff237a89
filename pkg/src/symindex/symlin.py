"""Linear symplectic algebra: the standard structure, eigenvalue
classification, the circle map rho, and quadratic-form invariants.

Conventions
-----------
Coordinates on R^(2m) are interleaved pairs (p_1, q_1, ..., p_m, q_m).
The standard complex structure J is block-diagonal with [[0, -1], [1, 0]]
on each pair, so that exp(2*pi*J*t) restricted to a plane is the
*counterclockwise* rotation by angle 2*pi*t.  A matrix A is symplectic
when A^T J A = J.  Quadratic forms are given by symmetric matrices S with
H(x) = x^T S x / 2; the linear Hamiltonian flow solves dPhi/dt = J S Phi.

Eigenvalues of a symplectic matrix split into elliptic pairs on the unit
circle, real hyperbolic pairs (a, 1/a), quadruples off both the circle
and the real axis, and a generalized eigenspace of 1 (the "unit block").
For an elliptic pair the *first-kind* angle is theta in (0, pi] when the
restriction of A to the invariant plane rotates counterclockwise, and
-theta in (-pi, 0) when it rotates clockwise; the rotation sense is the
sign of the Krein form (1/i) * conj(v)^T J v on the eigenvector v.

rho(A) is the product of the first-kind eigenvalues over elliptic pairs
times the signs of the real eigenvalue pairs; the unit block and the
quadruples contribute +1.  On U(m) it coincides with the complex
determinant, and it is invariant under symplectic conjugation.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import ClassificationError, InputError, NumericalError

DEFAULT_TOL = 1e-8


def standard_J(m: int) -> np.ndarray:
    """Block-diagonal J with [[0, -1], [1, 0]] on each coordinate pair."""
    if m < 1:
        raise InputError(f"half-dimension must be positive, got {m}")
    J = np.zeros((2 * m, 2 * m))
    for j in range(m):
        J[2 * j, 2 * j + 1] = -1.0
        J[2 * j + 1, 2 * j] = 1.0
    return J


def check_symplectic(A: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Return the symplectic defect max|A^T J A - J|.

    The tolerance is not enforced here; callers compare the returned
    defect against whatever budget they carry.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n or n % 2:
        raise InputError(f"expected a square even-dimensional matrix, got shape {A.shape}")
    J = standard_J(n // 2)
    return float(np.max(np.abs(A.T @ J @ A - J)))


def assert_symplectic(A: np.ndarray, tol: float = DEFAULT_TOL) -> None:
    defect = check_symplectic(A, tol)
    if defect > tol:
        raise NumericalError(f"symplectic defect {defect:.3e} exceeds tolerance {tol:.3e}")


@dataclass(frozen=True)
class EigenClassification:
    """Spectrum of a symplectic matrix sorted into the four families.

    elliptic_angles: first-kind angle per elliptic pair, ascending;
        each angle lies in (-pi, 0) or (0, pi].
    hyperbolic: (sign, modulus) per real pair, modulus > 1.
    unit_block_dim: algebraic multiplicity of the eigenvalue 1 (even).
    quadruples: number of quadruples {lam, conj(lam), 1/lam, 1/conj(lam)}.
    """

    elliptic_angles: tuple[float, ...]
    hyperbolic: tuple[tuple[int, float], ...]
    unit_block_dim: int
    quadruples: int

    @property
    def total_dim(self) -> int:
        return (2 * len(self.elliptic_angles) + 2 * len(self.hyperbolic)
                + self.unit_block_dim + 4 * self.quadruples)


def _krein_split(A: np.ndarray, vals: np.ndarray, vecs: np.ndarray,
                 idx: list[int], tol: float) -> tuple[int, int]:
    """Split an elliptic eigenvalue cluster by Krein sign.

    Returns (p, q): p pairs rotate counterclockwise (first-kind angle +theta),
    q pairs clockwise.  The Krein form must be definite on the cluster's
    eigenspace; a (near-)degenerate form means a non-semisimple boundary
    case the classification refuses to guess about.
    """
    J = standard_J(A.shape[0] // 2)
    V = vecs[:, idx]
    G = (V.conj().T @ J @ V) / 1j
    G = (G + G.conj().T) / 2
    ev = np.linalg.eigvalsh(G)
    small = max(tol, 1e-10)
    if np.any(np.abs(ev) < small):
        raise ClassificationError(
            "Krein form degenerate on an elliptic eigenvalue cluster; "
            "matrix is at (or numerically near) a non-semisimple boundary case")
    p = int(np.sum(ev > 0))
    return p, len(idx) - p


def eigen_classify(A: np.ndarray, tol: float = DEFAULT_TOL) -> EigenClassification:
    """Classify the spectrum of a (numerically) symplectic matrix.

    Eigenvalues within tol of 1 are absorbed into the unit block.  Real
    eigenvalues off the unit circle pair up as hyperbolic; the rest of the
    circle splits into elliptic pairs with first-kind angles; everything
    else is counted in quadruples.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if n % 2:
        raise InputError("odd-dimensional matrix cannot be symplectic")
    vals, vecs = np.linalg.eig(A)

    unit = 0
    hyperbolic: list[tuple[int, float]] = []
    elliptic_idx: list[int] = []      # indices with angle in (0, pi)
    minus_one = 0
    quad = 0
    for i, lam in enumerate(vals):
        if abs(lam - 1.0) <= tol:
            unit += 1
            continue
        on_circle = abs(abs(lam) - 1.0) <= tol
        real = abs(lam.imag) <= tol
        if real and not on_circle:
            # count the member with |lam| > 1 so each pair is seen once
            if abs(lam) > 1.0:
                hyperbolic.append((1 if lam.real > 0 else -1, float(abs(lam))))
            continue
        if on_circle:
            if real:  # eigenvalue -1
                minus_one += 1
            elif lam.imag > 0:
                elliptic_idx.append(i)
            continue
        quad += 1

    if unit % 2 or minus_one % 2 or quad % 4:
        raise ClassificationError(
            f"inconsistent multiplicities (unit={unit}, minus_one={minus_one}, "
            f"quadruple members={quad}); spectrum is too close to a boundary case")

    # cluster the upper-half-circle elliptic eigenvalues by angle
    angles: list[float] = []
    if elliptic_idx:
        thetas = np.angle(vals[elliptic_idx])
        order = np.argsort(thetas)
        cluster: list[int] = []
        cluster_theta = 0.0
        gap = max(100 * tol, 1e-7)

        def flush() -> None:
            if not cluster:
                return
            theta = float(np.mean([np.angle(vals[i]) for i in cluster]))
            p, q = _krein_split(A, vals, vecs, cluster, tol)
            angles.extend([theta] * p)
            angles.extend([-theta] * q)

        for pos in order:
            i = elliptic_idx[pos]
            theta = float(np.angle(vals[i]))
            if cluster and abs(theta - cluster_theta) > gap:
                flush()
                cluster = []
            cluster.append(i)
            cluster_theta = theta
        flush()
    angles.extend([np.pi] * (minus_one // 2))

    cls = EigenClassification(
        elliptic_angles=tuple(sorted(angles)),
        hyperbolic=tuple(sorted(hyperbolic)),
        unit_block_dim=unit,
        quadruples=quad // 4,
    )
    if cls.total_dim != n:
        raise ClassificationError(
            f"classified dimensions sum to {cls.total_dim}, expected {n}")
    return cls


def rho(A: np.ndarray, tol: float = DEFAULT_TOL) -> complex:
    """Product of first-kind elliptic eigenvalues and hyperbolic signs.

    Always a unit complex number.  rho(I) = 1, rho(diag(-2, -1/2)) = -1.
    """
    cls = eigen_classify(A, tol)
    phase = float(sum(cls.elliptic_angles))
    negatives = sum(1 for sign, _ in cls.hyperbolic if sign < 0)
    return cmath.exp(1j * phase) * (-1.0) ** negatives


def rho_phase_parts(A: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[float, int]:
    """(sum of first-kind angles, number of negative hyperbolic pairs).

    The continuous phase of rho is the angle sum plus pi times the
    negative-pair count modulo 2*pi; path-index code needs the pieces to
    unwrap the phase along a path.
    """
    cls = eigen_classify(A, tol)
    return float(sum(cls.elliptic_angles)), sum(1 for s, _ in cls.hyperbolic if s < 0)


def signature(Q: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Signature of a symmetric matrix: #eigenvalues > tol minus #eigenvalues < -tol."""
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise InputError(f"expected a square matrix, got shape {Q.shape}")
    if np.max(np.abs(Q - Q.T)) > max(tol, 1e-10) * max(1.0, float(np.max(np.abs(Q)))):
        raise InputError("matrix is not symmetric")
    ev = np.linalg.eigvalsh((Q + Q.T) / 2)
    return int(np.sum(ev > tol) - np.sum(ev < -tol))


def quad_invariants(Q: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[int, int]:
    """(signature, nullity) of a symmetric matrix with the same tol split."""
    Q = np.asarray(Q, dtype=float)
    ev = np.linalg.eigvalsh((Q + Q.T) / 2)
    sgn = int(np.sum(ev > tol) - np.sum(ev < -tol))
    nullity = int(np.sum(np.abs(ev) <= tol))
    return sgn, nullity
