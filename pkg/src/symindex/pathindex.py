"""Index computations for paths of symplectic matrices.

A path is either a :class:`GeneratedPath` (samples of the quadratic
Hamiltonian that generates it, interpolated linearly in time) or a
:class:`SampledPath` (the flow matrices themselves on a time grid).
``integrate`` turns the former into the latter; the index routines accept
both where the underlying method allows it.

Computed quantities:

* ``mean_index``: rotation-number average, from the winding of the product
  of first-kind unit eigenvalues and the signs of real negative pairs.
* ``cz_index``: integer index of a path with nondegenerate endpoint, via
  crossing forms when a generator is available, otherwise via the endpoint
  normal form and the mean index.
* ``rs_index``: half-integer crossing-form index, endpoint may be
  degenerate.
* ``mu_pm``: lower/upper indices from small rotation extensions.
* ``nullity``, ``iterate``: endpoint degeneracy count and exact path
  iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    DegeneracyError,
    InputError,
    NumericalError,
    UnwrapError,
)
from .symlin import (
    DEFAULT_TOL,
    assert_symplectic,
    eigen_classify,
    quad_invariants,
    standard_J,
)

EXTENSION_EPS = 1e-4

# refinement windows overlapping one zero each report a candidate; the
# acceptance valley around a zero is wider than any single window, so
# candidates for the same zero can land up to ~accept/slope apart
_CLUSTER_EPS = 1e-7
_BOUNDARY_EPS = 1e-7


@dataclass(frozen=True)
class GeneratedPath:
    """Path given by samples of its generating Hamiltonian on [0, 1].

    ``hamiltonians[i]`` is the symmetric matrix of 2 H at time
    ``sample_times[i]``; between samples the matrix is interpolated
    linearly.  The path itself is the solution of dPhi/dt = J S(t) Phi,
    Phi(0) = I.
    """

    sample_times: np.ndarray
    hamiltonians: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.sample_times, dtype=float)
        mats = np.asarray(self.hamiltonians, dtype=float)
        if times.ndim != 1 or times.size < 2:
            raise InputError("need at least two Hamiltonian samples")
        if mats.shape != (times.size,) + mats.shape[1:] or mats.ndim != 3:
            raise InputError("hamiltonians must be a (k, n, n) array")
        n = mats.shape[1]
        if mats.shape[2] != n or n % 2 or n < 2:
            raise InputError("Hamiltonian samples must be even-dimensional square matrices")
        if np.any(np.diff(times) <= 0):
            raise InputError("sample times must be strictly increasing")
        if abs(times[0]) > 1e-12 or abs(times[-1] - 1.0) > 1e-12:
            raise InputError("sample times must start at 0 and end at 1")
        if np.max(np.abs(mats - np.transpose(mats, (0, 2, 1)))) > 1e-9:
            raise InputError("Hamiltonian samples must be symmetric")
        object.__setattr__(self, "sample_times", times)
        object.__setattr__(self, "hamiltonians", mats)

    @property
    def half_dim(self) -> int:
        return self.hamiltonians.shape[1] // 2

    def hamiltonian_at(self, t: float) -> np.ndarray:
        return _kernels.interp_sym(self.sample_times, self.hamiltonians, float(t))

    def to_payload(self) -> dict:
        return {
            "m": self.half_dim,
            "generator": [
                {"t": float(t), "H": h.tolist()}
                for t, h in zip(self.sample_times, self.hamiltonians)
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "GeneratedPath":
        try:
            m = int(payload["m"])
            samples = payload["generator"]
            times = [s["t"] for s in samples]
            mats = [s["H"] for s in samples]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"generator payload malformed: {exc}") from exc
        gen = cls(np.asarray(times, dtype=float), np.asarray(mats, dtype=float))
        if gen.half_dim != m:
            raise InputError(
                f"declared m={m} but Hamiltonians are {2 * gen.half_dim}-dimensional")
        return gen


@dataclass(frozen=True)
class SampledPath:
    """Flow matrices on a strictly increasing grid from t=0 to t=1."""

    times: np.ndarray
    matrices: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        mats = np.asarray(self.matrices, dtype=float)
        if times.ndim != 1 or times.size < 2 or mats.ndim != 3:
            raise InputError("need a 1-d time grid and a (k, n, n) matrix array")
        if mats.shape[0] != times.size or mats.shape[1] != mats.shape[2]:
            raise InputError("matrix array shape does not match the time grid")
        if mats.shape[1] % 2:
            raise InputError("matrices must be even-dimensional")
        if np.any(np.diff(times) <= 0):
            raise InputError("times must be strictly increasing")
        if abs(times[0]) > 1e-12 or abs(times[-1] - 1.0) > 1e-12:
            raise InputError("times must start at 0 and end at 1")
        if np.max(np.abs(mats[0] - np.eye(mats.shape[1]))) > 1e-9:
            raise InputError("path must start at the identity")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "matrices", mats)

    @property
    def half_dim(self) -> int:
        return self.matrices.shape[1] // 2

    @property
    def endpoint(self) -> np.ndarray:
        return self.matrices[-1]

    def to_payload(self) -> dict:
        return {
            "m": self.half_dim,
            "samples": [
                {"t": float(t), "matrix": mat.tolist()}
                for t, mat in zip(self.times, self.matrices)
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "SampledPath":
        try:
            m = int(payload["m"])
            samples = payload["samples"]
            times = [s["t"] for s in samples]
            mats = [s["matrix"] for s in samples]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"samples payload malformed: {exc}") from exc
        sp = cls(np.asarray(times, dtype=float), np.asarray(mats, dtype=float))
        if sp.half_dim != m:
            raise InputError(
                f"declared m={m} but matrices are {2 * sp.half_dim}-dimensional")
        return sp


def default_steps(gen: GeneratedPath) -> int:
    """Step count scaled to the stiffness of the generator.

    Multiples of 16 so that generators with breakpoints on the 1/16 grid
    (the synthesized model paths) never straddle a derivative kink within
    a single RK4 step.
    """
    rate = max(float(np.linalg.norm(h, 2)) for h in gen.hamiltonians)
    steps = max(800, int(32 * rate))
    return 16 * math.ceil(steps / 16)


def integrate(gen: GeneratedPath, steps: int | None = None,
              tol: float = DEFAULT_TOL) -> SampledPath:
    """Solve dPhi/dt = J S(t) Phi and record the flow at every step.

    Every recorded matrix is corrected back onto the symplectic group;
    the final defect is checked against ``tol``.
    """
    if steps is None:
        steps = default_steps(gen)
    if steps < 2:
        raise InputError("need at least 2 integration steps")
    J = standard_J(gen.half_dim)
    mats = _kernels.rk4_flow(gen.sample_times, gen.hamiltonians, int(steps), J)
    assert_symplectic(mats[-1], tol)
    times = np.linspace(0.0, 1.0, int(steps) + 1)
    return SampledPath(times, mats)


def _as_sampled(path, tol: float) -> SampledPath:
    if isinstance(path, SampledPath):
        return path
    if isinstance(path, GeneratedPath):
        return integrate(path, tol=tol)
    raise InputError(f"expected a path, got {type(path).__name__}")


def _sample_phase(A: np.ndarray, J: np.ndarray, ctol: float,
                  drop_nearest_unit: int = 0) -> float:
    """Continuous phase of the product of first-kind unit eigenvalues.

    Real negative pairs contribute pi each; eigenvalues off the unit
    circle and unit-eigenvalue clusters contribute nothing.  Per-vector
    Krein signs suffice here: distinct unit eigenvalues have J-orthogonal
    eigenspaces, so each returned eigenvector carries a definite sign away
    from collision instants.  ``drop_nearest_unit`` additionally silences
    that many eigenvalues closest to 1, whatever their apparent distance;
    a defective unit block splits far beyond any fixed radius.
    """
    vals, vecs = np.linalg.eig(A)
    skip: frozenset[int] = frozenset()
    if drop_nearest_unit:
        order = np.argsort(np.abs(vals - 1.0))
        skip = frozenset(order[:drop_nearest_unit].tolist())
    phase = 0.0
    minus = 0
    for idx in range(vals.size):
        lam = vals[idx]
        if idx in skip or abs(lam - 1.0) <= ctol:
            continue
        if abs(lam + 1.0) <= ctol:
            minus += 1
            continue
        if abs(lam.imag) <= ctol:
            if lam.real < 0.0 and abs(lam) > 1.0:
                phase += np.pi
            continue
        if lam.imag > ctol and abs(abs(lam) - 1.0) <= ctol:
            v = vecs[:, idx]
            g = (np.conj(v) @ (J @ v)) / 1j
            s = 1.0 if g.real > 0.0 else -1.0
            phase += s * float(np.angle(lam))
    return phase + np.pi * (minus // 2)


def _wrap_pi(x: float) -> float:
    return (x + np.pi) % (2.0 * np.pi) - np.pi


def _unwrap_total(phases: np.ndarray) -> float:
    """Total phase increment along a sampled sequence.

    Consecutive increments are reduced mod 2 pi into (-pi, pi]; anything
    at or above pi/2 means the sampling is too coarse to trust and raises.
    """
    total = 0.0
    for i in range(1, phases.size):
        d = _wrap_pi(phases[i] - phases[i - 1])
        if abs(d) >= 0.5 * np.pi:
            raise UnwrapError(
                f"phase jump {d:.3f} rad between samples {i - 1} and {i}; "
                "increase the sampling density")
        total += d
    return total


def _phase_total(mats: np.ndarray, tol: float) -> float:
    J = standard_J(mats.shape[1] // 2)
    ctol = max(tol, 1e-9)
    phases = np.array([_sample_phase(A, J, ctol) for A in mats])
    # Interior phase noise telescopes away in the unwrapped sum; only the
    # endpoint sample survives.  A defective unit block there splits its
    # eigenvalues like eps**(1/p), far outside ctol, so the raw phase picks
    # up a spurious contribution.  Excise the cluster when it is isolable;
    # when it is not, the bias stays below the cluster width and shrinks
    # with the integration error, so keep the raw phase rather than fail.
    try:
        _, alg = _unit_cluster(mats[-1], tol)
    except DegeneracyError:
        alg = 0
    if alg:
        phases = phases.copy()
        phases[-1] = _sample_phase(mats[-1], J, ctol, drop_nearest_unit=alg)
    return _unwrap_total(phases)


def mean_index(path, tol: float = DEFAULT_TOL) -> float:
    """Mean index of a path: total winding of the eigenvalue phase over pi."""
    sp = _as_sampled(path, tol)
    return _phase_total(sp.matrices, tol) / np.pi


def nullity(path, tol: float = DEFAULT_TOL) -> int:
    """Half the algebraic multiplicity of the eigenvalue 1 at the endpoint.

    Counts through the unit-eigenvalue cluster rather than a fixed radius:
    a nontrivial Jordan block at 1 scatters its eigenvalues like
    eps**(1/p) under perturbation of size eps, so radius tests undercount.
    Raises DegeneracyError when the cluster cannot be separated from the
    rest of the spectrum.
    """
    sp = _as_sampled(path, tol)
    return _unit_cluster(sp.endpoint, tol)[1] // 2


def _kernel_basis(M: np.ndarray, tol: float, scale_floor: float = 1.0,
                  scale_cap: float = math.inf):
    """Orthonormal basis of the numerical kernel of M, with a gap check.

    The kernel cut is relative to the largest singular value, clipped to
    [scale_floor, scale_cap].  Endpoint checks keep the floor at 1 so that
    a path ending near the identity reads as fully degenerate.  Interior
    crossing checks lower the floor, since there Phi(t) - I is small in
    proportion to t, and cap the scale at 1: hyperbolic growth inflates
    the largest singular value without moving the eigenvalues near 1 that
    the kernel cut is meant to isolate.
    """
    u, s, vt = np.linalg.svd(M)
    scale = float(s[0]) if s.size else scale_floor
    scale = min(max(scale_floor, scale), scale_cap)
    ktol = max(1e-5, 1e3 * tol) * scale
    small = s <= ktol
    ambiguous = (s > ktol) & (s <= 50 * ktol)
    if np.any(ambiguous):
        raise DegeneracyError(
            "singular values too close to the kernel threshold to classify")
    k = int(np.sum(small))
    if k == 0:
        return np.zeros((M.shape[0], 0))
    return vt[-k:].T.copy()


def _unit_cluster(A: np.ndarray, tol: float) -> tuple[int, int]:
    """Geometric and algebraic multiplicity of the eigenvalue 1 of A.

    The geometric count comes from the singular values of A - I.  The
    algebraic count cannot: a p-fold Jordan block at 1 perturbed by eps
    splits into eigenvalues at distance ~eps**(1/p), so the cluster is
    identified by scanning candidate sizes c downward and accepting the
    first whose members all sit within the splitting radius for that size
    while the next eigenvalue out clears it with a margin.  Raises
    DegeneracyError when no candidate size separates cleanly.
    """
    n = A.shape[0]
    basis = _kernel_basis(A - np.eye(n), tol, scale_floor=1.0)
    geo = basis.shape[1]
    if geo == 0:
        return 0, 0
    delta = np.sort(np.abs(np.linalg.eigvals(A) - 1.0))
    # Reference perturbation: integration backward error, or the caller's
    # tolerance when that is looser.  The 256 headroom factor covers the
    # constant in the splitting law without reaching genuine rotations.
    eps_ref = 256.0 * max(0.1 * tol, 1e-9)
    lo = geo + (geo % 2)
    for c in range(n, max(2, lo) - 1, -2):
        radius = min(eps_ref ** (1.0 / c), 0.1)
        if delta[c - 1] > radius:
            continue
        if c == n or delta[c] > 3.0 * radius:
            return geo, c
    raise DegeneracyError(
        "unit-eigenvalue cluster cannot be separated from the rest of the "
        "spectrum; refine the path or perturb the endpoint")


def _crossing_kernel(phi: np.ndarray, tol: float) -> np.ndarray:
    return _kernel_basis(phi - np.eye(phi.shape[0]), tol,
                         scale_floor=1e-3, scale_cap=1.0)


def _crossing_form(gen: GeneratedPath, t: float, phi: np.ndarray, tol: float,
                   V: np.ndarray | None = None):
    """Signature of the generator restricted to ker(Phi(t) - I)."""
    if V is None:
        V = _crossing_kernel(phi, tol)
    if V.shape[1] == 0:
        raise DegeneracyError(f"no kernel at claimed crossing t={t}")
    H = gen.hamiltonian_at(t)
    Q = V.T @ H @ V
    sgn, null = quad_invariants(Q, max(tol, 1e-9) * max(1.0, float(np.linalg.norm(H, 2))))
    if null:
        raise DegeneracyError(f"degenerate crossing form at t={t:.12f}")
    return sgn


def _sigma_min(M: np.ndarray) -> float:
    return float(np.linalg.svd(M, compute_uv=False)[-1])


def _golden_min(f, a: float, b: float, xtol: float = 1e-10):
    """Golden-section minimum of a unimodal scalar function on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > xtol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    return (0.5 * (a + b), min(f1, f2))


class _FlowEvaluator:
    """Flow values at arbitrary times, restarted from the recorded grid."""

    def __init__(self, gen: GeneratedPath, sp: SampledPath):
        self.gen = gen
        self.sp = sp
        self.J = standard_J(gen.half_dim)
        self.dt = sp.times[1] - sp.times[0]

    def __call__(self, t: float) -> np.ndarray:
        idx = min(int(t / self.dt), self.sp.times.size - 1)
        base_t = self.sp.times[idx]
        if t <= base_t + 1e-15:
            return self.sp.matrices[idx]
        steps = max(2, int(math.ceil((t - base_t) / self.dt * 4)))
        return _kernels.flow_segment(
            self.gen.sample_times, self.gen.hamiltonians,
            float(base_t), self.sp.matrices[idx], float(t), steps, self.J)

    def gap(self, t: float) -> float:
        phi = self(t)
        return _sigma_min(phi - np.eye(phi.shape[0]))


def _refine_crossings(ev: _FlowEvaluator, a: float, b: float,
                      lip: float, accept: float, depth: int = 0) -> list[float]:
    """All gap zeros in [a, b], found by recursive subdivision.

    Each level samples 33 nodes; a zero always pulls a node below
    2*lip*h, so following every suspicious run of nodes cannot lose one,
    and distinct zeros land in distinct runs once the window is small.
    Windows below the separation scale are resolved by golden-section;
    a minimum there that is positive yet within 50x of the acceptance
    gap cannot be told apart from a crossing and raises.
    """
    width = b - a
    if width < 1e-9:
        tau, fmin = _golden_min(ev.gap, a, b)
        if fmin <= accept:
            return [tau]
        # a minimum at the window edge belongs to a neighbouring window
        if fmin <= 50 * accept and tau - a > 3e-10 and b - tau > 3e-10:
            raise DegeneracyError(
                f"near-crossing at t={tau:.9f} (gap {fmin:.2e}) cannot be classified")
        return []
    if depth > 96:
        raise NumericalError(
            f"crossing isolation did not converge on [{a:.9f}, {b:.9f}]")
    grid = np.linspace(a, b, 33)
    theta = 2.0 * lip * (width / 32.0)
    vals = np.array([ev.gap(t) for t in grid])
    windows: list[tuple[float, float]] = []
    s = 1
    while s < grid.size - 1:
        if vals[s] < theta:
            e = s
            while e + 1 < grid.size - 1 and vals[e + 1] < theta:
                e += 1
            windows.append((grid[s - 1], grid[e + 1]))
            s = e + 2
        else:
            s += 1
    if sum(hi - lo for lo, hi in windows) > 0.75 * width:
        # a zero at the window edge (or an overestimated slope bound) keeps
        # everything suspicious; halving still guarantees progress
        mid = grid[16]
        return (_refine_crossings(ev, a, mid, lip, accept, depth + 1)
                + _refine_crossings(ev, mid, b, lip, accept, depth + 1))
    found: list[float] = []
    for lo, hi in windows:
        found.extend(_refine_crossings(ev, lo, hi, lip, accept, depth + 1))
    return found


def rs_index(gen: GeneratedPath, tol: float = DEFAULT_TOL,
             _path: SampledPath | None = None) -> float:
    """Half-integer crossing-form index of a generated path.

    Crossing instants are the zeros of the smallest singular value of
    Phi(t) - I, located by recursive subdivision of suspicious grid spans
    and pinned by golden-section search at the bottom scale.  Candidates
    within a short interval are one crossing and are clustered before the
    form is evaluated.  t=0 contributes half the generator signature; t=1
    counts with weight 1/2 when it crosses; interior crossings count with
    full weight.  Degenerate crossing forms and unresolvable near-crossings
    raise instead of guessing.
    """
    sp = _path if _path is not None else integrate(gen, tol=tol)
    ev = _FlowEvaluator(gen, sp)
    n = 2 * gen.half_dim

    H0 = gen.hamiltonian_at(0.0)
    sgn0, null0 = quad_invariants(
        H0, max(tol, 1e-9) * max(1.0, float(np.linalg.norm(H0, 2))))
    if null0:
        raise DegeneracyError("generator is degenerate at t=0")
    total = 0.5 * sgn0

    # sigma_min(Phi(t) - I) grows like t * s_min(H(0)) from the mandatory
    # zero at t=0; below t_v nothing is distinguishable from that zero
    s_min0 = float(np.linalg.svd(H0, compute_uv=False)[-1])

    rate = max(float(np.linalg.norm(h, 2)) for h in gen.hamiltonians)
    phi_norm = max(float(np.linalg.norm(m, 2)) for m in sp.matrices[:: max(1, sp.times.size // 64)])
    dt = sp.times[1] - sp.times[0]
    lip = max(1.0, rate * (phi_norm + 1.0))
    thresh = 4.0 * lip * dt
    accept = max(100.0 * tol, 1e-6)
    t_v = 4.0 * accept / s_min0
    if t_v > 0.05:
        raise DegeneracyError(
            f"generator nearly degenerate at t=0 (s_min {s_min0:.2e})")

    gaps = np.array([_sigma_min(m - np.eye(n)) for m in sp.matrices])

    crossings: list[float] = []
    i = 1
    while i < gaps.size - 1:
        if gaps[i] < thresh:
            j = i
            while j + 1 < gaps.size - 1 and gaps[j + 1] < thresh:
                j += 1
            lo = max(sp.times[i - 1], t_v)
            hi = sp.times[j + 1]
            if lo < hi:
                crossings.extend(_refine_crossings(ev, lo, hi, lip, accept))
            i = j + 2
        else:
            i += 1

    clusters: list[list[float]] = []
    for t in sorted(crossings):
        if clusters and t - clusters[-1][-1] <= _CLUSTER_EPS:
            clusters[-1].append(t)
        else:
            clusters.append([t])

    # A shallow crossing keeps sigma_min under the acceptance gap over a
    # valley far wider than any fixed cluster radius, so one zero can
    # surface as several clusters.  Two reports belong to the same zero
    # exactly when sigma_min never leaves the acceptance valley between
    # them; distinct zeros are separated by a wall.  Two zeros sharing one
    # valley are below resolution and count as one crossing, whose form is
    # evaluated on the joint numerical kernel.
    lo_cut = max(_BOUNDARY_EPS, t_v)
    reps = []
    for members in clusters:
        tau = min(members, key=ev.gap)
        if tau <= lo_cut or tau >= 1.0 - _BOUNDARY_EPS:
            continue
        reps.append(tau)
    reps.sort(key=ev.gap)

    kept: list[float] = []
    for tau in reps:
        ghost = False
        for tk in kept:
            if abs(tk - tau) > 0.25:
                continue
            probes = np.linspace(min(tau, tk), max(tau, tk), 17)[1:-1]
            if max(ev.gap(t) for t in probes) <= 2.0 * accept:
                ghost = True
                break
        if not ghost:
            kept.append(tau)

    for tau in sorted(kept):
        total += _crossing_form(gen, tau, ev(tau), tol)

    if gaps[-1] <= accept:
        total += 0.5 * _crossing_form(gen, 1.0, sp.endpoint, tol)
    elif gaps[-1] <= 50 * accept:
        raise DegeneracyError(
            f"endpoint gap {gaps[-1]:.2e} too close to degeneracy to classify")

    return float(total)


def _normal_form_index(mats: np.ndarray, tol: float) -> int:
    """Index from the total phase plus the endpoint normal-form correction.

    Valid only when the endpoint has no unit eigenvalues: each elliptic
    angle theta contributes sign(theta) - theta/pi on top of the mean
    index, and the total is an integer up to discretization error.
    """
    cls = eigen_classify(mats[-1], tol)
    if cls.unit_block_dim:
        raise DegeneracyError(
            f"endpoint has a unit-eigenvalue block of dimension {cls.unit_block_dim}")
    mhat = _phase_total(mats, tol) / np.pi
    corr = sum(math.copysign(1.0, th) - th / np.pi for th in cls.elliptic_angles)
    total = mhat + corr
    nearest = round(total)
    if abs(total - nearest) > 0.05:
        raise NumericalError(
            f"index {total:.6f} is not close to an integer; "
            "the discretization is too coarse")
    return int(nearest)


def cz_index(path, tol: float = DEFAULT_TOL) -> int:
    """Integer index of a path with nondegenerate endpoint.

    Generated paths go through the crossing-form computation when the
    generator is nondegenerate at t=0; otherwise, and for sampled paths,
    the endpoint normal form and the mean index are used.
    """
    if isinstance(path, GeneratedPath):
        sp = integrate(path, tol=tol)
        _, alg = _unit_cluster(sp.endpoint, tol)
        if alg:
            raise DegeneracyError(
                f"endpoint carries a unit-eigenvalue cluster of dimension {alg}")
        try:
            rs = rs_index(path, tol, _path=sp)
        except DegeneracyError:
            return _normal_form_index(sp.matrices, tol)
        nearest = round(rs)
        if abs(rs - nearest) > 1e-9:
            raise NumericalError(
                f"crossing index {rs} of a nondegenerate path is not an integer")
        return int(nearest)
    sp = _as_sampled(path, tol)
    _, alg = _unit_cluster(sp.endpoint, tol)
    if alg:
        raise DegeneracyError(
            f"endpoint carries a unit-eigenvalue cluster of dimension {alg}")
    return _normal_form_index(sp.matrices, tol)


def _rotation_factor(theta: float, m: int) -> np.ndarray:
    # exp(theta J) in closed form; J squares to -I.
    J = standard_J(m)
    return math.cos(theta) * np.eye(2 * m) + math.sin(theta) * J


def _extended_index(sp: SampledPath, sign: int, eps: float, tol: float) -> int:
    A = sp.endpoint
    m = sp.half_dim
    ext = np.array([_rotation_factor(sign * eps * s, m) @ A
                    for s in np.linspace(0.0, 1.0, 33)[1:]])
    mats = np.concatenate([sp.matrices, ext], axis=0)
    try:
        return _normal_form_index(mats, tol)
    except DegeneracyError as exc:
        raise DegeneracyError(
            f"extension by eps={eps} does not clear the unit eigenvalues; "
            "choose eps inside the spectral gap") from exc


def mu_pm(path, eps: float = EXTENSION_EPS, tol: float = DEFAULT_TOL) -> tuple[int, int]:
    """Lower and upper indices (mu-, mu+) of a path.

    Appends the rotation exp(s * (+/- eps) J) to the endpoint and takes
    the index of the extended, now nondegenerate, path.  ``eps`` must be
    smaller than the distance from any non-unit eigenvalue phase to an
    integer multiple of 2 pi, and large enough to push unit eigenvalues
    past the classification tolerance; the defaults cover well-separated
    spectra.

    Consistency checks: mu+ - mu- must equal dim ker(Phi(1) - I), and when
    the crossing-form index is computable it must sit at the midpoint
    shifted by half the kernel dimension.
    """
    if eps <= 0 or eps >= 0.5:
        raise InputError("eps must lie in (0, 1/2)")
    gen = path if isinstance(path, GeneratedPath) else None
    sp = _as_sampled(path, tol)
    mu_minus = _extended_index(sp, -1, eps, tol)
    mu_plus = _extended_index(sp, +1, eps, tol)

    V = _kernel_basis(sp.endpoint - np.eye(2 * sp.half_dim), tol)
    g = V.shape[1]
    if mu_plus - mu_minus != g:
        raise NumericalError(
            f"mu+ - mu- = {mu_plus - mu_minus} but the kernel has dimension {g}; "
            "adjust eps or the discretization")
    if gen is not None:
        try:
            rs = rs_index(gen, tol, _path=sp)
        except (DegeneracyError, NumericalError, UnwrapError):
            rs = None
        if rs is not None:
            if abs((rs - 0.5 * g) - mu_minus) > 1e-9 or abs((rs + 0.5 * g) - mu_plus) > 1e-9:
                raise NumericalError(
                    f"crossing index {rs} disagrees with (mu-, mu+) = "
                    f"({mu_minus}, {mu_plus}) at kernel dimension {g}")
    return mu_minus, mu_plus


def iterate(path, k: int, tol: float = DEFAULT_TOL) -> SampledPath:
    """k-th iterate as a sampled path: t in [j/k, (j+1)/k] maps to Phi(kt-j) Phi(1)^j.

    Matrix products only, no re-integration, so iterating commutes exactly
    with the index computations up to round-off.
    """
    if not isinstance(k, int) or k < 1:
        raise InputError("iteration count must be a positive integer")
    sp = _as_sampled(path, tol)
    if k == 1:
        return sp
    A = sp.endpoint
    times = [np.array([0.0])]
    mats = [sp.matrices[:1]]
    power = np.eye(A.shape[0])
    for j in range(k):
        seg_t = (j + sp.times[1:]) / k
        seg_m = sp.matrices[1:] @ power if j else sp.matrices[1:]
        times.append(seg_t)
        mats.append(seg_m)
        power = A @ power
    return SampledPath(np.concatenate(times), np.concatenate(mats, axis=0))
