"""Loop-level kernels, numba-compiled when possible.

Set SYMINDEX_NO_NUMBA=1 to force the plain-numpy path (the benchmark uses
the ``py_func`` attribute of the compiled versions for its baseline, so it
does not need the flag).  Keep this module free of Python conveniences that
numba cannot handle in nopython mode: no dicts, no dataclasses, no string
formatting.

``backend()`` reports which path is active so run manifests can record it.
"""

import os

import numpy as np

_BACKEND = "numpy"
_njit = None

if not os.environ.get("SYMINDEX_NO_NUMBA"):
    try:
        from numba import njit as _njit

        _BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on the environment
        _njit = None


def _jit(fn):
    if _njit is None:
        return fn
    return _njit(cache=True)(fn)


def backend() -> str:
    """Name of the active kernel backend, either "numba" or "numpy"."""
    return _BACKEND


def plain(fn):
    """Undecorated Python version of a kernel (the numpy baseline)."""
    return getattr(fn, "py_func", fn)


@_jit
def interp_sym(times, mats, t):
    """Piecewise-linear interpolation of a time-dependent symmetric matrix."""
    K = times.shape[0]
    if t <= times[0]:
        return mats[0].copy()
    if t >= times[K - 1]:
        return mats[K - 1].copy()
    lo = 0
    hi = K - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if times[mid] <= t:
            lo = mid
        else:
            hi = mid
    span = times[hi] - times[lo]
    if span <= 0.0:
        return mats[hi].copy()
    w = (t - times[lo]) / span
    return (1.0 - w) * mats[lo] + w * mats[hi]


@_jit
def resymplectify(phi, J):
    """Newton correction pushing phi back onto the symplectic group.

    phi <- phi (I + J E / 2) with E = phi^T J phi - J kills the defect to
    first order; a few passes reach round-off for any phi produced by a
    stable one-step method.
    """
    n = phi.shape[0]
    eye = np.eye(n)
    for _ in range(4):
        E = phi.T @ J @ phi - J
        d = np.max(np.abs(E))
        if d < 1e-13:
            break
        phi = phi @ (eye + 0.5 * (J @ E))
    return phi


@_jit
def rk4_flow(times, mats, steps, J):
    """Fundamental solution of dPhi/dt = J H(t) Phi on [0, 1].

    Fixed-step classical RK4 with a symplectic correction after every step.
    Returns the (steps+1, n, n) array of flow matrices at the grid points.
    """
    n = J.shape[0]
    out = np.empty((steps + 1, n, n))
    phi = np.eye(n)
    out[0] = phi
    dt = 1.0 / steps
    for s in range(steps):
        t0 = s * dt
        h0 = interp_sym(times, mats, t0)
        h1 = interp_sym(times, mats, t0 + 0.5 * dt)
        h2 = interp_sym(times, mats, t0 + dt)
        a0 = J @ h0
        a1 = J @ h1
        a2 = J @ h2
        k1 = a0 @ phi
        k2 = a1 @ (phi + 0.5 * dt * k1)
        k3 = a1 @ (phi + 0.5 * dt * k2)
        k4 = a2 @ (phi + dt * k3)
        phi = phi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        phi = resymplectify(phi, J)
        out[s + 1] = phi
    return out


@_jit
def flow_segment(times, mats, t_start, phi_start, t_end, steps, J):
    """Continue a flow from (t_start, phi_start) to t_end in `steps` RK4 steps."""
    phi = phi_start.copy()
    if steps < 1:
        steps = 1
    dt = (t_end - t_start) / steps
    for s in range(steps):
        t0 = t_start + s * dt
        h0 = interp_sym(times, mats, t0)
        h1 = interp_sym(times, mats, t0 + 0.5 * dt)
        h2 = interp_sym(times, mats, t0 + dt)
        a0 = J @ h0
        a1 = J @ h1
        a2 = J @ h2
        k1 = a0 @ phi
        k2 = a1 @ (phi + 0.5 * dt * k1)
        k3 = a1 @ (phi + 0.5 * dt * k2)
        k4 = a2 @ (phi + dt * k3)
        phi = phi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        phi = resymplectify(phi, J)
    return phi


@_jit
def scan_candidates(deltas, zero_delta, lam_flat, lam_start,
                    N, t0, kmax, eps, eta, require_d_div,
                    out_k, out_d):
    """Scan k1 = N*t for t = t0..kmax for common index-recurrence candidates.

    deltas: mean index per model; zero_delta marks models whose mean index
    vanishes (their iterate is pinned to k1).  lam_flat/lam_start hold the
    irrational rotation numbers of model i in
    lam_flat[lam_start[i]:lam_start[i+1]].

    Acceptance at a candidate k1:
      d = nearest integer to k1*delta_1, divisible by N when asked,
      k_i = N * round(k1*delta_1 / (N*delta_i)) > 0 with
      |k1*delta_1 - k_i*delta_i| < 1/8,
      |k_i*delta_i - d| < eta for every model,
      and every |k_i*lam| within eps of an integer.

    Fills out_k (rows) and out_d; returns (found, last_t_scanned).
    """
    r = deltas.shape[0]
    max_out = out_d.shape[0]
    found = 0
    ks = np.empty(r, dtype=np.int64)
    t = t0 - 1
    for t in range(t0, kmax + 1):
        k1 = N * t
        x1 = k1 * deltas[0]
        d = int(np.floor(x1 + 0.5))
        if abs(x1 - d) >= eta:
            continue
        if require_d_div and d % N != 0:
            continue
        ks[0] = k1
        ok = True
        for i in range(1, r):
            if zero_delta[i]:
                ki = k1
            else:
                ki = N * int(np.floor(x1 / (N * deltas[i]) + 0.5))
                if ki <= 0:
                    ok = False
                    break
                if abs(x1 - ki * deltas[i]) >= 0.125:
                    ok = False
                    break
            if abs(ki * deltas[i] - d) >= eta:
                ok = False
                break
            ks[i] = ki
        if not ok:
            continue
        for i in range(r):
            for a in range(lam_start[i], lam_start[i + 1]):
                y = ks[i] * lam_flat[a]
                if abs(y - np.floor(y + 0.5)) >= eps:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        for i in range(r):
            out_k[found, i] = ks[i]
        out_d[found] = d
        found += 1
        if found == max_out:
            break
    return found, t
