"""Common index recurrence: search, certification, and jump windows.

Given a family of orbit models, a recurrence certificate is an integer d
and one iterate k_i per model such that every k_i-th iterate has its whole
index window within eta of d, and the window identities

    mu+-(k_i + l) = d + mu+-(l)
    mu-+(k_i - l) = d - mu+-(l) + b_i        (b_i: degenerate signature)

hold exactly for 1 <= l <= l0.  The search scans multiples of a divisor N
chosen by the caller so that rational rotation numbers recur exactly; the
identities are then re-verified in exact arithmetic, never trusted from
the float scan alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import (
    CertificateRangeError,
    InputError,
    NearResonanceError,
    VerificationError,
)
from .orbitmodel import (
    OrbitModel,
    b_correction,
    is_dynamically_convex,
    mean_index,
    mu_pm,
    nullity,
)

_SLACK = 64


@dataclass(frozen=True)
class RecurrenceCertificate:
    """One recurrence instance: shared index d, one iterate per model."""

    d: int
    k: tuple[int, ...]
    eta: float
    epsilon: float
    divisor: int
    mean_gaps: tuple[float, ...]

    def to_payload(self) -> dict:
        return {
            "d": self.d,
            "k": list(self.k),
            "eta": self.eta,
            "epsilon": self.epsilon,
            "divisor": self.divisor,
            "mean_gaps": list(self.mean_gaps),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "RecurrenceCertificate":
        try:
            return cls(
                d=int(payload["d"]),
                k=tuple(int(x) for x in payload["k"]),
                eta=float(payload["eta"]),
                epsilon=float(payload.get("epsilon", 0.0)),
                divisor=int(payload.get("divisor", 1)),
                mean_gaps=tuple(float(x) for x in payload.get("mean_gaps", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad certificate payload: {exc}") from exc


@dataclass(frozen=True)
class CheckRecord:
    model: int
    ell: int
    kind: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class CertificateCheck:
    passed: bool
    records: tuple[CheckRecord, ...]

    def failures(self) -> tuple[CheckRecord, ...]:
        return tuple(r for r in self.records if not r.ok)


@dataclass(frozen=True)
class RecurrenceResult:
    certificates: tuple[RecurrenceCertificate, ...]
    checks: tuple[CertificateCheck | None, ...]
    scanned: int
    exhausted: bool
    notes: tuple[str, ...]


def epsilon0(models: list[OrbitModel], ell0: int) -> float:
    """Smallest distance of l*lambda to the integers over all irrational
    rotation numbers and 1 <= l <= ell0; inf when no irrationals occur."""
    if ell0 < 1:
        raise InputError("ell0 must be at least 1")
    best = math.inf
    for model in models:
        for rb in model.rotations:
            if rb.is_rational:
                continue
            lam = Fraction(rb.value)
            for ell in range(1, ell0 + 1):
                x = lam * ell
                dist = min(x - math.floor(x), math.ceil(x) - x)
                if dist < 1e-12:
                    raise NearResonanceError(
                        f"l*lambda = {float(x):.15g} at l={ell} is within 1e-12 "
                        "of an integer; the rotation number cannot be treated "
                        "as irrational at this precision")
                best = min(best, float(dist))
    return best


def _deltas(models: list[OrbitModel]):
    vals = []
    zero = []
    for model in models:
        delta = mean_index(model, 1)
        vals.append(float(delta))
        zero.append(delta == 0)
    return np.array(vals, dtype=float), np.array(zero, dtype=bool)


def _lam_arrays(models: list[OrbitModel]):
    flat: list[float] = []
    start = [0]
    for model in models:
        flat.extend(rb.value for rb in model.rotations if not rb.is_rational)
        start.append(len(flat))
    return (np.array(flat, dtype=float),
            np.array(start, dtype=np.int64))


def find_recurrence(models: list[OrbitModel], ell0: int, eta: float,
                    divisor: int = 1, k_max: int = 10 ** 6, count: int = 1,
                    require_d_divisible: bool = True,
                    skip_unverifiable: bool = True) -> RecurrenceResult:
    """Scan for recurrence certificates and verify each one exactly.

    divisor N restricts the scan to k_1 in N, 2N, ..., N*k_max and, when
    ``require_d_divisible`` is set, to certificates whose common index d
    is a multiple of N.  Candidates with some k_i <= ell0 cannot honor the
    window identities over the full range 1..ell0; they are dropped when
    ``skip_unverifiable`` is set and reported unchecked otherwise.

    Every surviving certificate is re-verified with exact arithmetic; a
    verification failure raises VerificationError since it would mean the
    scan accepted something the theory rules out.
    """
    if not models:
        raise InputError("need at least one model")
    if not (0.0 < eta < 0.5):
        raise InputError("eta must lie in (0, 1/2)")
    if divisor < 1 or k_max < 1 or count < 1:
        raise InputError("divisor, k_max and count must be positive")
    m_max = max(model.half_dim for model in models)
    eps = min(epsilon0(models, ell0), eta / m_max)
    deltas, zero = _deltas(models)
    lam_flat, lam_start = _lam_arrays(models)

    out_k = np.zeros((count + _SLACK, len(models)), dtype=np.int64)
    out_d = np.zeros(count + _SLACK, dtype=np.int64)

    certs: list[RecurrenceCertificate] = []
    checks: list[CertificateCheck | None] = []
    notes: list[str] = []
    t0 = 1
    scanned = 0
    while len(certs) < count and t0 <= k_max:
        found, t_last = _kernels.scan_candidates(
            deltas, zero, lam_flat, lam_start,
            divisor, t0, k_max, eps, eta, require_d_divisible,
            out_k, out_d)
        scanned = t_last
        for row in range(found):
            ks = tuple(int(x) for x in out_k[row])
            d = int(out_d[row])
            if min(ks) <= ell0:
                note = (f"candidate d={d}, k={ks} has an iterate <= ell0={ell0} "
                        "and cannot be verified over the full window")
                if skip_unverifiable:
                    notes.append(note + "; dropped")
                    continue
                notes.append(note + "; reported unchecked")
                check = None
            else:
                try:
                    cert_try = RecurrenceCertificate(
                        d=d, k=ks, eta=eta, epsilon=eps, divisor=divisor,
                        mean_gaps=tuple(abs(k * dv - d) for k, dv in zip(ks, deltas)))
                    check = verify_certificate(cert_try, models, ell0, eta)
                except NearResonanceError as exc:
                    notes.append(f"candidate d={d}, k={ks} dropped: {exc}")
                    continue
                if not check.passed:
                    bad = check.failures()[0]
                    raise VerificationError(
                        f"scan accepted d={d}, k={ks} but exact verification "
                        f"failed at model {bad.model}, l={bad.ell}: {bad.detail}")
            certs.append(RecurrenceCertificate(
                d=d, k=ks, eta=eta, epsilon=eps, divisor=divisor,
                mean_gaps=tuple(abs(k * dv - d) for k, dv in zip(ks, deltas))))
            checks.append(check)
            if len(certs) == count:
                break
        if found < out_d.size:
            break
        t0 = t_last + 1

    return RecurrenceResult(
        certificates=tuple(certs),
        checks=tuple(checks),
        scanned=scanned,
        exhausted=(scanned >= k_max and len(certs) < count),
        notes=tuple(notes),
    )


def verify_certificate(cert: RecurrenceCertificate, models: list[OrbitModel],
                       ell0: int, eta: float | None = None) -> CertificateCheck:
    """Exact check of a certificate against its models.

    Confirms the mean-index gap bound (floating point) and the exact window
    identities for every l in 1..ell0.  Iterates at or below ell0 cannot be
    checked on the minus side and raise CertificateRangeError.
    """
    if len(cert.k) != len(models):
        raise InputError(
            f"certificate has {len(cert.k)} iterates for {len(models)} models")
    if any(k < 1 for k in cert.k):
        raise InputError("certificate iterates must be positive")
    if ell0 < 1:
        raise InputError("ell0 must be at least 1")
    if min(cert.k) <= ell0:
        raise CertificateRangeError(
            f"smallest iterate {min(cert.k)} does not exceed ell0={ell0}; "
            "the minus-side identities are out of range")
    eta_bound = cert.eta if eta is None else eta
    d = cert.d
    records: list[CheckRecord] = []
    for i, (model, k) in enumerate(zip(models, cert.k)):
        gap = abs(k * float(mean_index(model, 1)) - d)
        records.append(CheckRecord(
            i, 0, "mean_gap", gap < eta_bound,
            f"|k*delta - d| = {gap:.6g} vs eta = {eta_bound:.6g}"))
        bc = b_correction(model)
        for ell in range(1, ell0 + 1):
            lo_l, hi_l = mu_pm(model, ell)
            lo_p, hi_p = mu_pm(model, k + ell)
            ok_p = (lo_p == d + lo_l) and (hi_p == d + hi_l)
            records.append(CheckRecord(
                i, ell, "plus", ok_p,
                f"mu(k+l) = ({lo_p}, {hi_p}) vs d + mu(l) = "
                f"({d + lo_l}, {d + hi_l})"))
            lo_m, hi_m = mu_pm(model, k - ell)
            ok_m = (hi_m == d - lo_l + bc) and (lo_m == d - hi_l + bc)
            records.append(CheckRecord(
                i, ell, "minus", ok_m,
                f"mu(k-l) = ({lo_m}, {hi_m}) vs d - reversed(mu(l)) + b = "
                f"({d - hi_l + bc}, {d - lo_l + bc})"))
    return CertificateCheck(
        passed=all(r.ok for r in records),
        records=tuple(records))


@dataclass(frozen=True)
class JumpWindow:
    model: int
    iterate: int
    low: int
    high: int
    side: str


@dataclass(frozen=True)
class JumpReport:
    mode: str
    protected_low: int
    protected_high: int
    windows: tuple[JumpWindow, ...]


def jump_intervals(cert: RecurrenceCertificate, models: list[OrbitModel],
                   ell0: int, mode: str = "general") -> JumpReport:
    """Index windows of the iterates adjacent to a certificate.

    All models must be dynamically convex and share one half-dimension m.
    The protected band is [d-1, d+m+1] in general and [d-m-1, d+m+1] when
    every model is strongly nondegenerate (no degenerate block, no rational
    rotation number); every adjacent window up to ell0 steps away must
    clear it, and the certified iterates themselves must sit inside
    [d-m, d+m].  Violations raise VerificationError.
    """
    if mode not in ("general", "strongly_nondegenerate"):
        raise InputError(f"unknown mode {mode!r}")
    if len(cert.k) != len(models):
        raise InputError("certificate and model list disagree in length")
    dims = {model.half_dim for model in models}
    if len(dims) != 1:
        raise InputError("jump windows need all models of equal half-dimension")
    m = dims.pop()
    for i, model in enumerate(models):
        if not is_dynamically_convex(model):
            raise InputError(f"model {i} is not dynamically convex")
    if mode == "strongly_nondegenerate":
        for i, model in enumerate(models):
            if model.degenerate is not None or any(
                    rb.is_rational for rb in model.rotations):
                raise InputError(
                    f"model {i} is not strongly nondegenerate; use mode='general'")
    if min(cert.k) <= ell0:
        raise CertificateRangeError(
            f"smallest iterate {min(cert.k)} does not exceed ell0={ell0}")

    d = cert.d
    lo_band = d - 1 if mode == "general" else d - m - 1
    hi_band = d + m + 1
    windows: list[JumpWindow] = []
    for i, (model, k) in enumerate(zip(models, cert.k)):
        lo, hi = mu_pm(model, k)
        windows.append(JumpWindow(i, k, lo, hi, "own"))
        if lo < d - m or hi > d + m:
            raise VerificationError(
                f"model {i}: window ({lo}, {hi}) of iterate {k} leaves "
                f"[{d - m}, {d + m}]")
        for ell in range(1, ell0 + 1):
            lo_p, hi_p = mu_pm(model, k + ell)
            windows.append(JumpWindow(i, k + ell, lo_p, hi_p, "plus"))
            if lo_p < d + 2 * ell + m:
                raise VerificationError(
                    f"model {i}: mu-({k + ell}) = {lo_p} below the jump bound "
                    f"{d + 2 * ell + m}")
            if lo_p <= hi_band:
                raise VerificationError(
                    f"model {i}: window of iterate {k + ell} touches the "
                    f"protected band at {lo_p}")
            lo_mi, hi_mi = mu_pm(model, k - ell)
            windows.append(JumpWindow(i, k - ell, lo_mi, hi_mi, "minus"))
            bound = min(d - m - 2 * ell + nullity(model, ell), d - 2 * ell)
            if hi_mi > bound:
                raise VerificationError(
                    f"model {i}: mu+({k - ell}) = {hi_mi} above the jump bound "
                    f"{bound}")
            if hi_mi >= lo_band:
                raise VerificationError(
                    f"model {i}: window of iterate {k - ell} touches the "
                    f"protected band at {hi_mi}")
    return JumpReport(mode, lo_band, hi_band, tuple(windows))
