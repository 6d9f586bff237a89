"""Orbit-multiplicity lower bounds, ellipsoid models and witness counts.

Three layers.  ``lower_bound`` is the pure arithmetic of the guaranteed
number of distinct closed orbits for a pinched convex hypersurface or a
pinched spherization, with and without a nondegeneracy hypothesis.
``Ellipsoid`` plus its helpers realize the one solvable family exactly:
orbit models with known rotation numbers, the action spectrum with its
carriers, and the asymptotic action-per-degree limit.  ``mult_witness``
ties the layers together: it finds a recurrence certificate for a family
of models and counts homology dimensions inside the window the
certificate opens, which is where the bound's orbits are detected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, NumericalError, SearchExhaustedError
from .orbitmodel import (OrbitModel, RotationBlock, cz_index,
                         is_dynamically_convex, mean_index)
from .recurrence import (CertificateCheck, RecurrenceCertificate,
                         find_recurrence)
from .shdim import sphere_sh_dim, stsn_sh_dim

_RATIO_DENOMINATOR = 1000
_RATIO_TOL = 1e-9


@dataclass(frozen=True)
class ContactSetting:
    """Geometry plus pinching data for a multiplicity bound.

    kind is "sphere" (a convex hypersurface in R^{2n}) or "stsn" (the
    spherization of the n-sphere).  q is the pinching width; the largest
    admissible value (n+1 for the sphere, n-1 for the spherization) is
    the unpinched, dynamically convex case.
    """

    kind: str
    n: int
    q: int
    nondegenerate: bool = False

    def __post_init__(self):
        if self.kind not in ("sphere", "stsn"):
            raise InputError(f"unknown setting kind {self.kind!r}")
        if self.kind == "sphere":
            if self.n < 2:
                raise InputError("the sphere setting needs n >= 2")
            if not 1 <= self.q <= self.n + 1:
                raise InputError(f"q must lie in 1..{self.n + 1} for the sphere")
        else:
            if self.n < 3:
                raise InputError("the spherization setting needs n >= 3")
            if not 1 <= self.q <= self.n - 1:
                raise InputError(f"q must lie in 1..{self.n - 1} for the spherization")

    def to_payload(self) -> dict:
        return {"kind": self.kind, "n": self.n, "q": self.q,
                "nondegenerate": self.nondegenerate}

    @classmethod
    def from_payload(cls, payload: dict) -> "ContactSetting":
        try:
            return cls(kind=payload["kind"], n=int(payload["n"]),
                       q=int(payload["q"]),
                       nondegenerate=bool(payload.get("nondegenerate", False)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad setting payload: {exc}") from exc


@dataclass(frozen=True)
class MultiplicityBound:
    setting: ContactSetting
    value: int
    case: str
    vacuous: bool


def lower_bound(setting: ContactSetting) -> MultiplicityBound:
    """Guaranteed number of distinct closed orbits in the given setting.

    Values below one are reported as computed but flagged vacuous.
    """
    n, q = setting.n, setting.q
    ceil_half = (n + 1) // 2
    if setting.kind == "sphere":
        if q == n + 1:
            case = "sphere_top"
            value = n if setting.nondegenerate else ceil_half + 1
        else:
            case = "sphere_pinched"
            if setting.nondegenerate:
                value = q + 1 if (n - q) % 2 == 0 else q
            else:
                value = q - ceil_half if (n % 2 and q % 2) else q + 1 - ceil_half
    else:
        if q == n - 1:
            case = "stsn_top"
            if setting.nondegenerate:
                value = n if n % 2 == 0 else n + 1
            else:
                value = n // 2 - 1
        else:
            case = "stsn_pinched"
            if setting.nondegenerate:
                value = q + 1 if (n % 2 or q % 2 == 0) else q
            else:
                value = q - ceil_half if (n % 2 and q % 2) else q + 1 - ceil_half
    return MultiplicityBound(setting, value, case, value < 1)


@dataclass(frozen=True)
class Ellipsoid:
    """Ellipsoid with pairwise irrational squared-radius ratios.

    A ratio within 1e-9 of a fraction with denominator up to 1000 is
    rejected: such near-resonances make the rotation-number floors, and
    with them every integer index downstream, untrustworthy in float
    arithmetic.
    """

    radii_sq: tuple[float, ...]

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii_sq)
        object.__setattr__(self, "radii_sq", radii)
        if len(radii) < 2:
            raise InputError("an ellipsoid needs at least two radii")
        if any(not math.isfinite(r) or r <= 0 for r in radii):
            raise InputError("squared radii must be positive and finite")
        for i, ri in enumerate(radii):
            for j, rj in enumerate(radii):
                if i == j:
                    continue
                ratio = ri / rj
                approx = Fraction(ratio).limit_denominator(_RATIO_DENOMINATOR)
                if abs(ratio - float(approx)) < _RATIO_TOL:
                    raise InputError(
                        f"squared-radius ratio {i + 1}:{j + 1} = {ratio:.12g} is "
                        f"within {_RATIO_TOL} of {approx}; the ellipsoid is "
                        "resonant or too close to resonance")

    @property
    def n(self) -> int:
        return len(self.radii_sq)

    def to_payload(self) -> dict:
        return {"radii_sq": list(self.radii_sq)}

    @classmethod
    def from_payload(cls, payload: dict) -> "Ellipsoid":
        try:
            return cls(radii_sq=tuple(float(r) for r in payload["radii_sq"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad ellipsoid payload: {exc}") from exc


def ellipsoid_orbit_models(e: Ellipsoid) -> tuple[OrbitModel, ...]:
    """One model per principal orbit x_1 .. x_n.

    Orbit i rotates the transverse plane j by the fractional part of
    r_i^2/r_j^2 per period and carries the integer parts in the loop
    index, so the mean index comes out to 2 r_i^2 * sum_j r_j^{-2};
    that identity is re-checked in floating point before returning.
    """
    models = []
    for i, ri in enumerate(e.radii_sq):
        rotations = []
        floors = 0
        for j, rj in enumerate(e.radii_sq):
            if j == i:
                continue
            ratio = ri / rj
            fl = math.floor(ratio)
            rotations.append(RotationBlock.irrational(ratio - fl))
            floors += fl
        model = OrbitModel(
            loop_index=2 * (1 + floors),
            rotations=tuple(rotations),
            action=math.pi * ri,
            label=f"x{i + 1}",
        )
        expect = 2.0 * ri * sum(1.0 / rj for rj in e.radii_sq)
        got = float(mean_index(model, 1))
        if abs(got - expect) > 1e-10 * max(1.0, abs(expect)):
            raise NumericalError(
                f"mean index of {model.label} came out {got:.15g}, "
                f"expected {expect:.15g}")
        models.append(model)
    return tuple(models)


def ellipsoid_capacity(e: Ellipsoid) -> float:
    """Common action-per-mean-index ratio of all principal orbits."""
    return math.pi / (2.0 * sum(1.0 / r for r in e.radii_sq))


@dataclass(frozen=True)
class SpectralInvariant:
    position: int
    value: float
    orbit: int
    iterate: int

    def to_payload(self) -> dict:
        return {"position": self.position, "value": self.value,
                "orbit": self.orbit, "iterate": self.iterate}


def ellipsoid_spectral_invariants(e: Ellipsoid, count: int) -> tuple[SpectralInvariant, ...]:
    """First ``count`` action values pi * r_j^2 * k in increasing order.

    Non-resonance keeps the values distinct; float ties are broken by
    (orbit, iterate) so the output is deterministic either way.
    """
    if count < 1:
        raise InputError("count must be at least 1")
    rmin = min(e.radii_sq)
    entries = []
    for j, rj in enumerate(e.radii_sq):
        k_top = max(1, math.ceil(count * rmin / rj) + 1)
        for k in range(1, k_top + 1):
            entries.append((math.pi * rj * k, j + 1, k))
    entries.sort()
    return tuple(SpectralInvariant(m + 1, value, orbit, k)
                 for m, (value, orbit, k) in enumerate(entries[:count]))


@dataclass(frozen=True)
class CarrierRecord:
    position: int
    orbit: int
    iterate: int
    index: int
    expected: int
    mean: float
    ok: bool


@dataclass(frozen=True)
class CarrierReport:
    passed: bool
    records: tuple[CarrierRecord, ...]


def verify_carrier_indices(e: Ellipsoid, count: int, tol: float = 1e-9) -> CarrierReport:
    """Check that the m-th action value is carried in degree n + 2m - 1.

    The integer index of the carrying iterate must equal that degree
    exactly, and its mean index must stay within n - 1 of it.
    """
    models = ellipsoid_orbit_models(e)
    n = e.n
    records = []
    for inv in ellipsoid_spectral_invariants(e, count):
        model = models[inv.orbit - 1]
        mu = cz_index(model, inv.iterate)
        expected = n + 2 * inv.position - 1
        mean = float(mean_index(model, inv.iterate))
        ok = mu == expected and abs(mean - mu) <= (n - 1) + tol
        records.append(CarrierRecord(
            inv.position, inv.orbit, inv.iterate, mu, expected, mean, ok))
    return CarrierReport(all(r.ok for r in records), tuple(records))


@dataclass(frozen=True)
class ResonanceReport:
    passed: bool
    common: float
    ratios: tuple[float, ...]
    spread: float


def resonance_check(models, tol: float = 1e-9) -> ResonanceReport:
    """Do all models share one action-to-mean-index ratio?"""
    models = list(models)
    if not models:
        raise InputError("need at least one model")
    ratios = []
    for i, model in enumerate(models):
        if model.action is None:
            raise InputError(f"model {i} has no action")
        delta = float(mean_index(model, 1))
        if delta <= 0:
            raise InputError(f"model {i} has nonpositive mean index")
        ratios.append(model.action / delta)
    common = sum(ratios) / len(ratios)
    spread = max(ratios) - min(ratios)
    return ResonanceReport(spread <= tol * max(1.0, abs(common)),
                           common, tuple(ratios), spread)


@dataclass(frozen=True)
class LimitReport:
    count: int
    degree: int
    value: float
    limit: float
    gap: float
    bound: float
    passed: bool


def chat_limit_check(e: Ellipsoid, count: int) -> LimitReport:
    """Action per carried degree against its limit pi / (2 sum r_j^{-2}).

    The counting function pins the m-th value between pi*m/S and
    pi*(m+n)/S for S = sum r_j^{-2}, which gives the hard error bound
    pi*(n+1) / (2*S*degree) used here.
    """
    invariants = ellipsoid_spectral_invariants(e, count)
    degree = e.n + 2 * count - 1
    value = invariants[-1].value / degree
    limit = ellipsoid_capacity(e)
    s = sum(1.0 / r for r in e.radii_sq)
    bound = math.pi * (e.n + 1) / (2.0 * s * degree)
    gap = abs(value - limit)
    return LimitReport(count, degree, value, limit, gap, bound,
                       gap <= bound + 1e-12)


@dataclass(frozen=True)
class WitnessReport:
    certificate: RecurrenceCertificate
    check: CertificateCheck | None
    low: int
    high: int
    support: tuple[tuple[int, int], ...]
    count: int
    expected: int | None
    matches: bool | None


@dataclass(frozen=True)
class WitnessSurvey:
    setting: ContactSetting
    bound: MultiplicityBound
    divisor: int
    reports: tuple[WitnessReport, ...]
    scanned: int
    notes: tuple[str, ...]


def _window_dims(setting: ContactSetting, low: int, high: int):
    dim_of = sphere_sh_dim if setting.kind == "sphere" else stsn_sh_dim
    support = []
    for k in range(low + 1, high):
        d = dim_of(setting.n, k)
        if d:
            support.append((k, d))
    return tuple(support)


def _expected_count(setting: ContactSetting, bound: MultiplicityBound) -> int | None:
    n, q = setting.n, setting.q
    if setting.kind == "sphere" and q == n + 1:
        if setting.nondegenerate:
            return bound.value
        return bound.value - (1 if n % 2 else 0)
    if setting.kind == "stsn" and q == n - 1:
        if setting.nondegenerate:
            return bound.value - 2
        return bound.value
    return None


def mult_witness(setting: ContactSetting, models, ell0: int = 3,
                 eta: float = 0.25, k_max: int = 10 ** 6,
                 count: int = 1) -> WitnessSurvey:
    """Find recurrence certificates and count dimensions in their windows.

    The window around a certificate index d is the open interval from
    d - q (widened by the half-dimension m in the degenerate setting) to
    d + q; its total homology dimension is where the bound's orbits show
    up.  In the unpinched cases that total is rigid: it must equal the
    bound itself up to the known offsets (one less for the degenerate
    odd-n sphere, two less for the nondegenerate spherization).  For
    pinched settings both numbers are reported without a verdict.

    The scan divisor is 2 for the sphere and 2(n-1) for the spherization,
    stretched by every rational rotation denominator in the models.
    """
    models = list(models)
    if not models:
        raise InputError("need at least one model")
    n = setting.n
    m = n - 1
    for i, model in enumerate(models):
        if model.half_dim != m:
            raise InputError(
                f"model {i} has half-dimension {model.half_dim}, "
                f"expected n - 1 = {m}")
        if not is_dynamically_convex(model):
            raise InputError(f"model {i} is not dynamically convex")
    base = 2 if setting.kind == "sphere" else 2 * (n - 1)
    divisor = base
    for model in models:
        for rb in model.rotations:
            if rb.is_rational:
                divisor = math.lcm(divisor, rb.value.denominator)

    result = find_recurrence(models, ell0=ell0, eta=eta, divisor=divisor,
                             k_max=k_max, count=count)
    if not result.certificates:
        raise SearchExhaustedError(
            f"no recurrence certificate with divisor {divisor} found "
            f"scanning iterates up to {divisor * k_max}")

    bound = lower_bound(setting)
    expected = _expected_count(setting, bound)
    reports = []
    for cert, check in zip(result.certificates, result.checks):
        low = cert.d - setting.q + (0 if setting.nondegenerate else m)
        high = cert.d + setting.q
        support = _window_dims(setting, low, high)
        total = sum(d for _, d in support)
        reports.append(WitnessReport(
            certificate=cert, check=check, low=low, high=high,
            support=support, count=total, expected=expected,
            matches=None if expected is None else total == expected))
    return WitnessSurvey(setting, bound, divisor, tuple(reports),
                         result.scanned, result.notes)
