"""Exact iteration indices for block models of symplectic endpoints.

A model lists the building blocks of a symplectic matrix together with the
winding of the path reaching it: a loop index (even integer), rotation
planes with rational or irrational rotation number, hyperbolic planes with
a total half-turn count, and an optional totally degenerate block described
only by the signature and nullity of its generating form.  All index
formulas here are closed-form and exact; irrational rotation numbers are
handled through exact floor arithmetic on their binary values with a guard
band against near-integer multiples.

``model_to_path`` realizes a model as a generated path whose Hamiltonian is
piecewise linear with breakpoints on the 1/16 grid, so the numerical
pipeline can be checked against the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegeneracyError, InputError, NearResonanceError, VerificationError
from .pathindex import GeneratedPath

GUARD_BAND = 1e-12


@dataclass(frozen=True)
class RotationBlock:
    """One elliptic plane, rotating by 2 pi times `value` per period.

    A Fraction value is treated as exactly rational; a float is treated as
    irrational and floor computations guard against its multiples falling
    within GUARD_BAND of an integer.
    """

    value: Fraction | float

    def __post_init__(self):
        v = self.value
        if isinstance(v, Fraction):
            if not (0 < abs(v) < 1):
                raise InputError(f"rational rotation number must be in (-1,1) minus 0, got {v}")
        elif isinstance(v, float):
            if not (0.0 < abs(v) < 1.0):
                raise InputError(f"rotation number must be in (-1,1) minus 0, got {v}")
        else:
            raise InputError("rotation number must be a Fraction or a float")

    @classmethod
    def rational(cls, p: int, q: int) -> "RotationBlock":
        return cls(Fraction(p, q))

    @classmethod
    def irrational(cls, value: float) -> "RotationBlock":
        return cls(float(value))

    @property
    def is_rational(self) -> bool:
        return isinstance(self.value, Fraction)

    def to_payload(self) -> dict:
        if self.is_rational:
            return {"rational": [self.value.numerator, self.value.denominator]}
        return {"irrational": self.value}

    @classmethod
    def from_payload(cls, payload: dict) -> "RotationBlock":
        if "rational" in payload:
            p, q = payload["rational"]
            return cls.rational(int(p), int(q))
        if "irrational" in payload:
            return cls.irrational(float(payload["irrational"]))
        raise InputError(f"rotation must be rational or irrational, got {payload!r}")


@dataclass(frozen=True)
class DegenerateBlock:
    """Totally degenerate block: all eigenvalues 1, described by its form.

    half_dim is the number of planes it occupies, sgn and nullity are the
    signature and kernel dimension of the generating quadratic form.  The
    constraints below are exactly the realizable combinations:
    sgn and nullity have equal parity, |sgn| <= nullity <= 2 half_dim, and
    (nullity + |sgn|)/2 <= half_dim.
    """

    half_dim: int
    sgn: int
    nullity: int

    def __post_init__(self):
        d, s, u = self.half_dim, self.sgn, self.nullity
        if d < 1:
            raise InputError("degenerate block needs half_dim >= 1")
        if u < 1 or u > 2 * d:
            raise InputError(f"nullity must be in [1, {2 * d}], got {u}")
        if abs(s) > u or (s - u) % 2:
            raise InputError(f"signature {s} incompatible with nullity {u}")
        if (u + abs(s)) // 2 > d:
            raise InputError(
                f"(nullity + |sgn|)/2 = {(u + abs(s)) // 2} exceeds half_dim {d}")

    def to_payload(self) -> dict:
        return {"half_dim": self.half_dim, "sgn": self.sgn, "nullity": self.nullity}

    @classmethod
    def from_payload(cls, payload: dict) -> "DegenerateBlock":
        return cls(int(payload["half_dim"]), int(payload["sgn"]), int(payload["nullity"]))


@dataclass(frozen=True)
class OrbitModel:
    """Endpoint data of a closed-orbit linearization, one block per plane."""

    loop_index: int = 0
    rotations: tuple[RotationBlock, ...] = ()
    hyperbolic_index: int = 0
    hyperbolic_planes: int = 0
    degenerate: DegenerateBlock | None = None
    action: float | None = None
    label: str | None = None

    def __post_init__(self):
        if self.loop_index % 2:
            raise InputError("loop index must be even")
        if self.hyperbolic_planes < 0:
            raise InputError("hyperbolic plane count must be nonnegative")
        if self.hyperbolic_index and self.hyperbolic_planes < 1:
            raise InputError("a nonzero hyperbolic index needs at least one plane")
        object.__setattr__(self, "rotations", tuple(self.rotations))
        if self.half_dim < 1:
            raise InputError("model must occupy at least one plane")
        if self.action is not None and self.action <= 0:
            raise InputError("action must be positive")

    @property
    def half_dim(self) -> int:
        d = len(self.rotations) + self.hyperbolic_planes
        if self.degenerate is not None:
            d += self.degenerate.half_dim
        return d

    def to_payload(self) -> dict:
        out = {
            "loop_index": self.loop_index,
            "rotations": [r.to_payload() for r in self.rotations],
            "hyperbolic_index": self.hyperbolic_index,
            "hyperbolic_planes": self.hyperbolic_planes,
            "degenerate": None if self.degenerate is None else self.degenerate.to_payload(),
        }
        if self.action is not None:
            out["action"] = self.action
        if self.label is not None:
            out["label"] = self.label
        return out

    @classmethod
    def from_payload(cls, payload: dict) -> "OrbitModel":
        try:
            deg = payload.get("degenerate")
            return cls(
                loop_index=int(payload.get("loop_index", 0)),
                rotations=tuple(RotationBlock.from_payload(r)
                                for r in payload.get("rotations", ())),
                hyperbolic_index=int(payload.get("hyperbolic_index", 0)),
                hyperbolic_planes=int(payload.get("hyperbolic_planes", 0)),
                degenerate=None if deg is None else DegenerateBlock.from_payload(deg),
                action=None if payload.get("action") is None else float(payload["action"]),
                label=payload.get("label"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad model payload: {exc}") from exc


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k == 0:
        raise InputError("iteration count must be a nonzero integer")


def mean_index(model: OrbitModel, k: int = 1):
    """Mean index of the k-th iterate; a Fraction when all data is rational."""
    _check_k(k)
    if all(rb.is_rational for rb in model.rotations):
        delta = Fraction(model.loop_index + model.hyperbolic_index)
        for rb in model.rotations:
            delta += 2 * rb.value
        return delta * k
    total = float(model.loop_index + model.hyperbolic_index)
    for rb in model.rotations:
        total += 2.0 * float(rb.value)
    return total * k


def _guarded_floor(x: Fraction) -> int:
    """floor(x) for the exact binary value of an irrational-tagged product."""
    fl = math.floor(x)
    frac = x - fl
    if frac < GUARD_BAND or 1 - frac < GUARD_BAND:
        raise NearResonanceError(
            f"rotation multiple {float(x):.15g} is within {GUARD_BAND} of an integer; "
            "the floor is not trustworthy at this precision")
    return fl


def mu_pm(model: OrbitModel, k: int = 1) -> tuple[int, int]:
    """Exact (mu-, mu+) of the k-th iterate, blockwise.

    Rational planes whose denominator divides k contribute an open unit
    of degeneracy (x-1, x+1) around x = 2kp/q; all other planes contribute
    equal lower and upper values.  Negative k goes through
    mu_pm(k) = -reversed(mu_pm(-k)).
    """
    _check_k(k)
    if k < 0:
        lo, hi = mu_pm(model, -k)
        return (-hi, -lo)
    lo = hi = (model.loop_index + model.hyperbolic_index) * k
    for rb in model.rotations:
        if rb.is_rational:
            v = rb.value * k
            if v.denominator == 1:
                x = 2 * v.numerator
                lo += x - 1
                hi += x + 1
                continue
            fl = math.floor(abs(v))
            c = (1 if v > 0 else -1) * (2 * fl + 1)
        else:
            x = Fraction(rb.value) * k
            fl = _guarded_floor(abs(x))
            c = (1 if x > 0 else -1) * (2 * fl + 1)
        lo += c
        hi += c
    if model.degenerate is not None:
        s, u = model.degenerate.sgn, model.degenerate.nullity
        lo += (s - u) // 2
        hi += (s + u) // 2
    return lo, hi


def nullity(model: OrbitModel, k: int = 1) -> int:
    """Half the algebraic multiplicity of the eigenvalue 1 of the k-th iterate."""
    _check_k(k)
    n = 0 if model.degenerate is None else model.degenerate.half_dim
    for rb in model.rotations:
        if rb.is_rational and abs(k) % rb.value.denominator == 0:
            n += 1
    return n


def cz_index(model: OrbitModel, k: int = 1) -> int:
    """Integer index of a nondegenerate iterate; raises when degenerate."""
    _check_k(k)
    if nullity(model, k) > 0:
        raise DegeneracyError(
            f"iterate {k} is degenerate (nullity {nullity(model, k)})")
    lo, hi = mu_pm(model, k)
    if lo != hi:
        raise DegeneracyError(
            f"iterate {k} has an open index window ({lo}, {hi})")
    return lo


def b_correction(model: OrbitModel) -> int:
    """Signature of the degenerate form; the iteration-identity offset."""
    return 0 if model.degenerate is None else model.degenerate.sgn


def direct_sum(a: OrbitModel, b: OrbitModel) -> OrbitModel:
    """Plane-wise concatenation; every index quantity is additive under it."""
    if a.degenerate is None:
        deg = b.degenerate
    elif b.degenerate is None:
        deg = a.degenerate
    else:
        deg = DegenerateBlock(
            a.degenerate.half_dim + b.degenerate.half_dim,
            a.degenerate.sgn + b.degenerate.sgn,
            a.degenerate.nullity + b.degenerate.nullity)
    label = None
    if a.label or b.label:
        label = f"{a.label or '?'}+{b.label or '?'}"
    return OrbitModel(
        loop_index=a.loop_index + b.loop_index,
        rotations=a.rotations + b.rotations,
        hyperbolic_index=a.hyperbolic_index + b.hyperbolic_index,
        hyperbolic_planes=a.hyperbolic_planes + b.hyperbolic_planes,
        degenerate=deg,
        label=label,
    )


def is_dynamically_convex(model: OrbitModel) -> bool:
    """Whether the primitive lower index clears half_dim + 2."""
    lo, _ = mu_pm(model, 1)
    return lo >= model.half_dim + 2


def verify_dc_iteration(model: OrbitModel, k_max: int) -> tuple[int, ...]:
    """Check the iteration growth forced by dynamical convexity.

    For every k up to k_max the lower index must satisfy
    mu-(k) >= 2k + half_dim, increase strictly, and step by at least
    mu-(1) - half_dim.  Returns the sequence of lower indices; raises
    VerificationError at the first violation.
    """
    if k_max < 1:
        raise InputError("k_max must be at least 1")
    m = model.half_dim
    if not is_dynamically_convex(model):
        raise InputError("model is not dynamically convex")
    lows = []
    for k in range(1, k_max + 1):
        lo, _ = mu_pm(model, k)
        lows.append(lo)
        if lo < 2 * k + m:
            raise VerificationError(
                f"mu-({k}) = {lo} violates the bound 2k + m = {2 * k + m}")
    step = lows[0] - m
    for k in range(1, len(lows)):
        if lows[k] < lows[k - 1] + step:
            raise VerificationError(
                f"mu- increment {lows[k] - lows[k - 1]} at k={k + 1} "
                f"falls below mu-(1) - m = {step}")
    return tuple(lows)


# ---------------------------------------------------------------------------
# path synthesis


def _trap(t: float, a: float, b: float) -> float:
    """Trapezoid profile on [a, b] with unit integral, ramps of span/4."""
    r = (b - a) / 4.0
    c = 1.0 / (b - a - r)
    if t <= a or t >= b:
        return 0.0
    if t < a + r:
        return c * (t - a) / r
    if t > b - r:
        return c * (b - t) / r
    return c


def _plane_identity(m: int, plane: int) -> np.ndarray:
    S = np.zeros((2 * m, 2 * m))
    S[2 * plane, 2 * plane] = 1.0
    S[2 * plane + 1, 2 * plane + 1] = 1.0
    return S


def _plane_pq(m: int, plane: int) -> np.ndarray:
    S = np.zeros((2 * m, 2 * m))
    S[2 * plane, 2 * plane + 1] = 1.0
    S[2 * plane + 1, 2 * plane] = 1.0
    return S


def _chain_form(c: int, sign: int) -> np.ndarray:
    """Form of a length-c unipotent chain with signature `sign`, nullity 1."""
    S = np.zeros((2 * c, 2 * c))
    for i in range(c - 1):
        S[2 * i, 2 * i + 3] = 1.0
        S[2 * i + 3, 2 * i] = 1.0
    S[2 * c - 2, 2 * c - 2] = float(sign)
    return S


def degenerate_form(block: DegenerateBlock) -> np.ndarray:
    """A quadratic form with the block's signature and nullity whose
    Hamiltonian flow is unipotent on all 2*half_dim coordinates."""
    d, s, u = block.half_dim, block.sgn, block.nullity
    chains: list[tuple[int, int]] = []
    if s == 0:
        zeros = u // 2
        if zeros != d:
            zeros -= 1
            chains.append((d - zeros - 1, +1))
            chains.append((1, -1))
    else:
        zeros = (u - abs(s)) // 2
        sign = 1 if s > 0 else -1
        pad = d - abs(s) - zeros
        chains.append((1 + pad, sign))
        chains.extend((1, sign) for _ in range(abs(s) - 1))
    S = np.zeros((2 * d, 2 * d))
    at = 0
    for c, sign in chains:
        S[2 * at:2 * (at + c), 2 * at:2 * (at + c)] = _chain_form(c, sign)
        at += c
    # remaining planes carry the zero form
    return S


def model_to_path(model: OrbitModel) -> GeneratedPath:
    """Generated path whose endpoint data reproduces the model exactly.

    Layout: when the loop index w = loop_index/2 is nonzero, t in [0, 1/2]
    turns the first plane through 2 pi w and closes back to the identity;
    the blocks then run on [1/2, 1].  Hyperbolic planes with index h first
    rotate to (-1)^h I and then open along the p q form.  All profiles are
    trapezoids with breakpoints on the 1/16 grid, so the Hamiltonian is
    exactly piecewise linear over the 17 standard sample times.
    """
    m = model.half_dim
    w = model.loop_index // 2
    seg = (0.5, 1.0) if w else (0.0, 1.0)
    mid = 0.5 * (seg[0] + seg[1])

    terms: list[tuple[np.ndarray, float, float, float]] = []
    if w:
        terms.append((_plane_identity(m, 0), 2.0 * np.pi * w, 0.0, 0.5))

    plane = 0
    for rb in model.rotations:
        lam = float(rb.value)
        terms.append((_plane_identity(m, plane), 2.0 * np.pi * lam, *seg))
        plane += 1
    for j in range(model.hyperbolic_planes):
        if j == 0 and model.hyperbolic_index:
            terms.append((_plane_identity(m, plane),
                          np.pi * model.hyperbolic_index, seg[0], mid))
            terms.append((_plane_pq(m, plane), 1.0, mid, seg[1]))
        else:
            terms.append((_plane_pq(m, plane), 1.0, *seg))
        plane += 1
    if model.degenerate is not None:
        d = model.degenerate.half_dim
        Q = degenerate_form(model.degenerate)
        S = np.zeros((2 * m, 2 * m))
        S[2 * plane:2 * (plane + d), 2 * plane:2 * (plane + d)] = Q
        terms.append((S, 1.0, *seg))

    times = np.linspace(0.0, 1.0, 17)
    mats = np.zeros((17, 2 * m, 2 * m))
    for i, t in enumerate(times):
        for S, amp, a, b in terms:
            mats[i] += amp * _trap(t, a, b) * S
    return GeneratedPath(times, mats)
