"""Shared builders and independent oracles for the test suite.

Everything here is deliberately naive: the rank computation is a plain
Gaussian elimination over Fraction, the random filtered complexes are
built from an explicit matching so their pages are known before the
library ever sees them, and the rotation paths have closed-form indices.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from symindex.homalg import FilteredComplex, Generator, RationalMatrix
from symindex.orbitmodel import (
    DegenerateBlock,
    OrbitModel,
    RotationBlock,
    is_dynamically_convex,
)
from symindex.pathindex import GeneratedPath
from symindex.symlin import standard_J


def rot2(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


def sym_inverse(A: np.ndarray) -> np.ndarray:
    """Inverse of a symplectic matrix without calling a solver."""
    J = standard_J(A.shape[0] // 2)
    return -J @ A.T @ J


def frac_rank(rows: list[list[Fraction]]) -> int:
    """Rank over the rationals by elimination, nothing shared with homalg."""
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        lead = mat[rank][c]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                f = mat[r][c] / lead
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def torus_distance(x: float) -> float:
    return abs(x - round(x))


def multiple_margin(x: float, l_max: int) -> float:
    """min over 1 <= l <= l_max of the distance from l*x to the integers."""
    return min(torus_distance(l * x) for l in range(1, l_max + 1))


def draw_irrational(rng, margin: float = 0.03, l_max: int = 8,
                    lo: float = 0.03, hi: float = 0.97) -> float:
    """Rotation number whose first l_max multiples stay off the integers."""
    while True:
        x = float(rng.uniform(lo, hi))
        if multiple_margin(x, l_max) >= margin:
            return x


_RATIONAL_POOL = tuple(
    Fraction(p, q)
    for q in range(2, 9)
    for p in range(1, q)
    if math.gcd(p, q) == 1
)


def random_rotation(rng, allow_rational: bool = True, margin: float = 0.03,
                    l_max: int = 8) -> RotationBlock:
    if allow_rational and rng.random() < 0.35:
        v = _RATIONAL_POOL[int(rng.integers(len(_RATIONAL_POOL)))]
        return RotationBlock(-v if rng.random() < 0.3 else v)
    x = draw_irrational(rng, margin, l_max)
    return RotationBlock.irrational(-x if rng.random() < 0.3 else x)


def random_degenerate(rng, max_half: int = 2) -> DegenerateBlock:
    d = int(rng.integers(1, max_half + 1))
    while True:
        u = int(rng.integers(1, 2 * d + 1))
        s = u - 2 * int(rng.integers(0, u + 1))
        if (u + abs(s)) // 2 <= d:
            return DegenerateBlock(d, s, u)


def random_model(rng, *, max_rotations: int = 2, allow_rational: bool = True,
                 allow_hyperbolic: bool = True, allow_degenerate: bool = True,
                 margin: float = 0.03, l_max: int = 8, loop_cap: int = 3,
                 with_action: bool = False, label: str | None = None) -> OrbitModel:
    while True:
        rotations = tuple(
            random_rotation(rng, allow_rational, margin, l_max)
            for _ in range(int(rng.integers(0, max_rotations + 1))))
        planes = 0
        h = 0
        if allow_hyperbolic and rng.random() < 0.4:
            planes = int(rng.integers(1, 3))
            h = int(rng.integers(-2, 3))
        deg = None
        if allow_degenerate and rng.random() < 0.4:
            deg = random_degenerate(rng)
        if not rotations and planes == 0 and deg is None:
            continue
        loop = 2 * int(rng.integers(0, loop_cap + 1))
        if rng.random() < 0.2:
            loop = -loop
        return OrbitModel(
            loop_index=loop,
            rotations=rotations,
            hyperbolic_index=h,
            hyperbolic_planes=planes,
            degenerate=deg,
            action=float(rng.uniform(0.5, 4.0)) if with_action else None,
            label=label,
        )


def random_dc_model(rng, **kwargs) -> OrbitModel:
    """Random model made dynamically convex by raising the loop index."""
    import dataclasses

    model = random_model(rng, **kwargs)
    while not is_dynamically_convex(model):
        model = dataclasses.replace(model, loop_index=model.loop_index + 2)
    return model


def random_recurrence_model(rng, n_rot: int, *, margin: float = 0.07,
                            l_max: int = 4, extras: bool = True,
                            label: str | None = None) -> OrbitModel:
    """Model tame enough for the certificate scan to succeed quickly.

    Rotation numbers keep their first l_max multiples at least `margin`
    away from the integers, so the scan threshold never collapses.
    """
    rotations = tuple(
        RotationBlock.irrational(draw_irrational(rng, margin, l_max, 0.08, 0.92))
        for _ in range(n_rot))
    planes = 0
    h = 0
    deg = None
    if extras and rng.random() < 0.35:
        planes = 1
        h = int(rng.integers(-1, 2))
    if extras and rng.random() < 0.35:
        deg = random_degenerate(rng, 1)
    return OrbitModel(
        loop_index=2 * int(rng.integers(1, 3)),
        rotations=rotations,
        hyperbolic_index=h,
        hyperbolic_planes=planes,
        degenerate=deg,
        action=float(rng.uniform(0.5, 3.0)),
        label=label,
    )


def random_generated_path(rng, m: int | None = None, n_breaks: int = 3,
                          scale: float | None = None) -> GeneratedPath:
    """Piecewise-linear random generator on [0, 1], mild enough to iterate."""
    if m is None:
        m = int(rng.integers(1, 3))
    while True:
        times = np.sort(np.concatenate([[0.0, 1.0], rng.uniform(0.0, 1.0, n_breaks)]))
        if np.min(np.diff(times)) > 0.02:
            break
    if scale is None:
        scale = float(rng.uniform(0.4, 1.4))
    hams = np.array([
        scale * (a + a.T) / 2.0
        for a in rng.normal(size=(times.size, 2 * m, 2 * m))
    ])
    return GeneratedPath(times, hams)


def constant_path(S: np.ndarray) -> GeneratedPath:
    """Path generated by a time-independent quadratic Hamiltonian."""
    S = np.asarray(S, dtype=float)
    return GeneratedPath(np.array([0.0, 1.0]), np.array([S, S]))


def rotation_path(lams) -> GeneratedPath:
    """Block-diagonal path t -> direct sum of R(2 pi lam_i t)."""
    S = block_diag(*[2.0 * math.pi * float(lam) * np.eye(2) for lam in lams])
    return constant_path(S)


def rotation_rs_oracle(lams) -> float:
    """Crossing-form index of `rotation_path(lams)` in closed form."""
    total = 0.0
    for lam in lams:
        lam = float(lam)
        if lam == 0.0:
            raise ValueError("zero rotation numbers are degenerate throughout")
        a = abs(lam)
        piece = 2.0 * a if a == int(a) else 2.0 * math.floor(a) + 1.0
        total += math.copysign(piece, lam)
    return total


def random_filtered_complex(rng, n: int, *, max_degree: int = 5,
                            max_filt: int = 5, pair_prob: float = 0.6,
                            ops: int | None = None):
    """Filtered complex with a planted matching, plus its exact barcode.

    Returns (complex, bars, unpaired): `bars` is the sorted list of
    (target bidegree, source bidegree) pairs of the planted matching and
    `unpaired` counts the surviving bidegrees.  Both are isomorphism
    invariants, so they stay valid after the random change of basis.
    """
    degrees = [int(rng.integers(0, max_degree + 1)) for _ in range(n)]
    filts = [int(rng.integers(0, max_filt + 1)) for _ in range(n)]

    planted: list[tuple[int, int]] = []
    used: set[int] = set()
    for j in rng.permutation(n):
        j = int(j)
        if j in used:
            continue
        cands = [i for i in range(n)
                 if i != j and i not in used
                 and degrees[i] == degrees[j] - 1 and filts[i] <= filts[j]]
        if cands and rng.random() < pair_prob:
            i = int(cands[int(rng.integers(len(cands)))])
            used.add(i)
            used.add(j)
            planted.append((i, j))

    B = [[Fraction(0)] * n for _ in range(n)]
    for i, j in planted:
        B[i][j] = Fraction(int(rng.integers(1, 7)), int(rng.integers(1, 5)))

    # base moves e_j -> e_j + c e_i keep the filtration and the grading
    for _ in range(2 * n if ops is None else ops):
        i, j = int(rng.integers(n)), int(rng.integers(n))
        if i == j or degrees[i] != degrees[j] or filts[i] > filts[j]:
            continue
        c = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
        if c == 0:
            continue
        for a in range(n):
            B[a][j] += c * B[a][i]
        for b in range(n):
            B[i][b] -= c * B[j][b]

    gens = tuple(Generator(f"g{t}", degrees[t], filts[t]) for t in range(n))
    fc = FilteredComplex(gens, RationalMatrix(n, n, B))

    def bidegree(t: int) -> tuple[int, int]:
        return (filts[t], degrees[t] - filts[t])

    bars = sorted((bidegree(i), bidegree(j)) for i, j in planted)
    unpaired: dict[tuple[int, int], int] = {}
    for t in range(n):
        if t not in used:
            key = bidegree(t)
            unpaired[key] = unpaired.get(key, 0) + 1
    return fc, bars, unpaired
