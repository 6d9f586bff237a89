"""Exact homological algebra over the rationals.

Implements filtered chain complexes, the pages of the associated spectral
sequence, and the collapse of the pages from a chosen starting page into a
single complex carrying the total differential.  Everything runs in exact
Fraction arithmetic; there is deliberately no float anywhere in this
module.

The page computation reduces the boundary matrix in a filtration-ordered
basis to a matching normal form: after a triangular change of basis each
basis chain is either a cycle or maps to exactly one other basis chain
with coefficient 1.  Matched chains with filtration jump r die on page
r+1; the page-r differential is the jump-r part of the matching.  The
collapse then sums the per-page differentials over one fixed coordinate
space and re-derives the intermediate pages as orthogonal complements
(standard dot product on page coordinates), checking at each stage that
they agree with the directly computed pages.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError("matrix entries must be numbers, not booleans")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse matrix entry {x!r}") from exc
    if isinstance(x, float):
        return Fraction(x)
    raise InputError(f"cannot use {type(x).__name__} as a matrix entry")


class RationalMatrix:
    """Dense matrix of Fractions with the handful of exact operations
    the spectral machinery needs."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[Fraction(0)] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise InputError(f"matrix data does not have shape {rows} x {cols}")
            self.data = [[_to_fraction(x) for x in row] for row in data]

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        out = cls(n, n)
        for i in range(n):
            out.data[i][i] = Fraction(1)
        return out

    @classmethod
    def from_columns(cls, rows: int, columns) -> "RationalMatrix":
        cols = list(columns)
        out = cls(rows, len(cols))
        for j, col in enumerate(cols):
            if len(col) != rows:
                raise InputError("column length mismatch")
            for i in range(rows):
                out.data[i][j] = _to_fraction(col[i])
        return out

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij, value) -> None:
        i, j = ij
        self.data[i][j] = _to_fraction(value)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.data == other.data)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"

    def copy(self) -> "RationalMatrix":
        out = RationalMatrix(self.rows, self.cols)
        out.data = [row[:] for row in self.data]
        return out

    def column(self, j: int) -> list[Fraction]:
        return [self.data[i][j] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def transpose(self) -> "RationalMatrix":
        out = RationalMatrix(self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out.data[j][i] = self.data[i][j]
        return out

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise InputError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = RationalMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            for j in range(other.cols):
                acc = Fraction(0)
                for t in range(self.cols):
                    if row[t]:
                        acc += row[t] * other.data[t][j]
                out.data[i][j] = acc
        return out

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise InputError("row count mismatch in hstack")
        out = RationalMatrix(self.rows, self.cols + other.cols)
        for i in range(self.rows):
            out.data[i] = self.data[i][:] + other.data[i][:]
        return out

    def _eliminate(self):
        """Row echelon form in place; returns the pivot column list."""
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = None
            for i in range(r, self.rows):
                if self.data[i][c]:
                    pivot = i
                    break
            if pivot is None:
                continue
            self.data[r], self.data[pivot] = self.data[pivot], self.data[r]
            inv = 1 / self.data[r][c]
            self.data[r] = [x * inv for x in self.data[r]]
            for i in range(self.rows):
                if i != r and self.data[i][c]:
                    f = self.data[i][c]
                    self.data[i] = [a - f * b for a, b in zip(self.data[i], self.data[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return pivots

    def rank(self) -> int:
        return len(self.copy()._eliminate())

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of the right kernel."""
        work = self.copy()
        pivots = work._eliminate()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            vec = [Fraction(0)] * self.cols
            vec[f] = Fraction(1)
            for r, c in enumerate(pivots):
                vec[c] = -work.data[r][f]
            basis.append(vec)
        return basis

    def to_payload(self) -> list[list]:
        out = []
        for row in self.data:
            out.append([int(x) if x.denominator == 1 else str(x) for x in row])
        return out

    @classmethod
    def from_payload(cls, payload) -> "RationalMatrix":
        if not isinstance(payload, list) or not payload:
            raise InputError("matrix payload must be a nonempty list of rows")
        rows = len(payload)
        cols = len(payload[0])
        return cls(rows, cols, payload)


def _span_matrix(vectors: list[list[Fraction]], dim: int) -> RationalMatrix:
    return RationalMatrix.from_columns(dim, vectors)


def _same_subspace(A: RationalMatrix, B: RationalMatrix) -> bool:
    ra, rb = A.rank(), B.rank()
    return ra == rb and A.hstack(B).rank() == ra


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    filtration: int


@dataclass(frozen=True)
class FilteredComplex:
    """Chain complex with a filtration compatible with the boundary.

    ``boundary`` column j expands the boundary of generator j in the
    generator basis.  The boundary must square to zero, drop degree by
    exactly one, and never raise filtration.
    """

    generators: tuple[Generator, ...]
    boundary: RationalMatrix

    def __post_init__(self):
        n = len(self.generators)
        if n == 0:
            raise InputError("complex needs at least one generator")
        if self.boundary.rows != n or self.boundary.cols != n:
            raise InputError(
                f"boundary must be {n}x{n}, got "
                f"{self.boundary.rows}x{self.boundary.cols}")
        names = [g.name for g in self.generators]
        if len(set(names)) != n:
            raise InputError("generator names must be distinct")
        for j, gj in enumerate(self.generators):
            for i, gi in enumerate(self.generators):
                if self.boundary[i, j] == 0:
                    continue
                if gi.degree != gj.degree - 1:
                    raise InputError(
                        f"boundary of {gj.name} (degree {gj.degree}) hits "
                        f"{gi.name} of degree {gi.degree}")
                if gi.filtration > gj.filtration:
                    raise InputError(
                        f"boundary of {gj.name} raises filtration "
                        f"{gj.filtration} -> {gi.filtration} at {gi.name}")
        if not (self.boundary @ self.boundary).is_zero():
            raise InputError("boundary does not square to zero")

    @property
    def size(self) -> int:
        return len(self.generators)

    def to_payload(self) -> dict:
        entries = []
        for j in range(self.boundary.cols):
            for i in range(self.boundary.rows):
                x = self.boundary[i, j]
                if x != 0:
                    entries.append([i, j, str(x)])
        return {
            "generators": [
                {"id": g.name, "degree": g.degree, "filtration": g.filtration}
                for g in self.generators
            ],
            "boundary": {"entries": entries},
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "FilteredComplex":
        try:
            gens = tuple(
                Generator(str(g["id"]), int(g["degree"]), int(g["filtration"]))
                for g in payload["generators"])
            entries = payload["boundary"]["entries"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad complex payload: {exc}") from exc
        n = len(gens)
        data = [[Fraction(0)] * n for _ in range(n)]
        for ent in entries:
            try:
                i, j, val = ent
                data[int(i)][int(j)] = Fraction(str(val))
            except (ValueError, TypeError, IndexError, ZeroDivisionError) as exc:
                raise InputError(f"bad boundary entry {ent!r}: {exc}") from exc
        return cls(gens, RationalMatrix(n, n, data))


def homology(boundary: RationalMatrix, degrees) -> dict[int, int]:
    """Betti numbers of a plain chain complex, degree by degree."""
    degrees = list(degrees)
    n = len(degrees)
    if boundary.rows != n or boundary.cols != n:
        raise InputError("boundary shape does not match the degree list")
    for j in range(n):
        for i in range(n):
            if boundary[i, j] != 0 and degrees[i] != degrees[j] - 1:
                raise InputError(
                    f"boundary entry ({i}, {j}) does not drop degree by one")
    if not (boundary @ boundary).is_zero():
        raise InputError("boundary does not square to zero")
    by_degree: dict[int, list[int]] = {}
    for i, d in enumerate(degrees):
        by_degree.setdefault(d, []).append(i)
    ranks: dict[int, int] = {}
    for d, cols in by_degree.items():
        rows = by_degree.get(d - 1, [])
        if not rows:
            ranks[d] = 0
            continue
        sub = RationalMatrix(len(rows), len(cols))
        for a, i in enumerate(rows):
            for b, j in enumerate(cols):
                sub.data[a][b] = boundary[i, j]
        ranks[d] = sub.rank()
    dims = {}
    for d, cols in by_degree.items():
        dims[d] = len(cols) - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return dims


@dataclass(frozen=True)
class Page:
    """One page: surviving positions (into the ordered normal basis), their
    bidegree dimensions, and the differential in the surviving basis."""

    r: int
    basis: tuple[int, ...]
    dims: dict
    differential: RationalMatrix


@dataclass(frozen=True)
class SpectralPages:
    """Matching normal form of a filtered complex plus its pages.

    ``order`` maps normal-basis positions to original generator indices;
    ``normal_basis`` column t expands normal-basis chain t in the original
    generator basis.  ``pairs`` lists (target, source, jump) in normal
    positions: the boundary of chain `source` is exactly chain `target`.
    """

    complex: FilteredComplex
    order: tuple[int, ...]
    normal_basis: RationalMatrix
    pairs: tuple[tuple[int, int, int], ...]
    pages: tuple[Page, ...]
    stabilized_at: int

    def page(self, r: int) -> Page:
        if r < 0:
            raise InputError("page index must be nonnegative")
        return self.pages[min(r, len(self.pages) - 1)]

    def infinity_dims(self) -> dict:
        return dict(self.pages[-1].dims)


def _bidegree(gen: Generator) -> tuple[int, int]:
    return (gen.filtration, gen.degree - gen.filtration)


def pages(fc: FilteredComplex) -> SpectralPages:
    """Spectral pages of a filtered complex via a matching normal form.

    The boundary matrix in a filtration-ordered basis is column-reduced to
    distinct pivot rows (persistence style); pivot rows then have zero
    columns, so replacing each pivot-row chain by the boundary of its
    partner turns the complex into elementary summands.
    """
    n = fc.size
    order = tuple(sorted(range(n), key=lambda i: (fc.generators[i].filtration, i)))
    pos_of = {orig: t for t, orig in enumerate(order)}

    R = RationalMatrix(n, n)
    for j in range(n):
        for i in range(n):
            R.data[pos_of[i]][pos_of[j]] = fc.boundary[i, j]
    V = RationalMatrix.identity(n)

    def low(col: int) -> int:
        for i in range(n - 1, -1, -1):
            if R.data[i][col]:
                return i
        return -1

    pivot_of_row: dict[int, int] = {}
    lows = [-1] * n
    for j in range(n):
        lj = low(j)
        while lj >= 0 and lj in pivot_of_row:
            jp = pivot_of_row[lj]
            c = R.data[lj][j] / R.data[lj][jp]
            for i in range(n):
                R.data[i][j] -= c * R.data[i][jp]
                V.data[i][j] -= c * V.data[i][jp]
            lj = low(j)
        lows[j] = lj
        if lj >= 0:
            pivot_of_row[lj] = j

    # normal basis: sources are rescaled V columns, targets the matching
    # boundaries, everything else the reduced V columns unchanged.
    basis = RationalMatrix(n, n)
    for t in range(n):
        for i in range(n):
            basis.data[i][t] = V.data[i][t]
    pairs = []
    for j in range(n):
        i = lows[j]
        if i < 0:
            continue
        c = R.data[i][j]
        for t in range(n):
            basis.data[t][j] = V.data[t][j] / c
            basis.data[t][i] = R.data[t][j] / c
        gi = fc.generators[order[i]]
        gj = fc.generators[order[j]]
        pairs.append((i, j, gj.filtration - gi.filtration))
    pairs.sort()

    # back to original generator coordinates
    normal = RationalMatrix(n, n)
    for t in range(n):
        for i in range(n):
            normal.data[order[i]][t] = basis.data[i][t]

    jump_of: dict[int, int] = {}
    for i, j, r in pairs:
        jump_of[i] = r
        jump_of[j] = r
    stab = max((r for _, _, r in pairs), default=-1) + 1

    page_list = []
    for r in range(stab + 1):
        alive = tuple(t for t in range(n) if jump_of.get(t, r) >= r)
        index = {t: a for a, t in enumerate(alive)}
        dims: dict = {}
        for t in alive:
            key = _bidegree(fc.generators[order[t]])
            dims[key] = dims.get(key, 0) + 1
        diff = RationalMatrix(len(alive), len(alive))
        for i, j, rr in pairs:
            if rr == r:
                diff.data[index[i]][index[j]] = Fraction(1)
        page_list.append(Page(r, alive, dims, diff))

    return SpectralPages(
        complex=fc,
        order=order,
        normal_basis=normal,
        pairs=tuple(pairs),
        pages=tuple(page_list),
        stabilized_at=stab,
    )


@dataclass(frozen=True)
class CollapsedComplex:
    """All pages from r0 on, folded over the page-r0 coordinate space.

    ``positions`` embeds the coordinate space into the normal basis,
    ``bidegrees`` records (filtration, complementary degree) per
    coordinate, ``differential`` is the sum of the page differentials, and
    ``harmonic`` spans the surviving page.  ``intermediate`` lists, per
    page r, the dimension of the orthogonal complement of ker d_r that the
    fold removes.
    """

    r0: int
    positions: tuple[int, ...]
    bidegrees: tuple[tuple[int, int], ...]
    differential: RationalMatrix
    harmonic: RationalMatrix
    intermediate: tuple[tuple[int, int], ...]


def collapse(sp: SpectralPages, r0: int = 0) -> CollapsedComplex:
    """Fold the pages from r0 on into one complex on the page-r0 space.

    The page-r0 basis positions are declared orthonormal.  For each page
    the kernel of the folded differential splits off the orthogonal
    complement of the image inside it; that complement must coincide with
    the next page, which is verified exactly before continuing.  The sum
    of the per-page differentials squares to zero because no chain is both
    a matching source and a matching target.
    """
    if r0 < 0:
        raise InputError("r0 must be nonnegative")
    if r0 > sp.stabilized_at:
        r0 = sp.stabilized_at
    base = sp.pages[min(r0, len(sp.pages) - 1)]
    alive = base.basis
    n0 = len(alive)
    index = {t: a for a, t in enumerate(alive)}

    dbar = RationalMatrix(n0, n0)
    per_page: dict[int, RationalMatrix] = {}
    for i, j, r in sp.pairs:
        if r < r0:
            continue
        mat = per_page.setdefault(r, RationalMatrix(n0, n0))
        mat.data[index[i]][index[j]] = Fraction(1)
        dbar.data[index[i]][index[j]] = Fraction(1)

    if not (dbar @ dbar).is_zero():
        raise InputError("folded differential does not square to zero")

    gens = sp.complex.generators
    bidegs = tuple(_bidegree(gens[sp.order[t]]) for t in alive)

    # inductive re-derivation of the pages as orthogonal complements
    current = RationalMatrix.identity(n0)
    removed: list[tuple[int, int]] = []
    for r in range(r0, sp.stabilized_at):
        d_r = per_page.get(r, RationalMatrix(n0, n0))
        M = d_r @ current
        kernel_coords = M.nullspace()
        K = current @ _span_matrix(kernel_coords, current.cols) if kernel_coords else \
            RationalMatrix(n0, 0)
        image_cols = [M.column(j) for j in range(M.cols)]
        image = _span_matrix(image_cols, n0)
        # orthogonal complement of the image inside the kernel
        test = image.transpose() @ K
        comp_coords = test.nullspace()
        nxt = K @ _span_matrix(comp_coords, K.cols) if comp_coords else \
            RationalMatrix(n0, 0)
        removed.append((r, current.cols - K.cols))

        next_alive = [t for t in sp.pages[r + 1].basis if t in index]
        expected = RationalMatrix(n0, len(next_alive))
        for a, t in enumerate(next_alive):
            expected.data[index[t]][a] = Fraction(1)
        if not _same_subspace(nxt, expected):
            raise InputError(
                f"page {r + 1} does not match the orthogonal complement; "
                "the filtration data is inconsistent")
        current = expected

    return CollapsedComplex(
        r0=r0,
        positions=alive,
        bidegrees=bidegs,
        differential=dbar,
        harmonic=current,
        intermediate=tuple(removed),
    )
