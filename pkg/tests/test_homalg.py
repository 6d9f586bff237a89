from fractions import Fraction

import numpy as np
import pytest

from helpers import frac_rank, random_filtered_complex
from symindex.errors import InputError
from symindex.homalg import (
    FilteredComplex,
    Generator,
    RationalMatrix,
    collapse,
    homology,
    pages,
)

F = Fraction


def _complex(spec, entries):
    """spec: list of (name, degree, filtration); entries: {(i, j): value}."""
    n = len(spec)
    B = RationalMatrix(n, n)
    for (i, j), v in entries.items():
        B[i, j] = v
    return FilteredComplex(tuple(Generator(*s) for s in spec), B)


class TestRationalMatrix:
    def test_constructors_and_access(self):
        A = RationalMatrix(2, 3, [[1, "1/2", 0], [0, 2, "-3/4"]])
        assert A[0, 1] == F(1, 2)
        A[1, 0] = "7/5"
        assert A[1, 0] == F(7, 5)
        assert RationalMatrix.zeros(2, 2).is_zero()
        assert RationalMatrix.identity(2) @ A == A
        col = RationalMatrix.from_columns(2, [A.column(2)])
        assert col[1, 0] == F(-3, 4)

    def test_shape_and_entry_validation(self):
        with pytest.raises(InputError):
            RationalMatrix(2, 2, [[1, 2, 3], [4, 5, 6]])
        with pytest.raises(InputError):
            RationalMatrix(1, 1, [[True]])
        with pytest.raises(InputError):
            RationalMatrix(1, 1, [["one third"]])
        with pytest.raises(InputError):
            RationalMatrix(2, 3) @ RationalMatrix(2, 3)

    def test_matmul_against_a_hand_product(self):
        A = RationalMatrix(2, 2, [["1/2", 1], [0, "1/3"]])
        B = RationalMatrix(2, 2, [[2, 0], [6, "3/2"]])
        assert A @ B == RationalMatrix(2, 2, [[7, "3/2"], [2, "1/2"]])

    def test_rank_matches_an_independent_elimination(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            r, c = int(rng.integers(1, 7)), int(rng.integers(1, 7))
            rows = [[F(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
                     for _ in range(c)] for _ in range(r)]
            A = RationalMatrix(r, c, rows)
            assert A.rank() == frac_rank(rows)
            assert A.transpose().rank() == A.rank()

    def test_nullspace_spans_the_kernel(self):
        rng = np.random.default_rng(6)
        for _ in range(8):
            r, c = int(rng.integers(1, 6)), int(rng.integers(1, 6))
            rows = [[F(int(rng.integers(-3, 4))) for _ in range(c)] for _ in range(r)]
            A = RationalMatrix(r, c, rows)
            basis = A.nullspace()
            assert len(basis) == c - A.rank()
            for vec in basis:
                V = RationalMatrix.from_columns(c, [vec])
                assert (A @ V).is_zero()

    def test_payload_round_trip(self):
        A = RationalMatrix(2, 2, [["1/2", 3], [0, "-5/7"]])
        payload = A.to_payload()
        assert payload == [["1/2", 3], [0, "-5/7"]]
        assert RationalMatrix.from_payload(payload) == A
        with pytest.raises(InputError):
            RationalMatrix.from_payload([])


class TestFilteredComplexValidation:
    def test_boundary_must_drop_degree_by_one(self):
        with pytest.raises(InputError):
            _complex([("a", 0, 0), ("b", 2, 0)], {(0, 1): 1})

    def test_boundary_must_not_raise_filtration(self):
        with pytest.raises(InputError):
            _complex([("a", 0, 3), ("b", 1, 1)], {(0, 1): 1})

    def test_boundary_must_square_to_zero(self):
        with pytest.raises(InputError):
            _complex([("a", 0, 0), ("b", 1, 0), ("c", 2, 0)],
                     {(0, 1): 1, (1, 2): 1})

    def test_names_must_be_distinct(self):
        with pytest.raises(InputError):
            _complex([("a", 0, 0), ("a", 1, 0)], {})

    def test_needs_a_generator(self):
        with pytest.raises(InputError):
            FilteredComplex((), RationalMatrix(0, 0))

    def test_payload_round_trip(self):
        fc, _, _ = random_filtered_complex(np.random.default_rng(7), 12)
        back = FilteredComplex.from_payload(fc.to_payload())
        assert back.generators == fc.generators
        assert back.boundary == fc.boundary

    def test_bad_payloads(self):
        with pytest.raises(InputError):
            FilteredComplex.from_payload({"generators": [{"id": "a"}],
                                          "boundary": {"entries": []}})
        with pytest.raises(InputError):
            FilteredComplex.from_payload({
                "generators": [{"id": "a", "degree": 0, "filtration": 0},
                               {"id": "b", "degree": 1, "filtration": 0}],
                "boundary": {"entries": [[0, 1, "1/0"]]}})


class TestHomology:
    def test_interval(self):
        fc = _complex([("a", 0, 0), ("b", 0, 0), ("e", 1, 0)],
                      {(0, 2): -1, (1, 2): 1})
        dims = homology(fc.boundary, [g.degree for g in fc.generators])
        assert dims == {0: 1, 1: 0}

    def test_circle(self):
        fc = _complex([("a", 0, 0), ("b", 0, 0), ("e", 1, 0), ("f", 1, 0)],
                      {(0, 2): -1, (1, 2): 1, (0, 3): -1, (1, 3): 1})
        dims = homology(fc.boundary, [g.degree for g in fc.generators])
        assert dims == {0: 1, 1: 1}

    def test_projective_plane_is_rationally_trivial_above_zero(self):
        B = RationalMatrix(3, 3)
        B[1, 2] = 2
        assert homology(B, [0, 1, 2]) == {0: 1, 1: 0, 2: 0}

    def test_sphere(self):
        assert homology(RationalMatrix(2, 2), [0, 2]) == {0: 1, 2: 1}

    def test_validation(self):
        with pytest.raises(InputError):
            homology(RationalMatrix(2, 2), [0])
        B = RationalMatrix(2, 2)
        B[0, 1] = 1
        with pytest.raises(InputError):
            homology(B, [0, 2])
        C = RationalMatrix(3, 3)
        C[0, 1] = C[1, 2] = 1
        with pytest.raises(InputError):
            homology(C, [0, 1, 2])


class TestPages:
    def test_single_pair_with_jump_two(self):
        fc = _complex([("a", 0, 0), ("b", 1, 2)], {(0, 1): F(3, 2)})
        sp = pages(fc)
        assert sp.pairs == ((0, 1, 2),)
        assert sp.stabilized_at == 3
        assert [p.basis for p in sp.pages] == [(0, 1), (0, 1), (0, 1), ()]
        assert sp.pages[0].dims == {(0, 0): 1, (2, -1): 1}
        assert sp.pages[2].differential[0, 1] == 1
        assert sp.infinity_dims() == {}
        assert sp.page(99).basis == ()
        with pytest.raises(InputError):
            sp.page(-1)

    def test_normal_basis_diagonalizes_the_boundary(self):
        rng = np.random.default_rng(8)
        for _ in range(6):
            fc, _, _ = random_filtered_complex(rng, int(rng.integers(6, 20)))
            sp = pages(fc)
            n = fc.size
            img = fc.boundary @ sp.normal_basis
            paired_targets = {i for i, _, _ in sp.pairs}
            sources = {j: i for i, j, _ in sp.pairs}
            for t in range(n):
                got = [img[i, t] for i in range(n)]
                if t in sources:
                    want = sp.normal_basis.column(sources[t])
                    assert got == want
                else:
                    assert all(x == 0 for x in got)
            # the normal basis must stay invertible
            assert sp.normal_basis.rank() == n
            assert len(paired_targets) == len(sp.pairs)

    def test_planted_barcode_is_recovered(self):
        rng = np.random.default_rng(9)
        for _ in range(12):
            fc, bars, unpaired = random_filtered_complex(rng, int(rng.integers(4, 26)))
            sp = pages(fc)
            def bd(t):
                g = fc.generators[sp.order[t]]
                return (g.filtration, g.degree - g.filtration)
            got = sorted((bd(i), bd(j)) for i, j, _ in sp.pairs)
            assert got == bars
            assert sp.infinity_dims() == unpaired
            assert sp.stabilized_at == max((r for _, _, r in sp.pairs), default=-1) + 1

    def test_page_dimensions_shrink_monotonically(self):
        fc, _, _ = random_filtered_complex(np.random.default_rng(10), 18)
        sp = pages(fc)
        sizes = [len(p.basis) for p in sp.pages]
        assert sizes == sorted(sizes, reverse=True)
        assert all(p.differential.rows == len(p.basis) for p in sp.pages)


class TestCollapse:
    def test_folded_differential_and_harmonic_space(self):
        rng = np.random.default_rng(11)
        for _ in range(8):
            fc, _, unpaired = random_filtered_complex(rng, int(rng.integers(5, 22)))
            sp = pages(fc)
            col = collapse(sp, 0)
            n0 = len(col.positions)
            assert (col.differential @ col.differential).is_zero()
            H = col.harmonic
            assert H.cols == sum(unpaired.values())
            assert (col.differential @ H).is_zero()
            assert (col.differential.transpose() @ H).is_zero()
            # harmonic columns are standard basis vectors, so each carries
            # one well-defined bidegree; their counts give the final page
            counts: dict = {}
            for j in range(H.cols):
                ones = [i for i in range(n0) if H[i, j] != 0]
                assert len(ones) == 1 and H[ones[0], j] == 1
                key = col.bidegrees[ones[0]]
                counts[key] = counts.get(key, 0) + 1
            assert counts == unpaired

    def test_intermediate_dimensions_count_the_killed_sources(self):
        fc, _, _ = random_filtered_complex(np.random.default_rng(12), 16)
        sp = pages(fc)
        col = collapse(sp, 0)
        per_jump: dict = {}
        for _, _, r in sp.pairs:
            per_jump[r] = per_jump.get(r, 0) + 1
        assert col.intermediate == tuple(
            (r, per_jump.get(r, 0)) for r in range(sp.stabilized_at))

    def test_r0_drops_the_early_differentials(self):
        fc = _complex([("a", 0, 0), ("b", 1, 0), ("c", 0, 0), ("d", 1, 1)],
                      {(0, 1): 1, (2, 3): 1})
        sp = pages(fc)
        assert sorted(r for _, _, r in sp.pairs) == [0, 1]
        full = collapse(sp, 0)
        assert full.differential.rows == 4
        later = collapse(sp, 1)
        # the jump-0 pair died on page 0, so the page-1 space has 2 chains
        assert later.differential.rows == 2
        assert not later.differential.is_zero()
        assert collapse(sp, 99).r0 == sp.stabilized_at
        assert collapse(sp, 99).differential.is_zero()
        with pytest.raises(InputError):
            collapse(sp, -1)

    def test_folded_infinity_page_computes_total_homology(self):
        rng = np.random.default_rng(13)
        for _ in range(8):
            fc, _, _ = random_filtered_complex(rng, int(rng.integers(4, 20)))
            total = homology(fc.boundary, [g.degree for g in fc.generators])
            folded: dict = {}
            for (f, c), dim in pages(fc).infinity_dims().items():
                folded[f + c] = folded.get(f + c, 0) + dim
            for d in set(total) | set(folded):
                assert total.get(d, 0) == folded.get(d, 0)
