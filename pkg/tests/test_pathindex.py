import math

import numpy as np
import pytest
from scipy.linalg import expm

from helpers import (
    block_diag,
    constant_path,
    random_generated_path,
    random_model,
    rot2,
    rotation_path,
    rotation_rs_oracle,
    sym_inverse,
)
from symindex import orbitmodel
from symindex.errors import DegeneracyError, InputError, UnwrapError
from symindex.orbitmodel import model_to_path
from symindex.pathindex import (
    GeneratedPath,
    SampledPath,
    cz_index,
    default_steps,
    integrate,
    iterate,
    mean_index,
    mu_pm,
    nullity,
    rs_index,
)
from symindex.symlin import standard_J


class TestPayloads:
    def test_generated_round_trip(self):
        gen = random_generated_path(np.random.default_rng(0), m=2)
        back = GeneratedPath.from_payload(gen.to_payload())
        assert np.array_equal(back.sample_times, gen.sample_times)
        assert np.array_equal(back.hamiltonians, gen.hamiltonians)

    def test_sampled_round_trip(self):
        sp = integrate(rotation_path([0.3]), steps=48)
        back = SampledPath.from_payload(sp.to_payload())
        assert np.array_equal(back.matrices, sp.matrices)

    def test_declared_dimension_must_match(self):
        payload = rotation_path([0.3]).to_payload()
        payload["m"] = 2
        with pytest.raises(InputError):
            GeneratedPath.from_payload(payload)

    def test_generator_validation(self):
        with pytest.raises(InputError):
            GeneratedPath(np.array([0.0, 0.5]), np.zeros((2, 2, 2)))
        with pytest.raises(InputError):
            GeneratedPath(np.array([0.0, 0.0, 1.0]), np.zeros((3, 2, 2)))
        with pytest.raises(InputError):
            GeneratedPath(np.array([0.0, 1.0]), np.array([np.eye(3)] * 2))
        asym = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(InputError):
            GeneratedPath(np.array([0.0, 1.0]), np.array([asym, asym]))

    def test_sampled_must_start_at_identity(self):
        mats = np.array([rot2(0.3), rot2(0.6)])
        with pytest.raises(InputError):
            SampledPath(np.array([0.0, 1.0]), mats)


def test_default_steps_floor_and_grid():
    gen = rotation_path([0.25])
    steps = default_steps(gen)
    assert steps >= 800 and steps % 16 == 0


def test_integrate_matches_expm_for_constant_generators():
    rng = np.random.default_rng(1)
    J = standard_J(2)
    for _ in range(3):
        S = (lambda a: (a + a.T) / 2)(rng.normal(size=(4, 4)))
        sp = integrate(constant_path(S))
        assert np.max(np.abs(sp.endpoint - expm(J @ S))) < 1e-9
    hyp = constant_path(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.max(np.abs(integrate(hyp).endpoint - np.diag([math.e ** -1, math.e]))) < 1e-10


class TestMeanIndex:
    def test_rotation_paths_wind_linearly(self):
        for lam in (0.3, 0.8, 1.0, 1.7, -0.6, 2.5):
            sp = integrate(rotation_path([lam]))
            assert mean_index(sp) == pytest.approx(2 * lam, abs=1e-8)

    def test_hyperbolic_paths_do_not_wind(self):
        sp = integrate(constant_path(np.array([[0.0, 1.0], [1.0, 0.0]])))
        assert mean_index(sp) == pytest.approx(0.0, abs=1e-12)

    def test_block_sums(self):
        sp = integrate(rotation_path([0.8, -1.3]))
        assert mean_index(sp) == pytest.approx(2 * (0.8 - 1.3), abs=1e-9)

    def test_coarse_sampling_raises_instead_of_aliasing(self):
        full = integrate(rotation_path([3.0]))
        thin = SampledPath(
            np.array([0.0, 0.5, 1.0]),
            full.matrices[[0, full.matrices.shape[0] // 2, -1]])
        with pytest.raises(UnwrapError):
            mean_index(thin)


class TestCrossingIndex:
    def test_rotation_closed_forms(self):
        for lams in ([0.8], [1.7], [-0.8], [0.8, 1.7], [2.0], [1.0, 0.4]):
            got = rs_index(rotation_path(lams))
            assert got == rotation_rs_oracle(lams), lams

    def test_pq_hyperbolic_crossing_counts_zero(self):
        # the only crossing is at t=0 where the form has signature 0
        gen = constant_path(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert rs_index(gen) == 0.0

    def test_zero_start_is_rejected_as_degenerate(self):
        model = orbitmodel.OrbitModel(
            loop_index=2, rotations=(orbitmodel.RotationBlock.irrational(0.3),))
        with pytest.raises(DegeneracyError):
            rs_index(model_to_path(model))

    def test_cz_equals_rs_on_nondegenerate_rotations(self):
        for lams in ([0.8], [1.7, 0.3], [-0.8, 0.45]):
            gen = rotation_path(lams)
            assert cz_index(gen) == rs_index(gen)

    def test_cz_falls_back_when_crossings_degenerate(self):
        model = orbitmodel.OrbitModel(
            loop_index=4, rotations=(orbitmodel.RotationBlock.irrational(0.3),))
        gen = model_to_path(model)
        assert cz_index(gen) == orbitmodel.cz_index(model)

    def test_cz_equals_rs_on_a_random_battery(self):
        rng = np.random.default_rng(123)
        done = 0
        while done < 8:
            gen = random_generated_path(rng)
            sp = integrate(gen)
            if nullity(sp) != 0:
                continue
            assert cz_index(gen) == rs_index(gen)
            done += 1


class TestMuPm:
    def test_nondegenerate_endpoint_collapses_to_cz(self):
        gen = rotation_path([0.8])
        assert mu_pm(gen) == (1, 1)
        assert mu_pm(rotation_path([-0.8])) == (-1, -1)
        assert mu_pm(rotation_path([0.8, 1.7])) == (4, 4)

    def test_full_loop_splits_by_two(self):
        assert mu_pm(rotation_path([1.0])) == (1, 3)
        assert mu_pm(rotation_path([2.0])) == (3, 5)
        assert mu_pm(rotation_path([-1.0])) == (-3, -1)

    def test_inverse_path_swaps_and_negates(self):
        rng = np.random.default_rng(7)
        for _ in range(3):
            sp = integrate(random_generated_path(rng))
            inv = SampledPath(sp.times, np.array([sym_inverse(a) for a in sp.matrices]))
            lo, hi = mu_pm(sp)
            assert mu_pm(inv) == (-hi, -lo)
            assert mean_index(inv) == pytest.approx(-mean_index(sp), abs=1e-9)

    def test_nullity_counts_half_the_unit_block(self):
        assert nullity(integrate(rotation_path([1.0]))) == 1
        assert nullity(integrate(rotation_path([1.0, 2.0]))) == 2
        assert nullity(integrate(rotation_path([0.8]))) == 0


class TestIterate:
    def test_rejects_bad_power(self):
        sp = integrate(rotation_path([0.3]), steps=64)
        for k in (0, -2, 1.5):
            with pytest.raises(InputError):
                iterate(sp, k)

    def test_endpoint_is_the_matrix_power(self):
        sp = integrate(rotation_path([0.37]), steps=64)
        it = iterate(sp, 3)
        assert np.max(np.abs(it.endpoint - np.linalg.matrix_power(sp.endpoint, 3))) < 1e-12
        assert it.times.size == 3 * (sp.times.size - 1) + 1

    def test_mean_index_is_homogeneous(self):
        rng = np.random.default_rng(21)
        for _ in range(3):
            sp = integrate(random_generated_path(rng))
            base = mean_index(sp)
            for k in (2, 3):
                assert mean_index(iterate(sp, k)) == pytest.approx(k * base, abs=1e-6)

    def test_rotation_iterates_match_fresh_integrations(self):
        sp = integrate(rotation_path([0.37]))
        it = iterate(sp, 4)
        fresh = integrate(rotation_path([4 * 0.37]))
        assert np.max(np.abs(it.endpoint - fresh.endpoint)) < 1e-8
        assert cz_index(it) == cz_index(fresh)


def test_model_paths_agree_with_their_models():
    rng = np.random.default_rng(42)
    checked = 0
    while checked < 5:
        model = random_model(rng, max_rotations=2)
        sp = integrate(model_to_path(model))
        assert mean_index(sp) == pytest.approx(float(orbitmodel.mean_index(model)), abs=1e-6)
        assert mu_pm(sp) == orbitmodel.mu_pm(model)
        assert nullity(sp) == orbitmodel.nullity(model)
        checked += 1


class TestDefectiveEndpoints:
    # Unipotent endpoints break naive spectral tests: integration error eps
    # scatters a p-fold Jordan eigenvalue to distance eps**(1/p), which is
    # 1e-4 .. 5e-2 here, orders of magnitude past any sane radius cut.

    CASES = (
        orbitmodel.DegenerateBlock(1, -1, 1),
        orbitmodel.DegenerateBlock(1, 0, 2),
        orbitmodel.DegenerateBlock(2, 1, 1),
        orbitmodel.DegenerateBlock(2, 0, 2),
        orbitmodel.DegenerateBlock(3, -1, 3),
    )

    @pytest.mark.parametrize("block", CASES, ids=lambda b: f"d{b.half_dim}u{b.nullity}")
    def test_pure_degenerate_models(self, block):
        model = orbitmodel.OrbitModel(loop_index=2, rotations=(), degenerate=block)
        sp = integrate(model_to_path(model))
        assert nullity(sp) == orbitmodel.nullity(model)
        assert mean_index(sp) == pytest.approx(float(orbitmodel.mean_index(model)), abs=1e-6)
        with pytest.raises(DegeneracyError):
            cz_index(sp)

    def test_degenerate_block_next_to_a_rotation(self):
        model = orbitmodel.OrbitModel(
            loop_index=0,
            rotations=(orbitmodel.RotationBlock.irrational(0.31),),
            degenerate=orbitmodel.DegenerateBlock(1, 1, 1),
        )
        sp = integrate(model_to_path(model))
        assert nullity(sp) == 1
        assert mean_index(sp) == pytest.approx(float(orbitmodel.mean_index(model)), abs=1e-6)

    def test_resonant_iterate_reaches_full_nullity(self):
        model = orbitmodel.OrbitModel(
            loop_index=2, rotations=(orbitmodel.RotationBlock.rational(1, 3),))
        sp = integrate(model_to_path(model))
        assert nullity(sp) == 0
        it = iterate(sp, 3)
        assert nullity(it) == orbitmodel.nullity(model, 3) == 1
        assert mean_index(it) == pytest.approx(float(orbitmodel.mean_index(model, 3)), abs=1e-6)
