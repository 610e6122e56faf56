"""Box modes: geometry, field synthesis, quadrature observables, totals.

The field oracle below is written out in plain trigonometry, independent of
the library's complex-carrier bookkeeping, so a sign slip in either place
shows up as a mismatch.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpfspin.constants import NATURAL, PhysicalConstants
from zpfspin.errors import ResolutionError
from zpfspin.modes import (
    ZpfRealization,
    analytic_mode_observables,
    build_triad,
    field_at,
    make_mode,
    mode_keys,
    mode_observables,
    polarization_vector,
    realization_totals,
    resolution_floor,
    sample_fields,
    sample_realization,
    sample_zeta_ensemble,
    wave_vector,
)

L = 1.3

nonzero_triples = st.tuples(
    st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)
).filter(lambda n: any(n))


# --- triads and polarization --------------------------------------------------


def test_triad_axis_aligned():
    t = build_triad((0, 0, 1))
    assert np.allclose(t.e3, [0, 0, 1])
    assert np.allclose(t.e1, [1, 0, 0])
    assert np.allclose(t.e2, [0, 1, 0])


def test_triad_diagonal():
    t = build_triad((1, 1, 0))
    s = 1 / math.sqrt(2)
    assert np.allclose(t.e3, [s, s, 0])
    assert np.allclose(t.e1, [0, 0, 1])
    assert np.allclose(t.e2, [s, -s, 0])


@given(nonzero_triples)
def test_triad_orthonormal_right_handed(n):
    t = build_triad(n)
    basis = np.stack([t.e1, t.e2, t.e3])
    assert np.max(np.abs(basis @ basis.T - np.eye(3))) < 1e-14
    assert np.linalg.det(basis) == pytest.approx(1.0, abs=1e-14)
    khat = np.array(n, dtype=float)
    khat /= np.linalg.norm(khat)
    assert np.max(np.abs(t.e3 - khat)) < 1e-14


@given(nonzero_triples)
def test_polarization_vectors_unitary(n):
    t = build_triad(n)
    eps = {g: polarization_vector(t, g) for g in (1, -1)}
    for g in (1, -1):
        assert abs(np.vdot(eps[g], eps[g]) - 1.0) < 1e-14
        assert abs(np.dot(eps[g], t.e3)) < 1e-14
    assert abs(np.vdot(eps[1], eps[-1])) < 1e-14


# --- closed-form field oracle -------------------------------------------------


def oracle_fields(n, gamma, zeta, phi, r, t, constants=NATURAL):
    """Hand-expanded A, E, B for one mode, real trigonometry only."""
    tri = build_triad(n)
    k = wave_vector(n, L)
    knorm = np.linalg.norm(k)
    omega = constants.c * knorm
    amp = math.sqrt(constants.hbar / (L**3 * omega))
    psi = float(k @ r) - omega * t + zeta + gamma * phi
    c, s = math.cos(psi), math.sin(psi)
    root = amp / math.sqrt(2)
    if gamma == 1:
        A = root * (tri.e1 * s + tri.e2 * c)
        E = omega * root * (tri.e1 * c - tri.e2 * s)
    else:
        A = root * (tri.e1 * c + tri.e2 * s)
        E = omega * root * (-tri.e1 * s + tri.e2 * c)
    B = gamma * knorm * A
    return A, E, B


@pytest.mark.parametrize("n", [(0, 0, 1), (1, -2, 3)])
@pytest.mark.parametrize("gamma", [1, -1])
def test_fields_match_oracle(n, gamma):
    mode = make_mode(n, gamma, 0.7, 2.1, L)
    rng = np.random.default_rng(5)
    for _ in range(6):
        r = rng.uniform(0, L, 3)
        t = rng.uniform(0, 3)
        sample = field_at(ZpfRealization(L, (mode,)), r, t, NATURAL)
        A, E, B = oracle_fields(n, gamma, 0.7, 2.1, r, t)
        assert np.max(np.abs(sample.A - A)) < 1e-13
        assert np.max(np.abs(sample.E - E)) < 1e-13
        assert np.max(np.abs(sample.B - B)) < 1e-13


def test_fields_transverse_and_circular():
    mode = make_mode((2, 1, -1), -1, 1.2, 0.4, L)
    k = wave_vector(mode.n, L)
    khat = k / np.linalg.norm(k)
    pts = np.random.default_rng(0).uniform(0, L, (40, 3))
    A, E, B = sample_fields(ZpfRealization(L, (mode,)), pts, 0.25, NATURAL)
    assert np.max(np.abs(A @ khat)) < 1e-13
    assert np.max(np.abs(E @ khat)) < 1e-13
    assert np.max(np.abs(B - mode.gamma * np.linalg.norm(k) * A)) < 1e-12


def test_fields_sum_linearly():
    m1 = make_mode((0, 1, 0), 1, 0.3, 1.0, L)
    m2 = make_mode((1, 0, 1), -1, 2.2, 0.1, L)
    pts = np.random.default_rng(1).uniform(0, L, (10, 3))
    one = sample_fields(ZpfRealization(L, (m1,)), pts, 0.5, NATURAL)
    two = sample_fields(ZpfRealization(L, (m2,)), pts, 0.5, NATURAL)
    both = sample_fields(ZpfRealization(L, (m1, m2)), pts, 0.5, NATURAL)
    for got, a, b in zip(both, one, two):
        assert np.max(np.abs(got - (a + b))) < 1e-13


def test_empty_realization_is_dark():
    sample = field_at(ZpfRealization(L, ()), np.zeros(3), 0.0, NATURAL)
    assert not np.any(sample.A)
    assert not np.any(sample.E)
    assert not np.any(sample.B)


def test_points_must_lie_in_box():
    real = ZpfRealization(L, (make_mode((0, 0, 1), 1, 0.0, 0.0, L),))
    with pytest.raises(ValueError):
        field_at(real, np.array([L, 0.0, 0.0]), 0.0, NATURAL)
    with pytest.raises(ValueError):
        field_at(real, np.array([0.0, -0.1, 0.0]), 0.0, NATURAL)


# --- quadrature observables ---------------------------------------------------


def test_analytic_observables_closed_form():
    consts = PhysicalConstants(hbar=2.0, c=3.0, m=1.0, mu0=1.0)
    mode = make_mode((1, -2, 3), -1, 0.9, 1.7, L, consts)
    obs = analytic_mode_observables(mode, L, consts)
    k = wave_vector(mode.n, L)
    khat = k / np.linalg.norm(k)
    omega = consts.c * np.linalg.norm(k)
    assert obs.H == pytest.approx(consts.hbar * omega / 2, rel=1e-15)
    assert np.allclose(obs.P, consts.hbar * omega / (2 * consts.c) * khat, rtol=1e-15)
    assert np.allclose(obs.J, -consts.hbar / 2 * khat, rtol=1e-15)


@pytest.mark.parametrize("n,gamma", [((0, 0, 1), 1), ((1, 2, -1), -1), ((2, 2, 2), 1)])
def test_quadrature_matches_analytic(n, gamma):
    mode = make_mode(n, gamma, 1.1, 0.6, L)
    grid = max(16, resolution_floor(n))
    obs = mode_observables(mode, L, grid, NATURAL)
    ref = analytic_mode_observables(mode, L, NATURAL)
    assert obs.H == pytest.approx(ref.H, rel=1e-9)
    assert np.max(np.abs(obs.P - ref.P)) < 1e-9 * np.linalg.norm(ref.P)
    assert np.max(np.abs(obs.J - ref.J)) < 1e-9 * np.linalg.norm(ref.J)


def test_observables_ignore_phases():
    base = None
    for zeta, phi in [(0.0, 0.0), (1.3, 2.9), (5.1, 0.2)]:
        mode = make_mode((1, 0, 2), 1, zeta, phi, L)
        obs = mode_observables(mode, L, 16, NATURAL)
        if base is None:
            base = obs
            continue
        assert abs(obs.H - base.H) < 1e-12
        assert np.max(np.abs(obs.P - base.P)) < 1e-12
        assert np.max(np.abs(obs.J - base.J)) < 1e-12


def test_observables_stable_under_grid_doubling():
    mode = make_mode((1, 1, 0), -1, 0.4, 1.9, L)
    coarse = mode_observables(mode, L, 8, NATURAL)
    fine = mode_observables(mode, L, 16, NATURAL)
    assert abs(coarse.H - fine.H) < 1e-10 * fine.H


def test_resolution_floor_enforced():
    assert resolution_floor((0, 0, 1)) == 4
    assert resolution_floor((2, -3, 1)) == 12
    mode = make_mode((2, -3, 1), 1, 0.0, 0.0, L)
    with pytest.raises(ResolutionError):
        mode_observables(mode, L, 11, NATURAL)
    mode_observables(mode, L, 12, NATURAL)


# --- realizations and totals --------------------------------------------------


def test_mode_keys_cover_both_polarizations():
    keys = mode_keys(1)
    assert len(keys) == 52
    assert len(set(keys)) == 52
    assert all(any(n) for n, _ in keys)
    assert all(g in (1, -1) for _, g in keys)
    # n ascending, with +1 listed before -1 for each n
    triples = [n for n, _ in keys]
    assert triples == sorted(triples)
    for i in range(0, len(keys), 2):
        assert keys[i][0] == keys[i + 1][0]
        assert (keys[i][1], keys[i + 1][1]) == (1, -1)


def test_sample_realization_deterministic():
    a = sample_realization(L, 1, 42)
    b = sample_realization(L, 1, 42)
    c = sample_realization(L, 1, 43)
    assert [(m.n, m.gamma, m.zeta, m.phi) for m in a.modes] == [
        (m.n, m.gamma, m.zeta, m.phi) for m in b.modes
    ]
    assert [m.zeta for m in a.modes] != [m.zeta for m in c.modes]


def test_zeta_ensemble_rows_match_child_realizations():
    keys, zetas = sample_zeta_ensemble(1, 4, 9)
    children = np.random.SeedSequence(9).spawn(4)
    for i in (0, 3):
        real = sample_realization(L, 1, children[i])
        assert [(m.n, m.gamma) for m in real.modes] == list(keys)
        assert np.array_equal(zetas[i], np.array([m.zeta for m in real.modes]))


def test_totals_cancel_exactly_for_closed_set():
    real = sample_realization(L, 1, 7)
    totals = realization_totals(real, NATURAL)
    assert totals.H > 0
    assert np.all(totals.P == 0.0)
    assert np.all(totals.J == 0.0)


def test_gamma_pair_kills_spin_but_not_momentum():
    m_plus = make_mode((1, 0, 0), 1, 0.2, 0.3, L)
    m_minus = make_mode((1, 0, 0), -1, 1.2, 2.3, L)
    totals = realization_totals(ZpfRealization(L, (m_plus, m_minus)), NATURAL)
    assert np.all(totals.J == 0.0)
    assert np.linalg.norm(totals.P) > 0
    single = realization_totals(ZpfRealization(L, (m_plus,)), NATURAL)
    ref = analytic_mode_observables(m_plus, L, NATURAL)
    assert single.H == pytest.approx(ref.H, rel=1e-15)
    assert np.allclose(single.J, ref.J, rtol=1e-15)


@settings(max_examples=25)
@given(nonzero_triples, st.sampled_from([1, -1]))
def test_spin_is_half_hbar_along_k(n, gamma):
    mode = make_mode(n, gamma, 0.0, 0.0, L)
    obs = analytic_mode_observables(mode, L, NATURAL)
    khat = np.array(n, dtype=float)
    khat /= np.linalg.norm(khat)
    assert np.max(np.abs(obs.J - gamma * 0.5 * khat)) < 1e-14
