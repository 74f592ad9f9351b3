"""Dispersion modes, evolution, the conserved current, and the action."""

import numpy as np
import pytest

from diracfock import (
    EvolutionUnstableError,
    PhysicalConstants,
    SpinorField,
    action_value,
    build_background,
    closed_form_current_norm,
    current,
    current_norm,
    dirac_residual,
    dispersion_mode,
    divergence,
    evolve,
    gaussian_packet,
    grid_norm,
    minkowski_chart,
    pair_current,
    plane_wave,
    static_diagonal_chart,
    timelike_report,
)

TWO_PI = 2.0 * np.pi


def flat_chart(shape=(64, 1, 1), t_span=0.1, steps=10, lengths=(TWO_PI, TWO_PI, TWO_PI)):
    return minkowski_chart(0.0, t_span, steps, lengths, shape)


def test_dispersion_rest_mode_exact(nat):
    w, u = dispersion_mode((0.0, 0.0, 0.0), nat)
    assert w == 1.0
    assert np.array_equal(u, np.array([1.0, 0.0, 1.0, 0.0]) / np.sqrt(2.0))
    w, u = dispersion_mode((0.0, 0.0, 0.0), nat, branch=-1)
    assert w == -1.0
    assert np.array_equal(u, np.array([1.0, 0.0, -1.0, 0.0]) / np.sqrt(2.0))


def test_dispersion_solves_algebraic_equation(gs, nat):
    rng = np.random.default_rng(2)
    mu = nat.compton_wavenumber
    for _ in range(20):
        kvec = rng.standard_normal(3)
        spin = int(rng.integers(0, 2))
        branch = int(rng.choice([-1, 1]))
        w, u = dispersion_mode(tuple(kvec), nat, spin=spin, branch=branch)
        op = w * gs.gamma[0] - sum(kvec[i] * gs.gamma[i + 1] for i in range(3)) - mu * np.eye(4)
        assert np.max(np.abs(op @ u)) <= 1e-13
        assert abs(np.linalg.norm(u) - 1.0) <= 1e-15
        assert abs(w) == pytest.approx(np.sqrt(kvec @ kvec + mu * mu), abs=1e-15)


def test_dispersion_validation(nat):
    with pytest.raises(ValueError):
        dispersion_mode((0.0, 0.0, 0.0), nat, spin=2)
    with pytest.raises(ValueError):
        dispersion_mode((0.0, 0.0, 0.0), nat, branch=0)
    massless = PhysicalConstants.natural_units(mass=0.0)
    with pytest.raises(ValueError):
        dispersion_mode((0.0, 0.0, 0.0), massless)


def test_plane_wave_solves_field_equation(nat):
    # rest mode is spatially constant, so only the time stencil contributes
    chart = flat_chart()
    bg = build_background(chart)
    rest = plane_wave(chart, (0, 0, 0), nat)
    assert dirac_residual(rest, bg, nat).max_abs() <= 1e-8

    boosted = dirac_residual(plane_wave(chart, (1, 0, 0), nat), bg, nat).max_abs()
    fine_chart = flat_chart(shape=(128, 1, 1))
    fine = dirac_residual(
        plane_wave(fine_chart, (1, 0, 0), nat), build_background(fine_chart), nat
    ).max_abs()
    assert boosted <= 1e-5
    assert 12.0 <= boosted / fine <= 20.0


def test_plane_wave_normalization_and_errors(nat):
    chart = flat_chart()
    w = plane_wave(chart, (1, 0, 0), nat)
    assert abs(grid_norm(w.values[0], chart) - 1.0) <= 1e-12
    with pytest.raises(ValueError):
        plane_wave(chart, (0, 1, 0), nat)  # suppressed axis
    curved = static_diagonal_chart(0.0, 0.1, 2, (TWO_PI,) * 3, (8, 1, 1), epsilon=0.01)
    with pytest.raises(ValueError):
        plane_wave(curved, (0, 0, 0), nat)


def test_evolve_matches_analytic_solution(nat):
    chart = flat_chart(t_span=1.0, steps=100)
    bg = build_background(chart)
    exact = plane_wave(chart, (0, 0, 0), nat)
    out = evolve(exact.values[0], bg, nat)
    assert np.max(np.abs(out.values - exact.values)) <= 1e-9
    drift = grid_norm(out.values[-1], chart) / grid_norm(out.values[0], chart) - 1.0
    assert abs(drift) <= 1e-10


def test_evolve_time_error_shrinks_at_fourth_order(nat):
    # error against a quarter-step run on the same spatial grid isolates the
    # time-integrator contribution; expected factor (1 - 1/256)/(1/16 - 1/256)
    chart = flat_chart(t_span=1.0, steps=100)
    initial = plane_wave(chart, (0, 0, 0), nat).values[0]
    finals = {}
    for mult in (1, 2, 4):
        bg = build_background(chart.with_time_axis(0.0, 1.0, 100 * mult))
        finals[mult] = evolve(initial, bg, nat).values[-1]
    e1 = np.max(np.abs(finals[1] - finals[4]))
    e2 = np.max(np.abs(finals[2] - finals[4]))
    assert 12.0 <= e1 / e2 <= 20.0


def test_evolve_aborts_on_unstable_step(nat):
    # dt = 0.5 puts the k = 8 carrier far outside the RK4 stability region
    chart = flat_chart(t_span=10.0, steps=20)
    bg = build_background(chart)
    initial = plane_wave(chart, (8, 0, 0), nat).values[0]
    with pytest.raises(EvolutionUnstableError) as info:
        evolve(initial, bg, nat)
    err = info.value
    assert err.step == 2
    assert err.ratio > 10.0
    assert "evolution unstable" in str(err)


def test_evolve_rejects_mismatched_initial(nat):
    chart = flat_chart()
    bg = build_background(chart)
    with pytest.raises(ValueError):
        evolve(np.zeros((8, 1, 1, 4), dtype=complex), bg, nat)


def tiny_field(u, nat):
    chart = minkowski_chart(0.0, 1.0, 1, (1.0, 1.0, 1.0), (1, 1, 1))
    values = np.zeros((2, 1, 1, 1, 4), dtype=complex)
    values[...] = np.asarray(u, dtype=complex)
    return SpinorField(chart=chart, taxis=chart.axes[0], values=values)


def test_current_frozen_examples(nat):
    j = current(tiny_field((1.0, 0.0, 0.0, 0.0), nat), nat).values[0, 0, 0, 0]
    assert np.array_equal(j, nat.c * np.array([1.0, 0.0, 0.0, 1.0]))
    assert current_norm(j) == 0.0  # lightlike
    j = current(tiny_field((1.0, 0.0, 1.0, 0.0), nat), nat).values[0, 0, 0, 0]
    assert np.array_equal(j, nat.c * np.array([2.0, 0.0, 0.0, 0.0]))


def test_current_closed_form_and_causal_character(nat):
    rng = np.random.default_rng(9)
    samples = rng.standard_normal((1000, 4)) + 1j * rng.standard_normal((1000, 4))
    rep = timelike_report(samples, nat)
    assert rep.samples == 1000
    assert rep.min_norm >= -1e-12
    assert rep.min_time_component >= 0.0
    assert rep.closed_form_mismatch <= 1e-12
    assert rep.reality_residual <= 1e-13 * max(1.0, float(np.max(np.abs(samples))) ** 2)

    j = current(tiny_field((0.3 + 0.1j, -0.2, 0.7j, 1.1), nat), nat).values
    direct = current_norm(j)
    closed = closed_form_current_norm(
        np.broadcast_to(np.array([0.3 + 0.1j, -0.2, 0.7j, 1.1]), j.shape), nat
    )
    assert np.max(np.abs(direct - closed)) <= 1e-12 * max(1.0, float(np.max(np.abs(direct))))


def test_pair_current_is_hermitian_in_its_arguments(nat):
    chart = flat_chart(shape=(8, 1, 1), steps=5)
    rng = np.random.default_rng(4)
    shape = chart.shape + (4,)
    phi = SpinorField(chart, chart.axes[0], rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    psi = SpinorField(chart, chart.axes[0], rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    jab = pair_current(phi, psi, nat).values
    jba = pair_current(psi, phi, nat).values
    assert np.max(np.abs(jab - np.conj(jba))) <= 1e-13 * np.max(np.abs(jab))
    # diagonal pair current agrees with the real current
    jd = pair_current(psi, psi, nat).values
    assert np.max(np.abs(jd - current(psi, nat).values)) <= 1e-13 * np.max(np.abs(jd))


def test_divergence_of_single_wave_vanishes(nat):
    # a single mode's current is constant in space and time
    chart = flat_chart(t_span=0.5, steps=10)
    bg = build_background(chart)
    j = current(plane_wave(chart, (1, 0, 0), nat), nat)
    assert np.max(np.abs(divergence(j, bg))) <= 1e-12


def test_divergence_of_superposition_is_stencil_small(nat):
    chart = flat_chart(t_span=0.5, steps=50)
    bg = build_background(chart)
    psi = plane_wave(chart, (1, 0, 0), nat) + plane_wave(chart, (2, 0, 0), nat, spin=1, branch=-1)
    j = current(psi, nat)
    assert np.max(np.abs(divergence(j, bg))) <= 1e-6


def test_action_is_real_on_arbitrary_fields(nat):
    chart = flat_chart(shape=(16, 1, 1), t_span=1.0, steps=20)
    bg = build_background(chart)
    rng = np.random.default_rng(5)
    for _ in range(10):
        v = rng.standard_normal(chart.shape + (4,)) + 1j * rng.standard_normal(chart.shape + (4,))
        s = action_value(SpinorField(chart, chart.axes[0], v), bg, nat)
        assert abs(s.imag) <= 1e-12 * max(1.0, abs(s.real))


def test_action_stationary_on_shell(nat):
    # perturbations vanish on five slices at each end of the time axis so the
    # one-sided stencil rows never see them; central difference in eps is
    # exact for the quadratic action
    chart = flat_chart(shape=(32, 1, 1), t_span=1.0, steps=100)
    bg = build_background(chart)
    wave = plane_wave(chart, (0, 0, 0), nat)
    rng = np.random.default_rng(6)
    eps = 1e-3
    worst = 0.0
    for _ in range(10):
        v = rng.standard_normal(wave.values.shape) + 1j * rng.standard_normal(wave.values.shape)
        v[:5] = 0.0
        v[-5:] = 0.0
        pert = wave.with_values(v)
        sp = action_value(wave + eps * pert, bg, nat)
        sm = action_value(wave + (-eps) * pert, bg, nat)
        worst = max(worst, abs((sp - sm).real / (2.0 * eps)))
    assert worst <= 1e-8

    # the same probe must move the action for an off-shell field
    growth = np.exp(0.3 * np.linspace(0.0, 1.0, len(wave.taxis)))
    bad = wave.with_values(wave.values * growth[:, None, None, None, None])
    v = rng.standard_normal(wave.values.shape) + 1j * rng.standard_normal(wave.values.shape)
    v[:5] = 0.0
    v[-5:] = 0.0
    pert = wave.with_values(v)
    sp = action_value(bad + eps * pert, bg, nat)
    sm = action_value(bad + (-eps) * pert, bg, nat)
    assert abs((sp - sm).real / (2.0 * eps)) > 1e-3


def test_action_region_restriction(nat):
    chart = flat_chart(shape=(16, 1, 1), t_span=1.0, steps=20)
    bg = build_background(chart)
    rng = np.random.default_rng(8)
    v = rng.standard_normal(chart.shape + (4,)) + 1j * rng.standard_normal(chart.shape + (4,))
    psi = SpinorField(chart, chart.axes[0], v)
    everything = (slice(None), slice(None), slice(None), slice(None))
    assert action_value(psi, bg, nat, region=everything) == action_value(psi, bg, nat)
    inner = action_value(psi, bg, nat, region=(slice(5, 16), slice(None), slice(None), slice(None)))
    assert inner != action_value(psi, bg, nat)


def test_gaussian_packet_is_normalized_initial_data(nat):
    chart = minkowski_chart(0.0, 1.0, 10, (32.0, TWO_PI, TWO_PI), (256, 1, 1))
    packet = gaussian_packet(chart, nat, center=16.0, width=2.0, carrier_index=2)
    assert packet.shape == chart.spatial_shape + (4,)
    assert abs(grid_norm(packet, chart) - 1.0) <= 1e-12
    # envelope decays to rounding at the periodic wrap
    assert np.max(np.abs(packet[0])) <= 1e-12
