"""Core types, envelopes, and Hamiltonian construction."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from enantioswitch import (
    ChirpSpec,
    Coupling,
    DriveScheme,
    MoleculeTimescales,
    PulseEnvelope,
    StateVector,
    build_converter_hamiltonian,
    build_discriminator_hamiltonian,
    build_hamiltonian,
    chiral_basis_transform,
    enantiomer_flip,
    evaluate_coupling,
    gaussian_envelope,
    make_converter,
    make_discriminator,
    time_reversed,
    total_phase,
    wavenumber_to_angular_frequency,
)
from enantioswitch.errors import InvalidParameterError, SchemeShapeError

E_INV = math.exp(-1.0)


def constant_loop_scheme(omega, phases=(0.0, 0.0, 0.0), signs=(1, 1, 1)):
    """Three-level loop with all drive magnitudes equal to omega at t=0."""
    env = lambda peak: (PulseEnvelope(peak, 0.0, 1.0),)
    couplings = (
        Coupling(0, 1, env(omega), static_phase=phases[0], structure_sign=signs[0]),
        Coupling(1, 2, env(omega), static_phase=phases[1], structure_sign=signs[1]),
        Coupling(0, 2, env(omega), static_phase=phases[2], structure_sign=signs[2]),
    )
    return DriveScheme(3, ("1", "2", "3"), couplings, -1.0, 1.0)


def zero_scheme(n=3):
    labels = tuple(str(i + 1) for i in range(n))
    couplings = (Coupling(0, 1, (PulseEnvelope(0.0, 0.0, 1.0),)),)
    return DriveScheme(n, labels, couplings, -1.0, 1.0)


# ---------------------------------------------------------------------------
# envelope and chirp
# ---------------------------------------------------------------------------

def test_gaussian_envelope_values():
    assert gaussian_envelope(0.0, 0.0, 12.0) == 1.0
    assert_allclose(gaussian_envelope(12.0, 0.0, 12.0), E_INV, rtol=1e-15)
    # two widths from center, frozen from an independent high-precision eval
    assert_allclose(gaussian_envelope(24.0, 0.0, 12.0), 0.018315638888734180, rtol=1e-15)
    # even about the center, bounded by (0, 1]
    ts = np.linspace(-50.0, 50.0, 101)
    vals = gaussian_envelope(ts + 3.0, 3.0, 7.5)
    assert_allclose(vals, gaussian_envelope(3.0 - ts, 3.0, 7.5), rtol=1e-14)
    assert np.all(vals > 0.0) and np.all(vals <= 1.0)


def test_gaussian_envelope_rejects_bad_width():
    with pytest.raises(InvalidParameterError):
        gaussian_envelope(0.0, 0.0, 0.0)
    with pytest.raises(InvalidParameterError):
        PulseEnvelope(1.0, 0.0, -2.0)
    with pytest.raises(InvalidParameterError):
        ChirpSpec(1.0, 0.0, 0.0)


def test_chirp_phase_is_pure():
    chirp = ChirpSpec(strength=1.0, envelope_center=72.0, envelope_width=12.0)
    ts = np.linspace(-40.0, 120.0, 801)
    assert np.max(np.abs(np.abs(chirp.phase(ts)) - 1.0)) < 1e-14


# ---------------------------------------------------------------------------
# coupling evaluation
# ---------------------------------------------------------------------------

def test_evaluate_coupling_single_envelope():
    tau = 12.0
    c = Coupling(0, 1, (PulseEnvelope(1.0, 0.0, tau),))
    assert evaluate_coupling(c, 0.0) == pytest.approx(1.0 + 0.0j)
    flipped = Coupling(0, 1, (PulseEnvelope(1.0, 0.0, tau),), static_phase=math.pi)
    assert evaluate_coupling(flipped, 0.0) == pytest.approx(-1.0 + 0.0j)


def test_evaluate_coupling_two_lobe_chirped():
    # the late pump: one plain lobe at 2*tau plus a chirped lobe at 4*tau
    omega_max, tau = 1.0, 12.0
    c = Coupling(0, 2, (
        PulseEnvelope(omega_max, 2 * tau, tau),
        PulseEnvelope(omega_max, 4 * tau, tau,
                      ChirpSpec(omega_max, 6 * tau, tau)),
    ))
    t = 4 * tau
    got = evaluate_coupling(c, t)
    second = cmath.exp(-1j * t * omega_max * math.exp(-4.0))
    expected = math.exp(-4.0) + second
    assert abs(second) == pytest.approx(1.0, abs=1e-14)
    assert got == pytest.approx(expected, rel=1e-14)


def test_coupling_validation():
    env = (PulseEnvelope(1.0, 0.0, 1.0),)
    with pytest.raises(InvalidParameterError):
        Coupling(1, 1, env)
    with pytest.raises(InvalidParameterError):
        Coupling(0, 1, env, structure_sign=2)
    with pytest.raises(InvalidParameterError):
        Coupling(0, 1, ())


# ---------------------------------------------------------------------------
# discriminator Hamiltonian
# ---------------------------------------------------------------------------

def test_discriminator_zero_couplings():
    h = build_hamiltonian(zero_scheme(), 0.3)
    assert np.all(h == 0)
    assert_allclose(np.linalg.eigvalsh(h), [0.0, 0.0, 0.0])


def test_discriminator_matches_printed_layout():
    scheme = make_discriminator(1.0, 12.0)
    t = 7.3
    h = build_discriminator_hamiltonian(scheme, t)
    by_pair = {c.level_pair: c for c in scheme.couplings}
    assert h[1, 0] == evaluate_coupling(by_pair[(0, 1)], t)
    assert h[2, 0] == evaluate_coupling(by_pair[(0, 2)], t)
    assert h[2, 1] == evaluate_coupling(by_pair[(1, 2)], t)
    assert np.all(np.diag(h) == 0)


def test_equal_magnitude_spectrum_at_phi_zero_and_pi():
    omega = E_INV  # the common drive magnitude at the crossing instant
    h0 = build_discriminator_hamiltonian(constant_loop_scheme(omega), 0.0)
    assert_allclose(np.linalg.eigvalsh(h0), [-omega, -omega, 2 * omega], rtol=1e-9)
    hpi = build_discriminator_hamiltonian(
        constant_loop_scheme(omega, phases=(math.pi, 0.0, 0.0)), 0.0
    )
    assert_allclose(np.linalg.eigvalsh(hpi), [-2 * omega, omega, omega], rtol=1e-9)


def test_equal_magnitude_spectrum_law_across_phases():
    # eigenvalues must equal 2*Omega*cos((phi + 2*pi*k)/3) for any loop phase
    omega = 0.7
    for phi in np.linspace(0.0, 2 * math.pi, 29):
        h = build_discriminator_hamiltonian(
            constant_loop_scheme(omega, phases=(phi, 0.0, 0.0)), 0.0
        )
        expected = np.sort([2 * omega * math.cos((phi + 2 * math.pi * k) / 3)
                            for k in range(3)])
        assert_allclose(np.linalg.eigvalsh(h), expected, atol=1e-9)


def test_spectrum_gauge_invariance():
    # shifting two loop phases oppositely is a basis-phase change and must
    # leave the spectrum untouched even for unequal drive magnitudes
    rng = np.random.default_rng(7)
    for _ in range(10):
        mags = rng.uniform(0.2, 2.0, size=3)
        phases = rng.uniform(0.0, 2 * math.pi, size=3)
        alpha = rng.uniform(0.0, 2 * math.pi)
        env = lambda peak: (PulseEnvelope(peak, 0.0, 1.0),)
        base = DriveScheme(3, ("1", "2", "3"), (
            Coupling(0, 1, env(mags[0]), static_phase=phases[0]),
            Coupling(1, 2, env(mags[1]), static_phase=phases[1]),
            Coupling(0, 2, env(mags[2]), static_phase=phases[2]),
        ), -1.0, 1.0)
        shifted = DriveScheme(3, ("1", "2", "3"), (
            Coupling(0, 1, env(mags[0]), static_phase=phases[0] + alpha),
            Coupling(1, 2, env(mags[1]), static_phase=phases[1] - alpha),
            Coupling(0, 2, env(mags[2]), static_phase=phases[2]),
        ), -1.0, 1.0)
        assert total_phase(base) == pytest.approx(total_phase(shifted), abs=1e-12)
        assert_allclose(
            np.linalg.eigvalsh(build_hamiltonian(base, 0.0)),
            np.linalg.eigvalsh(build_hamiltonian(shifted, 0.0)),
            atol=1e-10,
        )


def test_hermiticity_on_production_schemes():
    rng = np.random.default_rng(3)
    disc = make_discriminator(1.0, 12.0)
    conv = make_converter(30.0, 3.0)
    for scheme in (disc, conv):
        ts = rng.uniform(scheme.t_start, scheme.t_end, size=25)
        for t in ts:
            h = build_hamiltonian(scheme, float(t))
            scale = max(1.0, np.max(np.abs(h)))
            assert np.max(np.abs(h - h.conj().T)) <= 1e-12 * scale


def test_discriminator_shape_errors():
    with pytest.raises(SchemeShapeError):
        build_discriminator_hamiltonian(make_converter(), 0.0)
    env = (PulseEnvelope(1.0, 0.0, 1.0),)
    missing = DriveScheme(3, ("1", "2", "3"), (
        Coupling(0, 1, env), Coupling(1, 2, env),
    ), -1.0, 1.0)
    with pytest.raises(SchemeShapeError):
        build_discriminator_hamiltonian(missing, 0.0)


# ---------------------------------------------------------------------------
# converter Hamiltonian
# ---------------------------------------------------------------------------

def test_converter_zero_couplings():
    scheme = make_converter(30.0, 3.0, prefactors=(0.0, 0.0, 0.0, 0.0))
    assert np.all(build_converter_hamiltonian(scheme, 0.0) == 0)


def test_converter_single_coupling_block():
    # only the 3-5S pump on: entries (3L,5S) = -1 and (3D,5S) = +1
    scheme = make_converter(1.0, 3.0, prefactors=(1.0, 0.0, 0.0, 0.0))
    h = build_converter_hamiltonian(scheme, 6.0)  # pump peak at 2*tau
    expected = np.zeros((6, 6), dtype=complex)
    expected[0, 2] = -1.0
    expected[1, 2] = 1.0
    expected[2, 0] = -1.0
    expected[2, 1] = 1.0
    assert_allclose(h, expected, atol=1e-15)
    evals = np.sort(np.linalg.eigvalsh(h))
    assert_allclose(evals, [-math.sqrt(2), 0, 0, 0, 0, math.sqrt(2)], atol=1e-12)


def test_converter_entries_at_pulse_peaks():
    omega_max, tau = 30.0, 3.0
    scheme = make_converter(omega_max, tau)
    h_pump = build_converter_hamiltonian(scheme, 2 * tau)
    tail = math.exp(-4.0)  # the other pulse pair is two widths away
    assert h_pump[0, 2] == pytest.approx(-omega_max, rel=1e-12)       # -pump_S on 3L
    assert h_pump[1, 2] == pytest.approx(omega_max, rel=1e-12)        # +pump_S on 3D
    assert h_pump[0, 3] == pytest.approx(0.5 * omega_max, rel=1e-12)  # +pump_A on 3L
    assert h_pump[4, 2] == pytest.approx(-0.4 * omega_max * tail, rel=1e-12)
    assert h_pump[4, 3] == pytest.approx(-omega_max * tail, rel=1e-12)
    h_dump = build_converter_hamiltonian(scheme, 0.0)
    assert h_dump[4, 2] == pytest.approx(-0.4 * omega_max, rel=1e-12)
    assert h_dump[5, 2] == pytest.approx(0.4 * omega_max, rel=1e-12)
    assert h_dump[4, 3] == pytest.approx(-omega_max, rel=1e-12)
    assert h_dump[5, 3] == pytest.approx(-omega_max, rel=1e-12)


def test_converter_block_structure():
    scheme = make_converter(30.0, 3.0)
    chiral = [0, 1, 4, 5]
    shared = [2, 3]
    for t in (-3.0, 0.0, 3.0, 6.0, 11.0):
        h = build_converter_hamiltonian(scheme, t)
        assert np.all(h[np.ix_(chiral, chiral)] == 0)
        assert np.all(h[np.ix_(shared, shared)] == 0)


def test_converter_shape_errors():
    with pytest.raises(SchemeShapeError):
        build_converter_hamiltonian(make_discriminator(), 0.0)
    scheme = make_converter()
    # break the fixed sign pattern on one fan entry
    bad = list(scheme.couplings)
    from dataclasses import replace
    bad[0] = replace(bad[0], structure_sign=1)
    with pytest.raises(SchemeShapeError):
        build_converter_hamiltonian(replace(scheme, couplings=tuple(bad)), 0.0)
    # make one fan pair inconsistent between its chiral rows
    bad = list(scheme.couplings)
    bad[1] = replace(bad[1], envelopes=(PulseEnvelope(2.0, 6.0, 3.0),))
    with pytest.raises(SchemeShapeError):
        build_converter_hamiltonian(replace(scheme, couplings=tuple(bad)), 0.0)


# ---------------------------------------------------------------------------
# loop phase and enantiomer flip
# ---------------------------------------------------------------------------

def test_total_phase_cases():
    assert total_phase(constant_loop_scheme(1.0)) == 0.0
    assert total_phase(constant_loop_scheme(1.0, signs=(1, -1, 1))) == pytest.approx(math.pi)
    # phi_12 = phi_23 = pi/3 and phi_31 = pi/3 (so the 1-3 drive carries -pi/3)
    scheme = constant_loop_scheme(1.0, phases=(math.pi / 3, math.pi / 3, -math.pi / 3))
    assert total_phase(scheme) == pytest.approx(math.pi)


def test_enantiomer_flip_moves_loop_phase_by_pi():
    left = make_discriminator(1.0, 12.0, "L")
    right = enantiomer_flip(left)
    assert right.enantiomer == "D"
    assert total_phase(left) == pytest.approx(0.0, abs=1e-12)
    assert total_phase(right) == pytest.approx(math.pi, abs=1e-12)
    # only the declared coupling changed
    for i, (a, b) in enumerate(zip(left.couplings, right.couplings)):
        if i in left.flip_couplings:
            assert b.static_phase == pytest.approx(a.static_phase + math.pi)
            assert a.envelopes == b.envelopes
        else:
            assert a == b


def test_enantiomer_flip_is_involution():
    for scheme in (make_discriminator(), make_converter()):
        twice = enantiomer_flip(enantiomer_flip(scheme))
        assert twice.enantiomer == scheme.enantiomer
        for a, b in zip(scheme.couplings, twice.couplings):
            assert b.static_phase == pytest.approx(a.static_phase, abs=1e-12)
            assert a.envelopes == b.envelopes
            assert a.structure_sign == b.structure_sign


def test_time_reversed_matches_conjugated_mirror():
    scheme = make_discriminator(1.0, 12.0)
    rev = time_reversed(scheme)
    assert rev.t_start == -scheme.t_end and rev.t_end == -scheme.t_start
    rng = np.random.default_rng(11)
    for t in rng.uniform(scheme.t_start, scheme.t_end, size=12):
        h = build_hamiltonian(scheme, float(t))
        h_rev = build_hamiltonian(rev, float(-t))
        assert_allclose(h_rev, h.conj(), atol=1e-14)


# ---------------------------------------------------------------------------
# basis transform, units, state vector, timescale type
# ---------------------------------------------------------------------------

def test_chiral_basis_transform():
    inv_sqrt2 = 1 / math.sqrt(2)
    assert chiral_basis_transform((1.0, 0.0)) == pytest.approx((inv_sqrt2, inv_sqrt2))
    assert chiral_basis_transform((inv_sqrt2, inv_sqrt2)) == pytest.approx((1.0, 0.0))
    assert chiral_basis_transform((inv_sqrt2, -inv_sqrt2)) == pytest.approx((0.0, 1.0))
    rng = np.random.default_rng(5)
    for _ in range(8):
        pair = tuple(rng.normal(size=2) + 1j * rng.normal(size=2))
        back = chiral_basis_transform(chiral_basis_transform(pair))
        assert back[0] == pytest.approx(pair[0]) and back[1] == pytest.approx(pair[1])


def test_wavenumber_conversion():
    assert wavenumber_to_angular_frequency(0.0) == 0.0
    omega = wavenumber_to_angular_frequency(0.38)
    assert omega == pytest.approx(71.58, abs=0.01)
    assert 2 * math.pi / omega == pytest.approx(0.0878, abs=2e-4)  # beat period, ns
    assert wavenumber_to_angular_frequency(1.0) == pytest.approx(188.365, abs=1e-3)
    with pytest.raises(InvalidParameterError):
        wavenumber_to_angular_frequency(-0.1)


def test_state_vector_validation():
    sv = StateVector([1.0, 0.0, 0.0], ("1", "2", "3"))
    assert_allclose(sv.populations(), [1.0, 0.0, 0.0])
    with pytest.raises(InvalidParameterError):
        StateVector([1.0, 1.0], ("a", "b"))
    with pytest.raises(InvalidParameterError):
        StateVector([1.0, 0.0], ("a",))
    loose = StateVector([1.0 + 5e-7, 0.0], ("a", "b"), norm_tol=1e-5)
    renorm = loose.normalized()
    assert np.sum(np.abs(renorm.amplitudes) ** 2) == pytest.approx(1.0, abs=1e-15)
    assert not sv.amplitudes.flags.writeable


def test_molecule_timescales_must_decrease():
    with pytest.raises(InvalidParameterError):
        MoleculeTimescales(tau_s_ns={1: 1.0, 2: 2.0}, delta_e5_cm=0.38, tau_s5_ns=0.1)


def test_scheme_validation():
    env = (PulseEnvelope(1.0, 0.0, 1.0),)
    with pytest.raises(InvalidParameterError):
        DriveScheme(3, ("1", "2"), (Coupling(0, 1, env),), 0.0, 1.0)
    with pytest.raises(InvalidParameterError):
        DriveScheme(3, ("1", "2", "3"), (Coupling(0, 5, env),), 0.0, 1.0)
    with pytest.raises(InvalidParameterError):
        DriveScheme(3, ("1", "2", "3"), (Coupling(0, 1, env),), 1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        DriveScheme(3, ("1", "2", "3"), (Coupling(0, 1, env),), 0.0, 1.0, enantiomer="X")
