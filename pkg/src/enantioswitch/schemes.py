"""Production pulse sequences, the combined two-step switch, and timescale checks.

The discriminator is a three-level cyclic scheme whose total loop phase
differs by pi between the two enantiomers: a dump pulse on 2-3, delayed twin
pump pulses on 1-2 and 1-3, and a late chirped second lobe on 1-3 that
rotates the {1,3} subspace so each dressed branch lands on a bare level.  The
converter is a six-level dual-path scheme driven counterintuitively (dump
before pump); its signed amplitude ratios select which of the two dark paths
is followed and therefore which chiral form receives the population.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    ChirpSpec,
    Coupling,
    DriveScheme,
    MoleculeTimescales,
    PulseEnvelope,
    StateVector,
    enantiomer_flip,
    wavenumber_to_angular_frequency,
)
from .errors import IntegrationFailureError, InvalidParameterError
from .propagation import IntegratorConfig, Trajectory, propagate

DISCRIMINATOR_LABELS = ("1", "2", "3")
CONVERTER_LABELS = ("3L", "3D", "5S", "5A", "4L", "4D")

# amplitude prefactors of the four converter drives, in the order
# (3-5S pump, 3-5A pump, 4-5S dump, 4-5A dump); the built-in minus sign on
# the 4-5A dump is what routes the default run onto the symmetry-flipping
# dark path
DEFAULT_CONVERTER_PREFACTORS = (1.0, 0.5, 0.4, -1.0)

DEFAULT_DISCRIMINATOR_OMEGA_MAX = 1.0   # rad/ns
DEFAULT_DISCRIMINATOR_TAU = 12.0        # ns
DEFAULT_CONVERTER_OMEGA_MAX = 30.0      # rad/ns
DEFAULT_CONVERTER_TAU = 3.0             # ns


def _require_positive(**params) -> None:
    for name, value in params.items():
        if not value > 0:
            raise InvalidParameterError(f"{name} must be positive, got {value}")


def make_discriminator(omega_max: float = DEFAULT_DISCRIMINATOR_OMEGA_MAX,
                       tau: float = DEFAULT_DISCRIMINATOR_TAU,
                       enantiomer: str = "L") -> DriveScheme:
    """Three-level discriminator sequence over the window [-3*tau, 9*tau].

    Couplings: 2-3 dump peaking at t=0; 1-2 pump at 2*tau; 1-3 pump at 2*tau
    plus a chirped lobe at 4*tau whose phase window is centred at 6*tau.  At
    t=tau all three drive magnitudes meet at omega_max/e, up to the exp(-9)
    tail of the second 1-3 lobe.  The "L" tag carries total loop phase 0; "D"
    flips the dipole sign of the 1-3 coupling, moving the loop phase to pi.
    """
    _require_positive(omega_max=omega_max, tau=tau)
    gauss = lambda center, chirp=None: PulseEnvelope(omega_max, center, tau, chirp)
    couplings = (
        Coupling(0, 1, (gauss(2 * tau),)),          # 1-2 pump
        Coupling(1, 2, (gauss(0.0),)),              # 2-3 dump
        Coupling(0, 2, (                             # 1-3 pump + chirped lobe
            gauss(2 * tau),
            gauss(4 * tau, ChirpSpec(strength=omega_max,
                                     envelope_center=6 * tau,
                                     envelope_width=tau)),
        )),
    )
    scheme = DriveScheme(
        dimension=3,
        labels=DISCRIMINATOR_LABELS,
        couplings=couplings,
        t_start=-3 * tau,
        t_end=9 * tau,
        enantiomer="L",
        flip_couplings=(2,),  # the 1-3 coupling carries the dipole sign flip
    )
    if enantiomer == "L":
        return scheme
    if enantiomer == "D":
        return enantiomer_flip(scheme)
    raise InvalidParameterError(f"enantiomer must be 'L' or 'D', got {enantiomer!r}")


def make_converter(omega_max: float = DEFAULT_CONVERTER_OMEGA_MAX,
                   tau: float = DEFAULT_CONVERTER_TAU,
                   sign_config: tuple[int, int] = (1, 1),
                   prefactors: tuple[float, float, float, float] = DEFAULT_CONVERTER_PREFACTORS,
                   ) -> DriveScheme:
    """Six-level converter sequence over the window [-3*tau, 5*tau].

    The dump pair (4-5S, 4-5A) peaks at t=0 and the pump pair (3-5S, 3-5A)
    at 2*tau; the counterintuitive ordering keeps the population inside the
    dark manifold.  ``sign_config = (r_sign, r_prime_sign)`` multiplies the
    3-5A and 4-5A amplitudes, flipping the signed ratios r and r' that pick
    the dark path.  With the defaults the amplitude peaks are
    (omega_max, omega_max/2, 0.4*omega_max, -omega_max) and r = 2,
    r' = -0.4.
    """
    _require_positive(omega_max=omega_max, tau=tau)
    r_sign, r_prime_sign = sign_config
    if r_sign not in (-1, 1) or r_prime_sign not in (-1, 1):
        raise InvalidParameterError(f"sign_config entries must be +-1, got {sign_config}")
    p3s, p3a, p4s, p4a = prefactors
    pump_s = (PulseEnvelope(p3s * omega_max, 2 * tau, tau),)
    pump_a = (PulseEnvelope(r_sign * p3a * omega_max, 2 * tau, tau),)
    dump_s = (PulseEnvelope(p4s * omega_max, 0.0, tau),)
    dump_a = (PulseEnvelope(r_prime_sign * p4a * omega_max, 0.0, tau),)
    # one physical drive per column, fanned over its two chiral rows with the
    # fixed sign pattern of the six-level structure
    couplings = (
        Coupling(2, 0, pump_s, structure_sign=-1),  # 5S -> 3L
        Coupling(2, 1, pump_s, structure_sign=1),   # 5S -> 3D
        Coupling(3, 0, pump_a, structure_sign=1),   # 5A -> 3L
        Coupling(3, 1, pump_a, structure_sign=1),   # 5A -> 3D
        Coupling(2, 4, dump_s, structure_sign=-1),  # 5S -> 4L
        Coupling(2, 5, dump_s, structure_sign=1),   # 5S -> 4D
        Coupling(3, 4, dump_a, structure_sign=1),   # 5A -> 4L
        Coupling(3, 5, dump_a, structure_sign=1),   # 5A -> 4D
    )
    return DriveScheme(
        dimension=6,
        labels=CONVERTER_LABELS,
        couplings=couplings,
        t_start=-3 * tau,
        t_end=5 * tau,
        enantiomer="L",
        flip_couplings=(2, 3),  # both chiral rows of the 3-5A drive
    )


@dataclass(frozen=True)
class SwitchResult:
    """Outcome of the combined discriminate-then-convert pipeline.

    Populations are keyed by member tag ("L"/"D", the enantiomer the molecule
    started as) and then by level label.  For the excited member the final
    map mixes discriminator levels ("1", "2" residuals) with converter levels
    scaled by the population handed over.  Enantiomeric excess counts
    L-labelled and D-labelled populations of the final ensemble; the parity
    levels 5S/5A carry no chirality and are excluded.
    """

    initial_populations: dict[str, dict[str, float]]
    final_populations: dict[str, dict[str, float]]
    excited_enantiomer: str
    target_enantiomer: str
    discrimination_fidelity: float
    conversion_fidelity: float
    enantiomeric_excess: float
    discriminator_trajectories: dict[str, Trajectory]
    converter_trajectory: Trajectory

    def __post_init__(self):
        for name in ("discrimination_fidelity", "conversion_fidelity"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0 + 1e-12:
                raise InvalidParameterError(f"{name} = {value} outside [0, 1]")
        if not -1.0 - 1e-12 <= self.enantiomeric_excess <= 1.0 + 1e-12:
            raise InvalidParameterError("enantiomeric excess outside [-1, 1]")


def run_two_step(omega_max_disc: float = DEFAULT_DISCRIMINATOR_OMEGA_MAX,
                 tau_disc: float = DEFAULT_DISCRIMINATOR_TAU,
                 omega_max_conv: float = DEFAULT_CONVERTER_OMEGA_MAX,
                 tau_conv: float = DEFAULT_CONVERTER_TAU,
                 integrator_cfg: IntegratorConfig | None = None) -> SwitchResult:
    """Simulate a 50/50 mixture through discriminator and converter in tandem.

    Both ensemble members start in their ground level.  The member the
    discriminator leaves in level 1 is untouched by the converter fields (none
    of its populated levels are driven); the member excited to level 3 is
    handed to the six-level register on the matching chiral entry, and its
    small level-1/2 residuals stay behind unchanged.
    """
    cfg = integrator_cfg or IntegratorConfig()
    ground = StateVector.basis(DISCRIMINATOR_LABELS, "1")

    disc_traj: dict[str, Trajectory] = {}
    for tag in ("L", "D"):
        scheme = make_discriminator(omega_max_disc, tau_disc, enantiomer=tag)
        try:
            disc_traj[tag] = propagate(scheme, ground, cfg)
        except IntegrationFailureError as exc:
            raise IntegrationFailureError(
                f"discriminator stage ({tag} member): {exc}", time=exc.time
            ) from exc

    # the member with the larger final level-3 population is the excited one
    excited = max(("L", "D"), key=lambda tag: disc_traj[tag].final_populations["3"])
    keeper = "D" if excited == "L" else "L"
    p_excited = disc_traj[excited].final_populations
    p_keeper = disc_traj[keeper].final_populations

    converter = make_converter(omega_max_conv, tau_conv)
    entry_label = "3L" if excited == "L" else "3D"
    entry = StateVector.basis(CONVERTER_LABELS, entry_label)
    try:
        conv_traj = propagate(converter, entry, cfg)
    except IntegrationFailureError as exc:
        raise IntegrationFailureError(
            f"converter stage ({excited} member): {exc}", time=exc.time
        ) from exc
    p_conv = conv_traj.final_populations

    handed_over = p_excited["3"]
    final_excited = {"1": p_excited["1"], "2": p_excited["2"]}
    final_excited.update({lbl: handed_over * p for lbl, p in p_conv.items()})
    final_keeper = dict(p_keeper)

    # chirality bookkeeping of the final ensemble
    amounts = {"L": 0.0, "D": 0.0}
    amounts[keeper] += sum(final_keeper.values())
    amounts[excited] += final_excited["1"] + final_excited["2"]
    for lbl, p in p_conv.items():
        if lbl.endswith("L"):
            amounts["L"] += handed_over * p
        elif lbl.endswith("D"):
            amounts["D"] += handed_over * p
        # 5S/5A are parity states and carry no chirality
    target = max(("L", "D"), key=lambda tag: amounts[tag])
    other = "D" if target == "L" else "L"
    excess = (amounts[target] - amounts[other]) / (amounts[target] + amounts[other])

    opposite_4 = "4D" if excited == "L" else "4L"
    initial = {tag: {"1": 1.0, "2": 0.0, "3": 0.0} for tag in ("L", "D")}
    return SwitchResult(
        initial_populations=initial,
        final_populations={excited: final_excited, keeper: final_keeper},
        excited_enantiomer=excited,
        target_enantiomer=target,
        discrimination_fidelity=min(p_excited["3"], p_keeper["1"]),
        conversion_fidelity=p_conv[opposite_4],
        enantiomeric_excess=excess,
        discriminator_trajectories=disc_traj,
        converter_trajectory=conv_traj,
    )


def default_molecule_timescales() -> MoleculeTimescales:
    """Interconversion periods and splittings of the reference molecule.

    All periods in ns: 33 ms, 3.3 ms, 0.165 ms for the lowest three level
    pairs and 0.05 ms for the fourth; the upper shared pair is split by
    0.38 1/cm, a beat period of roughly 0.1 ns.
    """
    return MoleculeTimescales(
        tau_s_ns={1: 3.3e7, 2: 3.3e6, 3: 1.65e5, 4: 5.0e4},
        delta_e5_cm=0.38,
        tau_s5_ns=0.1,
        cis_barrier_cm=2700.0,
        trans_barrier_cm=1900.0,
    )


@dataclass(frozen=True)
class TimescaleCheck:
    """One pulse-duration condition with its measured ratio."""

    passed: bool
    ratio: float
    requirement: str


@dataclass(frozen=True)
class TimescaleReport:
    """Validity report for a pulse-sequence duration against molecular timescales."""

    resolves_upper_splitting: TimescaleCheck
    chirality_frozen: TimescaleCheck
    beat_period_ns: float

    @property
    def passed(self) -> bool:
        return self.resolves_upper_splitting.passed and self.chirality_frozen.passed


# the sequence must beat the upper-level splitting by this factor to address
# the S and A components separately, and stay below the fastest
# interconversion period by the inverse factor so chirality stays frozen
RESOLVE_RATIO_MIN = 10.0
FROZEN_RATIO_MAX = 0.1


def validate_timescales(molecule: MoleculeTimescales,
                        total_pulse_duration: float) -> TimescaleReport:
    """Check a total sequence duration (ns) against the molecular timescales.

    Condition (a): duration must exceed the upper-pair beat period
    2*pi/(2*pi*c*delta_E) by at least ``RESOLVE_RATIO_MIN``.  Condition (b):
    duration must stay below the fastest interconversion period by at most
    ``FROZEN_RATIO_MAX``.
    """
    _require_positive(total_pulse_duration=total_pulse_duration)
    omega = wavenumber_to_angular_frequency(molecule.delta_e5_cm)
    if omega == 0.0:
        raise InvalidParameterError("upper-level splitting must be nonzero")
    beat = 2.0 * math.pi / omega
    ratio_a = total_pulse_duration / beat
    fastest = min(molecule.tau_s_ns.values())
    ratio_b = total_pulse_duration / fastest
    return TimescaleReport(
        resolves_upper_splitting=TimescaleCheck(
            passed=ratio_a >= RESOLVE_RATIO_MIN,
            ratio=ratio_a,
            requirement=f"duration / beat period >= {RESOLVE_RATIO_MIN:g}",
        ),
        chirality_frozen=TimescaleCheck(
            passed=ratio_b <= FROZEN_RATIO_MAX,
            ratio=ratio_b,
            requirement=f"duration / min interconversion period <= {FROZEN_RATIO_MAX:g}",
        ),
        beat_period_ns=beat,
    )
