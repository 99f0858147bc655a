"""Domain types and Hamiltonian construction for the optical enantiomer switch.

Everything lives in the resonant rotating frame with hbar = 1: level energies
drop out, Rabi amplitudes are angular frequencies in rad/ns, and times are in
ns.  A drive scheme is a small set of complex couplings between labelled
levels, each built from one or more Gaussian pulse envelopes with an optional
chirp phase.  The effective Hamiltonian matrix has zero diagonal (all fields
resonant) plus an optional per-level detuning used only for robustness
studies.

Matrix convention: a coupling between ``level_a`` and ``level_b`` places its
complex drive at ``H[level_b, level_a]`` (the amplitude of the a -> b
transition) and the conjugate at the mirrored entry, so H is Hermitian at
every instant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .errors import InvalidParameterError, SchemeShapeError

# speed of light in cm/ns, used to convert wavenumbers to angular frequencies
SPEED_OF_LIGHT_CM_PER_NS = 29.9792458

TWO_PI = 2.0 * math.pi


def gaussian_envelope(t, center: float, width: float):
    """Dimensionless Gaussian pulse shape exp(-((t-center)/width)**2).

    Parameters
    ----------
    t : float or ndarray
        Time(s) in ns.
    center, width : float
        Pulse center and 1/e half-width in ns; ``width`` must be positive.

    Returns
    -------
    float or ndarray in (0, 1], even about ``center``.
    """
    if width <= 0:
        raise InvalidParameterError(f"envelope width must be positive, got {width}")
    x = (np.asarray(t, dtype=float) - center) / width
    out = np.exp(-x * x)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ChirpSpec:
    """Pure-phase chirp factor exp(-i * t * strength * f(t - envelope_center)).

    ``strength`` sets the scale of the accumulated phase (rad/ns per unit of
    the Gaussian window f); the factor has unit modulus for all t, so it only
    redistributes amplitude between the two coupled levels, never changes the
    drive magnitude.
    """

    strength: float
    envelope_center: float
    envelope_width: float

    def __post_init__(self):
        if self.envelope_width <= 0:
            raise InvalidParameterError(
                f"chirp envelope width must be positive, got {self.envelope_width}"
            )

    def phase(self, t):
        """Unit-modulus phase factor at time(s) t."""
        window = gaussian_envelope(t, self.envelope_center, self.envelope_width)
        return np.exp(-1j * np.asarray(t, dtype=float) * self.strength * window)


@dataclass(frozen=True)
class PulseEnvelope:
    """One Gaussian lobe of a Rabi drive.

    ``peak_rabi`` is in rad/ns and may be negative to encode a sign flip of
    the drive; ``center`` and ``width`` are in ns.
    """

    peak_rabi: float
    center: float
    width: float
    chirp: ChirpSpec | None = None

    def __post_init__(self):
        if self.width <= 0:
            raise InvalidParameterError(f"pulse width must be positive, got {self.width}")

    def value(self, t):
        """Complex drive contribution peak * f(t-center) * chirp_phase(t)."""
        shape = self.peak_rabi * gaussian_envelope(t, self.center, self.width)
        if self.chirp is None:
            return shape + 0j
        return shape * self.chirp.phase(t)


@dataclass(frozen=True)
class Coupling:
    """Complex Rabi drive between two levels.

    The drive is ``structure_sign * exp(i*static_phase) * sum(envelopes)``.
    ``static_phase`` carries the controllable dipole + field phase;
    ``structure_sign`` carries a fixed +-1 from the level-structure of the
    six-level converter and stays untouched by phase knobs.
    """

    level_a: int
    level_b: int
    envelopes: tuple[PulseEnvelope, ...]
    static_phase: float = 0.0
    structure_sign: int = 1

    def __post_init__(self):
        if self.level_a == self.level_b:
            raise InvalidParameterError("coupling must connect two distinct levels")
        if self.structure_sign not in (-1, 1):
            raise InvalidParameterError(
                f"structure_sign must be +1 or -1, got {self.structure_sign}"
            )
        if not self.envelopes:
            raise InvalidParameterError("coupling needs at least one envelope")
        object.__setattr__(self, "envelopes", tuple(self.envelopes))

    @property
    def level_pair(self) -> tuple[int, int]:
        """Unordered level pair as a sorted tuple."""
        return tuple(sorted((self.level_a, self.level_b)))


def evaluate_coupling(coupling: Coupling, t):
    """Complex drive of one coupling at time(s) t (rad/ns)."""
    total = sum(env.value(t) for env in coupling.envelopes)
    prefactor = coupling.structure_sign * np.exp(1j * coupling.static_phase)
    out = prefactor * total
    return complex(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class DriveScheme:
    """Full specification of one switch stage.

    ``flip_couplings`` lists the coupling indices whose dipole sign
    distinguishes the two enantiomers; :func:`enantiomer_flip` adds pi to
    exactly those static phases.  ``detunings`` is an optional per-level
    diagonal (rad/ns), zero by default and not used by the production
    sequences.
    """

    dimension: int
    labels: tuple[str, ...]
    couplings: tuple[Coupling, ...]
    t_start: float
    t_end: float
    enantiomer: str = "L"
    flip_couplings: tuple[int, ...] = ()
    detunings: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "couplings", tuple(self.couplings))
        object.__setattr__(self, "flip_couplings", tuple(self.flip_couplings))
        if self.dimension < 2:
            raise InvalidParameterError("scheme needs at least two levels")
        if len(self.labels) != self.dimension:
            raise InvalidParameterError(
                f"{len(self.labels)} labels for dimension {self.dimension}"
            )
        if not self.t_start < self.t_end:
            raise InvalidParameterError("time window must satisfy t_start < t_end")
        if self.enantiomer not in ("L", "D"):
            raise InvalidParameterError(f"enantiomer must be 'L' or 'D', got {self.enantiomer!r}")
        for c in self.couplings:
            if not (0 <= c.level_a < self.dimension and 0 <= c.level_b < self.dimension):
                raise InvalidParameterError(
                    f"coupling ({c.level_a},{c.level_b}) outside dimension {self.dimension}"
                )
        for i in self.flip_couplings:
            if not 0 <= i < len(self.couplings):
                raise InvalidParameterError(f"flip coupling index {i} out of range")
        if self.detunings is not None:
            object.__setattr__(self, "detunings", tuple(self.detunings))
            if len(self.detunings) != self.dimension:
                raise InvalidParameterError("detunings must have one entry per level")

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidParameterError(f"unknown level label {label!r}") from None


@dataclass(frozen=True)
class StateVector:
    """Unit-norm complex amplitude vector over labelled levels."""

    amplitudes: np.ndarray
    labels: tuple[str, ...]
    norm_tol: float = 1e-9

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", tuple(self.labels))
        if amps.ndim != 1 or len(amps) != len(self.labels):
            raise InvalidParameterError("amplitudes and labels must have equal length")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > self.norm_tol:
            raise InvalidParameterError(
                f"state norm^2 = {norm_sq!r} deviates from 1 beyond {self.norm_tol}"
            )

    @classmethod
    def basis(cls, labels, level: str | int) -> "StateVector":
        """Canonical basis state on one level (by label or index)."""
        labels = tuple(labels)
        idx = labels.index(level) if isinstance(level, str) else level
        amps = np.zeros(len(labels), dtype=complex)
        amps[idx] = 1.0
        return cls(amps, labels)

    def normalized(self) -> "StateVector":
        norm = float(np.linalg.norm(self.amplitudes))
        if norm == 0.0:
            raise InvalidParameterError("cannot normalize a zero vector")
        return StateVector(self.amplitudes / norm, self.labels, self.norm_tol)

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __len__(self) -> int:
        return len(self.labels)


# ---------------------------------------------------------------------------
# Hamiltonian construction
# ---------------------------------------------------------------------------

def build_hamiltonian(scheme: DriveScheme, t: float) -> np.ndarray:
    """Hermitian effective Hamiltonian matrix of a scheme at time t (rad/ns)."""
    n = scheme.dimension
    h = np.zeros((n, n), dtype=complex)
    for c in scheme.couplings:
        drive = evaluate_coupling(c, t)
        h[c.level_b, c.level_a] += drive
        h[c.level_a, c.level_b] += np.conj(drive)
    if scheme.detunings is not None:
        h[np.diag_indices(n)] += np.asarray(scheme.detunings, dtype=float)
    return h


def build_hamiltonians(scheme: DriveScheme, times) -> np.ndarray:
    """Stacked Hamiltonians, shape (len(times), N, N); vectorized over time."""
    ts = np.asarray(times, dtype=float)
    n = scheme.dimension
    h = np.zeros((len(ts), n, n), dtype=complex)
    for c in scheme.couplings:
        drive = evaluate_coupling(c, ts)
        h[:, c.level_b, c.level_a] += drive
        h[:, c.level_a, c.level_b] += np.conj(drive)
    if scheme.detunings is not None:
        diag = np.asarray(scheme.detunings, dtype=float)
        h[:, np.arange(n), np.arange(n)] += diag
    return h


_DISCRIMINATOR_PAIRS = {(0, 1), (0, 2), (1, 2)}

# (level pair, sign on the L-row entry, sign on the D-row entry) of the
# converter matrix: each of the four physical drives fans out over the two
# chiral rows; only the couplings to the symmetric upper state pick up the
# relative minus sign on the L side.
_CONVERTER_LABELS = ("3L", "3D", "5S", "5A", "4L", "4D")
_CONVERTER_FAN = {
    # (chiral level, shared level) -> required structure sign
    (0, 2): -1, (1, 2): 1,   # 3L/3D <- 5S
    (0, 3): 1, (1, 3): 1,    # 3L/3D <- 5A
    (4, 2): -1, (5, 2): 1,   # 4L/4D <- 5S
    (4, 3): 1, (5, 3): 1,    # 4L/4D <- 5A
}


def _require_discriminator_shape(scheme: DriveScheme) -> None:
    if scheme.dimension != 3:
        raise SchemeShapeError(f"discriminator needs 3 levels, got {scheme.dimension}")
    pairs = [c.level_pair for c in scheme.couplings]
    if len(pairs) != 3 or set(pairs) != _DISCRIMINATOR_PAIRS:
        raise SchemeShapeError(
            "discriminator needs exactly the couplings (1,2), (1,3), (2,3); "
            f"got pairs {sorted(pairs)}"
        )


def _require_converter_shape(scheme: DriveScheme) -> None:
    if scheme.dimension != 6:
        raise SchemeShapeError(f"converter needs 6 levels, got {scheme.dimension}")
    seen: dict[tuple[int, int], Coupling] = {}
    for c in scheme.couplings:
        key = (c.level_b, c.level_a)  # (chiral row, shared column)
        if key not in _CONVERTER_FAN:
            raise SchemeShapeError(f"unexpected converter coupling {key}")
        if key in seen:
            raise SchemeShapeError(f"duplicate converter coupling {key}")
        if c.structure_sign != _CONVERTER_FAN[key]:
            raise SchemeShapeError(
                f"converter coupling {key} must carry structure sign "
                f"{_CONVERTER_FAN[key]:+d}"
            )
        seen[key] = c
    if len(seen) != 8:
        missing = sorted(set(_CONVERTER_FAN) - set(seen))
        raise SchemeShapeError(f"converter couplings missing: {missing}")
    # each physical drive must fan out identically over its L and D rows
    for (row_l, row_d, col) in ((0, 1, 2), (0, 1, 3), (4, 5, 2), (4, 5, 3)):
        cl, cd = seen[(row_l, col)], seen[(row_d, col)]
        if cl.envelopes != cd.envelopes or cl.static_phase != cd.static_phase:
            raise SchemeShapeError(
                f"converter drive to level {col} differs between its chiral rows"
            )


def build_discriminator_hamiltonian(scheme: DriveScheme, t: float) -> np.ndarray:
    """3x3 cyclic-coupling Hamiltonian; zero diagonal in the resonant frame."""
    _require_discriminator_shape(scheme)
    return build_hamiltonian(scheme, t)


def build_converter_hamiltonian(scheme: DriveScheme, t: float) -> np.ndarray:
    """6x6 dual-path Hamiltonian, block off-diagonal between chiral and shared levels."""
    _require_converter_shape(scheme)
    return build_hamiltonian(scheme, t)


def total_phase(scheme: DriveScheme) -> float:
    """Total loop phase of a 3-level cyclic scheme, in [0, 2*pi).

    Sums the drive phases around the 1 -> 2 -> 3 -> 1 loop from static phases
    and structure signs only; chirp phases are time-dependent detuning devices
    and do not enter the loop phase.
    """
    _require_discriminator_shape(scheme)
    by_pair = {c.level_pair: c for c in scheme.couplings}

    def coupling_phase(pair):
        c = by_pair[pair]
        return c.static_phase + (math.pi if c.structure_sign < 0 else 0.0)

    # phi_12 + phi_23 + phi_31, with phi_31 = -phi_13 by Hermiticity
    total = coupling_phase((0, 1)) + coupling_phase((1, 2)) - coupling_phase((0, 2))
    return total % TWO_PI


def enantiomer_flip(scheme: DriveScheme) -> DriveScheme:
    """Mirror-image scheme: flips the declared dipole signs, toggles the tag.

    Each flip adds pi to the coupling's static phase (mod 2*pi), so the total
    loop phase of a 3-level scheme moves by pi per flipped coupling.  Applying
    the operation twice restores the original scheme.
    """
    flipped = list(scheme.couplings)
    for i in scheme.flip_couplings:
        c = flipped[i]
        flipped[i] = replace(c, static_phase=(c.static_phase + math.pi) % TWO_PI)
    return replace(
        scheme,
        couplings=tuple(flipped),
        enantiomer="D" if scheme.enantiomer == "L" else "L",
    )


def time_reversed(scheme: DriveScheme) -> DriveScheme:
    """Scheme whose Hamiltonian is conj(H(-t)); used for reversibility checks.

    Propagating conj(c_final) through the reversed scheme over the mirrored
    window and conjugating the result recovers the initial state.
    """
    reversed_couplings = []
    for c in scheme.couplings:
        envs = []
        for env in c.envelopes:
            chirp = None
            if env.chirp is not None:
                chirp = replace(env.chirp, envelope_center=-env.chirp.envelope_center)
            envs.append(replace(env, center=-env.center, chirp=chirp))
        reversed_couplings.append(
            replace(c, envelopes=tuple(envs), static_phase=(-c.static_phase) % TWO_PI)
        )
    return replace(
        scheme,
        couplings=tuple(reversed_couplings),
        t_start=-scheme.t_end,
        t_end=-scheme.t_start,
    )


def chiral_basis_transform(sym_amplitudes):
    """Map (c_S, c_A) parity amplitudes to (c_L, c_D) chiral amplitudes.

    The map ((c_S + c_A), (c_S - c_A)) / sqrt(2) is unitary and self-inverse,
    so it also converts chiral amplitudes back to parity ones.
    """
    c_s, c_a = sym_amplitudes
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    return ((c_s + c_a) * inv_sqrt2, (c_s - c_a) * inv_sqrt2)


def wavenumber_to_angular_frequency(nu: float) -> float:
    """Convert a wavenumber in 1/cm to an angular frequency in rad/ns."""
    if nu < 0:
        raise InvalidParameterError(f"wavenumber must be non-negative, got {nu}")
    return TWO_PI * SPEED_OF_LIGHT_CM_PER_NS * nu


@dataclass(frozen=True)
class MoleculeTimescales:
    """Interconversion periods and level splittings that bound valid pulse lengths.

    ``tau_s_ns`` maps the level-pair index k to the chirality interconversion
    period in ns (strictly decreasing in k); ``delta_e5_cm`` is the splitting
    of the shared upper level pair in 1/cm and ``tau_s5_ns`` its nominal beat
    period.  The torsional barrier heights are documentation constants and do
    not enter any computation.
    """

    tau_s_ns: Mapping[int, float]
    delta_e5_cm: float
    tau_s5_ns: float
    cis_barrier_cm: float = 2700.0
    trans_barrier_cm: float = 1900.0

    def __post_init__(self):
        object.__setattr__(self, "tau_s_ns", dict(self.tau_s_ns))
        ks = sorted(self.tau_s_ns)
        values = [self.tau_s_ns[k] for k in ks]
        if any(a <= b for a, b in zip(values, values[1:])):
            raise InvalidParameterError(
                "interconversion periods must be strictly decreasing in k"
            )
        if self.delta_e5_cm < 0 or self.tau_s5_ns <= 0:
            raise InvalidParameterError("splitting and beat period must be positive")
