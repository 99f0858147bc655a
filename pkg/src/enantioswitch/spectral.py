"""Instantaneous eigen-analysis of a drive scheme's Hamiltonian.

Eigenvalue tracks are matched across time samples by maximal eigenvector
overlap rather than by value sorting, so exact and near-exact degeneracies
show up as genuine track intersections instead of avoided-looking kinks.
Crossing detection refines sampled gap minima to millisecond-of-a-nanosecond
resolution, and the numerical null space of the six-level converter supplies
the dark-state basis that the analytic shortcut expressions only reproduce in
special parameter regimes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment, minimize_scalar

from .core import DriveScheme, StateVector, build_hamiltonian, build_hamiltonians
from .errors import DegenerateInputError, GridMismatchError, InvalidParameterError
from .propagation import Trajectory

# two candidate track assignments closer than this in overlap are ambiguous
OVERLAP_AMBIGUITY_TOL = 1e-6

# crossing times are refined to this resolution (ns)
CROSSING_TIME_RESOLUTION = 1e-3

# singular values below this fraction of the largest count as null directions
NULL_SPACE_RTOL = 1e-10


@dataclass(frozen=True)
class EigenTrack:
    """Eigenvalue tracks E_k(t) with continuity-matched eigenvectors.

    Track k occupies ``values[:, k]`` and ``vectors[:, :, k]``; tracks are
    ordered by their value at the first sample, so for a three-level scheme
    tracks 0, 1, 2 start as the lower, middle and upper branches.
    ``ambiguous_steps`` lists sample indices where overlap matching was
    degenerate and value continuity decided the assignment.
    """

    times: np.ndarray
    values: np.ndarray
    vectors: np.ndarray
    scheme: DriveScheme
    ambiguous_steps: tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("times", "values", "vectors"):
            arr = np.asarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "ambiguous_steps", tuple(self.ambiguous_steps))
        m = len(self.times)
        n = self.scheme.dimension
        if self.values.shape != (m, n) or self.vectors.shape != (m, n, n):
            raise InvalidParameterError("track array shapes are inconsistent")

    @property
    def n_tracks(self) -> int:
        return self.values.shape[1]

    def sort_permutation(self) -> np.ndarray:
        """Track indices in ascending-value order at each sample, shape (m, N)."""
        return np.argsort(self.values, axis=1, kind="stable")

    def sorted_values(self) -> np.ndarray:
        """Pointwise ascending spectrum (the adiabatic-branch view)."""
        return np.sort(self.values, axis=1)


@dataclass(frozen=True)
class Crossing:
    """One detected eigenvalue degeneracy."""

    time: float
    tracks: tuple[int, int]
    gap: float


@dataclass(frozen=True)
class DarkBasis:
    """Orthonormal basis of the instantaneous null space of H(t)."""

    time: float
    basis: tuple[StateVector, ...]
    residuals: tuple[float, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def instantaneous_spectrum(scheme: DriveScheme, times) -> EigenTrack:
    """Eigen-decompose H(t) on a grid and match tracks by eigenvector overlap.

    Matching maximizes the total |<v_prev|v_next>| via an exact assignment;
    if a track's best two candidates are closer than ``OVERLAP_AMBIGUITY_TOL``
    the step is flagged and re-assigned by eigenvalue continuity instead.
    Eigenvector phases are aligned so consecutive overlaps are real positive.
    """
    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1 or len(ts) < 1:
        raise InvalidParameterError("need a one-dimensional, non-empty time grid")
    span = scheme.t_end - scheme.t_start
    slack = 1e-9 * max(1.0, abs(span))
    if ts.min() < scheme.t_start - slack or ts.max() > scheme.t_end + slack:
        raise InvalidParameterError("sample times fall outside the scheme window")

    h = build_hamiltonians(scheme, ts)
    w, v = np.linalg.eigh(h)  # ascending values, orthonormal columns

    m, n = w.shape
    values = np.empty((m, n))
    vectors = np.empty((m, n, n), dtype=complex)
    values[0] = w[0]
    vectors[0] = v[0]
    flagged: list[int] = []

    for k in range(1, m):
        prev_v = vectors[k - 1]
        overlap = np.abs(prev_v.conj().T @ v[k])  # overlap[i, j] = |<track i|new j>|
        row, col = linear_sum_assignment(-overlap)
        perm = np.empty(n, dtype=int)
        perm[row] = col

        ambiguous = False
        for i in range(n):
            row_sorted = np.sort(overlap[i])[::-1]
            if n > 1 and row_sorted[0] - row_sorted[1] < OVERLAP_AMBIGUITY_TOL:
                ambiguous = True
                break
        if ambiguous:
            # overlap cannot decide (degenerate subspace); fall back to the
            # assignment minimizing total eigenvalue jumps
            dist = np.abs(values[k - 1][:, None] - w[k][None, :])
            row, col = linear_sum_assignment(dist)
            perm[row] = col
            flagged.append(k)

        values[k] = w[k][perm]
        new_vecs = v[k][:, perm]
        # fix the U(1) phase so consecutive overlaps are real positive
        ov = np.einsum("ik,ik->k", prev_v.conj(), new_vecs)
        scale = np.where(np.abs(ov) > 1e-12, np.conj(ov) / np.maximum(np.abs(ov), 1e-300), 1.0)
        vectors[k] = new_vecs * scale[None, :]

    # order tracks by their value at the first sample (eigh already sorts)
    track = EigenTrack(ts, values, vectors, scheme, tuple(flagged))
    if flagged:
        warnings.warn(
            f"eigenvector matching was ambiguous at {len(flagged)} of {m} samples; "
            "assignments there fell back to value continuity",
            stacklevel=2,
        )
    return track


def _sorted_gap(scheme: DriveScheme, t: float, position: int) -> float:
    w = np.linalg.eigvalsh(build_hamiltonian(scheme, t))
    return float(w[position + 1] - w[position])


def detect_crossings(track: EigenTrack, gap_tol: float) -> list[Crossing]:
    """Locate isolated eigenvalue degeneracies below ``gap_tol``.

    Candidate times are interior local minima of the matched pairwise gaps
    (plus sign changes of the signed track difference); each candidate is
    refined by bounded minimization of the sorted adjacent gap to
    ``CROSSING_TIME_RESOLUTION`` ns.  A candidate is accepted only if the
    refined gap is below ``gap_tol`` and the sampled gap rises back above
    ``gap_tol`` on both sides, which rejects the trivial collapse of the whole
    spectrum where all pulses have died off.
    """
    if gap_tol <= 0:
        raise InvalidParameterError("gap_tol must be positive")
    ts = track.times
    m, n = track.values.shape
    if m < 3:
        return []
    crossings: list[Crossing] = []
    order = track.sort_permutation()

    for i in range(n):
        for j in range(i + 1, n):
            d = track.values[:, i] - track.values[:, j]
            g = np.abs(d)
            candidates = set()
            for k in range(1, m - 1):
                if g[k] < g[k - 1] and g[k] <= g[k + 1]:
                    candidates.add(k)
            sign_change = np.nonzero(np.sign(d[:-1]) * np.sign(d[1:]) < 0)[0]
            for k in sign_change:
                candidates.add(int(np.clip(k if g[k] < g[k + 1] else k + 1, 1, m - 2)))

            for k in sorted(candidates):
                pos_i = int(np.nonzero(order[k] == i)[0][0])
                pos_j = int(np.nonzero(order[k] == j)[0][0])
                if abs(pos_i - pos_j) != 1:
                    continue  # a third track sits in between; the pair gap cannot close
                position = min(pos_i, pos_j)
                res = minimize_scalar(
                    lambda t: _sorted_gap(track.scheme, t, position),
                    bounds=(float(ts[k - 1]), float(ts[k + 1])),
                    method="bounded",
                    options={"xatol": CROSSING_TIME_RESOLUTION},
                )
                gap_min = float(res.fun)
                t_min = float(res.x)
                if gap_min >= gap_tol:
                    continue
                # isolation: the sampled gap must clear gap_tol on both sides
                left_clear = bool(np.any(g[: k + 1] > gap_tol))
                right_clear = bool(np.any(g[k:] > gap_tol))
                if not (left_clear and right_clear):
                    continue
                if any(
                    c.tracks == (i, j) and abs(c.time - t_min) < 10 * CROSSING_TIME_RESOLUTION
                    for c in crossings
                ):
                    continue
                crossings.append(Crossing(time=t_min, tracks=(i, j), gap=gap_min))

    crossings.sort(key=lambda c: c.time)
    return crossings


def dark_states(scheme: DriveScheme, t: float) -> DarkBasis:
    """Orthonormal null-space basis of H(t) via singular-value thresholding.

    Singular values below ``NULL_SPACE_RTOL`` times the largest one count as
    null directions.  Raises :class:`DegenerateInputError` when every coupling
    is zero at ``t`` (the whole space would be trivially dark).
    """
    h = build_hamiltonian(scheme, t)
    hnorm = float(np.linalg.norm(h, 2)) if h.size else 0.0
    if hnorm == 0.0:
        raise DegenerateInputError(
            f"all couplings vanish at t = {t:.6g} ns; the null space is the full space"
        )
    _, s, vh = np.linalg.svd(h)
    null_rows = vh[s < NULL_SPACE_RTOL * s[0]]
    basis = []
    residuals = []
    for row in null_rows:
        vec = row.conj()
        basis.append(StateVector(vec, scheme.labels))
        residuals.append(float(np.linalg.norm(h @ vec)))
    return DarkBasis(time=float(t), basis=tuple(basis), residuals=tuple(residuals))


def adiabatic_overlap(traj: Trajectory, track: EigenTrack) -> np.ndarray:
    """Per-track overlap magnitudes |<E_k(t)|psi(t)>|^2, shape (n_times, N).

    The trajectory and track must share their time grid (to 1e-9 ns).  Rows
    sum to the squared state norm, i.e. to 1 up to the propagation drift.
    """
    if traj.times.shape != track.times.shape or not np.allclose(
        traj.times, track.times, rtol=0.0, atol=1e-9
    ):
        raise GridMismatchError("trajectory and eigen-track are on different time grids")
    # overlap[t, k] = |sum_i conj(vectors[t, i, k]) amplitudes[t, i]|^2
    proj = np.einsum("tik,ti->tk", track.vectors.conj(), traj.amplitudes)
    return np.abs(proj) ** 2
