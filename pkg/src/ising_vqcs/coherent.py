"""Coherent-state amplitude evolution through the alternating circuit.

The circuit state is a fermionic pair-coherent state; per momentum k its
amplitude f(k) evolves under each gate round by a Mobius map.  Amplitudes
are handled projectively as (num, den) pairs, so poles (f = infinity) are
first-class values and no epsilon regularisation appears anywhere.

Frame convention: the kernels evolve the amplitude in the paramagnetic
(h = infinity) Bogoliubov frame, where the three gate kinds have the fixed
matrices of ``kernels``.  The standard recurrence for the alternating
X/ZZ circuit lives in alternating frames; the two pictures are related by
the entire basis-change maps

    flip_minus (ferro -> para): [[-i s, c], [c, -i s]]
    flip_plus  (para -> ferro): [[ i s, c], [c,  i s]]

with s = sin(k/2), c = cos(k/2), and composing the paramagnetic-frame gates
with these flips reproduces the alternating-frame recurrence step by step.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .model import bogoliubov_half_angle, dispersion

__all__ = [
    "GateKind",
    "GateSequence",
    "InitialState",
    "ProjectiveAmplitude",
    "AmplitudeTrajectory",
    "evolve",
    "evolve_with_grad",
    "project",
    "g_transform",
    "quench_amplitude",
    "weight",
]


class GateKind(Enum):
    X = kernels.KIND_X
    ZZ = kernels.KIND_ZZ
    YY = kernels.KIND_YY


class InitialState(Enum):
    ALL_ZERO = "zero"
    ALL_PLUS = "plus"


@dataclass(frozen=True)
class ProjectiveAmplitude:
    """Value of f as a (num, den) pair; den = 0 encodes f = infinity."""

    num: complex
    den: complex

    @property
    def value(self) -> complex:
        return self.num / self.den

    @property
    def weight(self) -> float:
        """Occupation weight |f|^2 / (1 + |f|^2), finite for any pair."""
        n2 = abs(self.num) ** 2
        d2 = abs(self.den) ** 2
        return n2 / (n2 + d2)


@dataclass(frozen=True)
class GateSequence:
    """Ordered gate rounds (kind, angle); one entry acts on every site/bond."""

    kinds: tuple[GateKind, ...]
    angles: tuple[float, ...]

    def __post_init__(self):
        if len(self.kinds) != len(self.angles):
            raise ValueError("kinds and angles must have equal length")
        if not all(np.isfinite(self.angles)):
            raise ValueError("angles must be finite")

    @classmethod
    def alternating(cls, gammas, betas) -> "GateSequence":
        """Canonical variational sequence: X(gamma_1), ZZ(beta_1), ..., X(gamma_p), ZZ(beta_p).

        The X rounds exp(i gamma sum X) carry the gamma angles (they act
        first on the all-zero product state, where a ZZ round would be a
        global phase) and the ZZ rounds carry the beta angles.
        """
        gammas = tuple(float(g) for g in gammas)
        betas = tuple(float(b) for b in betas)
        if len(gammas) != len(betas):
            raise ValueError("need equal numbers of gamma and beta angles")
        kinds, angles = [], []
        for g, b in zip(gammas, betas):
            kinds.extend((GateKind.X, GateKind.ZZ))
            angles.extend((g, b))
        return cls(tuple(kinds), tuple(angles))

    @classmethod
    def from_flat(cls, x) -> "GateSequence":
        """Alternating sequence from the flat vector [g1, b1, g2, b2, ...]."""
        x = np.asarray(x, dtype=float)
        if x.size % 2 != 0:
            raise ValueError("flat angle vector must have even length")
        return cls.alternating(x[0::2], x[1::2])

    @property
    def n_gates(self) -> int:
        return len(self.kinds)

    @property
    def is_alternating(self) -> bool:
        if self.n_gates % 2 != 0:
            return False
        return all(
            k == (GateKind.X if j % 2 == 0 else GateKind.ZZ)
            for j, k in enumerate(self.kinds)
        )

    @property
    def p(self) -> int:
        if not self.is_alternating:
            raise ValueError("half depth p is defined for alternating sequences only")
        return self.n_gates // 2

    @property
    def gammas(self) -> np.ndarray:
        return np.asarray(self.angles[0::2], dtype=float)

    @property
    def betas(self) -> np.ndarray:
        return np.asarray(self.angles[1::2], dtype=float)

    def flat(self) -> np.ndarray:
        return np.asarray(self.angles, dtype=float)

    def kind_codes(self) -> np.ndarray:
        return np.asarray([k.value for k in self.kinds], dtype=np.int64)


def _sc(k: np.ndarray):
    return np.sin(0.5 * k), np.cos(0.5 * k)


def flip_plus(s, c) -> np.ndarray:
    m = np.empty(s.shape + (2, 2), dtype=np.complex128)
    m[..., 0, 0] = 1.0j * s
    m[..., 0, 1] = c
    m[..., 1, 0] = c
    m[..., 1, 1] = 1.0j * s
    return m


def flip_minus(s, c) -> np.ndarray:
    m = flip_plus(s, c)
    m[..., 0, 0] = -m[..., 0, 0]
    m[..., 1, 1] = -m[..., 1, 1]
    return m


def basis_change_matrix(h_to: float, h_from: float, k: np.ndarray) -> np.ndarray:
    """Pair-rotation Mobius matrix for the frame change h_from -> h_to.

    f' = (i K + f) / (1 + i K f) with K = tan[(theta(h_to) - theta(h_from))/2],
    written with the half-angle sine/cosine so the K poles are regular.
    """
    half = bogoliubov_half_angle(h_to, h_from, k)
    ch, sh = np.cos(half), np.sin(half)
    m = np.empty(np.shape(half) + (2, 2), dtype=np.complex128)
    m[..., 0, 0] = ch
    m[..., 0, 1] = 1.0j * sh
    m[..., 1, 0] = 1.0j * sh
    m[..., 1, 1] = ch
    return m


def initial_pairs(init: InitialState, k: np.ndarray) -> np.ndarray:
    """Paramagnetic-frame (num, den) pairs of the initial product state."""
    s, c = _sc(k)
    v0 = np.empty(k.shape + (2,), dtype=np.complex128)
    if init is InitialState.ALL_ZERO:
        v0[..., 0] = c
        v0[..., 1] = -1.0j * s
    elif init is InitialState.ALL_PLUS:
        v0[..., 0] = 0.0
        v0[..., 1] = 1.0
    else:
        raise ValueError(f"unknown initial state {init}")
    return v0


@dataclass
class AmplitudeTrajectory:
    """All intermediate amplitudes of one circuit at a set of momenta.

    ``para_pairs[j]`` is the pair after gate j in the paramagnetic frame.
    ``f_pairs(j)`` returns the alternating-frame convention: odd j stays in
    the paramagnetic frame, even j (including 0 and the final amplitude of
    an alternating sequence) is flipped to the ferromagnetic frame.
    """

    seq: GateSequence
    init: InitialState
    k: np.ndarray
    para_pairs: np.ndarray  # (n_gates + 1, nk, 2)

    def f_pairs(self, j: int) -> np.ndarray:
        if not 0 <= j <= self.seq.n_gates:
            raise IndexError(f"gate index {j} out of range")
        pair = self.para_pairs[j]
        if j % 2 == 0:
            s, c = _sc(self.k)
            return _apply(flip_plus(s, c), pair)
        return pair

    def f_values(self, j: int) -> np.ndarray:
        pair = self.f_pairs(j)
        with np.errstate(divide="ignore", invalid="ignore"):
            return pair[..., 0] / pair[..., 1]

    def final_f_pairs(self) -> np.ndarray:
        """Ferromagnetic-frame amplitude after the last gate (f_{2p})."""
        s, c = _sc(self.k)
        return _apply(flip_plus(s, c), self.para_pairs[-1])

    def g_pairs(self) -> np.ndarray:
        """Paramagnetic-frame amplitude after the last gate (the g function)."""
        return self.para_pairs[-1]


def _apply(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v)
    out[..., 0] = m[..., 0, 0] * v[..., 0] + m[..., 0, 1] * v[..., 1]
    out[..., 1] = m[..., 1, 0] * v[..., 0] + m[..., 1, 1] * v[..., 1]
    return out


def evolve(seq: GateSequence, init: InitialState, k) -> AmplitudeTrajectory:
    """Evolve the initial amplitude through every gate of the sequence."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    s, c = _sc(k)
    traj = kernels.evolve_chain(seq.kind_codes(), seq.flat(), s, c, initial_pairs(init, k))
    return AmplitudeTrajectory(seq, init, k, traj)


def evolve_with_grad(seq: GateSequence, init: InitialState, k):
    """Trajectory plus complex derivatives d f_final / d angle_j.

    The derivatives are of the ferromagnetic-frame amplitude value after the
    last gate; they are exact (chain rule through every Mobius map) and
    become infinite only where f itself has a pole.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    s, c = _sc(k)
    v0 = initial_pairs(init, k)
    codes, angles = seq.kind_codes(), seq.flat()
    traj = kernels.evolve_chain(codes, angles, s, c, v0)
    v, dv = kernels.evolve_chain_grad(codes, angles, s, c, v0, flip_plus(s, c))
    with np.errstate(divide="ignore", invalid="ignore"):
        df = (v[:, 1] * dv[:, :, 0] - v[:, 0] * dv[:, :, 1]) / (v[:, 1] ** 2)
    return AmplitudeTrajectory(seq, init, k, traj), df


def project(f2p_pair: np.ndarray, h: float, k) -> np.ndarray:
    """Change the final amplitude from the ferromagnetic frame to field h."""
    k = np.asarray(k, dtype=float)
    return _apply(basis_change_matrix(h, 0.0, k), np.asarray(f2p_pair, dtype=np.complex128))


def g_transform(f2p_pair: np.ndarray, k) -> np.ndarray:
    """Map the ferromagnetic-frame amplitude to the paramagnetic frame."""
    k = np.asarray(k, dtype=float)
    s, c = _sc(k)
    return _apply(flip_minus(s, c), np.asarray(f2p_pair, dtype=np.complex128))


def quench_amplitude(h0: float, h: float, t: float, k) -> np.ndarray:
    """Ferromagnetic-frame amplitude of the h0 ground state evolved at field h.

    The evolved amplitude at field h is i K(h, h0) exp(-2 i t eps_h(k)); the
    returned pair is its ferromagnetic-frame image, the input of the
    Z-magnetization determinant.
    """
    if t < 0.0:
        raise ValueError("time must be >= 0")
    k = np.atleast_1d(np.asarray(k, dtype=float))
    half = bogoliubov_half_angle(h, h0, k)
    pair = np.empty(k.shape + (2,), dtype=np.complex128)
    pair[..., 0] = 1.0j * np.sin(half) * np.exp(-2.0j * t * dispersion(h, k))
    pair[..., 1] = np.cos(half)
    return _apply(basis_change_matrix(0.0, h, k), pair)


def weight(pairs: np.ndarray) -> np.ndarray:
    """Occupation weight |f|^2/(1+|f|^2) from (num, den) pairs."""
    n2 = np.abs(pairs[..., 0]) ** 2
    d2 = np.abs(pairs[..., 1]) ** 2
    return n2 / (n2 + d2)
