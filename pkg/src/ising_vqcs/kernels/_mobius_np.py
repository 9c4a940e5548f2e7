"""Pure-numpy Mobius chain kernels (fallback backend).

State convention: per momentum k the pair amplitude of the circuit state in
the paramagnetic-frame Bogoliubov basis is tracked projectively as a complex
2-vector v = (num, den), f = num/den.  Every gate is a 2x2 matrix acting on
v; matrices are written with s = sin(k/2), c = cos(k/2) so they stay entire
at k = 0 and k = pi (no tan poles anywhere).

Gate kinds (angle t, u = exp(-4it)):
  0: X   rounds exp(it sum_j X_j)        -> diag(u, 1)
  1: ZZ  rounds exp(it sum_j Z_j Z_{j+1}) -> [[c^2+s^2 u,  isc(1-u)], [-isc(1-u), s^2+c^2 u]]
  2: YY  rounds exp(it sum_j Y_j Y_{j+1}) -> [[c^2+s^2 u, -isc(1-u)], [ isc(1-u), s^2+c^2 u]]

States are renormalised per step by max(|num|, |den|); gate matrices carry
the same per-step scale so that (final state, derivative pairs) returned by
the gradient kernel share one common positive scale per k, which cancels in
every downstream degree-zero quantity (f values, occupation weights and
their derivatives).
"""

from __future__ import annotations

import numpy as np

KIND_X = 0
KIND_ZZ = 1
KIND_YY = 2


def _gate_matrix(kind: int, angle: float, s: np.ndarray, c: np.ndarray) -> np.ndarray:
    """2x2 gate matrix per momentum, shape (nk, 2, 2)."""
    nk = s.shape[0]
    u = np.exp(-4.0j * angle)
    m = np.empty((nk, 2, 2), dtype=np.complex128)
    if kind == KIND_X:
        m[:, 0, 0] = u
        m[:, 0, 1] = 0.0
        m[:, 1, 0] = 0.0
        m[:, 1, 1] = 1.0
        return m
    sc = s * c
    diag0 = c * c + s * s * u
    diag1 = s * s + c * c * u
    off = 1.0j * sc * (1.0 - u)
    sign = 1.0 if kind == KIND_ZZ else -1.0
    m[:, 0, 0] = diag0
    m[:, 0, 1] = sign * off
    m[:, 1, 0] = -sign * off
    m[:, 1, 1] = diag1
    return m


def _gate_matrix_deriv(kind: int, angle: float, s: np.ndarray, c: np.ndarray) -> np.ndarray:
    """d(gate matrix)/d(angle), shape (nk, 2, 2)."""
    nk = s.shape[0]
    u = np.exp(-4.0j * angle)
    du = -4.0j * u
    m = np.zeros((nk, 2, 2), dtype=np.complex128)
    if kind == KIND_X:
        m[:, 0, 0] = du
        return m
    sc = s * c
    sign = 1.0 if kind == KIND_ZZ else -1.0
    m[:, 0, 0] = s * s * du
    m[:, 0, 1] = sign * (-1.0j) * sc * du
    m[:, 1, 0] = -sign * (-1.0j) * sc * du
    m[:, 1, 1] = c * c * du
    return m


def _apply(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v)
    out[:, 0] = m[:, 0, 0] * v[:, 0] + m[:, 0, 1] * v[:, 1]
    out[:, 1] = m[:, 1, 0] * v[:, 0] + m[:, 1, 1] * v[:, 1]
    return out


def _norms(v: np.ndarray) -> np.ndarray:
    sigma = np.maximum(np.abs(v[:, 0]), np.abs(v[:, 1]))
    return np.where(sigma == 0.0, 1.0, sigma)


def evolve_chain(kinds, angles, s, c, v0):
    """Run the gate chain, returning the normalised trajectory (m+1, nk, 2)."""
    kinds = np.asarray(kinds, dtype=np.int64)
    angles = np.asarray(angles, dtype=np.float64)
    m = kinds.shape[0]
    nk = s.shape[0]
    traj = np.empty((m + 1, nk, 2), dtype=np.complex128)
    v = np.array(v0, dtype=np.complex128)
    v /= _norms(v)[:, None]
    traj[0] = v
    for j in range(m):
        v = _apply(_gate_matrix(int(kinds[j]), float(angles[j]), s, c), v)
        v /= _norms(v)[:, None]
        traj[j + 1] = v
    return traj


def evolve_final(kinds, angles, s, c, v0, post):
    """Run the chain and apply the 2x2 `post` map; returns (nk, 2)."""
    kinds = np.asarray(kinds, dtype=np.int64)
    angles = np.asarray(angles, dtype=np.float64)
    v = np.array(v0, dtype=np.complex128)
    v /= _norms(v)[:, None]
    for j in range(kinds.shape[0]):
        v = _apply(_gate_matrix(int(kinds[j]), float(angles[j]), s, c), v)
        v /= _norms(v)[:, None]
    return _apply(post, v)


def evolve_chain_grad(kinds, angles, s, c, v0, post):
    """Chain with per-angle derivatives.

    Returns (v, dv): v is the post-mapped final pair (nk, 2); dv[j] is the
    derivative of v with respect to angle j, shape (m, nk, 2).  v and dv
    share one common positive scale per momentum.
    """
    kinds = np.asarray(kinds, dtype=np.int64)
    angles = np.asarray(angles, dtype=np.float64)
    m = kinds.shape[0]
    nk = s.shape[0]

    states = np.empty((m + 1, nk, 2), dtype=np.complex128)
    mats = np.empty((m, nk, 2, 2), dtype=np.complex128)
    sigmas = np.empty((m, nk), dtype=np.float64)
    v = np.array(v0, dtype=np.complex128)
    v /= _norms(v)[:, None]
    states[0] = v
    for j in range(m):
        gm = _gate_matrix(int(kinds[j]), float(angles[j]), s, c)
        v_raw = _apply(gm, v)
        sigma = _norms(v_raw)
        v = v_raw / sigma[:, None]
        states[j + 1] = v
        sigmas[j] = sigma
        mats[j] = gm / sigma[:, None, None]

    v_final = _apply(post, v)
    dv = np.empty((m, nk, 2), dtype=np.complex128)
    suffix = np.array(np.broadcast_to(post, (nk, 2, 2)), dtype=np.complex128)
    for j in range(m - 1, -1, -1):
        dgm = _gate_matrix_deriv(int(kinds[j]), float(angles[j]), s, c)
        dgm /= sigmas[j][:, None, None]
        dv[j] = _apply(suffix, _apply(dgm, states[j]))
        suffix = np.einsum("kab,kbc->kac", suffix, mats[j])
    return v_final, dv
