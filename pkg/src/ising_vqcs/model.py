"""Transverse field Ising chain primitives.

The chain is H(h) = -sum_j Z_j Z_{j+1} - h sum_j X_j with periodic boundary
conditions.  Everything here is a pure function of its value inputs: the
single-particle dispersion, the Bogoliubov angle difference between two
magnetic fields, the antiperiodic (NS) / periodic (R) momentum grids, and the
exact reference values (thermodynamic ground energy density and order
parameter) used to calibrate everything downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Sector",
    "MomentumGrid",
    "dispersion",
    "bogoliubov_angle",
    "bogoliubov_half_angle",
    "bogoliubov_kernel",
    "ns_momenta",
    "r_momenta",
    "ns_positive",
    "r_positive",
    "gauss_legendre",
    "ground_energy_density_inf",
    "exact_mz_reference",
]


class Sector(Enum):
    NS = "ns"
    R = "r"
    CONTINUUM = "continuum"


@dataclass(frozen=True)
class MomentumGrid:
    """A set of momenta: a finite NS/R sector grid or continuum quadrature.

    For finite sectors ``momenta`` are the L values in [-pi, pi) and
    ``weights`` is None.  For continuum grids ``momenta`` are quadrature
    nodes in (0, pi) and ``weights`` are positive and sum to pi.
    """

    sector: Sector
    size: int
    momenta: np.ndarray
    weights: np.ndarray | None = None


def ns_momenta(L: int) -> np.ndarray:
    """Antiperiodic momenta 2*pi*(n + 1/2)/L, n = -L/2 .. L/2 - 1."""
    _check_even(L)
    n = np.arange(-L // 2, L // 2)
    return 2.0 * np.pi * (n + 0.5) / L


def r_momenta(L: int) -> np.ndarray:
    """Periodic momenta 2*pi*n/L, n = -L/2 .. L/2 - 1 (contains -pi and 0)."""
    _check_even(L)
    n = np.arange(-L // 2, L // 2)
    return 2.0 * np.pi * n / L


def ns_positive(L: int) -> np.ndarray:
    k = ns_momenta(L)
    return k[k > 0.0]


def r_positive(L: int) -> np.ndarray:
    k = r_momenta(L)
    return k[k > 0.0]


def _check_even(L: int) -> None:
    if L < 2 or L % 2 != 0:
        raise ValueError(f"L must be an even integer >= 2, got {L}")


def gauss_legendre(n: int, a: float = 0.0, b: float = math.pi) -> MomentumGrid:
    """Gauss-Legendre nodes/weights on [a, b] (default [0, pi])."""
    x, w = np.polynomial.legendre.leggauss(n)
    nodes = 0.5 * (b - a) * (x + 1.0) + a
    weights = 0.5 * (b - a) * w
    return MomentumGrid(Sector.CONTINUUM, n, nodes, weights)


def dispersion(h: float, k):
    """Single-particle energy: 2*sqrt(1 + h^2 - 2h cos k), and -2(1-h) at k=0.

    The signed value at k=0 carries the periodic-sector convention: the
    unpaired zero mode lowers the energy when occupied for h < 1.
    """
    _check_field(h)
    k_arr = np.asarray(k, dtype=float)
    eps = 2.0 * np.sqrt(np.maximum(1.0 + h * h - 2.0 * h * np.cos(k_arr), 0.0))
    out = np.where(k_arr == 0.0, -2.0 * (1.0 - h), eps)
    if np.isscalar(k) or k_arr.ndim == 0:
        return float(out)
    return out


def bogoliubov_angle(h: float, k):
    """Bogoliubov angle theta_k(h): the phase of (h - e^{ik}).

    Computed with atan2(-sin k, h - cos k), which is branch-consistent on all
    of (-pi, pi).  At k=0 the continuous extension from k -> 0+ is used:
    -pi for h < 1, -pi/2 for h = 1, 0 for h > 1.
    """
    _check_field(h)
    k_arr = np.asarray(k, dtype=float)
    theta = np.arctan2(-np.sin(k_arr), h - np.cos(k_arr))
    if h < 1.0:
        limit0 = -np.pi
    elif h == 1.0:
        limit0 = -np.pi / 2.0
    else:
        limit0 = 0.0
    out = np.where(k_arr == 0.0, limit0, theta)
    if np.isscalar(k) or k_arr.ndim == 0:
        return float(out)
    return out


def bogoliubov_half_angle(h_to: float, h_from: float, k):
    """Half the angle difference (theta_k(h_to) - theta_k(h_from)) / 2.

    This is the quantity whose tangent is the pair-rotation kernel; exposing
    the half angle keeps every downstream map pole-free via (cos, sin) pairs.
    """
    return 0.5 * (bogoliubov_angle(h_to, k) - bogoliubov_angle(h_from, k))


def bogoliubov_kernel(h_to: float, h_from: float, k):
    """Pair-rotation kernel tan[(theta(h_to) - theta(h_from))/2].

    Returns +-inf when the half angle hits pi/2 modulo pi (the pole signal);
    this happens at k -> 0 when h_to and h_from lie on opposite sides of the
    critical field.  For h_from = 0 this is the kernel entering the
    projection of the circuit amplitude onto the target-field frame.
    """
    half = bogoliubov_half_angle(h_to, h_from, k)
    c = np.cos(half)
    s = np.sin(half)
    with np.errstate(divide="ignore"):
        out = np.where(c == 0.0, np.copysign(np.inf, s), s / np.where(c == 0.0, 1.0, c))
    if np.isscalar(k) or np.asarray(k).ndim == 0:
        return float(out)
    return out


_FINF_NODES = 256


def ground_energy_density_inf(h: float) -> float:
    """Thermodynamic ground energy density -(1/2pi) * integral_0^pi eps_h(k) dk.

    Fixed 256-node Gauss-Legendre; the integrand is smooth except at
    (h=1, k=0) where it is still continuous, and doubling the nodes moves
    the result by less than 1e-13.
    """
    _check_field(h)
    grid = gauss_legendre(_FINF_NODES)
    eps = 2.0 * np.sqrt(1.0 + h * h - 2.0 * h * np.cos(grid.momenta))
    return float(-np.sum(grid.weights * eps) / (2.0 * np.pi))


def exact_mz_reference(h: float) -> float:
    """Exact thermodynamic order parameter: (1 - h^2)^(1/8) for h <= 1, else 0."""
    _check_field(h)
    if h > 1.0:
        return 0.0
    return float((1.0 - h * h) ** 0.125)


def _check_field(h: float) -> None:
    if not math.isfinite(h) or h < 0.0:
        raise ValueError(f"magnetic field must be finite and >= 0, got {h}")
