"""The reduced planar autonomous vector field and its linearizations.

With phi = rho/r, t = log r and psi = dphi/dt, the radial minimal-surface
ODE becomes the autonomous system

    phi_t = psi,
    psi_t = -psi - [f2(phi) psi - f1(phi) phi] [1 + (phi + psi)^2],

with
    f1(phi) = (lambda^2-1) p / (1 + lambda^2 phi^2) - (n - p),
    f2(phi) = n - p + p / (1 + lambda^2 phi^2).

The field vanishes exactly at (0,0) and (+-phi0, 0), is odd under
(phi,psi) -> (-phi,-psi), and its linearizations at the two nonnegative
equilibria are available in closed form below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import LomseParams


@dataclass
class PhaseState:
    """A point (phi, psi) of the reduced phase plane at logarithmic radius t."""

    phi: float
    psi: float
    t: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.phi) and math.isfinite(self.psi) and math.isfinite(self.t)):
            raise ValueError(f"non-finite phase state ({self.phi}, {self.psi}, {self.t})")


@dataclass(frozen=True)
class OriginLinearization:
    matrix_a: np.ndarray  # [[0,1],[k(k+n-1)-n, -n-1]]
    mu1: float  # k - 1
    mu2: float  # -n - k
    v1: np.ndarray  # (1, mu1)
    v2: np.ndarray  # (1, mu2)


@dataclass(frozen=True)
class P1Linearization:
    a: float  # 2n(n/(k(k+n-1)) - 1) < 0
    b: float  # -n - 1
    mu3: complex
    mu4: complex
    spiral: bool


def f1(phi: float, params: LomseParams) -> float:
    lam2 = params.lambda_sq
    return (lam2 - 1.0) * params.p / (1.0 + lam2 * phi * phi) - (params.n - params.p)


def f2(phi: float, params: LomseParams) -> float:
    lam2 = params.lambda_sq
    return params.n - params.p + params.p / (1.0 + lam2 * phi * phi)


def f1_from_offset(u: float, params: LomseParams) -> float:
    """f1(phi0 + u) evaluated without cancellation near the equilibrium.

    Uses f1(phi) = -(n-p) lambda^2 u (phi + phi0) / (1 + lambda^2 phi^2),
    exact because f1(phi0) = 0; accurate relative to u however small u is.
    """
    lam2 = params.lambda_sq
    phi = params.phi0 + u
    return -(params.n - params.p) * lam2 * u * (phi + params.phi0) / (1.0 + lam2 * phi * phi)


def _unpack(state) -> tuple[float, float]:
    if isinstance(state, PhaseState):
        return state.phi, state.psi
    phi, psi = state[0], state[1]
    return float(phi), float(psi)


def vector_field_xy(phi: float, psi: float, params: LomseParams) -> tuple[float, float]:
    """(X1, X2) at (phi, psi); the compact single code path shared with the
    barrier module."""
    x2 = -psi - (f2(phi, params) * psi - f1(phi, params) * phi) * (1.0 + (phi + psi) ** 2)
    return psi, x2


def vector_field(state, params: LomseParams) -> tuple[float, float]:
    phi, psi = _unpack(state)
    return vector_field_xy(phi, psi, params)


def reverse_field_xy(phi: float, psi: float, params: LomseParams) -> tuple[float, float]:
    """(Y1, Y2): the downward half-loop field obtained from X by the
    substitution (phi, psi) -> (phi, -psi) and negating the second
    component; used by the no-limit-cycle certificate.
    """
    x1, x2 = vector_field_xy(phi, -psi, params)
    return x1, -x2


def _f1_prime(phi: float, params: LomseParams) -> float:
    lam2 = params.lambda_sq
    d = 1.0 + lam2 * phi * phi
    return -2.0 * (lam2 - 1.0) * params.p * lam2 * phi / (d * d)


def _f2_prime(phi: float, params: LomseParams) -> float:
    lam2 = params.lambda_sq
    d = 1.0 + lam2 * phi * phi
    return -2.0 * params.p * lam2 * phi / (d * d)


def jacobian(state, params: LomseParams) -> np.ndarray:
    """Closed-form Jacobian of the vector field; finite differences are used
    only as a test oracle against this."""
    phi, psi = _unpack(state)
    b = f2(phi, params) * psi - f1(phi, params) * phi
    c = 1.0 + (phi + psi) ** 2
    db_dphi = _f2_prime(phi, params) * psi - _f1_prime(phi, params) * phi - f1(phi, params)
    d21 = -db_dphi * c - b * 2.0 * (phi + psi)
    d22 = -1.0 - f2(phi, params) * c - b * 2.0 * (phi + psi)
    return np.array([[0.0, 1.0], [d21, d22]])


def linearize_origin(params: LomseParams) -> OriginLinearization:
    n, k = params.n, params.k
    mu1 = float(k - 1)
    mu2 = float(-n - k)
    a21 = float(params.big_k - n)  # lambda^2 p - n
    matrix = np.array([[0.0, 1.0], [a21, float(-n - 1)]])
    return OriginLinearization(
        matrix_a=matrix,
        mu1=mu1,
        mu2=mu2,
        v1=np.array([1.0, mu1]),
        v2=np.array([1.0, mu2]),
    )


def linearize_p1(params: LomseParams) -> P1Linearization:
    n = params.n
    K = params.big_k
    a = 2.0 * n * (n / K - 1.0)
    b = float(-n - 1)
    disc = b * b + 4.0 * a  # = n^2 - 6n + 1 + 8n^2/K
    if disc < 0.0:
        root = math.sqrt(-disc)
        mu3 = complex(b / 2.0, root / 2.0)
        mu4 = complex(b / 2.0, -root / 2.0)
        spiral = True
    else:
        root = math.sqrt(disc)
        mu3 = complex((b + root) / 2.0, 0.0)
        mu4 = complex((b - root) / 2.0, 0.0)
        spiral = False
    return P1Linearization(a=a, b=b, mu3=mu3, mu4=mu4, spiral=spiral)
