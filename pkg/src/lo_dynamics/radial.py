"""Radial profile rho(r) reconstruction and residuals of the reduced ODEs.

A phase-plane state (phi, psi) at t maps to a profile sample through
r = e^t, rho = r*phi, rho_r = phi + psi.  The second derivative comes
from the vector field, rho_rr = (psi_t + psi)/r with psi_t = X2, never
from differencing samples, so the residual checks below measure the
integration error and not a differentiation artifact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynsys import vector_field_xy
from .errors import LengthMismatch
from .integrate import Trajectory
from .params import LomseParams


@dataclass(frozen=True)
class ProfileSample:
    r: float
    rho: float
    rho_r: float
    rho_rr: float


def to_profile(traj: Trajectory) -> list[ProfileSample]:
    """Samplewise transform of a trajectory into profile samples."""
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    out = []
    phi0 = traj.params.phi0
    for t, u, psi, dpsi in zip(traj.t, traj.u, traj.psi, traj.dpsi):
        r = math.exp(t)
        phi = phi0 + u
        out.append(ProfileSample(r=r, rho=r * phi, rho_r=phi + psi,
                                 rho_rr=(dpsi + psi) / r))
    return out


def state_to_sample(phi: float, psi: float, t: float, params: LomseParams) -> ProfileSample:
    """Profile sample of a single phase state, with rho_rr from the field."""
    r = math.exp(t)
    _, x2 = vector_field_xy(phi, psi, params)
    return ProfileSample(r=r, rho=r * phi, rho_r=phi + psi, rho_rr=(x2 + psi) / r)


def ode1_residual(sample: ProfileSample, params: LomseParams) -> float:
    """Residual of the reduced second-order ODE at the sample; zero on
    exact solutions."""
    r = sample.r
    if r <= 0.0:
        raise ValueError(f"r must be > 0, got {r}")
    lam2 = params.lambda_sq
    n, p = params.n, params.p
    rho, rho_r, rho_rr = sample.rho, sample.rho_r, sample.rho_rr
    q = lam2 * rho * rho / (r * r)
    return (
        rho_rr / (1.0 + rho_r * rho_r)
        + (n - p) * rho_r / r
        + p * (rho_r / r - lam2 * rho / (r * r)) / (1.0 + q)
    )


def ode_general_residual(sample: ProfileSample, sing_values: list[float], n: int) -> float:
    """Residual of the general constant-singular-value radial ODE.

    With the list (lambda,)*p + (0,)*(n-p) this agrees with ode1_residual
    to rounding.  n is the expected list length.
    """
    if len(sing_values) != n:
        raise LengthMismatch(f"expected {n} singular values, got {len(sing_values)}")
    r = sample.r
    if r <= 0.0:
        raise ValueError(f"r must be > 0, got {r}")
    rho, rho_r, rho_rr = sample.rho, sample.rho_r, sample.rho_rr
    total = rho_rr / (1.0 + rho_r * rho_r)
    for lam_i in sing_values:
        li2 = lam_i * lam_i
        total += (rho_r / r - li2 * rho / (r * r)) / (1.0 + li2 * rho * rho / (r * r))
    return total


def recover_state(sample: ProfileSample) -> tuple[float, float, float]:
    """(phi, psi, t) back from a profile sample; inverse of the transform."""
    phi = sample.rho / sample.r
    return phi, sample.rho_r - phi, math.log(sample.r)


def rescale_profile(samples: list[ProfileSample], d: float) -> list[ProfileSample]:
    """The profile rho_d(r) = rho(d r)/d; minimality is invariant under this."""
    if d <= 0.0:
        raise ValueError(f"dilation must be > 0, got {d}")
    return [
        ProfileSample(r=s.r / d, rho=s.rho / d, rho_r=s.rho_r, rho_rr=s.rho_rr * d)
        for s in samples
    ]


def cone_profile(params: LomseParams, radii: list[float]) -> list[ProfileSample]:
    """Exact cone rho = phi0 * r sampled at the given radii."""
    phi0 = params.phi0
    return [ProfileSample(r=r, rho=phi0 * r, rho_r=phi0, rho_rr=0.0) for r in radii]
