"""Adaptive integration of the reduced system and unstable-manifold shooting.

The connecting orbit leaves the saddle (0,0) along the eigenvector
V1 = (1, k-1) and limits to the equilibrium (phi0, 0).  The spiral case
contracts by a factor exp(Re(mu3) * pi / Im(mu3)) per half-oscillation,
which for (3,2,4) is about 3.6e-3: after ten crossings the distance to
the equilibrium is far below the resolution of phi as a float.  The
integrator therefore advances the deviation u = phi - phi0 instead of
phi itself, with f1(phi)*phi evaluated in the cancellation-free factored
form, so the inward spiral stays accurate relative to its own amplitude
down to ~1e-290.

Integrator: embedded Dormand-Prince 5(4) pair with PI step-size control.
Dense output is cubic Hermite on (state, derivative) at step endpoints;
events are refined by bisection on the interpolant to 1e-12 in t.
A classical fixed-step RK4 in plain (phi, psi) coordinates serves as the
independent oracle and shares no code with the adaptive path.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dynsys import PhaseState
from .errors import BlowupDetected, EpsNonpositive
from .params import LomseParams, StabilityType

# Dormand-Prince 5(4) tableau. Row 7 equals the 5th-order weights (FSAL).
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12
DEFAULT_CONV_TOL = 1e-8
DEFAULT_EPS = 1e-6
DEFAULT_T_MAX = 400.0
DEFAULT_MAX_CROSSINGS = 40
EVENT_TOL = 1e-12
_H_MAX = 0.5
_H_MIN = 1e-13
_DEEP_FLOOR = 1e-290  # snap to the equilibrium before subnormal thrashing
_BLOWUP_FACTOR = 1e3


class Termination(enum.Enum):
    CONVERGED_TO_P1 = "converged_to_p1"
    MAX_TIME = "max_time"
    MAX_CROSSINGS = "max_crossings"
    BLOWUP = "blowup"


def _offset_field(params: LomseParams):
    """du/dt, dpsi/dt as a closure over the parameters, with u = phi - phi0."""
    p = params.p
    lam2 = params.lambda_sq
    phi0 = params.phi0
    n_minus_p = float(params.n - params.p)
    c1 = n_minus_p * lam2

    def field(u: float, psi: float) -> tuple[float, float]:
        phi = phi0 + u
        den = 1.0 + lam2 * phi * phi
        f1_phi = -c1 * u * (phi + phi0) / den * phi  # f1(phi) * phi, no cancellation
        f2_val = n_minus_p + p / den
        dpsi = -psi - (f2_val * psi - f1_phi) * (1.0 + (phi + psi) ** 2)
        return psi, dpsi

    return field


def _hermite(t, t0, t1, y0, y1, m0, m1):
    """Cubic Hermite value at t on [t0, t1] from endpoint values and slopes."""
    h = t1 - t0
    s = (t - t0) / h
    s2 = s * s
    s3 = s2 * s
    return (
        (2.0 * s3 - 3.0 * s2 + 1.0) * y0
        + (s3 - 2.0 * s2 + s) * h * m0
        + (-2.0 * s3 + 3.0 * s2) * y1
        + (s3 - s2) * h * m1
    )


def _bisect(fn, ta, tb, fa, fb, tol=EVENT_TOL):
    """Bracketed bisection for a sign change of fn on [ta, tb]."""
    while tb - ta > tol:
        tm = 0.5 * (ta + tb)
        if tm <= ta or tm >= tb:
            break
        fm = fn(tm)
        if fm == 0.0:
            return tm
        if (fa < 0.0) != (fm < 0.0):
            tb, fb = tm, fm
        else:
            ta, fa = tm, fm
    return 0.5 * (ta + tb)


@dataclass(frozen=True)
class PsiZero:
    """A refined zero of psi: time, slope value there, and sign of dpsi/dt."""

    t: float
    phi: float
    phi_offset: float  # phi - phi0 at full relative precision
    direction: int


@dataclass(frozen=True)
class PhiHit:
    """A refined solution of phi(t) = target with its dilation d = e^t."""

    t: float
    dilation: float


@dataclass(frozen=True)
class CrossingReport:
    psi_zeros: list[PsiZero]
    phi_hits: list[PhiHit]
    target: float


class Trajectory:
    """Dense, ordered output of one integration run.

    Stores (t_i, u_i, psi_i) at every accepted step together with the psi
    derivative, which makes a cubic Hermite interpolant available on every
    segment.  phi values are reconstructed as phi0 + u; the offsets keep
    full relative precision long after phi0 + u rounds to phi0.
    Completed trajectories are immutable.
    """

    def __init__(self, params, t, u, psi, dpsi, eps_start, tolerances, terminated_by):
        self.params = params
        self.t = np.asarray(t, dtype=float)
        self.u = np.asarray(u, dtype=float)
        self.psi = np.asarray(psi, dtype=float)
        self.dpsi = np.asarray(dpsi, dtype=float)
        for arr in (self.t, self.u, self.psi, self.dpsi):
            arr.setflags(write=False)
        self.eps_start = eps_start
        self.tolerances = tolerances
        self.terminated_by = terminated_by
        if not np.all(np.diff(self.t) > 0.0):
            raise ValueError("trajectory times must be strictly increasing")
        for arr in (self.t, self.u, self.psi, self.dpsi):
            if not np.all(np.isfinite(arr)):
                raise ValueError("trajectory states must be finite")

    def __len__(self) -> int:
        return len(self.t)

    @property
    def phi(self) -> np.ndarray:
        return self.params.phi0 + self.u

    @cached_property
    def states(self) -> list[PhaseState]:
        phi = self.phi
        return [PhaseState(phi[i], self.psi[i], self.t[i]) for i in range(len(self.t))]

    @property
    def t_start(self) -> float:
        return float(self.t[0])

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    def _segment(self, t: float) -> int:
        if not self.t[0] <= t <= self.t[-1]:
            raise ValueError(f"t={t} outside trajectory span [{self.t[0]}, {self.t[-1]}]")
        i = int(np.searchsorted(self.t, t, side="right")) - 1
        return min(max(i, 0), len(self.t) - 2)

    def u_at(self, t: float) -> float:
        i = self._segment(t)
        return _hermite(t, self.t[i], self.t[i + 1], self.u[i], self.u[i + 1],
                        self.psi[i], self.psi[i + 1])

    def psi_at(self, t: float) -> float:
        i = self._segment(t)
        return _hermite(t, self.t[i], self.t[i + 1], self.psi[i], self.psi[i + 1],
                        self.dpsi[i], self.dpsi[i + 1])

    def phi_at(self, t: float) -> float:
        return self.params.phi0 + self.u_at(t)

    def interpolate(self, t: float) -> PhaseState:
        return PhaseState(self.phi_at(t), self.psi_at(t), t)


def _advance(params, t0, u0, psi0, t_max, rel_tol, abs_tol, *,
             conv_tol=None, max_crossings=None, h_max=_H_MAX):
    """Adaptive DP5(4) driver in deviation coordinates.

    Error is measured against abs_tol + rel_tol * |state|, where |state| is
    the max-norm over both components; using the joint norm keeps the scale
    well defined when psi passes through zero.
    """
    field = _offset_field(params)
    phi0 = params.phi0
    blowup_at = _BLOWUP_FACTOR * phi0
    if math.hypot(phi0 + u0, psi0) > blowup_at:
        raise BlowupDetected(
            f"initial state lies outside the bounded region for "
            f"(n,p,k)=({params.n},{params.p},{params.k})"
        )

    ts = [t0]
    us = [u0]
    psis = [psi0]
    du, dpsi = field(u0, psi0)
    dpsis = [dpsi]

    t, u, psi = t0, u0, psi0
    k1 = (du, dpsi)
    h = 1e-3
    err_prev = 1.0
    crossings = 0
    reason = None
    # PI controller exponents for an order-4 error estimate
    alpha, beta = 0.17, 0.04

    while True:
        if t >= t_max:
            reason = Termination.MAX_TIME
            break
        h = min(h, h_max)
        # clamp the final step and land on t_max exactly
        remaining = t_max - t
        is_last = h >= remaining
        if is_last:
            h = remaining

        # one embedded step; an overflowing stage counts as an infinite error
        try:
            ku = [k1[0], 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
            kp = [k1[1], 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
            for i in range(1, 7):
                a = _DP_A[i]
                su = 0.0
                sp = 0.0
                for j in range(i):
                    su += a[j] * ku[j]
                    sp += a[j] * kp[j]
                ku[i], kp[i] = field(u + h * su, psi + h * sp)
            # row 6 of A is the 5th-order solution; stage 7 evaluated there (FSAL)
            a6 = _DP_A[6]
            u_new = u + h * (a6[0] * ku[0] + a6[2] * ku[2] + a6[3] * ku[3]
                             + a6[4] * ku[4] + a6[5] * ku[5])
            psi_new = psi + h * (a6[0] * kp[0] + a6[2] * kp[2] + a6[3] * kp[3]
                                 + a6[4] * kp[4] + a6[5] * kp[5])
            ku[6], kp[6] = field(u_new, psi_new)

            err_u = 0.0
            err_p = 0.0
            for j in range(7):
                err_u += _DP_E[j] * ku[j]
                err_p += _DP_E[j] * kp[j]
            err_u *= h
            err_p *= h
        except OverflowError:
            err_u = err_p = math.inf
            u_new = psi_new = math.inf

        norm = max(abs(u), abs(psi), abs(u_new), abs(psi_new))
        scale = abs_tol + rel_tol * norm
        if scale <= 0.0 or not math.isfinite(scale):
            scale = 5e-324
        err = max(abs(err_u), abs(err_p)) / scale
        if not (math.isfinite(u_new) and math.isfinite(psi_new)):
            err = math.inf

        if err <= 1.0:
            # accept
            if err == 0.0:
                fac = 10.0
            else:
                fac = 0.9 * err ** (-alpha) * err_prev ** beta
            err_prev = max(err, 1e-4)
            t = t_max if is_last else t + h
            if psi * psi_new < 0.0:
                crossings += 1
            u, psi = u_new, psi_new
            k1 = (ku[6], kp[6])
            ts.append(t)
            us.append(u)
            psis.append(psi)
            dpsis.append(kp[6])

            if math.hypot(phi0 + u, psi) > blowup_at:
                raise BlowupDetected(
                    f"state left the bounded region at t={t:.6g} for "
                    f"(n,p,k)=({params.n},{params.p},{params.k})"
                )
            amp = max(abs(u), abs(psi))
            if conv_tol is not None and math.hypot(u, psi) < conv_tol:
                reason = Termination.CONVERGED_TO_P1
                break
            if amp < _DEEP_FLOOR:
                reason = Termination.CONVERGED_TO_P1
                break
            if max_crossings is not None and crossings >= max_crossings:
                reason = Termination.MAX_CROSSINGS
                break
            h = min(h * min(fac, 10.0), h_max)
        else:
            h = h * max(0.2, 0.9 * err ** -0.2)
            err_prev = 1.0
            if h < _H_MIN:
                raise RuntimeError(f"step size underflow at t={t:.6g}")

    return ts, us, psis, dpsis, reason


def shoot_unstable_manifold(params: LomseParams,
                            eps: float = DEFAULT_EPS,
                            t_max: float = DEFAULT_T_MAX,
                            max_crossings: int = DEFAULT_MAX_CROSSINGS,
                            rel_tol: float = DEFAULT_REL_TOL,
                            abs_tol: float = 0.0,
                            conv_tol: float = DEFAULT_CONV_TOL) -> Trajectory:
    """Launch from eps * V1/|V1| off the saddle and integrate forward.

    The start time is calibrated as t_start = log(eps)/(k-1) so that the
    O(e^{(k-1)t}) growth of phi matches t: near launch phi ~ e^{(k-1)t}
    up to the constant 1/|V1|.

    Termination: distance to (phi0, 0) below conv_tol for the real-eigenvalue
    type; max_crossings psi sign changes for the spiral type; t_max otherwise.

    abs_tol defaults to 0 (pure relative control): the spiral must stay
    accurate relative to its own amplitude far below any fixed absolute
    tolerance, while for states of order one the behaviour is identical
    to the (1e-10, 1e-12) pair.
    """
    if eps <= 0.0:
        raise EpsNonpositive(f"eps must be > 0, got {eps}")
    mu1 = params.k - 1
    norm_v1 = math.sqrt(1.0 + mu1 * mu1)
    phi_start = eps / norm_v1
    psi_start = eps * mu1 / norm_v1
    t_start = math.log(eps) / mu1

    type_one = params.stability is StabilityType.CENTER_TYPE_I
    ts, us, psis, dpsis, reason = _advance(
        params,
        t_start,
        phi_start - params.phi0,
        psi_start,
        t_max,
        rel_tol,
        abs_tol,
        conv_tol=conv_tol if type_one else None,
        max_crossings=None if type_one else max_crossings,
    )
    return Trajectory(params, ts, us, psis, dpsis, eps, (rel_tol, abs_tol), reason)


def adaptive_integrate(params: LomseParams,
                       state0: PhaseState,
                       t_end: float,
                       rel_tol: float = DEFAULT_REL_TOL,
                       abs_tol: float = DEFAULT_ABS_TOL) -> Trajectory:
    """Adaptive integration from an arbitrary interior state to t_end."""
    if t_end <= state0.t:
        raise ValueError(f"t_end={t_end} must exceed state0.t={state0.t}")
    ts, us, psis, dpsis, reason = _advance(
        params, state0.t, state0.phi - params.phi0, state0.psi,
        t_end, rel_tol, abs_tol,
    )
    return Trajectory(params, ts, us, psis, dpsis, None, (rel_tol, abs_tol), reason)


def detect_psi_zeros(traj: Trajectory) -> list[PsiZero]:
    """Refine every sign change of psi on the dense output; increasing t."""
    if len(traj) < 2:
        raise ValueError("need at least 2 trajectory states")
    zeros: list[PsiZero] = []
    psi = traj.psi
    t = traj.t
    for i in range(len(t) - 1):
        if psi[i] * psi[i + 1] < 0.0:
            tz = float(_bisect(traj.psi_at, t[i], t[i + 1], psi[i], psi[i + 1]))
            offset = float(traj.u_at(tz))
            direction = -1 if psi[i] > 0.0 else 1
            zeros.append(PsiZero(t=tz, phi=traj.params.phi0 + offset,
                                 phi_offset=offset, direction=direction))
    return zeros


def detect_phi_hits(traj: Trajectory, target: float) -> list[PhiHit]:
    """All refined solutions of phi(t) = target along the trajectory."""
    if target <= 0.0:
        raise ValueError(f"target must be > 0, got {target}")
    u_target = target - traj.params.phi0
    g = traj.u - u_target
    t = traj.t
    hits: list[PhiHit] = []
    for i in range(len(t) - 1):
        if g[i] == 0.0:
            if i == 0 or g[i - 1] != 0.0:
                hits.append(PhiHit(t=float(t[i]), dilation=math.exp(t[i])))
        elif g[i] * g[i + 1] < 0.0:
            tz = float(_bisect(lambda s: traj.u_at(s) - u_target,
                               t[i], t[i + 1], g[i], g[i + 1]))
            hits.append(PhiHit(t=tz, dilation=math.exp(tz)))
    if len(t) >= 2 and g[-1] == 0.0 and g[-2] != 0.0:
        hits.append(PhiHit(t=float(t[-1]), dilation=math.exp(t[-1])))
    return hits


def crossing_report(traj: Trajectory, target: float | None = None) -> CrossingReport:
    if target is None:
        target = traj.params.phi0
    return CrossingReport(
        psi_zeros=detect_psi_zeros(traj),
        phi_hits=detect_phi_hits(traj, target),
        target=target,
    )


def reference_integrate(params: LomseParams,
                        state0: PhaseState,
                        t_end: float,
                        h: float = 1e-5) -> PhaseState:
    """Classical fixed-step RK4 oracle in plain (phi, psi) coordinates.

    Used only as an independent cross-check of the adaptive path; shares
    no code with it (textbook f1/f2, no deviation variables).
    """
    if h <= 0.0:
        raise ValueError(f"h must be > 0, got {h}")
    if t_end < state0.t:
        raise ValueError("backward integration not supported")
    n, p = params.n, params.p
    lam2 = params.lambda_sq
    n_minus_p = float(n - p)
    blowup_at = _BLOWUP_FACTOR * params.phi0

    def f(phi, psi):
        den = 1.0 + lam2 * phi * phi
        f1v = (lam2 - 1.0) * p / den - n_minus_p
        f2v = n_minus_p + p / den
        return psi, -psi - (f2v * psi - f1v * phi) * (1.0 + (phi + psi) ** 2)

    t, phi, psi = state0.t, state0.phi, state0.psi
    remaining = t_end - t
    n_steps = max(1, math.ceil(remaining / h)) if remaining > 0.0 else 0
    if n_steps:
        hh = remaining / n_steps
        for _ in range(n_steps):
            k1u, k1p = f(phi, psi)
            k2u, k2p = f(phi + 0.5 * hh * k1u, psi + 0.5 * hh * k1p)
            k3u, k3p = f(phi + 0.5 * hh * k2u, psi + 0.5 * hh * k2p)
            k4u, k4p = f(phi + hh * k3u, psi + hh * k3p)
            phi += hh * (k1u + 2.0 * k2u + 2.0 * k3u + k4u) / 6.0
            psi += hh * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0
            if abs(phi) > blowup_at or abs(psi) > blowup_at:
                raise BlowupDetected("reference RK4 left the bounded region")
    return PhaseState(phi, psi, t_end)
