"""Concrete witness map: the complex Hopf fibration S^3 -> S^2, numeric
singular values of sphere maps, and the minimality angle condition.

Writing x in S^3 as a complex pair (z1, z2) = (x1 + i x2, x3 + i x4),

    H(x) = (2 Re(z1 conj(z2)), 2 Im(z1 conj(z2)), |z1|^2 - |z2|^2),

which lands on the unit 2-sphere because 4|z1 z2|^2 + (|z1|^2-|z2|^2)^2
= (|z1|^2 + |z2|^2)^2.  Its differential has singular values (2, 2, 0)
everywhere: the fibration submerges onto the 1/2-radius sphere, and
rescaling to the unit sphere doubles horizontal lengths.  Any isometric
conjugate of this formula is an equally valid witness, so all checks
here are conjugation invariant (norms, singular values, angle sums).

Jacobians are finite-difference: central differences along unit tangent
directions, renormalized to stay on the sphere, with the image increment
projected onto the tangent space at the image point.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NotOnSphere, StepOutOfRange
from .params import LomseParams

_SPHERE_TOL = 1e-9
_H_LO, _H_HI = 1e-8, 1e-3


def _check_unit(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > _SPHERE_TOL:
        raise NotOnSphere(f"|x| = {np.linalg.norm(x)} is not 1")
    return x


def hopf_map(x) -> np.ndarray:
    """The Hopf fibration S^3 -> S^2."""
    x = _check_unit(x)
    if x.shape != (4,):
        raise ValueError(f"expected a point of S^3 in R^4, got shape {x.shape}")
    z1 = complex(x[0], x[1])
    z2 = complex(x[2], x[3])
    w = z1 * z2.conjugate()
    return np.array([2.0 * w.real, 2.0 * w.imag, abs(z1) ** 2 - abs(z2) ** 2])


def sphere_tangent_basis(x: np.ndarray) -> np.ndarray:
    """Columns: a deterministic orthonormal basis of the tangent space at x."""
    x = np.asarray(x, dtype=float)
    d = len(x)
    # complete x with standard basis vectors, dropping the most parallel one
    drop = int(np.argmax(np.abs(x)))
    cols = [x] + [np.eye(d)[j] for j in range(d) if j != drop]
    q, _ = np.linalg.qr(np.column_stack(cols))
    return q[:, 1:]


def map_differential(map_fn, x, h: float = 1e-5) -> np.ndarray:
    """Finite-difference pushforward matrix between tangent spaces.

    Column j is the image of the j-th tangent basis vector: central
    difference of map_fn along the renormalized great-circle chord,
    projected onto the tangent space of the image sphere.
    """
    if not _H_LO < h < _H_HI:
        raise StepOutOfRange(f"h must be in ({_H_LO}, {_H_HI}), got {h}")
    x = _check_unit(x)
    fx = np.asarray(map_fn(x), dtype=float)
    basis = sphere_tangent_basis(x)
    cols = []
    for j in range(basis.shape[1]):
        v = basis[:, j]
        xp = x + h * v
        xm = x - h * v
        fp = np.asarray(map_fn(xp / np.linalg.norm(xp)), dtype=float)
        fm = np.asarray(map_fn(xm / np.linalg.norm(xm)), dtype=float)
        dv = (fp - fm) / (2.0 * h)
        dv = dv - fx * np.dot(fx, dv)
        cols.append(dv)
    return np.column_stack(cols)


def numeric_singular_values(map_fn, x, h: float = 1e-5) -> np.ndarray:
    """Singular values of the tangent-space differential, sorted descending,
    via symmetric eigendecomposition of the Gram matrix J^T J."""
    jac = map_differential(map_fn, x, h)
    gram = jac.T @ jac
    eigs = np.linalg.eigvalsh(gram)
    return np.sqrt(np.clip(eigs, 0.0, None))[::-1]


def condition_b_sum(map_fn, x, theta: float, h: float = 1e-5) -> float:
    """sum_j 1/(cos^2 theta + sin^2 theta lambda_j^2) over all n singular
    values at x; equals n exactly at the minimality angle."""
    c2 = math.cos(theta) ** 2
    s2 = math.sin(theta) ** 2
    sv = numeric_singular_values(map_fn, x, h)
    return float(np.sum(1.0 / (c2 + s2 * sv * sv)))


def random_sphere_points(dim: int, count: int, seed: int = 0) -> np.ndarray:
    """count rows of uniformly distributed unit vectors in R^dim."""
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(count, dim))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def condition_b_check(map_fn, params: LomseParams, sample_count: int = 100,
                      h: float = 1e-5, seed: int = 0) -> float:
    """Max |sum - n| of the angle condition over random sample points."""
    dim = params.n + 1
    pts = random_sphere_points(dim, sample_count, seed)
    worst = 0.0
    for x in pts:
        worst = max(worst, abs(condition_b_sum(map_fn, x, params.theta, h) - params.n))
    return worst


def cone_graph_eval(y, params: LomseParams) -> np.ndarray:
    """The degree-1 homogeneous cone graph map tan(theta) |y| H(y/|y|);
    Lipschitz but not C^1 at the origin.  Intended for (3,2,2) parameters,
    whose witness the Hopf map is."""
    y = np.asarray(y, dtype=float)
    norm = np.linalg.norm(y)
    if norm == 0.0:
        return np.zeros(3)
    return params.phi0 * norm * hopf_map(y / norm)
