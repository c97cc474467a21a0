"""Invariant differential forms on SU(n): the Maurer-Cartan form, the
canonical bi-invariant 3-form H with its calibration, quadrature of H over
SU(2), and a finite-difference exterior derivative for chart samplers.

Normalization: H evaluated on tangents (v1, v2, v3) at g is
kappa * <theta(v1), [theta(v2), theta(v3)]>  with <X, Y> = -trace(XY);
the wedge-convention factor 1/6 cancels against the 3! antisymmetrization.
kappa is fixed by requiring the integral of H over SU(2) to be exactly 1,
which pins kappa = 1 / (8 pi^2) for the -trace pairing.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np
from scipy.linalg import expm, expm_frechet

from ..nerve import perm_sign
from .core import (
    ExpChart,
    LieNumError,
    bracket,
    inner,
    pure_part,
    quat_conj,
    quat_mul,
)

FD_STEP_FIRST = 1e-5
FD_STEP_NESTED = 1e-3


def _project_algebra(x):
    """Nearest anti-hermitian traceless matrix (kills finite-difference dust)."""
    x = 0.5 * (x - x.conj().T)
    n = x.shape[0]
    return x - (np.trace(x) / n) * np.eye(n)


def _check_inside(chart, params, margin=0.0):
    bound = np.pi if chart.n == 2 else 0.9 * np.pi
    if np.linalg.norm(params) + margin >= bound:
        raise LieNumError("point outside the chart's injectivity bound")


def maurer_cartan(chart: ExpChart, params, direction, step: float = FD_STEP_FIRST):
    """theta(dg) = g^{-1} dg in the chart direction, by central differences."""
    params = np.asarray(params, dtype=float)
    direction = np.asarray(direction, dtype=float)
    _check_inside(chart, params, margin=step * np.linalg.norm(direction))
    g = chart.point(params)
    gp = chart.point(params + step * direction)
    gm = chart.point(params - step * direction)
    dg = (gp - gm) / (2 * step)
    return _project_algebra(np.linalg.solve(g, dg))


def maurer_cartan_exact(chart: ExpChart, params, direction):
    """Exact theta via the Frechet derivative of the matrix exponential."""
    params = np.asarray(params, dtype=float)
    _check_inside(chart, params)
    x = chart.algebra(params)
    dx = chart.algebra(np.asarray(direction, dtype=float))
    return _project_algebra(expm(-x) @ expm_frechet(x, dx, compute_expm=False))


def theta_su2(q, vq):
    """theta on SU(2) in quaternion form: tangent vq at unit quaternion q
    maps to the pure quaternion conj(q) * vq.  Vectorized over (..., 4)."""
    return pure_part(quat_mul(quat_conj(np.asarray(q)), np.asarray(vq)))


def eval_H(g, v1, v2, v3, kappa: float, gram_scale: float = 1.0):
    """Calibrated 3-form H on ambient tangent matrices v_i at g in SU(n).

    Explicitly antisymmetrized so the identity survives finite-difference
    tangents; on exact tangents the average is already the single term
    <theta(v1), [theta(v2), theta(v3)]>.
    """
    g = np.asarray(g, dtype=complex)
    xs = [_project_algebra(np.linalg.solve(g, np.asarray(v))) for v in (v1, v2, v3)]
    total = 0.0
    for p in permutations(range(3)):
        total += perm_sign(p) * inner(xs[p[0]], bracket(xs[p[1]], xs[p[2]]))
    return kappa * gram_scale * total / 6.0


def calibrate_H(gram_scale: float = 1.0) -> float:
    """kappa making the SU(2) integral of H exactly 1.

    By bi-invariance the integral equals the frame value at the identity on
    the unit-quaternion tangent frame (i, j, k) times the volume 2 pi^2 of
    the unit 3-sphere.  The frame value is computed, not transcribed.
    """
    e = np.array([1.0, 0, 0, 0])
    frame = [np.eye(4)[a] for a in (1, 2, 3)]
    us = [theta_su2(e, v) for v in frame]
    # <M(a), [M(b), M(c)]> = 4 det[a b c] under the quaternion dictionary
    frame_value = gram_scale * 4.0 * float(np.linalg.det(np.stack(us)))
    return 1.0 / (frame_value * 2.0 * np.pi**2)


def su2_hypersphere(res: int):
    """Midpoint grid on hyperspherical angles with analytic tangents.

    Returns (points q, tangents (t_chi, t_theta, t_phi), cell volume) with
    q = (cos chi, sin chi cos th, sin chi sin th cos ph, sin chi sin th sin ph),
    chi, th in [0, pi], ph in [0, 2 pi]; arrays of shape (N, 4).
    """
    chi = (np.arange(res) + 0.5) * np.pi / res
    th = (np.arange(res) + 0.5) * np.pi / res
    ph = (np.arange(res) + 0.5) * 2 * np.pi / res
    C, T, P = np.meshgrid(chi, th, ph, indexing="ij")
    c, t, p = C.ravel(), T.ravel(), P.ravel()
    sc, cc, st, ct, sp, cp = np.sin(c), np.cos(c), np.sin(t), np.cos(t), np.sin(p), np.cos(p)
    z = np.zeros_like(c)
    q = np.stack([cc, sc * ct, sc * st * cp, sc * st * sp], axis=-1)
    t_chi = np.stack([-sc, cc * ct, cc * st * cp, cc * st * sp], axis=-1)
    t_th = np.stack([z, -sc * st, sc * ct * cp, sc * ct * sp], axis=-1)
    t_ph = np.stack([z, z, -sc * st * sp, sc * st * cp], axis=-1)
    cell = (np.pi / res) * (np.pi / res) * (2 * np.pi / res)
    return q, (t_chi, t_th, t_ph), cell


def integrate_H_SU2(resolution: int, kappa: float | None = None,
                    gram_scale: float = 1.0) -> float:
    """Midpoint quadrature of the calibrated H over SU(2); converges to 1."""
    if resolution < 8:
        raise LieNumError("resolution below 8 per angle is too coarse")
    if kappa is None:
        kappa = calibrate_H(gram_scale)
    q, (t1, t2, t3), cell = su2_hypersphere(resolution)
    u1, u2, u3 = (theta_su2(q, t) for t in (t1, t2, t3))
    # H on the frame: kappa * 4 * det[u1 u2 u3] per point
    dens = 4.0 * np.linalg.det(np.stack([u1, u2, u3], axis=-2))
    return float(kappa * gram_scale * np.sum(dens) * cell)


def fd_exterior_derivative(sampler, point, directions, step: float = FD_STEP_NESTED):
    """(d alpha)(w_0, ..., w_k) at ``point`` on a flat chart.

    ``sampler(p, *k_tangents)`` evaluates the degree-k form alpha at chart
    point p on constant frame vectors.  Since the frame vectors commute,
    d alpha is the alternating sum of directional derivatives, each taken
    with central differences (second-order accurate in ``step``).
    """
    if not 1e-6 <= step <= 1e-2:
        raise LieNumError("finite-difference step must lie in [1e-6, 1e-2]")
    point = np.asarray(point, dtype=float)
    dirs = [np.asarray(w, dtype=float) for w in directions]
    total = 0.0
    for i, w in enumerate(dirs):
        rest = dirs[:i] + dirs[i + 1 :]
        plus = sampler(point + step * w, *rest)
        minus = sampler(point - step * w, *rest)
        total += (-1) ** i * (plus - minus) / (2 * step)
    return total
