"""Topological term of the WZW amplitude on SU(2): quadrature of the
calibrated pullback of H over a triangulated solid ball, and the standard
cap extensions used to test extension independence.

A map Phi from the closed unit ball into SU(2) is supplied as a vectorized
function from points of shape (N, 3) to unit quaternions of shape (N, 4);
it must be defined on a small collar around the ball so central differences
can be taken at the boundary.  The kinetic term is deliberately excluded:
only exp(2 pi i k Q) with Q = integral of Phi*H is computed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..nerve import icosahedron, subdivide_sphere
from .core import LieNumError, quat_conj, quat_mul
from .forms import calibrate_H

FD_STEP_MAP = 1e-5


@dataclass(frozen=True)
class BallQuadrature:
    """Prism cells over a geodesic sphere mesh: triangles x radial layers.

    Each cell is parameterized by x(r, s, t) = r (a + s (b - a) + t (c - a)),
    (s, t) in the unit triangle, r in a layer; the 3-form is sampled at the
    cell center on the coordinate frame, with the unit-triangle area 1/2
    as the (s, t) cell measure.
    """

    subdivisions: int = 5
    layers: int = 32

    def __post_init__(self):
        cc = icosahedron()
        for _ in range(self.subdivisions):
            cc = subdivide_sphere(cc)
        tris = np.array(
            [[cc.coords[v] for v in tri] for tri in cc.triangles]
        )  # (T, 3, 3)
        a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
        centroid = (a + b + c) / 3.0
        r_mid = (np.arange(self.layers) + 0.5) / self.layers
        # cell centers and coordinate tangents, flattened over (layer, tri)
        centers = (r_mid[:, None, None] * centroid[None, :, :]).reshape(-1, 3)
        t_r = np.broadcast_to(centroid[None], (self.layers,) + centroid.shape)
        t_s = r_mid[:, None, None] * (b - a)[None]
        t_t = r_mid[:, None, None] * (c - a)[None]
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "frame", tuple(
            t.reshape(-1, 3) for t in (t_r, t_s, t_t)
        ))
        object.__setattr__(self, "weight", 0.5 / self.layers)
        object.__setattr__(self, "boundary_points", np.array(
            [cc.coords[v] for v in sorted(cc.coords)]
        ))


def _check_unit_quaternions(q, what):
    if q.ndim != 2 or q.shape[1] != 4:
        raise LieNumError(f"{what} must return an (N, 4) quaternion array")
    if np.max(np.abs(np.sum(q * q, axis=1) - 1.0)) > 1e-8:
        raise LieNumError(f"{what} does not land on unit quaternions")


def pullback_H_integral(phi, quad: BallQuadrature, kappa: float | None = None,
                        step: float = FD_STEP_MAP) -> float:
    """Q = integral over the ball of the calibrated Phi*H."""
    if kappa is None:
        kappa = calibrate_H()
    x = quad.centers
    q = np.asarray(phi(x), dtype=float)
    _check_unit_quaternions(q, "the ball map")
    qbar = quat_conj(q)
    us = []
    for w in quad.frame:
        dq = (np.asarray(phi(x + step * w)) - np.asarray(phi(x - step * w))) / (2 * step)
        us.append(quat_mul(qbar, dq)[:, 1:])  # theta of the pushed tangent
    dens = 4.0 * np.linalg.det(np.stack(us, axis=-2))
    return float(kappa * np.sum(dens) * quad.weight)


def wzw_amplitude(phi, level: int, quad: BallQuadrature | None = None,
                  kappa: float | None = None) -> complex:
    """exp(2 pi i k Q) for the topological term Q of the map phi."""
    if level < 1 or int(level) != level:
        raise LieNumError("level must be a positive integer")
    if quad is None:
        quad = BallQuadrature()
    q = pullback_H_integral(phi, quad, kappa=kappa)
    return cmath.exp(2j * cmath.pi * level * q)


def amplitude_ratio(phi1, phi2, level: int, quad: BallQuadrature | None = None,
                    boundary_tol: float = 1e-8) -> complex:
    """Ratio of amplitudes of two extensions of the same boundary map.

    Raises if the two maps disagree on the boundary sphere; the ratio is
    exp(2 pi i k m) with m the degree of the glued sphere map.
    """
    if quad is None:
        quad = BallQuadrature()
    pts = quad.boundary_points
    b1 = np.asarray(phi1(pts))
    b2 = np.asarray(phi2(pts))
    if np.max(np.abs(b1 - b2)) > boundary_tol:
        raise LieNumError("extensions disagree on the boundary sphere")
    a1 = wzw_amplitude(phi1, level, quad)
    a2 = wzw_amplitude(phi2, level, quad)
    return a1 / a2


# -- standard test maps -----------------------------------------------------


def equatorial_boundary(x):
    """The boundary 2-sphere map x -> (0, x / |x|)."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1, keepdims=True)
    xhat = x / np.where(r > 0, r, 1.0)
    return np.concatenate([np.zeros_like(r), xhat], axis=-1)


def _cap(x, angle_of_r):
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1, keepdims=True)
    xhat = np.where(r > 1e-12, x / np.where(r > 0, r, 1.0), 0.0)
    a = angle_of_r(r)
    return np.concatenate([np.cos(a), np.sin(a) * xhat], axis=-1)


def northern_extension(x):
    """Extension through the northern hemisphere of S^3: r=0 at (1,0,0,0)."""
    return _cap(x, lambda r: (np.pi / 2) * r)


def southern_extension(x):
    """Extension through the southern hemisphere of S^3: r=0 at (-1,0,0,0)."""
    return _cap(x, lambda r: np.pi - (np.pi / 2) * r)


def constant_map(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape[:-1] + (4,))
    out[..., 0] = 1.0
    return out
