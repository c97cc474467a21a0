"""Matrix and quaternion plumbing for special-unitary numerics.

Conventions fixed here and used throughout the subpackage:

* the Lie algebra su(n) consists of anti-hermitian traceless matrices;
* the basic inner product is <X, Y> = -trace(XY) (real on su(n));
* SU(2) is identified with the unit quaternions via
  w + xi + yj + zk  <->  [[w + ix, y + iz], [-y + iz, w - ix]],
  under which su(2) corresponds to the pure quaternions, the bracket to
  [u, v] = 2 u x v, and <.,.> to twice the Euclidean dot product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm, expm_frechet

TOL_STRUCT = 1e-12


class LieNumError(ValueError):
    pass


def check_algebra(x, tol=1e-10):
    x = np.asarray(x, dtype=complex)
    if np.linalg.norm(x + x.conj().T) > tol:
        raise LieNumError("matrix is not anti-hermitian")
    if abs(np.trace(x)) > tol:
        raise LieNumError("matrix is not traceless")
    return x


def check_group(g, tol=1e-10):
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    if np.linalg.norm(g @ g.conj().T - np.eye(n)) > tol:
        raise LieNumError("matrix is not unitary")
    if abs(np.linalg.det(g) - 1) > tol:
        raise LieNumError("matrix does not have unit determinant")
    return g


@dataclass(frozen=True)
class AlgebraVector:
    """Element of su(n): anti-hermitian traceless matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", check_algebra(self.matrix, TOL_STRUCT))


@dataclass(frozen=True)
class GroupPoint:
    """Element of SU(n), optionally with exponential-chart bookkeeping."""

    matrix: np.ndarray
    base: np.ndarray | None = None  # chart base point
    params: np.ndarray | None = None  # coordinates in the su(n) basis

    def __post_init__(self):
        object.__setattr__(self, "matrix", check_group(self.matrix, TOL_STRUCT))
        if self.params is not None:
            n = self.matrix.shape[0]
            bound = np.pi if n == 2 else 0.9 * np.pi
            if np.linalg.norm(self.params) >= bound:
                raise LieNumError("chart parameter outside the injectivity bound")


def inner(x, y):
    """Basic inner product <X, Y> = -trace(XY) on su(n)."""
    return float(np.real(-np.trace(np.asarray(x) @ np.asarray(y))))


def bracket(x, y):
    return x @ y - y @ x


def su_basis(n):
    """Real basis of su(n): i*(symmetric) and antisymmetric generators,
    plus diagonal i*(E_kk - E_{k+1,k+1})."""
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[a, b] = 1j
            m[b, a] = 1j
            out.append(m)
            m2 = np.zeros((n, n), dtype=complex)
            m2[a, b] = 1.0
            m2[b, a] = -1.0
            out.append(m2)
    for a in range(n - 1):
        m = np.zeros((n, n), dtype=complex)
        m[a, a] = 1j
        m[a + 1, a + 1] = -1j
        out.append(m)
    return out


def algebra_from_coords(coords, basis):
    m = np.zeros_like(basis[0])
    for c, b in zip(coords, basis):
        m = m + c * b
    return m


def random_algebra(n, rng, scale=1.0):
    basis = su_basis(n)
    coords = [rng.gauss(0, scale) for _ in basis]
    return algebra_from_coords(coords, basis)


def random_group(n, rng, scale=1.0):
    return expm(random_algebra(n, rng, scale))


@dataclass(frozen=True)
class ExpChart:
    """Exponential chart g(p) = base * exp(sum_a p_a E_a) on SU(n)."""

    n: int
    base: np.ndarray = None

    def __post_init__(self):
        base = np.eye(self.n, dtype=complex) if self.base is None else self.base
        object.__setattr__(self, "base", check_group(base, TOL_STRUCT))
        object.__setattr__(self, "basis", su_basis(self.n))

    def algebra(self, params):
        return algebra_from_coords(params, self.basis)

    def point(self, params):
        return self.base @ expm(self.algebra(params))

    def tangent_exact(self, params, dparams):
        """dg in the chart direction, via the exact Frechet derivative."""
        x = self.algebra(params)
        dx = self.algebra(dparams)
        return self.base @ expm_frechet(x, dx, compute_expm=False)


# -- SU(2) <-> quaternion dictionary ---------------------------------------


def quat_to_matrix(q):
    w, x, y, z = q
    return np.array(
        [[w + 1j * x, y + 1j * z], [-y + 1j * z, w - 1j * x]], dtype=complex
    )


def matrix_to_quat(g):
    g = np.asarray(g, dtype=complex)
    return np.array(
        [g[0, 0].real, g[0, 0].imag, g[0, 1].real, g[0, 1].imag]
    )


def quat_mul(p, q):
    """Hamilton product, vectorized over leading axes (shape (..., 4))."""
    pw, px, py, pz = np.moveaxis(p, -1, 0)
    qw, qx, qy, qz = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ],
        axis=-1,
    )


def quat_conj(q):
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def pure_part(q):
    return np.asarray(q)[..., 1:]
