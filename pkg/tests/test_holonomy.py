"""Holonomy invariances on the icosahedral sphere and discrete Stokes."""

import cmath
import random

import pytest

from gerbecalc.deligne import (
    DeligneCochain,
    DeligneError,
    _face_domain,
    cochain_add,
    deligne_differential,
    zero_cochain,
)
from gerbecalc.holonomy import (
    ChartAssignment,
    HolonomyError,
    random_assignment,
    restrict_to_boundary,
    stokes_check,
    surface_holonomy,
)
from gerbecalc.nerve import CoveredComplex, coned_ball, icosahedron, vertex_star_cover


def random_gauge(nerve, cc, rng):
    """Random degree-1 data (h, W): per-vertex U(1) lifts and edge forms."""
    c0 = {
        f: {s: rng.random() for s in _face_domain(cc, f, 0)}
        for f in nerve.faces_of_size(2)
    }
    c1 = {
        f: {s: rng.uniform(-2, 2) for s in _face_domain(cc, f, 1)}
        for f in nerve.faces_of_size(1)
    }
    return DeligneCochain(nerve=nerve, degree=1, level=2, components=(c0, c1), complex=cc)


def trivial_gerbe(nerve, cc, rho):
    """(g, A, B) = (0, 0, rho restricted chart-wise)."""
    z = zero_cochain(nerve, 2, 2, complex=cc)
    b = {
        f: {s: rho[s] for s in _face_domain(cc, f, 2)}
        for f in nerve.faces_of_size(1)
    }
    return DeligneCochain(
        nerve=nerve, degree=2, level=2,
        components=(z.components[0], z.components[1], b), complex=cc,
    )


@pytest.fixture(scope="module")
def sphere_setup():
    cc = icosahedron()
    nerve = cc.nerve()
    rng = random.Random(11)
    asg = random_assignment(cc, rng)
    return cc, nerve, asg


def test_zero_cochain_gives_unit_holonomy(sphere_setup):
    cc, nerve, asg = sphere_setup
    hol = surface_holonomy(cc, zero_cochain(nerve, 2, 2, complex=cc), asg)
    assert abs(hol - 1) < 1e-12


def test_trivial_gerbe_reduces_to_global_integral(sphere_setup):
    cc, nerve, asg = sphere_setup
    rng = random.Random(12)
    rho = {t: rng.uniform(-1, 1) for t in cc.tri_keys}
    hol = surface_holonomy(cc, trivial_gerbe(nerve, cc, rho), asg)
    oriented_sum = sum(cc.tri_sign[t] * rho[t] for t in cc.tri_keys)
    expected = cmath.exp(2j * cmath.pi * oriented_sum)
    assert abs(hol - expected) < 1e-12


def test_gauge_invariance(sphere_setup):
    cc, nerve, asg = sphere_setup
    rng = random.Random(13)
    rho = {t: rng.uniform(-1, 1) for t in cc.tri_keys}
    base = cochain_add(
        trivial_gerbe(nerve, cc, rho),
        deligne_differential(random_gauge(nerve, cc, rng)),
    )
    ref = surface_holonomy(cc, base, asg)
    assert abs(abs(ref) - 1) < 1e-12
    for _ in range(20):
        shifted = cochain_add(base, deligne_differential(random_gauge(nerve, cc, rng)))
        assert abs(surface_holonomy(cc, shifted, asg) - ref) < 1e-9


def test_assignment_independence(sphere_setup):
    cc, nerve, asg = sphere_setup
    rng = random.Random(14)
    rho = {t: rng.uniform(-1, 1) for t in cc.tri_keys}
    c = cochain_add(
        trivial_gerbe(nerve, cc, rho),
        deligne_differential(random_gauge(nerve, cc, rng)),
    )
    ref = surface_holonomy(cc, c, asg)
    for _ in range(20):
        other = random_assignment(cc, rng)
        assert abs(surface_holonomy(cc, c, other) - ref) < 1e-9


def test_multiplicativity(sphere_setup):
    cc, nerve, asg = sphere_setup
    rng = random.Random(15)

    def random_cocycle():
        rho = {t: rng.uniform(-1, 1) for t in cc.tri_keys}
        return cochain_add(
            trivial_gerbe(nerve, cc, rho),
            deligne_differential(random_gauge(nerve, cc, rng)),
        )

    c1, c2 = random_cocycle(), random_cocycle()
    lhs = surface_holonomy(cc, cochain_add(c1, c2), asg)
    rhs = surface_holonomy(cc, c1, asg) * surface_holonomy(cc, c2, asg)
    assert abs(lhs - rhs) < 1e-9


def test_orientation_reversal_conjugates(sphere_setup):
    cc, nerve, asg = sphere_setup
    rng = random.Random(16)
    rho = {t: rng.uniform(-1, 1) for t in cc.tri_keys}
    c = cochain_add(
        trivial_gerbe(nerve, cc, rho),
        deligne_differential(random_gauge(nerve, cc, rng)),
    )
    flipped = vertex_star_cover(
        CoveredComplex(
            dim=2,
            triangles=[(a, c_, b) for a, b, c_ in cc.triangles],
            coords=cc.coords,
        )
    )
    c_flip = DeligneCochain(
        nerve=nerve, degree=2, level=2, components=c.components, complex=flipped
    )
    hol = surface_holonomy(cc, c, asg)
    hol_rev = surface_holonomy(flipped, c_flip, asg)
    assert abs(hol_rev - hol.conjugate()) < 1e-9


def test_invalid_assignment_rejected(sphere_setup):
    cc, nerve, asg = sphere_setup
    bad_tri = dict(asg.triangle_chart)
    t0 = cc.tri_keys[0]
    bad_tri[t0] = next(
        i for i in nerve.indices if i not in cc.charts_of(t0)
    )
    bad = ChartAssignment(triangle_chart=bad_tri, vertex_chart=asg.vertex_chart)
    with pytest.raises(HolonomyError):
        surface_holonomy(cc, zero_cochain(nerve, 2, 2, complex=cc), bad)


# -- Stokes ---------------------------------------------------------------


@pytest.fixture(scope="module")
def ball_setup():
    ball = coned_ball(icosahedron())
    nerve = ball.nerve()
    return ball, nerve


def ball_trivial_gerbe(ball, nerve, b_global):
    z = zero_cochain(nerve, 2, 2, complex=ball)
    b = {
        f: {s: b_global[s] for s in _face_domain(ball, f, 2)}
        for f in nerve.faces_of_size(1)
    }
    c = DeligneCochain(
        nerve=nerve, degree=2, level=2,
        components=(z.components[0], z.components[1], b), complex=ball,
    )
    H = {}
    for tet in ball.tet_keys:
        H[tet] = sum(
            (-1) ** j * b_global[tuple(x for m, x in enumerate(tet) if m != j)]
            for j in range(4)
        )
    return c, H


def test_stokes_zero_data(ball_setup):
    ball, nerve = ball_setup
    rng = random.Random(20)
    b0 = {t: 0.0 for t in ball.tri_keys}
    c, H = ball_trivial_gerbe(ball, nerve, b0)
    boundary, _ = restrict_to_boundary(ball, c)
    asg = random_assignment(boundary, rng)
    hb, bulk, agree = stokes_check(ball, c, H, asg)
    assert agree and abs(hb - 1) < 1e-9 and abs(bulk - 1) < 1e-12


def test_stokes_trivial_gerbe_random_b(ball_setup):
    ball, nerve = ball_setup
    rng = random.Random(21)
    boundary = ball.boundary_surface()
    for _ in range(10):
        b_global = {t: rng.uniform(-1, 1) for t in ball.tri_keys}
        c, H = ball_trivial_gerbe(ball, nerve, b_global)
        asg = random_assignment(boundary, rng)
        hb, bulk, agree = stokes_check(ball, c, H, asg)
        assert agree


def test_stokes_filling_ambiguity_is_integral(ball_setup):
    # change the filling by integers on the boundary and arbitrary values
    # inside: the bulk sum moves by an integer, the holonomy not at all
    ball, nerve = ball_setup
    rng = random.Random(22)
    boundary = ball.boundary_surface()
    boundary_tris = set(boundary.tri_keys)
    b1 = {t: rng.uniform(-1, 1) for t in ball.tri_keys}
    b2 = {
        t: b1[t] + (rng.randint(-2, 2) if t in boundary_tris else rng.uniform(-1, 1))
        for t in ball.tri_keys
    }
    c1, H1 = ball_trivial_gerbe(ball, nerve, b1)
    c2, H2 = ball_trivial_gerbe(ball, nerve, b2)
    asg = random_assignment(boundary, rng)
    hb1, bulk1, agree1 = stokes_check(ball, c1, H1, asg)
    hb2, bulk2, agree2 = stokes_check(ball, c2, H2, asg)
    assert agree1 and agree2
    assert abs(hb1 - hb2) < 1e-6
    gap = sum(
        ball.tet_sign[t] * (H2[t] - H1[t]) for t in ball.tet_keys
    )
    assert abs(gap - round(gap)) < 1e-9


def test_stokes_rejects_non_primitive(ball_setup):
    ball, nerve = ball_setup
    rng = random.Random(23)
    b_global = {t: rng.uniform(-1, 1) for t in ball.tri_keys}
    c, H = ball_trivial_gerbe(ball, nerve, b_global)
    H[ball.tet_keys[0]] += 0.5
    boundary = ball.boundary_surface()
    asg = random_assignment(boundary, rng)
    with pytest.raises(HolonomyError):
        stokes_check(ball, c, H, asg)
