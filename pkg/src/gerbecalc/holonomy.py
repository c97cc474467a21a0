"""Surface holonomy of a degree-2 Deligne cocycle over a triangulated
closed oriented surface, and the discrete Stokes identity on a
triangulated 3-complex with boundary.

The local formula folds three layers over the surface:

* a 2-form term B_{i(t)}(t) per triangle, in the chart assigned to it;
* a 1-form term A_{i(t+) i(t-)}(e) per edge, where t+ (t-) is the
  triangle whose oriented boundary contains the edge positively
  (negatively);
* a corner factor g_{i(t+) i(t-) i(w)} per (edge, endpoint) incidence,
  entering with sign +1 at the edge's head and -1 at its tail.

With this ordering the gauge variation telescopes away: the edge terms
absorb the per-triangle boundary of the 1-form shift, and the corner
terms around each vertex fan cancel in a closed cycle.

The result is exp(2pi i S).  The formula is pinned by its invariances
(gauge shifts, chart reassignment, trivial-gerbe reduction) rather than
by any printed reference; the corner sign convention above is frozen for
determinism.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .deligne import DeligneCochain, DeligneError, is_cocycle, perm_sign
from .nerve import ComplexError, CoveredComplex


class HolonomyError(ValueError):
    pass


@dataclass(frozen=True)
class ChartAssignment:
    """Chart choices i(t) per triangle and i(v) per vertex."""

    triangle_chart: dict  # tri_key -> nerve index
    vertex_chart: dict  # vertex -> nerve index

    def validate(self, cc: CoveredComplex, nerve):
        for t in cc.tri_keys:
            if t not in self.triangle_chart:
                raise HolonomyError(f"no chart assigned to triangle {t}")
            if self.triangle_chart[t] not in cc.charts_of(t):
                raise HolonomyError(f"assigned chart does not contain {t}")
        for v in cc.vertices:
            if v not in self.vertex_chart:
                raise HolonomyError(f"no chart assigned to vertex {v}")
            if self.vertex_chart[v] not in cc.charts_of((v,)):
                raise HolonomyError(f"assigned chart does not contain vertex {v}")
        for e, inc in cc.edge_tris.items():
            charts = {self.triangle_chart[t] for t, _ in inc}
            for w in e:
                charts_w = charts | {self.vertex_chart[w]}
                if not nerve.is_face(tuple(sorted(charts_w))):
                    raise HolonomyError(
                        f"assignment indexes an undeclared face at edge {e}"
                    )


def random_assignment(cc: CoveredComplex, rng) -> ChartAssignment:
    tri = {t: rng.choice(sorted(cc.charts_of(t))) for t in cc.tri_keys}
    vert = {v: rng.choice(sorted(cc.charts_of((v,)))) for v in cc.vertices}
    return ChartAssignment(triangle_chart=tri, vertex_chart=vert)


def _eval_on(val, simplex):
    """Value of a (possibly constant) simplicial cochain on a simplex."""
    if isinstance(val, dict):
        return val[simplex]
    return val


def _alternating(comp, indices, simplex=None):
    """Component value on an index tuple via the alternating extension."""
    if len(set(indices)) != len(indices):
        return 0
    face = tuple(sorted(indices))
    sign = perm_sign(indices)
    val = comp[face]
    if isinstance(val, dict):
        val = val[simplex]
    return sign * val


def holonomy_exponent(cc: CoveredComplex, c: DeligneCochain, asg: ChartAssignment):
    """The sum S with surface holonomy exp(2pi i S)."""
    if cc.dim != 2:
        raise HolonomyError("holonomy needs a closed oriented surface")
    cc.validate()
    if not is_cocycle(c, tol=0 if c.is_pure_nerve() else 1e-9):
        raise DeligneError("holonomy input is not a cocycle")
    if (c.degree, c.level) != (2, 2):
        raise DeligneError("holonomy needs a degree-2, level-2 cochain")
    asg.validate(cc, c.nerve)
    g_comp, a_comp, b_comp = c.components
    total = 0
    # values are stored on canonical (sorted) simplices; the surface
    # integral weights each by the orientation of its mesh triangle
    for t in cc.tri_keys:
        total += cc.tri_sign[t] * _eval_on(b_comp[(asg.triangle_chart[t],)], t)
    for e, inc in cc.edge_tris.items():
        (t1, s1), (t2, s2) = inc
        t_plus = t1 if s1 > 0 else t2
        t_minus = t2 if s1 > 0 else t1
        i_minus = asg.triangle_chart[t_minus]
        i_plus = asg.triangle_chart[t_plus]
        if i_minus != i_plus:
            total += _alternating(a_comp, (i_plus, i_minus), e)
        tail, head = e
        for w, eps in ((head, 1), (tail, -1)):
            total += eps * _alternating(
                g_comp, (i_plus, i_minus, asg.vertex_chart[w]), (w,)
            )
    return total


def surface_holonomy(cc, c, asg) -> complex:
    s = holonomy_exponent(cc, c, asg)
    if isinstance(s, Fraction):
        s = float(s % 1)
    return cmath.exp(2j * cmath.pi * s)


# -- discrete Stokes on a 3-complex with boundary --------------------------


def restrict_to_boundary(ball: CoveredComplex, c: DeligneCochain):
    """Restrict a geometric degree-2 cochain to the boundary surface."""
    boundary = ball.boundary_surface()
    nerve_b = boundary.nerve()
    from .deligne import _face_domain

    comps = []
    for k, comp in enumerate(c.components):
        new = {}
        for f in nerve_b.faces_of_size(2 - k + 1):
            val = comp[f]
            if isinstance(val, dict):
                new[f] = {s: val[s] for s in _face_domain(boundary, f, k)}
            else:
                new[f] = val
        comps.append(new)
    cb = DeligneCochain(
        nerve=nerve_b, degree=2, level=2, components=tuple(comps),
        complex=boundary,
    )
    return boundary, cb


def stokes_check(
    ball: CoveredComplex,
    c: DeligneCochain,
    H: dict,
    asg: ChartAssignment,
    tol: float = 1e-6,
    exactness_tol: float = 1e-9,
):
    """Compare boundary holonomy against exp(2pi i sum_tet H).

    ``c`` is a degree-2 cocycle over the nerve of the 3-complex whose
    2-form layer B is realized on all triangles; ``H`` assigns a value to
    each tetrahedron and must equal dB chart-wise.
    """
    if ball.dim != 3:
        raise HolonomyError("stokes_check needs a 3-complex")
    from .deligne import _face_domain

    b_comp = c.components[2]
    for (i,), val in b_comp.items():
        for tet in _face_domain(ball, (i,), 3):
            db = sum(
                (-1) ** j
                * _eval_on(val, tuple(x for m, x in enumerate(tet) if m != j))
                for j in range(4)
            )
            if abs(db - H[tet]) > exactness_tol:
                raise HolonomyError(
                    f"B is not a chart-wise primitive of H at {tet}"
                )
    boundary, cb = restrict_to_boundary(ball, c)
    hol_boundary = surface_holonomy(boundary, cb, asg)
    bulk_sum = sum(ball.tet_sign[tet] * H[tet] for tet in ball.tet_keys)
    if isinstance(bulk_sum, Fraction):
        bulk_sum = float(bulk_sum % 1)
    bulk = cmath.exp(2j * cmath.pi * bulk_sum)
    return hol_boundary, bulk, abs(hol_boundary - bulk) < tol
