"""Discrete Cech-Deligne cochains over a cover nerve.

A degree-p cochain at truncation level n has components c_0, ..., c_min(p,n):
c_0 assigns a U(1) value (stored additively, in turns) to each (p+1)-index
face; c_k for k >= 1 assigns a real simplicial k-cochain to each
(p-k+1)-index face.  In pure-nerve mode every value is a single number
(a constant-coefficient cochain) and the spatial differential d vanishes
identically; in geometric mode values are dicts over the k-simplices of
an underlying :class:`~gerbecalc.nerve.CoveredComplex` whose chart sets
contain the face.

The total differential is D(c)_k = delta(c_k) + (-1)^(p-k+1) d(c_{k-1}),
with d = dlog (branch wrapped into (-1/2, 1/2]) when it eats the U(1)
layer.  For the two truncation levels this specializes to
D(g, A) = (delta g, delta A - dlog g) in degree 1 and
D(g, A, B) = (delta g, delta A + dlog g, delta B - dA) in degree 2; the
sign flip between the two is pure degree parity, the same rule produces
both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .intlinalg import matvec, smith_normal_form, solve_rational
from .nerve import ComplexError, CoverNerve, CoveredComplex, perm_sign


class DeligneError(ValueError):
    pass


def _mod1(x):
    """Reduce a turn value into [0, 1)."""
    if isinstance(x, Fraction):
        return x % 1
    return x - math.floor(x)


def _wrap_half(x):
    """Wrap into the branch interval (-1/2, 1/2]."""
    y = _mod1(x)
    if isinstance(y, Fraction):
        return y - 1 if y > Fraction(1, 2) else y
    return y - 1.0 if y > 0.5 else y


def _is_integer(x, tol):
    if isinstance(x, (int, Fraction)):
        return _mod1(x) == 0 if tol == 0 else abs(_wrap_half(x)) <= tol
    return abs(_wrap_half(x)) <= tol


@dataclass(frozen=True)
class DeligneCochain:
    """Cech-Deligne cochain of total degree ``degree`` at level ``level``.

    ``components[k]`` maps each face of size degree - k + 1 to its value:
    a number in pure-nerve mode, or (geometric mode) a dict keyed by the
    k-simplices of ``complex`` carrying all the face's charts.  The c_0
    layer may also be realized as a per-vertex dict of turn values, which
    is what dlog differentiates.
    """

    nerve: CoverNerve
    degree: int
    level: int
    components: tuple  # tuple of dicts, components[k]: face -> value
    complex: CoveredComplex | None = None

    def __post_init__(self):
        if self.level not in (1, 2):
            raise DeligneError("truncation level must be 1 or 2")
        if self.degree < 0:
            raise DeligneError("degree must be >= 0")
        if len(self.components) != self.n_components:
            raise DeligneError(
                f"expected {self.n_components} components, got {len(self.components)}"
            )
        for k, comp in enumerate(self.components):
            size = self.degree - k + 1
            faces = set(self.nerve.faces_of_size(size))
            if set(comp) != faces:
                raise DeligneError(
                    f"component {k} must be defined on exactly the "
                    f"{size}-index faces"
                )
        # normalize the U(1) layer into [0, 1)
        c0 = self.components[0]
        fixed = {}
        for face, val in c0.items():
            if isinstance(val, dict):
                fixed[face] = {s: _mod1(x) for s, x in val.items()}
            else:
                fixed[face] = _mod1(val)
        object.__setattr__(
            self, "components", (fixed,) + tuple(self.components[1:])
        )

    @property
    def n_components(self):
        return min(self.degree, self.level) + 1

    def component(self, k):
        return self.components[k]

    def is_pure_nerve(self):
        return self.complex is None


# -- value algebra (scalars or simplex dicts) ------------------------------


def _vzero_like(val):
    if isinstance(val, dict):
        return {k: 0 for k in val}
    return 0


def _vadd(a, b):
    if isinstance(a, dict) or isinstance(b, dict):
        if not isinstance(a, dict):
            a = {k: a for k in b}
        if not isinstance(b, dict):
            b = {k: b for k in a}
        return {k: a[k] + b[k] for k in a.keys() & b.keys()}
    return a + b


def _vscale(s, a):
    if isinstance(a, dict):
        return {k: s * x for k, x in a.items()}
    return s * a


def _vmaxabs(a):
    if isinstance(a, dict):
        return max((abs(x) for x in a.values()), default=0)
    return abs(a)


def cochain_add(c1: DeligneCochain, c2: DeligneCochain) -> DeligneCochain:
    if c1.nerve is not c2.nerve and c1.nerve != c2.nerve:
        raise DeligneError("cochains live over different nerves")
    if (c1.degree, c1.level) != (c2.degree, c2.level):
        raise DeligneError("cochain degree/level mismatch")
    comps = tuple(
        {f: _vadd(a[f], b[f]) for f in a}
        for a, b in zip(c1.components, c2.components)
    )
    return DeligneCochain(
        nerve=c1.nerve,
        degree=c1.degree,
        level=c1.level,
        components=comps,
        complex=c1.complex or c2.complex,
    )


def cochain_scale(s, c: DeligneCochain) -> DeligneCochain:
    comps = tuple({f: _vscale(s, v) for f, v in comp.items()} for comp in c.components)
    return DeligneCochain(
        nerve=c.nerve, degree=c.degree, level=c.level, components=comps,
        complex=c.complex,
    )


def cochain_neg(c: DeligneCochain) -> DeligneCochain:
    return cochain_scale(-1, c)


def cochain_sub(c1, c2):
    return cochain_add(c1, cochain_neg(c2))


def zero_cochain(nerve, degree, level, complex=None) -> DeligneCochain:
    comps = []
    for k in range(min(degree, level) + 1):
        faces = nerve.faces_of_size(degree - k + 1)
        comp = {}
        for f in faces:
            if complex is not None and k >= 1:
                comp[f] = {s: 0 for s in _face_domain(complex, f, k)}
            else:
                comp[f] = Fraction(0) if complex is None else 0.0
        comps.append(comp)
    return DeligneCochain(
        nerve=nerve, degree=degree, level=level, components=tuple(comps),
        complex=complex,
    )


# -- geometric domains -----------------------------------------------------


def _face_domain(cc: CoveredComplex, face, k):
    """k-simplices of the complex carried by every chart in ``face``."""
    cache = getattr(cc, "_domain_cache", None)
    if cache is None:
        cache = {}
        cc._domain_cache = cache
    key = (tuple(face), k)
    if key not in cache:
        if k == 0:
            simps = [(v,) for v in cc.vertices]
        elif k == 1:
            simps = cc.edges
        elif k == 2:
            simps = cc.tri_keys
        else:
            simps = cc.tet_keys
        fs = set(face)
        cache[key] = tuple(s for s in simps if fs <= cc.charts_of(s))
    return cache[key]


def _space_d(cc: CoveredComplex, val, k_out, face):
    """Simplicial coboundary of a (k_out-1)-form value, restricted to face.

    For k_out = 1 the input is the U(1) layer: constants differentiate to
    zero, per-vertex turn dicts differentiate to wrap(t(v) - t(u)).
    """
    dom = _face_domain(cc, face, k_out)
    if not isinstance(val, dict):
        return {s: 0 for s in dom}
    if k_out == 1:
        # U(1) layer realized per vertex (keys are singleton tuples)
        return {(u, v): _wrap_half(val[(v,)] - val[(u,)]) for u, v in dom}
    if k_out == 2:
        out = {}
        for a, b, c in dom:
            out[(a, b, c)] = val[(a, b)] + val[(b, c)] - val[(a, c)]
        return out
    if k_out == 3:
        out = {}
        for tk in dom:
            out[tk] = sum(
                (-1) ** i * val[tuple(x for j, x in enumerate(tk) if j != i)]
                for i in range(4)
            )
        return out
    raise DeligneError(f"unsupported form degree {k_out}")


def _restrict(cc, val, face, k):
    if cc is None or not isinstance(val, dict):
        return val
    return {s: val[s] for s in _face_domain(cc, face, k)}


# -- differential ----------------------------------------------------------


def deligne_differential(c: DeligneCochain) -> DeligneCochain:
    p = c.degree
    n = c.level
    cc = c.complex
    out = []
    for k in range(min(p + 1, n) + 1):
        faces = c.nerve.faces_of_size(p - k + 2)
        comp = {}
        for J in faces:
            total = None
            if k <= min(p, n):
                src = c.components[k]
                for j in range(len(J)):
                    sub = J[:j] + J[j + 1 :]
                    term = _vscale((-1) ** j, _restrict(cc, src[sub], J, k))
                    total = term if total is None else _vadd(total, term)
            if 1 <= k and k - 1 <= min(p, n):
                prev = c.components[k - 1][J]
                sign = (-1) ** (p - k + 1)
                if cc is not None:
                    term = _vscale(sign, _space_d(cc, prev, k, J))
                    total = term if total is None else _vadd(total, term)
                # pure-nerve mode: d vanishes on constants
            if total is None:
                total = (
                    {s: 0 for s in _face_domain(cc, J, k)}
                    if cc is not None and k >= 1
                    else Fraction(0) if cc is None else 0.0
                )
            comp[J] = total
        out.append(comp)
    return DeligneCochain(
        nerve=c.nerve, degree=p + 1, level=n, components=tuple(out), complex=cc
    )


def is_cocycle(c: DeligneCochain, tol=0) -> bool:
    """True iff every component of D(c) vanishes.

    The U(1) layer is tested modulo 1.  In geometric mode the form layers
    are also tested modulo 1 (integer ambiguities arise from the dlog
    branch and exponentiate away); in pure-nerve mode they must vanish
    exactly up to tol.
    """
    dc = deligne_differential(c)
    for k, comp in enumerate(dc.components):
        for val in comp.values():
            entries = val.values() if isinstance(val, dict) else (val,)
            for x in entries:
                if k == 0 or c.complex is not None:
                    if not _is_integer(x, tol):
                        return False
                else:
                    if abs(x) > tol:
                        return False
    return True


# -- nerve cohomology and the obstruction class ----------------------------


@lru_cache(maxsize=None)
def _coboundary_matrix(nerve: CoverNerve, degree: int):
    """Integer matrix of delta: C^degree -> C^(degree+1) on the nerve."""
    src = nerve.faces_of_size(degree + 1)
    dst = nerve.faces_of_size(degree + 2)
    idx = {f: i for i, f in enumerate(src)}
    mat = [[0] * len(src) for _ in dst]
    for r, J in enumerate(dst):
        for j in range(len(J)):
            sub = J[:j] + J[j + 1 :]
            mat[r][idx[sub]] += (-1) ** j
    return src, dst, mat


def cech_cohomology(nerve: CoverNerve, degree: int):
    """(free rank, torsion coefficients) of H^degree(nerve; Z)."""
    if degree < 0:
        raise DeligneError("degree must be >= 0")
    n_k = len(nerve.faces_of_size(degree + 1))
    if n_k == 0:
        return 0, []
    _, _, d_next = _coboundary_matrix(nerve, degree)
    if degree == 0:
        d_prev = []
    else:
        _, _, d_prev = _coboundary_matrix(nerve, degree - 1)
    from .intlinalg import cochain_cohomology

    return cochain_cohomology(d_prev, d_next, n_k)


@lru_cache(maxsize=None)
def _snf_of_coboundary(nerve: CoverNerve, degree: int):
    src, dst, mat = _coboundary_matrix(nerve, degree)
    if not dst or not src:
        return src, dst, mat, None
    d, u, v = smith_normal_form(mat)
    return src, dst, mat, (d, u, v)


@dataclass(frozen=True)
class CohomologyClass:
    """A class in H^k(nerve; Z), in coordinates fixed per nerve.

    ``coords[i]`` is taken modulo ``moduli[i]`` (0 means a free
    coordinate).  Coordinates come from the Smith transform of the
    incoming coboundary matrix, so equality/addition are well defined and
    the zero class is exactly the image of a coboundary.
    """

    nerve: CoverNerve
    codegree: int
    coords: tuple
    moduli: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "coords",
            tuple(
                x % m if m else x for x, m in zip(self.coords, self.moduli)
            ),
        )

    @property
    def is_zero(self):
        return all(x == 0 for x in self.coords)

    def __add__(self, other):
        if (self.nerve, self.codegree) != (other.nerve, other.codegree):
            raise DeligneError("classes live in different groups")
        return CohomologyClass(
            self.nerve,
            self.codegree,
            tuple(a + b for a, b in zip(self.coords, other.coords)),
            self.moduli,
        )

    def __neg__(self):
        return CohomologyClass(
            self.nerve, self.codegree, tuple(-x for x in self.coords), self.moduli
        )


def _class_of_cocycle(nerve, degree, vec):
    """Class of an integer ``degree``-cocycle given as a vector over faces."""
    src, dst, mat, snf = _snf_of_coboundary(nerve, degree - 1)
    if snf is None:
        # no incoming coboundaries: coordinates are the raw values
        return CohomologyClass(
            nerve, degree, tuple(vec), tuple(0 for _ in vec)
        )
    d, u, _ = snf
    y = matvec(u, vec)
    rank = sum(1 for x in d if x != 0)
    moduli = tuple(d[i] for i in range(rank)) + tuple(
        0 for _ in range(len(y) - rank)
    )
    return CohomologyClass(nerve, degree, tuple(y), moduli)


def dd_class(nerve: CoverNerve, g) -> CohomologyClass:
    """Obstruction class in H^3(nerve; Z) of a U(1)-valued Cech 2-cocycle.

    ``g`` maps each triple face to a rational turn value.  The class is
    the coboundary of a rational lift, an integer 3-cocycle, reduced
    modulo integer coboundaries.
    """
    triples = nerve.faces_of_size(3)
    if set(g) != set(triples):
        raise DeligneError("g must be defined on exactly the triple faces")
    quads = nerve.faces_of_size(4)
    n_vec = []
    for J in quads:
        total = Fraction(0)
        for j in range(len(J)):
            sub = J[:j] + J[j + 1 :]
            total += (-1) ** j * Fraction(g[sub])
        if total.denominator != 1:
            raise DeligneError(f"g is not a U(1) cocycle at face {J}")
        n_vec.append(int(total))
    return _class_of_cocycle(nerve, 3, n_vec)


# -- trivialization --------------------------------------------------------


@dataclass(frozen=True)
class TrivializationResult:
    trivialization: DeligneCochain | None  # degree-1 level-2 cochain (h, W)
    rho: object | None  # global 2-form component (scalar or simplex dict)
    obstruction: CohomologyClass | None
    reason: str = ""

    @property
    def ok(self):
        return self.trivialization is not None


def _solve_u1_layer(nerve, g):
    """Find h on pairs with delta(h) = -g mod 1, or None.

    Exact: integer lift via Smith normal form, then a rational solve.
    """
    pairs, triples, mat, snf = _snf_of_coboundary(nerve, 1)
    ghat = [Fraction(g[t]) for t in triples]
    if snf is None:
        if any(x % 1 != 0 for x in ghat):
            return None
        return {p: Fraction(0) for p in pairs}
    d, u, _ = snf
    y = matvec(u, [-x for x in ghat])
    rank = sum(1 for x in d if x != 0)
    # off-pivot coordinates must be integers, else no solution exists
    n_vec = [Fraction(0)] * rank + y[rank:]
    if any(x.denominator != 1 for x in n_vec[rank:]):
        return None
    # subtract an integer cochain so the target lies in the column space
    m = solve_rational(u, n_vec)
    rhs = [-ghat[i] - m[i] for i in range(len(triples))]
    h = solve_rational(mat, rhs)
    if h is None:
        return None
    return {p: val for p, val in zip(pairs, h)}


def solve_trivialization(c: DeligneCochain, tol=1e-9) -> TrivializationResult:
    """Solve (0, 0, rho) = c + D(h, W) for a degree-2, level-2 cocycle.

    Returns the trivializing cochain and the global curvature component
    rho, or the obstruction: the nonzero degree-3 class of the U(1) part
    when it fails to vanish, or a report that the real Cech class of the
    U(1)/form layers is nonintegral (possible on nerves with rational
    cohomology in low degree).
    """
    if (c.degree, c.level) != (2, 2):
        raise DeligneError("trivialization needs a degree-2, level-2 cochain")
    if not is_cocycle(c, tol=0 if c.is_pure_nerve() else tol):
        raise DeligneError("input is not a cocycle")
    if not c.is_pure_nerve():
        raise DeligneError("trivialization solving requires pure-nerve mode")
    nerve = c.nerve
    g = c.components[0]
    obstruction = dd_class(nerve, g)
    if not obstruction.is_zero:
        return TrivializationResult(
            None, None, obstruction, "nonzero degree-3 obstruction class"
        )
    h = _solve_u1_layer(nerve, g)
    if h is None:
        return TrivializationResult(
            None, None, obstruction,
            "U(1) layer has nonintegral real class; no trivialization",
        )
    # with D(h, W)_1 = delta(W) - dlog(h) and dlog = 0 on constants,
    # the form layer needs delta(W) = -A exactly
    pairs = nerve.faces_of_size(2)
    singles = nerve.faces_of_size(1)
    idx = {f: i for i, f in enumerate(singles)}
    mat = [[0] * len(singles) for _ in pairs]
    for r, (i, j) in enumerate(pairs):
        mat[r][idx[(j,)]] += 1
        mat[r][idx[(i,)]] -= 1
    a_comp = c.components[1]
    rhs = [Fraction(-a_comp[p]) for p in pairs]
    w = solve_rational(mat, rhs)
    if w is None:
        return TrivializationResult(
            None, None, obstruction,
            "form layer has nonzero real class; no trivialization",
        )
    w_map = {f: val for f, val in zip(singles, w)}
    triv = DeligneCochain(
        nerve=nerve, degree=1, level=2,
        components=({p: h[p] for p in pairs}, dict(w_map)),
    )
    # rho is the common value of B_i + (dW)_i; dW = 0 on constants
    b_comp = c.components[2]
    rho_vals = {f: b_comp[f] for f in singles}
    rho = rho_vals[singles[0]]
    if any(v != rho for v in rho_vals.values()):
        return TrivializationResult(
            None, None, obstruction,
            "curvature component is not globally constant",
        )
    return TrivializationResult(triv, rho, None)


def trivialization_defect(c, result, tol=1e-9):
    """Max-norm of (0, 0, rho) - c - D(h, W); U(1) layer modulo 1."""
    dt = deligne_differential(result.trivialization)
    total = cochain_add(c, dt)
    worst = 0
    for k, comp in enumerate(total.components):
        for f, val in comp.items():
            if k == total.n_components - 1:
                val = _vadd(val, _vscale(-1, result.rho))
            entries = val.values() if isinstance(val, dict) else (val,)
            for x in entries:
                err = abs(_wrap_half(x)) if k == 0 else abs(x)
                worst = max(worst, err)
    return worst


# -- random data (for tests and the CLI demo paths) ------------------------


def random_cochain(nerve, degree, level, rng, denominator=60) -> DeligneCochain:
    """Random pure-nerve cochain with rational values."""
    comps = []
    for k in range(min(degree, level) + 1):
        faces = nerve.faces_of_size(degree - k + 1)
        comps.append(
            {
                f: Fraction(rng.randrange(-3 * denominator, 3 * denominator), denominator)
                for f in faces
            }
        )
    return DeligneCochain(
        nerve=nerve, degree=degree, level=level, components=tuple(comps)
    )


def random_u1_cocycle(nerve, rng, denominator=12):
    """Random U(1) Cech 2-cocycle: a coboundary plus an optional twist."""
    pairs = nerve.faces_of_size(2)
    h = {p: Fraction(rng.randrange(0, denominator), denominator) for p in pairs}
    g = {}
    for t in nerve.faces_of_size(3):
        total = Fraction(0)
        for j in range(3):
            sub = t[:j] + t[j + 1 :]
            total += (-1) ** j * h[sub]
        g[t] = _mod1(total)
    return g


def mul_u1(g1, g2):
    """Pointwise product of U(1) cochains (sum of turns mod 1)."""
    return {f: _mod1(g1[f] + g2[f]) for f in g1}


def inv_u1(g):
    return {f: _mod1(-g[f]) for f in g}


# -- pullback along index maps (group actions, involutions) ----------------


def pullback_cochain(c: DeligneCochain, index_map, simplex_map=None):
    """Pull back along a bijection of the nerve indices.

    (gamma* c)_I = sign * c_{sorted(gamma(I))}, with the alternating sign
    of the sorting permutation; geometric values are transported through
    ``simplex_map`` (a vertex bijection of the complex) when given.
    """
    def move_face(face):
        img = tuple(index_map[i] for i in face)
        if len(set(img)) != len(img):
            raise DeligneError("index map is not injective on a face")
        return tuple(sorted(img)), perm_sign(img)

    inv_vertex = (
        {w: v for v, w in simplex_map.items()} if simplex_map is not None else None
    )

    def move_value(val, sign):
        # val lives over the image face; transport back to the source face
        if isinstance(val, dict):
            if inv_vertex is None:
                return {s: _vscale(sign, x) for s, x in val.items()}
            out = {}
            for s, x in val.items():
                src = tuple(inv_vertex[v] for v in s)
                out[tuple(sorted(src))] = sign * perm_sign(src) * x
            return out
        return sign * val

    comps = []
    for k, comp in enumerate(c.components):
        new = {}
        for face in comp:
            img, sign = move_face(face)
            if not c.nerve.is_face(img):
                raise DeligneError(f"index map does not preserve face {face}")
            new[face] = move_value(comp[img], sign)
        comps.append(new)
    return DeligneCochain(
        nerve=c.nerve, degree=c.degree, level=c.level, components=tuple(comps),
        complex=c.complex,
    )
