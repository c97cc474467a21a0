"""Cover nerves and covered simplicial complexes.

A :class:`CoverNerve` is the combinatorial shadow of a good open cover:
an index set plus the subset-closed family of index sets with nonempty
common intersection.  A :class:`CoveredComplex` is an oriented
triangulated surface or 3-complex whose simplices each know which charts
contain them; its nerve is generated by the per-simplex chart sets.

Mesh fixtures (icosahedral spheres, their subdivisions, and coned solid
balls) live here too, together with the vertex-star cover used by the
holonomy tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations


class ComplexError(ValueError):
    pass


def simplex_key(verts):
    return tuple(sorted(verts))


def perm_sign(seq):
    """Parity of the permutation sorting ``seq`` (+1 or -1)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                seq[i], seq[j] = seq[j], seq[i]
                sign = -sign
    return sign


@dataclass(frozen=True)
class CoverNerve:
    indices: tuple
    faces: frozenset  # of sorted tuples, subset-closed

    def __post_init__(self):
        idx = set(self.indices)
        for f in self.faces:
            if list(f) != sorted(f):
                raise ComplexError(f"face not sorted: {f}")
            if not set(f) <= idx:
                raise ComplexError(f"face uses unknown indices: {f}")
            for k in range(1, len(f)):
                for sub in combinations(f, k):
                    if sub not in self.faces:
                        raise ComplexError(f"faces not subset-closed at {sub}")
        for i in self.indices:
            if (i,) not in self.faces:
                raise ComplexError(f"missing singleton face ({i},)")

    def faces_of_size(self, k):
        return sorted(f for f in self.faces if len(f) == k)

    def is_face(self, subset):
        return tuple(sorted(subset)) in self.faces

    @property
    def dimension(self):
        return max(len(f) for f in self.faces) - 1


def make_nerve(indices, maximal_faces):
    """Nerve from maximal faces, closed under subsets."""
    faces = set()
    for f in maximal_faces:
        f = tuple(sorted(set(f)))
        for k in range(1, len(f) + 1):
            faces.update(combinations(f, k))
    for i in indices:
        faces.add((i,))
    return CoverNerve(indices=tuple(indices), faces=frozenset(faces))


def simplex_nerve(n):
    """Nerve of a contractible cover: all subsets of n charts."""
    return make_nerve(range(n), [tuple(range(n))])


def sphere_nerve():
    """Boundary-of-tetrahedron nerve: 4 charts, all triples, no quadruple."""
    return make_nerve(range(4), list(combinations(range(4), 3)))


@dataclass
class CoveredComplex:
    """Oriented triangulated surface (dim 2) or 3-complex (dim 3)."""

    dim: int
    triangles: list  # oriented vertex triples
    tetrahedra: list = field(default_factory=list)  # oriented 4-tuples
    charts: dict = field(default_factory=dict)  # simplex_key -> frozenset
    coords: dict = field(default_factory=dict)  # vertex -> tuple of floats

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ComplexError("complex dimension must be 2 or 3")
        self.triangles = [tuple(t) for t in self.triangles]
        self.tetrahedra = [tuple(t) for t in self.tetrahedra]
        self._build_tables()

    def _build_tables(self):
        self.tri_keys = [simplex_key(t) for t in self.triangles]
        self.tri_sign = {
            k: perm_sign(t) for k, t in zip(self.tri_keys, self.triangles)
        }
        if len(set(self.tri_keys)) != len(self.tri_keys):
            raise ComplexError("duplicate triangle")
        self.vertices = sorted(
            {v for t in self.triangles for v in t}
            | {v for t in self.tetrahedra for v in t}
        )
        edges = set()
        for t in self.triangles:
            for e in combinations(simplex_key(t), 2):
                edges.add(e)
        self.edges = sorted(edges)
        if self.dim == 3:
            self.tet_keys = [simplex_key(t) for t in self.tetrahedra]
            self.tet_sign = {
                k: perm_sign(t) for k, t in zip(self.tet_keys, self.tetrahedra)
            }
        else:
            self.tet_keys = []
            self.tet_sign = {}
        # adjacency: edge -> list of (tri_key, coefficient of edge in d(tri))
        self.edge_tris = {e: [] for e in self.edges}
        for k in self.tri_keys:
            a, b, c = k
            for e, coeff in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
                self.edge_tris[e].append((k, coeff * self.tri_sign[k]))
        if self.dim == 3:
            self.tri_tets = {k: [] for k in self.tri_keys}
            for tk in self.tet_keys:
                for i in range(4):
                    face = tuple(v for j, v in enumerate(tk) if j != i)
                    coeff = (-1) ** i * self.tet_sign[tk]
                    if face not in self.tri_tets:
                        raise ComplexError(f"tetrahedron face missing: {face}")
                    self.tri_tets[face].append((tk, coeff))

    # -- simplices ---------------------------------------------------------

    def all_simplices(self):
        out = [(v,) for v in self.vertices]
        out += list(self.edges)
        out += list(self.tri_keys)
        out += list(self.tet_keys)
        return out

    def charts_of(self, key):
        try:
            return self.charts[key]
        except KeyError:
            raise ComplexError(f"simplex has no chart table entry: {key}")

    # -- invariants --------------------------------------------------------

    def validate(self):
        """Raise unless orientations close up and charts behave."""
        if self.dim == 2:
            # closed oriented surface: every edge in exactly two triangles
            # with cancelling coefficients
            for e, inc in self.edge_tris.items():
                if len(inc) != 2 or inc[0][1] + inc[1][1] != 0:
                    raise ComplexError(f"surface not closed/oriented at {e}")
        else:
            for f, inc in self.tri_tets.items():
                if len(inc) not in (1, 2):
                    raise ComplexError(f"bad tetrahedron incidence at {f}")
                if len(inc) == 2 and inc[0][1] + inc[1][1] != 0:
                    raise ComplexError(f"inconsistent orientation at {f}")
        for s in self.all_simplices():
            cs = self.charts_of(s)
            if not cs:
                raise ComplexError(f"simplex has no chart: {s}")
            for sub_size in range(1, len(s)):
                for sub in combinations(s, sub_size):
                    if not cs <= self.charts_of(sub):
                        raise ComplexError(
                            f"chart membership not monotone: {s} vs {sub}"
                        )

    def nerve(self):
        """Nerve generated by the per-simplex chart sets."""
        maximal = [tuple(sorted(self.charts_of(s))) for s in self.all_simplices()]
        indices = sorted({i for f in maximal for i in f})
        return make_nerve(indices, maximal)

    # -- coboundaries ------------------------------------------------------

    def d_vertex_cochain(self, f):
        """Simplicial d of a 0-cochain (dict vertex -> value) on edges."""
        return {(u, v): f[v] - f[u] for u, v in self.edges if u in f and v in f}

    def d_edge_cochain(self, w, tri_keys=None):
        """Simplicial d of a 1-cochain (dict edge -> value) on triangles."""
        out = {}
        for k in tri_keys if tri_keys is not None else self.tri_keys:
            a, b, c = k
            try:
                out[k] = w[(a, b)] + w[(b, c)] - w[(a, c)]
            except KeyError:
                continue
        return out

    def d_tri_cochain(self, b, tet_keys=None):
        """Simplicial d of a 2-cochain (dict tri_key -> value) on tets."""
        out = {}
        for tk in tet_keys if tet_keys is not None else self.tet_keys:
            total = 0
            ok = True
            for i in range(4):
                face = tuple(v for j, v in enumerate(tk) if j != i)
                if face not in b:
                    ok = False
                    break
                total += (-1) ** i * b[face]
            if ok:
                out[tk] = total
        return out

    def boundary_surface(self):
        """Oriented boundary of a 3-complex as a new CoveredComplex."""
        if self.dim != 3:
            raise ComplexError("boundary_surface needs a 3-complex")
        tris = []
        for f, inc in self.tri_tets.items():
            if len(inc) == 1:
                coeff = inc[0][1]
                a, b, c = f
                tris.append((a, b, c) if coeff > 0 else (a, c, b))
        charts = {}
        sub = CoveredComplex(dim=2, triangles=tris, charts={}, coords=self.coords)
        for s in sub.all_simplices():
            charts[s] = self.charts_of(s)
        sub.charts = charts
        return sub


# -- covers ---------------------------------------------------------------


def vertex_star_cover(cc: CoveredComplex):
    """Assign charts indexed by mesh vertices via closed stars.

    A simplex carries chart v exactly when some top-dimensional cell
    contains both v and the simplex; this makes chart membership monotone
    under taking faces.
    """
    top = cc.tetrahedra if cc.dim == 3 else cc.triangles
    charts = {s: set() for s in cc.all_simplices()}
    for cell in top:
        cell_key = simplex_key(cell)
        subs = []
        for k in range(1, len(cell_key) + 1):
            subs.extend(combinations(cell_key, k))
        for v in cell_key:
            for s in subs:
                charts[s].add(v)
    cc.charts = {s: frozenset(c) for s, c in charts.items()}
    return cc


# -- mesh fixtures --------------------------------------------------------


def icosahedron():
    """Oriented icosahedral sphere (12 vertices, 20 outward faces)."""
    phi = (1 + math.sqrt(5)) / 2
    raw = [
        (-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
        (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
        (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1),
    ]
    coords = {i: _normalize(p) for i, p in enumerate(raw)}
    tris = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    cc = CoveredComplex(dim=2, triangles=tris, coords=coords)
    return vertex_star_cover(cc)


def _normalize(p):
    n = math.sqrt(sum(x * x for x in p))
    return tuple(x / n for x in p)


def subdivide_sphere(cc: CoveredComplex):
    """1-to-4 triangle split, midpoints reprojected to the unit sphere."""
    coords = dict(cc.coords)
    next_id = max(coords) + 1
    mid = {}

    def midpoint(u, v):
        nonlocal next_id
        key = (u, v) if u < v else (v, u)
        if key not in mid:
            pu, pv = coords[u], coords[v]
            coords[next_id] = _normalize(
                tuple((a + b) / 2 for a, b in zip(pu, pv))
            )
            mid[key] = next_id
            next_id += 1
        return mid[key]

    tris = []
    for a, b, c in cc.triangles:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        tris += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
    out = CoveredComplex(dim=2, triangles=tris, coords=coords)
    return vertex_star_cover(out)


def coned_ball(sphere: CoveredComplex):
    """Solid ball: cone a closed oriented sphere to a center vertex."""
    apex = max(v for t in sphere.triangles for v in t) + 1
    coords = dict(sphere.coords)
    coords[apex] = (0.0, 0.0, 0.0)
    tets = [(apex, a, b, c) for a, b, c in sphere.triangles]
    tris = set(sphere.tri_keys)
    for tk in tets:
        k = simplex_key(tk)
        for i in range(4):
            tris.add(tuple(v for j, v in enumerate(k) if j != i))
    cc = CoveredComplex(
        dim=3,
        triangles=sorted(tris),
        tetrahedra=tets,
        coords=coords,
    )
    return vertex_star_cover(cc)
