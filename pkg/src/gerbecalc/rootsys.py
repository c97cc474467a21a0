"""Exact root-system and fundamental-alcove data for the simple Lie types.

Everything is carried out over the rationals.  Each type is realized in a
standard orthonormal ambient space; the inner product is a rational
multiple of the dot product, scaled so that long roots have squared
length 2 (the "basic" normalization).  Alcove vertices are stored as
coweight-side vectors and paired with roots/coroots through that inner
product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

Vector = tuple  # tuple of Fraction

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


class RootSystemError(ValueError):
    pass


def _frac_vec(entries):
    return tuple(Fraction(x) for x in entries)


def _simple_root_coords(family, rank):
    """Simple roots in the standard orthonormal realization (unscaled)."""
    e = lambda i, d: _frac_vec([1 if j == i else 0 for j in range(d)])

    def sub(u, v):
        return tuple(a - b for a, b in zip(u, v))

    if family == "A":
        d = rank + 1
        return [sub(e(i, d), e(i + 1, d)) for i in range(rank)]
    if family == "B":
        d = rank
        roots = [sub(e(i, d), e(i + 1, d)) for i in range(rank - 1)]
        roots.append(e(rank - 1, d))
        return roots
    if family == "C":
        d = rank
        roots = [sub(e(i, d), e(i + 1, d)) for i in range(rank - 1)]
        roots.append(tuple(2 * x for x in e(rank - 1, d)))
        return roots
    if family == "D":
        d = rank
        roots = [sub(e(i, d), e(i + 1, d)) for i in range(rank - 1)]
        roots.append(tuple(a + b for a, b in zip(e(rank - 2, d), e(rank - 1, d))))
        return roots
    if family == "G":
        # Bourbaki: alpha_1 = e1 - e2 (short), alpha_2 = -2e1 + e2 + e3 (long)
        return [
            _frac_vec([1, -1, 0]),
            _frac_vec([-2, 1, 1]),
        ]
    if family == "F":
        half = Fraction(1, 2)
        return [
            _frac_vec([0, 1, -1, 0]),
            _frac_vec([0, 0, 1, -1]),
            _frac_vec([0, 0, 0, 1]),
            (half, -half, -half, -half),
        ]
    if family == "E":
        half = Fraction(1, 2)
        a1 = (half, -half, -half, -half, -half, -half, -half, half)
        a2 = _frac_vec([1, 1, 0, 0, 0, 0, 0, 0])
        rest = [
            _frac_vec([-1 if j == i - 1 else (1 if j == i else 0) for j in range(8)])
            for i in range(1, 7)
        ]
        # a_{k} = e_{k-2} - e_{k-3} for k = 3..8 in Bourbaki's E8 numbering
        roots = [a1, a2] + rest
        return roots[:rank]
    raise RootSystemError(f"unknown family {family!r}")


def _validate(family, rank):
    limits = {"A": 1, "B": 2, "C": 2, "D": 3}
    if family in limits:
        if rank < limits[family]:
            raise RootSystemError(f"invalid simple type ({family}, {rank})")
        return
    if family == "E" and rank in (6, 7, 8):
        return
    if family == "F" and rank == 4:
        return
    if family == "G" and rank == 2:
        return
    raise RootSystemError(f"invalid simple type ({family}, {rank})")


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    simple_roots: tuple
    gram_scale: Fraction  # inner product = gram_scale * (dot product)
    cartan: tuple
    roots: tuple
    highest_root: Vector
    marks: tuple

    @property
    def dim(self):
        return len(self.simple_roots[0])

    def gram(self):
        """Inner-product matrix of the ambient space (a scaled identity)."""
        d = self.dim
        return [
            [self.gram_scale if i == j else Fraction(0) for j in range(d)]
            for i in range(d)
        ]

    def inner(self, u, v):
        if len(u) != self.dim or len(v) != self.dim:
            raise RootSystemError("dimension mismatch with ambient space")
        return self.gram_scale * sum(a * b for a, b in zip(u, v))

    def coroot(self, alpha):
        n = self.inner(alpha, alpha)
        return tuple(2 * a / n for a in alpha)

    def pairing(self, v, alpha):
        """<v, alpha^vee> = 2 <v, alpha> / <alpha, alpha>."""
        return 2 * self.inner(v, alpha) / self.inner(alpha, alpha)


def _close_under_reflections(rs_simple, inner):
    """All roots, generated from the simple ones by simple reflections."""
    roots = set(rs_simple)
    frontier = list(rs_simple)
    simple = list(rs_simple)
    norms = [inner(a, a) for a in simple]
    while frontier:
        beta = frontier.pop()
        for alpha, n in zip(simple, norms):
            c = 2 * inner(beta, alpha) / n
            refl = tuple(b - c * a for b, a in zip(beta, alpha))
            if refl not in roots:
                roots.add(refl)
                frontier.append(refl)
    return roots


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Exact root data for a simple type, long roots normalized to length^2 = 2."""
    family = family.upper()
    _validate(family, rank)
    simple = _simple_root_coords(family, rank)

    dot = lambda u, v: sum(a * b for a, b in zip(u, v))
    max_norm = None
    roots = _close_under_reflections(tuple(simple), dot)
    max_norm = max(dot(r, r) for r in roots)
    scale = Fraction(2) / max_norm  # long roots -> squared length 2

    inner = lambda u, v: scale * dot(u, v)
    cartan = tuple(
        tuple(int(2 * inner(a, b) / inner(b, b)) for b in simple) for a in simple
    )

    # highest root: the unique root whose simple-root coefficients dominate
    basis = solve_in_simple_basis(simple, roots)
    highest = max(roots, key=lambda r: sum(basis[r]))
    marks_f = basis[highest]
    if any(x.denominator != 1 or x <= 0 for x in marks_f):
        raise RootSystemError("highest root coefficients are not positive integers")
    marks = tuple(int(x) for x in marks_f)

    return RootSystem(
        family=family,
        rank=rank,
        simple_roots=tuple(simple),
        gram_scale=scale,
        cartan=cartan,
        roots=tuple(sorted(roots)),
        highest_root=highest,
        marks=marks,
    )


def solve_in_simple_basis(simple, vectors):
    """Coefficients of each vector in the simple-root basis (exact)."""
    # Gram matrix of simple roots under the plain dot product suffices
    dot = lambda u, v: sum(a * b for a, b in zip(u, v))
    r = len(simple)
    g = [[Fraction(dot(simple[i], simple[j])) for j in range(r)] for i in range(r)]
    from .intlinalg import solve_rational

    out = {}
    for vec in vectors:
        rhs = [Fraction(dot(vec, s)) for s in simple]
        coeffs = solve_rational(g, rhs)
        out[vec] = tuple(coeffs)
    return out


@dataclass(frozen=True)
class Alcove:
    root_system: RootSystem
    vertices: tuple  # (mu_0, ..., mu_r), mu_0 = 0

    @property
    def rank(self):
        return self.root_system.rank


@lru_cache(maxsize=None)
def alcove(rs: RootSystem) -> Alcove:
    """Fundamental-alcove vertices mu_0 = 0 and mu_i = omega_i^vee / a_i."""
    r = rs.rank
    coroots = [rs.coroot(a) for a in rs.simple_roots]
    # omega_i^vee = sum_k (C^{-1})_{ki} alpha_k^vee, where C is the Cartan matrix
    from .intlinalg import solve_rational

    cart = [[Fraction(x) for x in row] for row in rs.cartan]
    cols = solve_rational(
        cart, [[Fraction(1) if i == j else Fraction(0) for i in range(r)] for j in range(r)]
    )
    vertices = [tuple(Fraction(0) for _ in range(rs.dim))]
    for i in range(r):
        x = cols[i]  # coefficients of omega_i^vee in the coroot basis
        omega = tuple(
            sum(x[k] * coroots[k][d] for k in range(r)) for d in range(rs.dim)
        )
        vertices.append(tuple(c / rs.marks[i] for c in omega))
    return Alcove(root_system=rs, vertices=tuple(vertices))


def is_weight(rs: RootSystem, v) -> bool:
    """True iff <v, alpha^vee> is an integer for every simple coroot."""
    if len(v) != rs.dim:
        raise RootSystemError("dimension mismatch with ambient space")
    return all(rs.pairing(v, a).denominator == 1 for a in rs.simple_roots)


def mu_ij(alc: Alcove, i: int, j: int):
    """The difference mu_j - mu_i of alcove vertices."""
    verts = alc.vertices
    if not (0 <= i < len(verts) and 0 <= j < len(verts)):
        raise RootSystemError(f"vertex index out of range: ({i}, {j})")
    return tuple(b - a for a, b in zip(verts[i], verts[j]))


def minimal_level_k0(rs: RootSystem) -> int:
    """Least k >= 1 with k * mu_i a weight for every alcove vertex mu_i."""
    alc = alcove(rs)
    denoms = [
        rs.pairing(mu, a).denominator
        for mu in alc.vertices
        for a in rs.simple_roots
    ]
    return lcm(*denoms) if denoms else 1


@dataclass(frozen=True)
class RootSubsystem:
    root_system: RootSystem
    roots: frozenset

    def __post_init__(self):
        for r in self.roots:
            if tuple(-x for x in r) not in self.roots:
                raise RootSystemError("subsystem not closed under negation")
            if r not in set(self.root_system.roots):
                raise RootSystemError("subsystem element is not a root")


def face_centralizer(alc: Alcove, face) -> RootSubsystem:
    """Root subsystem of the centralizer of exp(xi), xi interior to a face.

    ``face`` is a nonempty subset of {0, ..., rank}; the exact barycenter
    of the face's vertices is used as the interior point.
    """
    face = sorted(set(face))
    if not face:
        raise RootSystemError("face index set must be nonempty")
    rs = alc.root_system
    if any(i < 0 or i > rs.rank for i in face):
        raise RootSystemError(f"face indices out of range: {face}")
    m = len(face)
    bary = tuple(
        sum(alc.vertices[i][d] for i in face) / m for d in range(rs.dim)
    )
    sub = frozenset(
        r for r in rs.roots if rs.inner(r, bary).denominator == 1
    )
    return RootSubsystem(root_system=rs, roots=sub)


def parse_type(text: str):
    """Parse strings like "A3", "E8", "g2" into (family, rank)."""
    text = text.strip()
    if len(text) < 2 or text[0].upper() not in FAMILIES:
        raise RootSystemError(f"cannot parse simple type {text!r}")
    try:
        rank = int(text[1:])
    except ValueError as exc:
        raise RootSystemError(f"cannot parse simple type {text!r}") from exc
    return text[0].upper(), rank
