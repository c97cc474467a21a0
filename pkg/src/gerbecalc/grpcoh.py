"""Group cohomology H^n(Z, U(1)) for finite abelian groups.

Computed through the integer-coefficient shift H^n(Z, U(1)) = H^{n+1}(Z; Z)
(trivial action; for a finite group the exponential sequence identifies
the U(1) cohomology with the integral cohomology one degree up, since the
real cohomology vanishes).  The bar resolution with normalized cochains
keeps the matrices small, and torsion is read off the Smith invariant
factors of the relevant coboundary matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .intlinalg import invariant_factors_sparse, smith_normal_form
from .rootsys import build_root_system


class GroupCohomologyError(ValueError):
    pass


class ResourceBoundError(GroupCohomologyError):
    pass


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups Z/d_1 x ... x Z/d_m, elements as residue tuples."""

    orders: tuple

    def __post_init__(self):
        if any(int(d) != d or d < 2 for d in self.orders):
            raise GroupCohomologyError("cyclic orders must be integers >= 2")
        object.__setattr__(self, "orders", tuple(int(d) for d in self.orders))

    @property
    def order(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    @property
    def identity(self):
        return (0,) * len(self.orders)

    def elements(self):
        return [tuple(e) for e in product(*(range(d) for d in self.orders))]

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % d for x, d in zip(a, self.orders))

    def describe(self):
        if not self.orders:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.orders)


def _bar_coboundary_entries(group, k):
    """Sparse integer matrix of d: C^k -> C^{k+1}, normalized bar cochains.

    Basis of C^k: k-tuples of non-identity elements.  Returns
    (entries dict {(row, col): value}, n_rows, n_cols).
    """
    e = group.identity
    nonid = [g for g in group.elements() if g != e]
    src = list(product(nonid, repeat=k))
    dst = list(product(nonid, repeat=k + 1))
    src_idx = {t: i for i, t in enumerate(src)}
    entries = {}

    def bump(r, t, sign):
        if any(g == e for g in t):
            return  # normalized cochains vanish on identity arguments
        c = src_idx[t]
        key = (r, c)
        entries[key] = entries.get(key, 0) + sign
        if entries[key] == 0:
            del entries[key]

    for r, gs in enumerate(dst):
        bump(r, gs[1:], 1)
        for i in range(k):
            merged = gs[:i] + (group.add(gs[i], gs[i + 1]),) + gs[i + 2 :]
            bump(r, merged, (-1) ** (i + 1))
        bump(r, gs[:-1], (-1) ** (k + 1))
    return entries, len(dst), len(src)


@lru_cache(maxsize=None)
def _cohomology_cached(orders, n, max_order, max_degree):
    group = FiniteAbelianGroup(orders)
    if n < 1:
        raise GroupCohomologyError("degree must be >= 1")
    if group.order > max_order or n > max_degree:
        raise ResourceBoundError(
            f"bar-resolution size |Z|^{n + 2} = {group.order ** (n + 2)} exceeds "
            f"the configured bound (|Z| <= {max_order}, n <= {max_degree})"
        )
    # H^n(Z, U(1)) = torsion of H^{n+1}(Z; Z) = invariant factors > 1 of
    # the bar coboundary C^n -> C^{n+1}
    entries, m, ncols = _bar_coboundary_entries(group, n)
    facs = invariant_factors_sparse(entries, m, ncols)
    return tuple(f for f in facs if f > 1)


def group_cohomology_U1(group: FiniteAbelianGroup, n: int,
                        max_order: int = 16, max_degree: int = 3):
    """Invariant factors of H^n(Z, U(1)) (empty tuple = trivial group)."""
    return _cohomology_cached(group.orders, n, max_order, max_degree)


def center_of(family: str, rank: int) -> FiniteAbelianGroup:
    """Center of the simply connected group: coweights modulo coroots.

    Computed as the cokernel torsion of the Cartan matrix via Smith
    normal form; the order equals the Cartan determinant.
    """
    rs = build_root_system(family, rank)
    d, _, _ = smith_normal_form([list(row) for row in rs.cartan])
    return FiniteAbelianGroup(tuple(x for x in d if x > 1))
