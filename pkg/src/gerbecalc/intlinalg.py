"""Exact integer and rational linear algebra: Smith normal form, integer
and rational linear solves, and cohomology of integer cochain complexes.

All matrices are lists of lists of Python ints (arbitrary precision) or
``fractions.Fraction``.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(mat):
    """Return (d, U, V) with U*mat*V = D, U and V unimodular.

    ``d`` is the list of diagonal entries of D (nonnegative, each dividing
    the next, padded with zeros up to min(m, n)).
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [row[:] for row in mat]
    u = _identity(m)
    v = _identity(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        ai, aj = a[i], a[j]
        ui, uj = u[i], u[j]
        for k in range(n):
            ai[k] -= q * aj[k]
        for k in range(m):
            ui[k] -= q * uj[k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    limit = min(m, n)
    while t < limit:
        # find a pivot of minimal absolute value in the remaining block
        piv = None
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:  # remainder became new, smaller pivot
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if a[t][t] < 0:
            for k in range(t, n):
                a[t][k] = -a[t][k]
            for k in range(m):
                u[t][k] = -u[t][k]
        t += 1

    # enforce divisibility d_i | d_{i+1}
    t = 0
    while t < limit - 1:
        if a[t][t] != 0 and a[t + 1][t + 1] % a[t][t] != 0:
            # fold col t+1 into col t and re-eliminate from position t
            for row in a:
                row[t] += row[t + 1]
            for row in v:
                row[t] += row[t + 1]
            _redo_from(a, u, v, t, m, n)
            t = 0
            continue
        t += 1

    d = [a[i][i] for i in range(limit)]
    return d, u, v


def _redo_from(a, u, v, t0, m, n):
    """Re-run elimination from diagonal position t0 (helper for SNF)."""

    def row_op(i, j, q):
        for k in range(n):
            a[i][k] -= q * a[j][k]
        for k in range(m):
            u[i][k] -= q * u[j][k]

    def col_op(i, j, q):
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    t = t0
    limit = min(m, n)
    while t < limit:
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            a[t], a[piv[0]] = a[piv[0]], a[t]
            u[t], u[piv[0]] = u[piv[0]], u[t]
        if piv[1] != t:
            for row in a:
                row[t], row[piv[1]] = row[piv[1]], row[t]
            for row in v:
                row[t], row[piv[1]] = row[piv[1]], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        u[t], u[i] = u[i], u[t]
                        done = False
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        for row in v:
                            row[t], row[j] = row[j], row[t]
                        done = False
            if done:
                break
        if a[t][t] < 0:
            for k in range(t, n):
                a[t][k] = -a[t][k]
            for k in range(m):
                u[t][k] = -u[t][k]
        t += 1


def invariant_factors(mat):
    """Diagonal of the Smith form, without transform tracking.

    Sparse-friendly: uses dict-of-dict storage and prefers unit pivots,
    which keeps bar-resolution matrices from filling in.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    rows = {}
    cols = {}
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            if x:
                rows.setdefault(i, {})[j] = x
                cols.setdefault(j, set()).add(i)
    return _invariant_factors_sparse(rows, cols, m, n)


def invariant_factors_sparse(entries, m, n):
    """Same as :func:`invariant_factors` for {(i, j): value} input."""
    rows = {}
    cols = {}
    for (i, j), x in entries.items():
        if x:
            rows.setdefault(i, {})[j] = x
            cols.setdefault(j, set()).add(i)
    return _invariant_factors_sparse(rows, cols, m, n)


def _invariant_factors_sparse(rows, cols, m, n):
    # buckets of row indices keyed by current row length: pivots are taken
    # from the shortest rows, which keeps fill-in and search cost down
    buckets = {}
    for i in [i for i, row in rows.items() if not row]:
        del rows[i]
    for i, row in rows.items():
        buckets.setdefault(len(row), set()).add(i)

    def set_entry(i, j, v):
        row = rows.get(i)
        len0 = len(row) if row is not None else 0
        if v:
            if row is None:
                row = rows[i] = {}
            if j not in row:
                cols.setdefault(j, set()).add(i)
            row[j] = v
        else:
            if row is None or j not in row:
                return
            del row[j]
            cols[j].discard(i)
        len1 = len(rows.get(i, ()))
        if len1 != len0:
            if len0:
                s = buckets.get(len0)
                if s is not None:
                    s.discard(i)
                    if not s:
                        del buckets[len0]
            if len1:
                buckets.setdefault(len1, set()).add(i)
            else:
                del rows[i]

    factors = []
    while rows:
        # pivot: prefer a unit entry in a shortest row, in a thin column
        lmin = min(buckets)
        best = None
        scanned = 0
        for i in buckets[lmin]:
            for j, v in rows[i].items():
                score = (abs(v) != 1, len(cols.get(j, ())), abs(v))
                if best is None or score < best[0]:
                    best = (score, i, j)
            scanned += 1
            if scanned >= 64 and not best[0][0]:
                break
        _, pi, pj = best
        pval = rows[pi][pj]
        while True:
            # clear column pj
            moved = False
            for i in [i for i in cols.get(pj, ()) if i != pi]:
                v = rows.get(i, {}).get(pj, 0)
                if not v:
                    continue
                q = v // pval
                if q:
                    for j, x in list(rows[pi].items()):
                        set_entry(i, j, rows.get(i, {}).get(j, 0) - q * x)
                r = rows.get(i, {}).get(pj, 0)
                if r:
                    pi, pval = i, r  # smaller remainder becomes the pivot
                    moved = True
                    break
            if moved:
                continue
            # column is clean; clear the pivot row by column operations,
            # which now only touch the pivot row itself
            moved = False
            for j, v in list(rows[pi].items()):
                if j == pj:
                    continue
                r = v - (v // pval) * pval
                set_entry(pi, j, r)
                if r:
                    pj, pval = j, r
                    moved = True
                    break
            if not moved:
                break
        factors.append(abs(pval))
        s = buckets.get(len(rows[pi]))
        if s is not None:
            s.discard(pi)
            if not s:
                del buckets[len(rows[pi])]
        del rows[pi]
        cols.get(pj, set()).discard(pi)
        if not cols.get(pj):
            cols.pop(pj, None)

    # enforce divisibility by repeated gcd/lcm passes on the multiset
    factors = [f for f in factors if f != 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                a, b = factors[i], factors[j]
                if b % a != 0:
                    from math import gcd

                    g = gcd(a, b)
                    factors[i], factors[j] = g, a * b // g
                    changed = True
        factors.sort()
    return factors


def rational_rank(mat):
    """Rank over the rationals, by fraction-free style elimination."""
    a = [[Fraction(x) for x in row] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    col = 0
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        for i in range(rank + 1, m):
            if a[i][col] != 0:
                f = a[i][col] / pv
                ai, ar = a[i], a[rank]
                for j in range(col, n):
                    ai[j] -= f * ar[j]
        rank += 1
        if rank == m:
            break
    return rank


def solve_rational(mat, rhs):
    """Solve mat * x = rhs over the rationals; return x or None.

    ``rhs`` may be a vector or a list of vectors (columns).  Entries are
    Fractions in the result.
    """
    single = not isinstance(rhs[0], (list, tuple))
    bs = [list(rhs)] if single else [list(b) for b in rhs]
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(b[i]) for b in bs] for i, row in enumerate(mat)]
    nb = len(bs)
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][col]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                ai, ar = a[i], a[r]
                for j in range(col, n + nb):
                    ai[j] -= f * ar[j]
        pivots.append(col)
        r += 1
        if r == m:
            break
    # consistency: zero rows must have zero rhs
    for i in range(r, m):
        if any(a[i][n + k] != 0 for k in range(nb)):
            return None
    xs = [[Fraction(0)] * n for _ in range(nb)]
    for i, col in enumerate(pivots):
        for k in range(nb):
            xs[k][col] = a[i][n + k]
    return xs[0] if single else xs


def matvec(mat, vec):
    return [sum(r * x for r, x in zip(row, vec)) for row in mat]


def cochain_cohomology(d_prev, d_next, n_k):
    """Presentation of ker(d_next)/im(d_prev) for free Z-modules.

    ``d_prev`` maps C^{k-1} -> C^k and ``d_next`` maps C^k -> C^{k+1},
    given as integer matrices (rows indexed by target).  ``n_k`` is the
    rank of C^k.  Returns (free_rank, [torsion coefficients > 1]).
    """
    r_prev = rational_rank(d_prev) if d_prev and d_prev[0] else 0
    r_next = rational_rank(d_next) if d_next and d_next[0] else 0
    free = n_k - r_next - r_prev
    if d_prev and d_prev[0]:
        facs = invariant_factors(d_prev)
    else:
        facs = []
    torsion = [f for f in facs if f > 1]
    return free, torsion
