"""Exact rational linear algebra.

Scalars are plain ``int`` or ``fractions.Fraction`` (ints are kept as ints
where possible since integer arithmetic is several times faster). Matrices
are dense lists of row lists. Everything here is pure and deterministic:
same input, bit-identical output.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def normalize_scalar(x):
    """Collapse integral Fractions to int."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def scale_to_integers(vec):
    """Multiply a rational vector by the positive lcm of denominators."""
    mult = 1
    for x in vec:
        if isinstance(x, Fraction):
            d = x.denominator
            mult = mult // gcd(mult, d) * d
    return [normalize_scalar(x * mult) for x in vec]


def make_primitive(vec):
    """Clear denominators then divide by the gcd; first nonzero entry > 0."""
    ints = scale_to_integers(vec)
    g = 0
    for x in ints:
        g = gcd(g, abs(int(x)))
    if g == 0:
        return list(ints)
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        g = -g
    return [int(x) // g for x in ints]


def mat_copy(m):
    return [list(row) for row in m]


def mat_mul(a, b):
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    bt = list(zip(*b))
    return [
        [normalize_scalar(sum(row[i] * col[i] for i in range(k))) for col in bt]
        for row in a
    ]


def mat_vec(m, v):
    return [normalize_scalar(sum(row[i] * v[i] for i in range(len(v)))) for row in m]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_det(m):
    """Exact determinant by fraction-free Bareiss elimination.

    Rejects non-square input. Rows are scaled to integers first so the
    whole elimination runs over ints (exact divisions by construction).
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return 1
    work = []
    denom = 1
    for row in m:
        mult = 1
        for x in row:
            if isinstance(x, Fraction):
                d = x.denominator
                mult = mult // gcd(mult, d) * d
        denom *= mult
        work.append([int(x * mult) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            for i in range(k + 1, n):
                if work[i][k] != 0:
                    work[k], work[i] = work[i], work[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = work[k][k]
        for i in range(k + 1, n):
            rik = work[i][k]
            rowi = work[i]
            rowk = work[k]
            for j in range(k + 1, n):
                rowi[j] = (pkk * rowi[j] - rik * rowk[j]) // prev
            rowi[k] = 0
        prev = pkk
    det_int = sign * work[n - 1][n - 1]
    return normalize_scalar(Fraction(det_int) / as_fraction(denom))


def _row_echelon(m):
    """Row-reduce a copy of m over Fractions.

    Returns (echelon rows, pivot column list). Deterministic: first
    nonzero entry in column order is the pivot, rows normalized to
    leading 1.
    """
    rows = [[as_fraction(x) for x in row] for row in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def mat_rank(m) -> int:
    if not m or not m[0]:
        return 0
    # fraction-free forward elimination; only the pivot count is needed
    work = [[int(x) for x in scale_to_integers(row)] for row in m]
    nrows, ncols = len(work), len(work[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pkk = work[r][c]
        for i in range(r + 1, nrows):
            rik = work[i][c]
            for j in range(c, ncols):
                work[i][j] = (pkk * work[i][j] - rik * work[r][j]) // prev
        prev = pkk
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def kernel_basis(m):
    """Basis of the right null space, vectors scaled to primitive integers.

    Canonical: computed from the reduced row echelon form, one vector per
    free column in column order. len(result) == cols - rank(m).
    """
    if not m:
        return []
    ncols = len(m[0])
    echelon, pivots = _row_echelon(m)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -echelon[r][fc]
        basis.append(make_primitive(v))
    return basis


def solve(m, rhs):
    """One exact solution of m x = rhs, or None if inconsistent."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    aug = [list(m[i]) + [rhs[i]] for i in range(nrows)]
    echelon, pivots = _row_echelon(aug)
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = echelon[r][ncols]
    return [normalize_scalar(v) for v in x]


def mat_inverse(m):
    n = len(m)
    aug = [list(m[i]) + identity(n)[i] for i in range(n)]
    echelon, pivots = _row_echelon(aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [[normalize_scalar(echelon[i][n + j]) for j in range(n)] for i in range(n)]


def row_space_contains(rows, vec) -> bool:
    """True iff vec lies in the span of rows (exact)."""
    if all(x == 0 for x in vec):
        return True
    base = mat_rank(rows) if rows else 0
    return mat_rank(list(rows) + [list(vec)]) == base


def same_row_space(rows_a, rows_b) -> bool:
    ra = mat_rank(rows_a) if rows_a else 0
    rb = mat_rank(rows_b) if rows_b else 0
    if ra != rb:
        return False
    return mat_rank(list(rows_a) + list(rows_b)) == ra


class SparseEchelon:
    """Incremental echelon form over sparse dict vectors.

    Keys are arbitrary sortable hashables (packed exponents, bitmasks).
    Pivot of a row is its smallest key; rows are kept reduced against each
    other and primitive-scaled, so insertion order does not change the
    resulting row space and coefficient growth stays bounded.
    """

    def __init__(self):
        self.rows = {}  # pivot key -> dict vector

    def __len__(self):
        return len(self.rows)

    def _reduce(self, vec):
        vec = dict(vec)
        while vec:
            pivot = min(vec)
            row = self.rows.get(pivot)
            if row is None:
                return pivot, vec
            c = vec[pivot]
            for k, rv in row.items():
                nv = vec.get(k, 0) - c * rv
                if nv == 0:
                    vec.pop(k, None)
                else:
                    vec[k] = nv
        return None, None

    def insert(self, vec) -> bool:
        """Add a vector; returns True if it enlarged the span."""
        pivot, reduced = self._reduce(vec)
        if pivot is None:
            return False
        lead = reduced[pivot]
        inv = Fraction(1) / as_fraction(lead)
        newrow = {k: normalize_scalar(v * inv) for k, v in reduced.items()}
        # back-substitute into existing rows to keep full reduction
        for pk, row in self.rows.items():
            if pivot in row:
                c = row[pivot]
                for k, nv in newrow.items():
                    val = row.get(k, 0) - c * nv
                    if val == 0:
                        row.pop(k, None)
                    else:
                        row[k] = val
        self.rows[pivot] = newrow
        return True

    def contains(self, vec) -> bool:
        pivot, _ = self._reduce(vec)
        return pivot is None

    def basis(self):
        """Rows in pivot order, scaled to primitive integer form."""
        out = []
        for pivot in sorted(self.rows):
            row = self.rows[pivot]
            keys = sorted(row)
            vals = make_primitive([row[k] for k in keys])
            out.append({k: v for k, v in zip(keys, vals) if v != 0})
        return out
