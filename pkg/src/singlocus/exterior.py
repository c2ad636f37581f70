"""Sparse exterior algebra over g with the Killing pairing.

Multivectors are dicts from index-subset bitmasks to exact coefficients.
The fixed basis is not orthonormal, so the volume form mu (the wedge of
the whole basis) has (mu, mu) = det K tracked explicitly; the star map
u -> interior(u) mu is isometric only up to that scalar and every
downstream identity carries it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactlinalg import as_fraction, kernel_basis, mat_det, normalize_scalar
from .liealg import Element, LieAlgebra, LieAlgebraError


class Multivector:
    """Element of the exterior algebra, possibly mixed grade."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms=None):
        self.algebra = algebra
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, {})

    @classmethod
    def scalar(cls, algebra, c):
        c = normalize_scalar(c)
        return cls(algebra, {0: c} if c != 0 else {})

    @classmethod
    def from_element(cls, x: Element):
        terms = {}
        for i, c in enumerate(x.coords):
            if c != 0:
                terms[1 << i] = c
        return cls(x.algebra, terms)

    @classmethod
    def basis_blade(cls, algebra, indices):
        mask = 0
        for i in indices:
            bit = 1 << i
            if mask & bit:
                raise LieAlgebraError("repeated index in a basis blade")
            mask |= bit
        return cls(algebra, {mask: 1})

    def copy(self):
        return Multivector(self.algebra, dict(self.terms))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        raise TypeError("multivectors are mutable containers; not hashable")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc == 0:
                out.pop(m, None)
            else:
                out[m] = nc
        return Multivector(self.algebra, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) - c
            if nc == 0:
                out.pop(m, None)
            else:
                out[m] = nc
        return Multivector(self.algebra, out)

    def __neg__(self):
        return Multivector(self.algebra, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        c = normalize_scalar(c)
        if c == 0:
            return Multivector.zero(self.algebra)
        return Multivector(self.algebra, {m: normalize_scalar(v * c) for m, v in self.terms.items()})

    __rmul__ = scale

    def grades(self):
        return sorted({m.bit_count() for m in self.terms})

    def grade_part(self, k):
        return Multivector(self.algebra, {m: c for m, c in self.terms.items() if m.bit_count() == k})

    def is_homogeneous(self):
        return len(self.grades()) <= 1

    def coords_in_grade(self, k):
        """Dense coefficient list over the canonical k-subset basis."""
        n = self.algebra.n
        order = _grade_masks(n, k)
        lookup = {m: i for i, m in enumerate(order)}
        out = [0] * len(order)
        for m, c in self.terms.items():
            if m.bit_count() == k:
                out[lookup[m]] = c
        return out

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise LieAlgebraError("multivectors belong to different algebras")

    def __repr__(self):
        return f"Multivector({self.algebra.label}, terms={len(self.terms)}, grades={self.grades()})"


_GRADE_MASK_CACHE = {}


def _grade_masks(n, k):
    """Canonical ordering of k-subsets as bitmasks (combinations order)."""
    got = _GRADE_MASK_CACHE.get((n, k))
    if got is None:
        got = [sum(1 << i for i in combo) for combo in combinations(range(n), k)]
        _GRADE_MASK_CACHE[(n, k)] = got
    return got


def grade_masks(algebra: LieAlgebra, k: int):
    return _grade_masks(algebra.n, k)


def _merge_sign(a, b):
    """Sign of merging sorted index sets a and b (must be disjoint)."""
    sign = 1
    rest = a
    bb = b
    while bb:
        low = bb & -bb
        # count elements of a above this bit
        higher = (rest >> low.bit_length()).bit_count()
        if higher & 1:
            sign = -sign
        bb &= bb - 1
    return sign


def wedge(u: Multivector, v: Multivector) -> Multivector:
    u._check(v)
    out = {}
    for m1, c1 in u.terms.items():
        for m2, c2 in v.terms.items():
            if m1 & m2:
                continue
            sign = _merge_sign(m1, m2)
            m = m1 | m2
            nc = out.get(m, 0) + sign * c1 * c2
            if nc == 0:
                out.pop(m, None)
            else:
                out[m] = nc
    return Multivector(u.algebra, out)


def wedge_power(omega: Multivector, k: int) -> Multivector:
    out = Multivector.scalar(omega.algebra, 1)
    for _ in range(k):
        out = wedge(out, omega)
    return out


_SUPPORT_CACHE = {}


def _killing_supports(alg: LieAlgebra):
    """supports[i] = bitmask of j with K[i][j] != 0 (pairing quick-reject)."""
    got = _SUPPORT_CACHE.get(id(alg))
    if got is None:
        got = []
        for i in range(alg.n):
            mask = 0
            for j in range(alg.n):
                if alg.killing[i][j] != 0:
                    mask |= 1 << j
            got.append(mask)
        _SUPPORT_CACHE[id(alg)] = got
    return got


def _mask_indices(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask &= mask - 1
    return out


def ext_pairing(u: Multivector, v: Multivector):
    """Killing pairing on the exterior algebra: Gram determinants.

    Blades of different grades are orthogonal. The support bitmasks of the
    Killing matrix reject almost all blade pairs before any determinant
    is computed.
    """
    u._check(v)
    alg = u.algebra
    K = alg.killing
    supports = _killing_supports(alg)
    total = 0
    by_grade = {}
    for m2, c2 in v.terms.items():
        by_grade.setdefault(m2.bit_count(), []).append((m2, c2))
    for m1, c1 in u.terms.items():
        k = m1.bit_count()
        bucket = by_grade.get(k)
        if not bucket:
            continue
        rows = _mask_indices(m1)
        # union of supports must cover the partner blade
        needed = 0
        for i in rows:
            needed |= supports[i]
        for m2, c2 in bucket:
            if m2 & ~needed:
                continue
            reject = False
            for i in rows:
                if not (supports[i] & m2):
                    reject = True
                    break
            if reject:
                continue
            cols = _mask_indices(m2)
            det = mat_det([[K[i][j] for j in cols] for i in rows])
            if det != 0:
                total += c1 * c2 * det
    return normalize_scalar(total)


def interior_element(y: Element, u: Multivector) -> Multivector:
    """Contraction by a grade-1 element: the transpose of wedging by y."""
    alg = y.algebra
    if u.algebra is not alg:
        raise LieAlgebraError("mismatched algebras")
    K = alg.killing
    # pairing row (y, w_j)
    row = [0] * alg.n
    for i, c in enumerate(y.coords):
        if c != 0:
            Ki = K[i]
            for j in range(alg.n):
                if Ki[j] != 0:
                    row[j] += c * Ki[j]
    out = {}
    for mask, c in u.terms.items():
        pos_sign = 1
        m = mask
        while m:
            low = m & -m
            j = low.bit_length() - 1
            if row[j] != 0:
                nm = mask & ~low
                nc = out.get(nm, 0) + pos_sign * c * row[j]
                if nc == 0:
                    out.pop(nm, None)
                else:
                    out[nm] = nc
            pos_sign = -pos_sign
            m &= m - 1
    return Multivector(alg, {k: normalize_scalar(v) for k, v in out.items() if v != 0})


def interior(u: Multivector, w: Multivector) -> Multivector:
    """Contraction by an arbitrary multivector via iota(p ^ q) = iota(q) iota(p)."""
    alg = u.algebra
    if w.algebra is not alg:
        raise LieAlgebraError("mismatched algebras")
    out = Multivector.zero(alg)
    for mask, c in u.terms.items():
        cur = w.scale(c)
        for j in _mask_indices(mask):
            cur = interior_element(alg.basis_element(j), cur)
            if cur.is_zero():
                break
        out = out + cur
    return out


def theta(x: Element, u: Multivector) -> Multivector:
    """Adjoint action extended as an even derivation of the exterior algebra."""
    alg = x.algebra
    if u.algebra is not alg:
        raise LieAlgebraError("mismatched algebras")
    out = {}
    bracket_cols = {}
    for mask, c in u.terms.items():
        idx = _mask_indices(mask)
        for pos, t in enumerate(idx):
            col = bracket_cols.get(t)
            if col is None:
                col = alg.bracket(x, alg.basis_element(t)).coords
                bracket_cols[t] = col
            rest = mask & ~(1 << t)
            for k, val in enumerate(col):
                if val == 0:
                    continue
                bit = 1 << k
                if rest & bit:
                    continue
                below_t = (rest & ((1 << t) - 1)).bit_count()
                below_k = (rest & (bit - 1)).bit_count()
                sign = -1 if (below_t + below_k) & 1 else 1
                nm = rest | bit
                nc = out.get(nm, 0) + sign * c * val
                if nc == 0:
                    out.pop(nm, None)
                else:
                    out[nm] = nc
    return Multivector(alg, {k: normalize_scalar(v) for k, v in out.items() if v != 0})


def coboundary_d(x: Element, bases=None) -> Multivector:
    """The 2-form dx = (1/2) sum_i w_i ^ [z_i, x] over any dual basis pair."""
    alg = x.algebra
    if bases is None:
        primal = alg.basis()
        dual = alg.dual_basis()
    else:
        primal, dual = bases
    out = Multivector.zero(alg)
    for w, z in zip(primal, dual):
        br = alg.bracket(z, x)
        if br.is_zero():
            continue
        out = out + wedge(Multivector.from_element(w), Multivector.from_element(br))
    return out.scale(Fraction(1, 2))


@dataclass
class VolumeData:
    """The wedge of the whole fixed basis and its tracked self-pairing."""

    algebra: LieAlgebra
    mu: Multivector
    mu_norm_sq: object

    @classmethod
    def build(cls, algebra: LieAlgebra):
        mu = Multivector(algebra, {(1 << algebra.n) - 1: 1})
        norm = mat_det(algebra.killing)
        if norm == 0:
            raise LieAlgebraError("degenerate volume pairing")
        return cls(algebra, mu, normalize_scalar(norm))


_VOLUME_CACHE = {}


def volume_data(alg: LieAlgebra) -> VolumeData:
    got = _VOLUME_CACHE.get(id(alg))
    if got is None:
        got = VolumeData.build(alg)
        _VOLUME_CACHE[id(alg)] = got
    return got


def star(u: Multivector, vol: VolumeData = None) -> Multivector:
    if vol is None:
        vol = volume_data(u.algebra)
    return interior(u, vol.mu)


def radical(omega: Multivector) -> list:
    """Kernel of y -> interior(y, omega) for a 2-form, as elements."""
    alg = omega.algebra
    cols = []
    for j in range(alg.n):
        contr = interior_element(alg.basis_element(j), omega)
        dense = [0] * alg.n
        for mask, c in contr.terms.items():
            if mask.bit_count() != 1:
                raise LieAlgebraError("radical expects a 2-form")
            dense[mask.bit_length() - 1] = c
        cols.append(dense)
    mat = [[cols[j][i] for j in range(alg.n)] for i in range(alg.n)]
    return [alg.element(v) for v in kernel_basis(mat)]


def casimir_matrix(alg: LieAlgebra, k: int):
    """Matrix of sum_i theta(z_i) theta(w_i) on grade k, canonical subset basis."""
    if k < 0 or k > alg.n:
        raise LieAlgebraError("grade out of range")
    order = _grade_masks(alg.n, k)
    lookup = {m: i for i, m in enumerate(order)}
    dim = len(order)
    primal = alg.basis()
    dual = alg.dual_basis()
    mat = [[0] * dim for _ in range(dim)]
    for col, mask in enumerate(order):
        blade = Multivector(alg, {mask: 1})
        acc = Multivector.zero(alg)
        for w, z in zip(primal, dual):
            acc = acc + theta(z, theta(w, blade))
        for m, c in acc.terms.items():
            mat[lookup[m]][col] = normalize_scalar(c)
    return mat


def casimir_apply(alg: LieAlgebra, u: Multivector) -> Multivector:
    primal = alg.basis()
    dual = alg.dual_basis()
    acc = Multivector.zero(alg)
    for w, z in zip(primal, dual):
        acc = acc + theta(z, theta(w, u))
    return acc
