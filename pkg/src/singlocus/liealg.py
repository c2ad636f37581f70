"""Split simple Lie algebras over the rationals as structure-constant tables.

Supported: A1-A4 (sl), B2-B4 (odd orthogonal), C2-C4 (symplectic), D3-D4
(even orthogonal), G2. All are built from an explicit matrix representation
with a diagonal Cartan subalgebra, so every basis vector past the Cartan is
a simultaneous ad-eigenvector with rational eigenvalues. The basis order is
pinned: Cartan first, then positive root vectors sorted by root height then
root functional, then the matching negative vectors in the same order. That
order fixes every sign downstream (volume form, star, reports).

Construction verifies antisymmetry, the Jacobi identity on all basis
triples, and invariance plus nondegeneracy of the Killing form. A bad
table cannot leave this module.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactlinalg import (
    as_fraction,
    kernel_basis,
    mat_inverse,
    mat_mul,
    mat_rank,
    normalize_scalar,
    solve,
)

SUPPORTED_RANKS = {
    "A": range(1, 5),
    "B": range(2, 5),
    "C": range(2, 5),
    "D": range(3, 5),
    "G": (2,),
}

CACHE_FORMAT = 1


class LieAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Element:
    """A vector in g, coordinates over the fixed ordered basis."""

    algebra: "LieAlgebra"
    coords: tuple

    def __add__(self, other):
        self._check(other)
        return Element(
            self.algebra,
            tuple(normalize_scalar(a + b) for a, b in zip(self.coords, other.coords)),
        )

    def __sub__(self, other):
        self._check(other)
        return Element(
            self.algebra,
            tuple(normalize_scalar(a - b) for a, b in zip(self.coords, other.coords)),
        )

    def __rmul__(self, scalar):
        return Element(self.algebra, tuple(normalize_scalar(scalar * c) for c in self.coords))

    def __neg__(self):
        return Element(self.algebra, tuple(-c for c in self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise LieAlgebraError("elements belong to different algebras")


class LieAlgebra:
    """Structure-constant table of a split simple Lie algebra.

    Attributes
    ----------
    label: e.g. "A2"
    n, ell, r: dimension, rank, number of positive roots (n = ell + 2r)
    basis_names: printable names, Cartan first
    structure: structure[i][j] = tuple of (k, coeff), [x_i, x_j] = sum coeff x_k
    killing: dense n x n Killing matrix (trace form of the adjoint)
    rep_matrices: defining-representation matrix per basis vector
    heights: height of the k-th positive root (basis index ell + k)
    """

    def __init__(self, label, ell, basis_names, structure, rep_matrices, heights):
        self.label = label
        self.ell = ell
        self.n = len(basis_names)
        self.r = (self.n - ell) // 2
        self.basis_names = basis_names
        self.structure = structure
        self.rep_matrices = rep_matrices
        self.heights = heights
        self.killing = self._killing_matrix()
        self._dual_coords = None
        self._validate()

    # -- basic operations ---------------------------------------------------

    def element(self, coords) -> Element:
        coords = tuple(normalize_scalar(as_fraction(c)) for c in coords)
        if len(coords) != self.n:
            raise LieAlgebraError("coordinate length mismatch")
        return Element(self, coords)

    def zero(self) -> Element:
        return Element(self, (0,) * self.n)

    def basis_element(self, i) -> Element:
        coords = [0] * self.n
        coords[i] = 1
        return Element(self, tuple(coords))

    def basis(self):
        return [self.basis_element(i) for i in range(self.n)]

    def bracket(self, x: Element, y: Element) -> Element:
        if x.algebra is not self or y.algebra is not self:
            raise LieAlgebraError("elements belong to different algebras")
        out = [0] * self.n
        for i, xc in enumerate(x.coords):
            if xc == 0:
                continue
            row = self.structure[i]
            for j, yc in enumerate(y.coords):
                if yc == 0:
                    continue
                for k, c in row[j]:
                    out[k] += xc * yc * c
        return Element(self, tuple(normalize_scalar(v) for v in out))

    def killing_form(self, x: Element, y: Element):
        if x.algebra is not self or y.algebra is not self:
            raise LieAlgebraError("elements belong to different algebras")
        total = 0
        K = self.killing
        for i, xc in enumerate(x.coords):
            if xc == 0:
                continue
            row = K[i]
            for j, yc in enumerate(y.coords):
                if yc != 0:
                    total += xc * row[j] * yc
        return normalize_scalar(total)

    def ad_matrix(self, x: Element):
        """Matrix of ad x in the fixed basis (columns are [x, basis_j])."""
        cols = [self.bracket(x, self.basis_element(j)).coords for j in range(self.n)]
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def dual_basis(self, basis=None):
        """Killing-dual basis: (w_i, z_j) = delta_ij."""
        if basis is None:
            if self._dual_coords is None:
                kinv = mat_inverse(self.killing)
                self._dual_coords = [
                    tuple(normalize_scalar(kinv[i][j]) for i in range(self.n))
                    for j in range(self.n)
                ]
            return [Element(self, c) for c in self._dual_coords]
        gram = [[self.killing_form(a, b) for b in basis] for a in basis]
        try:
            ginv = mat_inverse(gram)
        except ValueError:
            raise LieAlgebraError("basis Gram matrix is singular") from None
        out = []
        for j in range(len(basis)):
            coords = [0] * self.n
            for i, b in enumerate(basis):
                if ginv[i][j] == 0:
                    continue
                for t in range(self.n):
                    coords[t] += ginv[i][j] * b.coords[t]
            out.append(self.element(coords))
        return out

    def centralizer(self, x: Element):
        """Basis of g^x = ker(ad x), primitive integer coordinates."""
        return [self.element(v) for v in kernel_basis(self.ad_matrix(x))]

    def is_regular(self, x: Element) -> bool:
        return len(self.centralizer(x)) == self.ell

    # -- construction-time checks -------------------------------------------

    def _killing_matrix(self):
        ads = [self.ad_matrix(self.basis_element(i)) for i in range(self.n)]
        K = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            adi = ads[i]
            for j in range(i, self.n):
                adj = ads[j]
                tr = 0
                for a in range(self.n):
                    row = adi[a]
                    for b in range(self.n):
                        if row[b] != 0 and adj[b][a] != 0:
                            tr += row[b] * adj[b][a]
                tr = normalize_scalar(tr)
                K[i][j] = tr
                K[j][i] = tr
        return K

    def _validate(self):
        n = self.n
        if n != self.ell + 2 * self.r:
            raise LieAlgebraError("dimension parity broken: n != ell + 2r")
        basis = self.basis()
        for i in range(n):
            for j in range(i, n):
                lhs = self.bracket(basis[i], basis[j])
                rhs = self.bracket(basis[j], basis[i])
                if any(a + b != 0 for a, b in zip(lhs.coords, rhs.coords)):
                    raise LieAlgebraError(f"antisymmetry fails at ({i},{j})")
        for i, j, k in combinations(range(n), 3):
            x, y, z = basis[i], basis[j], basis[k]
            acc = self.bracket(x, self.bracket(y, z))
            acc = acc + self.bracket(y, self.bracket(z, x))
            acc = acc + self.bracket(z, self.bracket(x, y))
            if not acc.is_zero():
                raise LieAlgebraError(f"Jacobi fails at ({i},{j},{k})")
        if mat_rank(self.killing) != n:
            raise LieAlgebraError("Killing form is degenerate")
        for i, j, k in combinations(range(n), 3):
            x, y, z = basis[i], basis[j], basis[k]
            val = self.killing_form(self.bracket(x, y), z) + self.killing_form(
                y, self.bracket(x, z)
            )
            if val != 0:
                raise LieAlgebraError(f"Killing invariance fails at ({i},{j},{k})")

    def __repr__(self):
        return f"LieAlgebra({self.label}, n={self.n}, ell={self.ell}, r={self.r})"


# -- matrix building blocks ---------------------------------------------------


def _matrix_units(size):
    def E(i, j):
        m = [[0] * size for _ in range(size)]
        m[i][j] = 1
        return m

    return E


def _mat_add(a, b, sa=1, sb=1):
    return [[sa * x + sb * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _comm(a, b):
    return _mat_add(mat_mul(a, b), mat_mul(b, a), 1, -1)


def _sl_basis(ell):
    """sl(ell+1): Cartan E_ii - E_{i+1,i+1}, root vectors E_ij."""
    size = ell + 1
    E = _matrix_units(size)
    cartan = [(_mat_add(E(i, i), E(i + 1, i + 1), 1, -1), f"h{i+1}") for i in range(ell)]
    entries = []
    for i in range(size):
        for j in range(i + 1, size):
            entries.append((E(i, j), E(j, i), f"e[{i+1},{j+1}]", f"f[{i+1},{j+1}]"))
    return cartan, entries


def _so_odd_basis(ell):
    """so(2ell+1) for the antidiagonal symmetric form; sigma(i) = N-1-i."""
    size = 2 * ell + 1
    E = _matrix_units(size)
    sig = lambda i: size - 1 - i

    cartan = [(_mat_add(E(i, i), E(sig(i), sig(i)), 1, -1), f"h{i+1}") for i in range(ell)]

    def unit(i, j):
        return _mat_add(E(i, j), E(sig(j), sig(i)), 1, -1)

    entries = []
    for i in range(ell):
        for j in range(i + 1, ell):
            entries.append((unit(i, j), unit(j, i), f"e[{i+1}-{j+1}]", f"f[{i+1}-{j+1}]"))
            entries.append(
                (unit(i, sig(j)), unit(sig(j), i), f"e[{i+1}+{j+1}]", f"f[{i+1}+{j+1}]")
            )
        entries.append((unit(i, ell), unit(ell, i), f"e[{i+1}]", f"f[{i+1}]"))
    return cartan, entries


def _sp_basis(ell):
    """sp(2ell) for the antidiagonal symplectic form; sigma(i) = N-1-i."""
    size = 2 * ell
    E = _matrix_units(size)
    sig = lambda i: size - 1 - i

    cartan = [(_mat_add(E(i, i), E(sig(i), sig(i)), 1, -1), f"h{i+1}") for i in range(ell)]

    def unit_gl(i, j):
        return _mat_add(E(i, j), E(sig(j), sig(i)), 1, -1)

    entries = []
    for i in range(ell):
        for j in range(i + 1, ell):
            entries.append((unit_gl(i, j), unit_gl(j, i), f"e[{i+1}-{j+1}]", f"f[{i+1}-{j+1}]"))
            entries.append(
                (
                    _mat_add(E(i, sig(j)), E(j, sig(i)), 1, 1),
                    _mat_add(E(sig(j), i), E(sig(i), j), 1, 1),
                    f"e[{i+1}+{j+1}]",
                    f"f[{i+1}+{j+1}]",
                )
            )
        entries.append((E(i, sig(i)), E(sig(i), i), f"e[2*{i+1}]", f"f[2*{i+1}]"))
    return cartan, entries


def _so_even_basis(ell):
    """so(2ell) for the antidiagonal symmetric form."""
    size = 2 * ell
    E = _matrix_units(size)
    sig = lambda i: size - 1 - i

    cartan = [(_mat_add(E(i, i), E(sig(i), sig(i)), 1, -1), f"h{i+1}") for i in range(ell)]

    def unit(i, j):
        return _mat_add(E(i, j), E(sig(j), sig(i)), 1, -1)

    entries = []
    for i in range(ell):
        for j in range(i + 1, ell):
            entries.append((unit(i, j), unit(j, i), f"e[{i+1}-{j+1}]", f"f[{i+1}-{j+1}]"))
            entries.append(
                (unit(i, sig(j)), unit(sig(j), i), f"e[{i+1}+{j+1}]", f"f[{i+1}+{j+1}]")
            )
    return cartan, entries


# -- G2 via derivations of the split octonions --------------------------------


def _zorn_mult(x, y):
    """Product of split octonions in Zorn vector-matrix form.

    x = (a, v, w, b) stands for [[a, v], [w, b]] with the product
    [[aa' + v.w', av' + b'v - w x w'], [a'w + bw' + v x v', bb' + w.v']].
    """
    a, v, w, b = x
    a2, v2, w2, b2 = y
    dot = lambda p, q: p[0] * q[0] + p[1] * q[1] + p[2] * q[2]

    def cross(p, q):
        return [
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        ]

    cv = cross(w, w2)
    cw = cross(v, v2)
    na = a * a2 + dot(v, w2)
    nb = b * b2 + dot(w, v2)
    nv = [a * v2[i] + b2 * v[i] - cv[i] for i in range(3)]
    nw = [a2 * w[i] + b * w2[i] + cw[i] for i in range(3)]
    return (na, nv, nw, nb)


def _zorn_table():
    def basis_vec(k):
        a = 1 if k == 0 else 0
        b = 1 if k == 7 else 0
        v = [1 if k == i + 1 else 0 for i in range(3)]
        w = [1 if k == i + 4 else 0 for i in range(3)]
        return (a, v, w, b)

    def flatten(x):
        a, v, w, b = x
        return [a] + list(v) + list(w) + [b]

    return [[flatten(_zorn_mult(basis_vec(i), basis_vec(j))) for j in range(8)] for i in range(8)]


def _g2_basis():
    """14 derivations of the split octonions, Cartan from the sl(3) torus.

    Root vectors are joint ad-eigenvectors of the two torus derivations;
    positivity is decided by the value on a fixed regular torus direction.
    The returned matrices act on all 8 Zorn coordinates; the caller
    restricts to the 7-dim trace-zero part.
    """
    mult = _zorn_table()

    # derivation condition D(e_i e_j) = D(e_i) e_j + e_i D(e_j),
    # unknown x[s*8+c] = coefficient of e_s in D(e_c)
    system = []
    for i in range(8):
        for j in range(8):
            prod = mult[i][j]
            for t in range(8):
                row = [0] * 64
                for c in range(8):
                    if prod[c] != 0:
                        row[t * 8 + c] += prod[c]
                for s in range(8):
                    coeff = mult[s][j][t]
                    if coeff != 0:
                        row[s * 8 + i] -= coeff
                for s in range(8):
                    coeff = mult[i][s][t]
                    if coeff != 0:
                        row[s * 8 + j] -= coeff
                if any(row):
                    system.append(row)
    der = kernel_basis(system)
    if len(der) != 14:
        raise LieAlgebraError(
            f"split octonion derivation algebra has dim {len(der)}, expected 14"
        )

    def to_matrix(flat):
        return [[flat[s * 8 + c] for c in range(8)] for s in range(8)]

    der_mats = [to_matrix(v) for v in der]

    def torus(d):
        m = [[0] * 8 for _ in range(8)]
        for i in range(3):
            m[1 + i][1 + i] = d[i]
            m[4 + i][4 + i] = -d[i]
        return m

    h1 = torus([1, -1, 0])
    h2 = torus([0, 1, -1])

    flat_cols = [[m[i][j] for m in der_mats] for i in range(8) for j in range(8)]

    def coords_in_der(target):
        rhs = [target[i][j] for i in range(8) for j in range(8)]
        c = solve(flat_cols, rhs)
        if c is None:
            raise LieAlgebraError("torus does not normalize the derivation algebra")
        return c

    ad1 = [[0] * 14 for _ in range(14)]
    ad2 = [[0] * 14 for _ in range(14)]
    for j, m in enumerate(der_mats):
        c1 = coords_in_der(_comm(h1, m))
        c2 = coords_in_der(_comm(h2, m))
        for i in range(14):
            ad1[i][j] = c1[i]
            ad2[i][j] = c2[i]

    zero_space = None
    root_spaces = {}
    found = 0
    for lam1 in range(-3, 4):
        for lam2 in range(-3, 4):
            m1 = [[ad1[i][j] - (lam1 if i == j else 0) for j in range(14)] for i in range(14)]
            m2 = [[ad2[i][j] - (lam2 if i == j else 0) for j in range(14)] for i in range(14)]
            ker = kernel_basis(m1 + m2)
            if not ker:
                continue
            found += len(ker)
            if (lam1, lam2) == (0, 0):
                zero_space = ker
            else:
                if len(ker) != 1:
                    raise LieAlgebraError("G2 root multiplicity != 1")
                root_spaces[(lam1, lam2)] = ker[0]
    if found != 14 or zero_space is None or len(zero_space) != 2 or len(root_spaces) != 12:
        raise LieAlgebraError("G2 root decomposition incomplete")

    def flat_to_mat(vec):
        m = [[0] * 8 for _ in range(8)]
        for i in range(14):
            if vec[i] != 0:
                for a in range(8):
                    for b in range(8):
                        m[a][b] += vec[i] * der_mats[i][a][b]
        return m

    # (2, 3) does not vanish on any of the 12 roots, so it splits them
    positives = [lam for lam in root_spaces if 2 * lam[0] + 3 * lam[1] > 0]
    if len(positives) != 6:
        raise LieAlgebraError("expected 6 positive roots for G2")
    positives.sort()

    cartan = [(flat_to_mat(zero_space[0]), "h1"), (flat_to_mat(zero_space[1]), "h2")]
    entries = []
    for lam in positives:
        neg = (-lam[0], -lam[1])
        entries.append(
            (flat_to_mat(root_spaces[lam]), flat_to_mat(root_spaces[neg]), f"e{lam}", f"f{lam}")
        )
    return cartan, entries


def _g2_7dim(mat8):
    """Restrict a derivation matrix to the trace-zero octonions.

    Zorn coordinates are (a, v1..v3, w1..w3, b); the identity is a = b = 1,
    the trace-zero part is {a + b = 0} + v + w. Conjugate into the basis
    (identity, a-b, v, w) and cut the identity row and column, which must
    vanish for a derivation.
    """
    # P columns: u0 = d0+d7, u1 = d0-d7, then the six v/w units
    P = [[0] * 8 for _ in range(8)]
    P[0][0] = P[7][0] = 1
    P[0][1] = 1
    P[7][1] = -1
    for i in range(1, 7):
        P[i][i + 1] = 1
    Pinv = mat_inverse(P)
    conj = mat_mul(Pinv, mat_mul(mat8, P))
    for t in range(8):
        if conj[0][t] != 0 or conj[t][0] != 0:
            raise LieAlgebraError("derivation does not kill the identity octonion")
    return [[conj[i][j] for j in range(1, 8)] for i in range(1, 8)]


# -- root-functional sorting ----------------------------------------------------


def _rep_functional(cartan_mats, X):
    """Eigenvalue tuple of [H_c, X] = value * X over the Cartan matrices."""
    size = len(X)
    pivot = None
    for a in range(size):
        for b in range(size):
            if X[a][b] != 0:
                pivot = (a, b)
                break
        if pivot:
            break
    if pivot is None:
        raise LieAlgebraError("zero root vector candidate")
    values = []
    for H in cartan_mats:
        C = _comm(H, X)
        lam = normalize_scalar(as_fraction(C[pivot[0]][pivot[1]]) / as_fraction(X[pivot[0]][pivot[1]]))
        for a in range(size):
            for b in range(size):
                if C[a][b] != lam * X[a][b]:
                    raise LieAlgebraError("candidate is not a torus eigenvector")
        values.append(lam)
    return tuple(values)


def _sort_positive_entries(cartan_mats, entries):
    """Order (pos, neg, names) entries by root height, then functional.

    Heights come from expanding each positive functional over the simple
    ones (those not sums of two positives); coefficients must be
    nonnegative integers or the claimed positive system is inconsistent.
    """
    functionals = [_rep_functional(cartan_mats, e[0]) for e in entries]
    for e, lam in zip(entries, functionals):
        neg_lam = _rep_functional(cartan_mats, e[1])
        if neg_lam != tuple(-x for x in lam):
            raise LieAlgebraError("positive/negative functional mismatch")
    pos_set = set(functionals)
    if len(pos_set) != len(functionals):
        raise LieAlgebraError("repeated positive root")
    sums = {tuple(a + b for a, b in zip(p, q)) for p in pos_set for q in pos_set}
    simples = sorted(lam for lam in pos_set if lam not in sums)
    ell = len(cartan_mats)
    if len(simples) != ell:
        raise LieAlgebraError("simple root count differs from the rank")
    cols = [[simples[j][i] for j in range(ell)] for i in range(ell)]
    heights = []
    for lam in functionals:
        coeffs = solve(cols, list(lam))
        if coeffs is None:
            raise LieAlgebraError("positive root outside the simple span")
        coeffs = [as_fraction(c) for c in coeffs]
        if any(c.denominator != 1 or c < 0 for c in coeffs):
            raise LieAlgebraError("positive root outside the nonnegative simple span")
        heights.append(int(sum(coeffs)))
    order = sorted(range(len(entries)), key=lambda k: (heights[k], functionals[k]))
    return [entries[k] for k in order], [heights[k] for k in order]


# -- assembling structure constants --------------------------------------------


def _coords_solver(mats):
    """Exact coordinate extraction against a fixed independent matrix family.

    Row-reduces the flattened basis once, then each call back-substitutes
    and verifies membership on all entries.
    """
    size = len(mats[0])
    n = len(mats)
    flat = [[m[i][j] for m in mats] for i in range(size) for j in range(size)]
    # choose n independent entry positions via echelon pivots
    from .exactlinalg import _row_echelon

    echelon, pivots = _row_echelon([list(row) for row in zip(*flat)])
    if len(pivots) != n:
        raise LieAlgebraError("basis matrices are linearly dependent")
    square = [flat[p] for p in pivots]
    inv = mat_inverse(square)

    def express(target):
        rhs = [target[p // size][p % size] for p in pivots]
        coords = [
            normalize_scalar(sum(inv[i][j] * rhs[j] for j in range(n))) for i in range(n)
        ]
        # verify membership on every matrix entry
        for i in range(size):
            for j in range(size):
                acc = 0
                for t in range(n):
                    if coords[t] != 0:
                        acc += coords[t] * mats[t][i][j]
                if acc != target[i][j]:
                    raise LieAlgebraError("commutator left the span of the basis")
        return coords

    return express


def build_classical(family: str, rank: int, cache_dir=None) -> LieAlgebra:
    """Build the split simple Lie algebra of the given family and rank.

    family in {"A","B","C","D","G"}; supported ranks: A 1-4, B/C 2-4,
    D 3-4, G 2. When cache_dir is given, a checksummed JSON structure
    table is loaded if fresh and rewritten otherwise.
    """
    family = family.upper()
    if family not in SUPPORTED_RANKS or rank not in SUPPORTED_RANKS[family]:
        supported = ", ".join(
            f"{f}{min(r)}-{f}{max(r)}" if len(tuple(r)) > 1 else f"{f}{min(r)}"
            for f, r in SUPPORTED_RANKS.items()
        )
        raise LieAlgebraError(f"unsupported algebra {family}{rank}; supported: {supported}")
    label = f"{family}{rank}"

    if cache_dir is not None:
        cached = _load_cache(cache_dir, label)
        if cached is not None:
            return cached

    builders = {
        "A": _sl_basis,
        "B": _so_odd_basis,
        "C": _sp_basis,
        "D": _so_even_basis,
    }
    if family == "G":
        cartan, entries = _g2_basis()
        cartan = [(_g2_7dim(m), nm) for m, nm in cartan]
        entries = [(_g2_7dim(p), _g2_7dim(q), pn, qn) for p, q, pn, qn in entries]
    else:
        cartan, entries = builders[family](rank)

    cartan_mats = [m for m, _ in cartan]
    entries, heights = _sort_positive_entries(cartan_mats, entries)

    mats = cartan_mats + [e[0] for e in entries] + [e[1] for e in entries]
    names = [nm for _, nm in cartan] + [e[2] for e in entries] + [e[3] for e in entries]
    express = _coords_solver(mats)
    n = len(mats)

    structure = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                # antisymmetry fills the lower triangle
                row.append(tuple((k, -c) for k, c in structure[j][i]))
            elif j == i:
                row.append(())
            else:
                coords = express(_comm(mats[i], mats[j]))
                row.append(
                    tuple((k, normalize_scalar(c)) for k, c in enumerate(coords) if c != 0)
                )
        structure.append(row)

    alg = LieAlgebra(label, rank, names, structure, mats, heights)
    if cache_dir is not None:
        _write_cache(cache_dir, alg)
    return alg


# -- structure-constant cache ----------------------------------------------------


def _scalar_str(x):
    return str(x)


def _scalar_parse(s):
    return normalize_scalar(Fraction(s))


def _cache_payload(alg: LieAlgebra):
    triples = []
    for i in range(alg.n):
        for j in range(alg.n):
            for k, c in alg.structure[i][j]:
                triples.append([i, j, k, _scalar_str(c)])
    return {
        "format": CACHE_FORMAT,
        "label": alg.label,
        "ell": alg.ell,
        "basisNames": alg.basis_names,
        "structure": triples,
        "killing": [[_scalar_str(x) for x in row] for row in alg.killing],
        "repMatrices": [[[_scalar_str(x) for x in row] for row in m] for m in alg.rep_matrices],
        "heights": alg.heights,
    }


def _payload_checksum(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def cache_path(cache_dir, label):
    return os.path.join(cache_dir, f"{label}.json")


def _write_cache(cache_dir, alg: LieAlgebra):
    os.makedirs(cache_dir, exist_ok=True)
    payload = _cache_payload(alg)
    doc = {"payload": payload, "checksum": _payload_checksum(payload)}
    with open(cache_path(cache_dir, alg.label), "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)


def _load_cache(cache_dir, label):
    path = cache_path(cache_dir, label)
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        payload = doc["payload"]
        if doc.get("checksum") != _payload_checksum(payload) or payload.get("format") != CACHE_FORMAT:
            return None
        n = len(payload["basisNames"])
        structure = [[[] for _ in range(n)] for _ in range(n)]
        for i, j, k, c in payload["structure"]:
            structure[i][j].append((k, _scalar_parse(c)))
        structure = [[tuple(cell) for cell in row] for row in structure]
        mats = [[[_scalar_parse(x) for x in row] for row in m] for m in payload["repMatrices"]]
        return LieAlgebra(
            payload["label"], payload["ell"], payload["basisNames"], structure, mats,
            payload["heights"],
        )
    except (KeyError, ValueError, json.JSONDecodeError):
        return None


# -- regularity-adjacent constructions --------------------------------------------


def principal_nilpotent(alg: LieAlgebra, datum) -> Element:
    """Sum of the simple positive root vectors; asserted regular nilpotent."""
    e = alg.zero()
    for idx in datum.simples:
        e = e + datum.positive_vector(idx)
    ad = alg.ad_matrix(e)
    power = ad
    nilpotent = False
    for _ in range(alg.n):
        if all(all(v == 0 for v in row) for row in power):
            nilpotent = True
            break
        power = mat_mul(power, ad)
    if not nilpotent:
        raise LieAlgebraError("principal candidate is not nilpotent")
    if not alg.is_regular(e):
        raise LieAlgebraError("principal candidate is not regular")
    return e


def singular_functional(alg: LieAlgebra, datum, e: Element):
    """Linear functional on g^e cutting out g^e intersect [n, n].

    n is the nilradical of the standard Borel, so [n, n] is spanned by
    the positive root vectors of height >= 2. Returns (centralizer
    basis, functional coefficients over that basis); the functional is
    canonical up to scale (primitive integer, positive leading entry).
    Fails if the intersection is not a hyperplane of g^e.
    """
    cent = alg.centralizer(e)
    m = len(cent)
    nn_rows = [
        datum.positive_vector(k).coords
        for k in datum.positives
        if datum.heights[k] >= 2
    ]
    if nn_rows:
        # combos of cent lying in span(nn): kernel of [cent | nn] columns
        cols = [list(c.coords) for c in cent] + [list(r) for r in nn_rows]
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(alg.n)]
        inter = []
        for v in kernel_basis(mat):
            head = v[:m]
            if any(x != 0 for x in head):
                inter.append(head)
        inter_rank = mat_rank(inter) if inter else 0
    else:
        inter = []
        inter_rank = 0
    if inter_rank != m - 1:
        raise LieAlgebraError("singular hyperplane has unexpected dimension")
    if inter:
        xi = kernel_basis(inter)
        if len(xi) != 1:
            raise LieAlgebraError("functional is not unique up to scale")
        return cent, xi[0]
    return cent, [1]
