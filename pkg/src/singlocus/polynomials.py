"""Sparse multivariate polynomials on g and the basic invariants.

A polynomial function on g is expanded over the *plain coordinate*
functions: variable i is the function x -> coords(x)[i] over the fixed
basis. Under the Killing identification of g with its dual this variable
is the dual basis vector z_i, so a general element of S(g) is a dict
from packed exponent vectors to rational coefficients.

With this convention evaluation and directional derivatives read off the
coordinates directly; the Killing matrix enters only when converting an
algebra element to its linear polynomial, in the symmetric pairing, and
when a polynomial acts as a constant-coefficient differential operator.

Exponents are packed six bits per variable into a single int key, which
keeps dict operations cheap. Coefficients stay plain ints whenever they
can.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import as_fraction, mat_rank, normalize_scalar
from .liealg import Element, LieAlgebra, LieAlgebraError

_SHIFT = 6
_MASK = (1 << _SHIFT) - 1


class DegenerateInputWarning(UserWarning):
    """Raised when a minor determinant is requested for dependent directions."""


def pack_exponents(exps):
    key = 0
    for i, e in enumerate(exps):
        if e:
            if e > _MASK:
                raise OverflowError("exponent exceeds the packed-key range")
            key |= e << (_SHIFT * i)
    return key


def unpack_exponents(key, nvars):
    out = []
    for _ in range(nvars):
        out.append(key & _MASK)
        key >>= _SHIFT
    return tuple(out)


def key_degree(key):
    total = 0
    while key:
        total += key & _MASK
        key >>= _SHIFT
    return total


def _key_mul(a, b):
    # exponent vectors add; six bits per slot leaves headroom at desk degrees
    return a + b


class Polynomial:
    """Sparse polynomial in nvars variables with exact coefficients."""

    __slots__ = ("nvars", "terms", "algebra")

    def __init__(self, nvars, terms=None, algebra=None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}
        self.algebra = algebra

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, nvars, algebra=None):
        return cls(nvars, {}, algebra)

    @classmethod
    def constant(cls, nvars, c, algebra=None):
        c = normalize_scalar(c)
        return cls(nvars, {0: c} if c != 0 else {}, algebra)

    @classmethod
    def variable(cls, nvars, i, algebra=None):
        return cls(nvars, {1 << (_SHIFT * i): 1}, algebra)

    @classmethod
    def from_element(cls, v: Element):
        """The linear polynomial y -> (v, y)."""
        alg = v.algebra
        terms = {}
        K = alg.killing
        for i in range(alg.n):
            c = 0
            for j, vc in enumerate(v.coords):
                if vc != 0:
                    c += vc * K[j][i]
            c = normalize_scalar(c)
            if c != 0:
                terms[1 << (_SHIFT * i)] = c
        return cls(alg.n, terms, alg)

    @classmethod
    def from_coordinates(cls, alg: LieAlgebra, coeffs):
        """Linear polynomial sum_i coeffs[i] * coordinate_i."""
        terms = {}
        for i, c in enumerate(coeffs):
            c = normalize_scalar(c)
            if c != 0:
                terms[1 << (_SHIFT * i)] = c
        return cls(alg.n, terms, alg)

    def copy(self):
        return Polynomial(self.nvars, dict(self.terms), self.algebra)

    # -- ring structure ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        raise TypeError("polynomials are mutable containers; not hashable")

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            nc = out.get(k, 0) + c
            if nc == 0:
                out.pop(k, None)
            else:
                out[k] = nc
        return Polynomial(self.nvars, out, self.algebra or other.algebra)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            nc = out.get(k, 0) - c
            if nc == 0:
                out.pop(k, None)
            else:
                out[k] = nc
        return Polynomial(self.nvars, out, self.algebra or other.algebra)

    def __neg__(self):
        return Polynomial(self.nvars, {k: -c for k, c in self.terms.items()}, self.algebra)

    def scale(self, c):
        c = normalize_scalar(c)
        if c == 0:
            return Polynomial.zero(self.nvars, self.algebra)
        return Polynomial(
            self.nvars,
            {k: normalize_scalar(v * c) for k, v in self.terms.items()},
            self.algebra,
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        out = {}
        small, large = self.terms, other.terms
        if len(small) > len(large):
            small, large = large, small
        for k1, c1 in small.items():
            for k2, c2 in large.items():
                k = k1 + k2
                nc = out.get(k, 0) + c1 * c2
                if nc == 0:
                    out.pop(k, None)
                else:
                    out[k] = nc
        return Polynomial(self.nvars, out, self.algebra or other.algebra)

    __rmul__ = scale

    def power(self, k):
        result = Polynomial.constant(self.nvars, 1, self.algebra)
        for _ in range(k):
            result = result * self
        return result

    # -- structure ---------------------------------------------------------------

    def degree(self):
        return max((key_degree(k) for k in self.terms), default=0)

    def is_homogeneous(self):
        degs = {key_degree(k) for k in self.terms}
        return len(degs) <= 1

    def leading_key(self):
        return min(self.terms) if self.terms else None

    def coefficient_dict(self):
        return self.terms

    # -- evaluation and derivatives -----------------------------------------------

    def evaluate(self, x: Element):
        """Value at x; variables take the plain coordinates of x."""
        if self.algebra is not None and x.algebra is not self.algebra:
            raise LieAlgebraError("element belongs to a different algebra")
        total = 0
        for key, c in self.terms.items():
            val = c
            k = key
            i = 0
            while k:
                e = k & _MASK
                if e:
                    ci = x.coords[i]
                    if ci == 0:
                        val = 0
                        break
                    val *= ci ** e
                k >>= _SHIFT
                i += 1
            total += val
        return normalize_scalar(total)

    def formal_partial(self, i):
        """d/d(variable i), no Killing pairing involved."""
        shift = _SHIFT * i
        out = {}
        for key, c in self.terms.items():
            e = (key >> shift) & _MASK
            if e:
                out[key - (1 << shift)] = normalize_scalar(out.get(key - (1 << shift), 0) + c * e)
        return Polynomial(self.nvars, {k: v for k, v in out.items() if v != 0}, self.algebra)

    def directional_derivative(self, v: Element):
        """Derivative along v: sum_i coords(v)[i] * formal partial i."""
        out = Polynomial.zero(self.nvars, self.algebra)
        for i, ci in enumerate(v.coords):
            if ci != 0:
                out = out + self.formal_partial(i).scale(ci)
        return out

    # -- serialization ---------------------------------------------------------------

    def to_text(self):
        """Canonical sparse text: one 'e1 e2 ... : coeff' line per term."""
        lines = []
        for key in sorted(self.terms, key=lambda k: (key_degree(k), unpack_exponents(k, self.nvars))):
            exps = unpack_exponents(key, self.nvars)
            lines.append(" ".join(str(e) for e in exps) + " : " + str(self.terms[key]))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, nvars, text, algebra=None):
        terms = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            left, right = line.split(":")
            exps = tuple(int(t) for t in left.split())
            if len(exps) != nvars:
                raise ValueError("exponent vector length mismatch")
            c = normalize_scalar(Fraction(right.strip()))
            if c != 0:
                terms[pack_exponents(exps)] = c
        return cls(nvars, terms, algebra)

    def __repr__(self):
        return f"Polynomial(nvars={self.nvars}, terms={len(self.terms)}, deg={self.degree()})"


# -- g-module structure on polynomials ----------------------------------------------


def adjoint_action(y: Element, f: Polynomial) -> Polynomial:
    """Action of y on polynomial functions, extending ad y as a derivation.

    On a linear polynomial (v, .) the action gives ([y, v], .).
    """
    alg = y.algebra
    if f.algebra is not alg:
        raise LieAlgebraError("polynomial and element algebras differ")
    duals = alg.dual_basis()
    bracket_polys = {}
    out = Polynomial.zero(f.nvars, alg)
    for key, c in f.terms.items():
        k = key
        i = 0
        while k:
            e = k & _MASK
            if e:
                if i not in bracket_polys:
                    bracket_polys[i] = Polynomial.from_element(alg.bracket(y, duals[i]))
                rest = Polynomial(f.nvars, {key - (1 << (_SHIFT * i)): normalize_scalar(c * e)}, alg)
                out = out + rest * bracket_polys[i]
            k >>= _SHIFT
            i += 1
    return out


def invariance_defect(f: Polynomial, y: Element) -> Polynomial:
    """x -> d/dt f(x + t[y, x]) at t = 0; zero iff f is invariant along y."""
    return -adjoint_action(y, f)


# -- symmetric-algebra pairing --------------------------------------------------------


def _permanent(rows):
    """Permanent via row expansion with a used-column bitmask memo."""
    k = len(rows)
    if k == 0:
        return 1
    full = (1 << k) - 1
    memo = {full: 1}

    def rec(used):
        got = memo.get(used)
        if got is not None:
            return got
        row = rows[used.bit_count()]
        total = 0
        for j in range(k):
            bit = 1 << j
            if not (used & bit) and row[j] != 0:
                total += row[j] * rec(used | bit)
        memo[used] = total
        return total

    return rec(0)


def sym_pairing(f: Polynomial, g: Polynomial):
    """Killing pairing on S(g): permanent pairing on monomials.

    Homogeneous components of different degrees are orthogonal; mixed
    inputs pair componentwise.
    """
    alg = f.algebra or g.algebra
    if alg is None:
        raise LieAlgebraError("pairing needs algebra-attached polynomials")
    kinv = _dual_gram(alg)
    total = 0
    for k1, c1 in f.terms.items():
        d1 = key_degree(k1)
        e1 = _key_indices(k1)
        for k2, c2 in g.terms.items():
            if key_degree(k2) != d1:
                continue
            e2 = _key_indices(k2)
            rows = [[kinv[a][b] for b in e2] for a in e1]
            total += c1 * c2 * _permanent(rows)
    return normalize_scalar(total)


def _key_indices(key):
    """Multiset of variable indices of a packed monomial."""
    out = []
    i = 0
    while key:
        e = key & _MASK
        out.extend([i] * e)
        key >>= _SHIFT
        i += 1
    return out


_DUAL_GRAM_CACHE = {}


def _dual_gram(alg: LieAlgebra):
    got = _DUAL_GRAM_CACHE.get(id(alg))
    if got is None:
        from .exactlinalg import mat_inverse

        got = mat_inverse(alg.killing)
        _DUAL_GRAM_CACHE[id(alg)] = got
    return got


# -- differential operators --------------------------------------------------------------


def apply_diffop(p: Polynomial, f: Polynomial) -> Polynomial:
    """Apply the constant-coefficient operator of p to f.

    Each variable of p becomes the directional derivative along the
    corresponding dual basis vector, the transpose of multiplication
    under the symmetric pairing. Derivative chains are cached by
    exponent prefix.
    """
    alg = p.algebra
    if alg is None or f.algebra is not alg:
        raise LieAlgebraError("operator application needs matching algebras")
    duals = alg.dual_basis()
    cache = {0: f}

    def derived(key):
        got = cache.get(key)
        if got is not None:
            return got
        # strip one step from the lowest active variable
        k = key
        i = 0
        while not (k & _MASK):
            k >>= _SHIFT
            i += 1
        prev = derived(key - (1 << (_SHIFT * i)))
        out = prev.directional_derivative(duals[i])
        cache[key] = out
        return out

    total = Polynomial.zero(f.nvars, alg)
    for key, c in sorted(p.terms.items()):
        total = total + derived(key).scale(c)
    return total


# -- basic invariants ----------------------------------------------------------------------


@dataclass
class InvariantSet:
    """Generators of the invariant polynomial ring with their degrees."""

    algebra: LieAlgebra
    generators: list
    degrees: list

    def __post_init__(self):
        r, ell = self.algebra.r, self.algebra.ell
        if len(self.generators) != ell:
            raise LieAlgebraError("need exactly rank-many generators")
        if sum(self.degrees) != r + ell:
            raise LieAlgebraError("generator degrees must sum to r + rank")
        for p, d in zip(self.generators, self.degrees):
            if p.is_zero() or not p.is_homogeneous() or p.degree() != d:
                raise LieAlgebraError("generator fails homogeneity bookkeeping")

    def exponents(self):
        return sorted(d - 1 for d in self.degrees)

    def verify_invariance(self):
        """Exact ad-invariance of every generator along every basis direction."""
        for p in self.generators:
            for i in range(self.algebra.n):
                defect = invariance_defect(p, self.algebra.basis_element(i))
                if not defect.is_zero():
                    raise LieAlgebraError("generator is not ad-invariant")
        return True


def _symbolic_rep_matrix(alg: LieAlgebra):
    """Defining-representation matrix of the generic element, entries linear."""
    size = len(alg.rep_matrices[0])
    n = alg.n
    entries = [[Polynomial.zero(n, alg) for _ in range(size)] for _ in range(size)]
    for i, mat in enumerate(alg.rep_matrices):
        var = Polynomial.variable(n, i, alg)
        for a in range(size):
            for b in range(size):
                if mat[a][b] != 0:
                    entries[a][b] = entries[a][b] + var.scale(mat[a][b])
    return entries


def _poly_mat_mul(A, B):
    size = len(A)
    nvars = A[0][0].nvars
    alg = A[0][0].algebra
    out = [[Polynomial.zero(nvars, alg) for _ in range(size)] for _ in range(size)]
    for a in range(size):
        for c in range(size):
            if A[a][c].is_zero():
                continue
            for b in range(size):
                if not B[c][b].is_zero():
                    out[a][b] = out[a][b] + A[a][c] * B[c][b]
    return out


def _char_poly_coefficients(X):
    """Coefficients c_1..c_size of det(tI - X) by Faddeev-LeVerrier."""
    size = len(X)
    nvars = X[0][0].nvars
    alg = X[0][0].algebra
    coeffs = []
    M = [[Polynomial.zero(nvars, alg) for _ in range(size)] for _ in range(size)]
    for a in range(size):
        M[a][a] = Polynomial.constant(nvars, 1, alg)
    for k in range(1, size + 1):
        XM = _poly_mat_mul(X, M)
        trace = Polynomial.zero(nvars, alg)
        for a in range(size):
            trace = trace + XM[a][a]
        ck = trace.scale(Fraction(-1, k))
        coeffs.append(ck)
        M = XM
        for a in range(size):
            M[a][a] = M[a][a] + ck
    return coeffs


def _pfaffian_poly(A):
    """Pfaffian of an antisymmetric polynomial matrix by matching expansion."""
    size = len(A)
    nvars = A[0][0].nvars
    alg = A[0][0].algebra
    memo = {}

    def rec(mask):
        if mask == 0:
            return Polynomial.constant(nvars, 1, alg)
        got = memo.get(mask)
        if got is not None:
            return got
        a = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << a)
        total = Polynomial.zero(nvars, alg)
        sub = rest
        sign_count = 0
        b = a
        while sub:
            b = (sub & -sub).bit_length() - 1
            sub &= sub - 1
            entry = A[a][b]
            if not entry.is_zero():
                term = entry * rec(rest & ~(1 << b))
                if sign_count % 2:
                    term = -term
                total = total + term
            sign_count += 1
        memo[mask] = total
        return total

    return rec((1 << size) - 1)


def invariant_generators(alg: LieAlgebra, verify=True) -> InvariantSet:
    """Basic invariants from the defining representation.

    Characteristic-polynomial coefficients for types A, B, C and G2; for
    type D the top coefficient is the square of the Pfaffian, which
    replaces it.
    """
    family = alg.label[0]
    ell = alg.ell
    X = _symbolic_rep_matrix(alg)
    if family == "A":
        coeffs = _char_poly_coefficients(X)
        gens = coeffs[1 : ell + 1]
        degrees = list(range(2, ell + 2))
    elif family in ("B", "C"):
        coeffs = _char_poly_coefficients(X)
        gens = [coeffs[2 * j - 1] for j in range(1, ell + 1)]
        degrees = [2 * j for j in range(1, ell + 1)]
    elif family == "D":
        coeffs = _char_poly_coefficients(X)
        gens = [coeffs[2 * j - 1] for j in range(1, ell)]
        degrees = [2 * j for j in range(1, ell)]
        size = len(X)
        # JX is antisymmetric for the antidiagonal form J
        JX = [[X[size - 1 - a][b] for b in range(size)] for a in range(size)]
        for a in range(size):
            for b in range(size):
                if not (JX[a][b] + JX[b][a]).is_zero():
                    raise LieAlgebraError("JX is not antisymmetric")
        gens.append(_pfaffian_poly(JX))
        degrees.append(ell)
    elif family == "G":
        coeffs = _char_poly_coefficients(X)
        gens = [coeffs[1], coeffs[5]]
        degrees = [2, 6]
    else:
        raise LieAlgebraError(f"no invariant recipe for family {family}")
    inv = InvariantSet(alg, gens, degrees)
    if verify:
        inv.verify_invariance()
    return inv


# -- minors, restriction ------------------------------------------------------------------


def psi_minor(inv: InvariantSet, directions) -> Polynomial:
    """Determinant of the directional-derivative matrix of the invariants.

    Entry (i, j) is the derivative of generator j along directions[i].
    Dependent directions give the zero polynomial and a
    DegenerateInputWarning instead of an error.
    """
    alg = inv.algebra
    ell = alg.ell
    if len(directions) != ell:
        raise LieAlgebraError("need rank-many directions")
    if mat_rank([list(u.coords) for u in directions]) < ell:
        warnings.warn("dependent directions give a zero minor", DegenerateInputWarning)
    entries = [
        [inv.generators[j].directional_derivative(u) for j in range(ell)] for u in directions
    ]
    return _poly_det(entries)


def _poly_det(entries):
    """Determinant of a small polynomial matrix, sharing minors by column set."""
    size = len(entries)
    nvars = entries[0][0].nvars
    alg = entries[0][0].algebra
    minors = {0: Polynomial.constant(nvars, 1, alg)}
    for row in range(size):
        new = {}
        for cols, sub in minors.items():
            if sub.is_zero():
                continue
            sign = 1
            for c in range(size):
                bit = 1 << c
                if cols & bit:
                    sign = -sign
                    continue
                entry = entries[row][c]
                if not entry.is_zero():
                    key = cols | bit
                    term = entry * sub
                    if sign < 0:
                        term = -term
                    if key in new:
                        new[key] = new[key] + term
                    else:
                        new[key] = term
        minors = new
    full = (1 << size) - 1
    return minors.get(full, Polynomial.zero(nvars, alg))


def restrict(f: Polynomial, subspace) -> Polynomial:
    """Compose f with the parametrization t -> sum_a t_a s_a.

    Returns a polynomial in len(subspace) fresh variables, not attached
    to the algebra.
    """
    m = len(subspace)
    nvars = f.nvars
    # linear form for variable i: sum_a coords(s_a)[i] t_a
    lins = []
    for i in range(nvars):
        terms = {}
        for a, s in enumerate(subspace):
            c = s.coords[i]
            if c != 0:
                terms[1 << (_SHIFT * a)] = c
        lins.append(Polynomial(m, terms))
    powers = [{0: Polynomial.constant(m, 1)} for _ in range(nvars)]

    def lin_power(i, e):
        got = powers[i].get(e)
        if got is None:
            got = lin_power(i, e - 1) * lins[i]
            powers[i][e] = got
        return got

    out = Polynomial.zero(m)
    for key, c in f.terms.items():
        term = Polynomial.constant(m, c)
        k = key
        i = 0
        while k:
            e = k & _MASK
            if e:
                term = term * lin_power(i, e)
                if term.is_zero():
                    break
            k >>= _SHIFT
            i += 1
        out = out + term
    return out


def product_of_linear(alg_or_nvars, linear_coeff_rows) -> Polynomial:
    """Product of linear forms given by coefficient rows (free variables)."""
    if isinstance(alg_or_nvars, LieAlgebra):
        nvars = alg_or_nvars.n
    else:
        nvars = alg_or_nvars
    out = Polynomial.constant(nvars, 1)
    for row in linear_coeff_rows:
        terms = {}
        for i, c in enumerate(row):
            if c != 0:
                terms[1 << (_SHIFT * i)] = c
        out = out * Polynomial(nvars, terms)
    return out


def fit_constant(f: Polynomial, g: Polynomial):
    """Exact c with f == c * g, or None. Zero f against nonzero g gives 0."""
    if g.is_zero():
        return None
    if f.is_zero():
        return 0
    key = g.leading_key()
    if key not in f.terms:
        # try any shared key
        shared = set(f.terms) & set(g.terms)
        if not shared:
            return None
        key = min(shared)
    c = normalize_scalar(as_fraction(f.terms[key]) / as_fraction(g.terms[key]))
    return c if f == g.scale(c) else None
