"""Root-space combinatorics: roots, ideals of the positive system, weights.

Roots are stored as functionals on the Cartan: the tuple of values on the
first ell basis vectors. In the split matrix realizations every non-Cartan
basis vector is already a simultaneous ad-eigenvector, which the
constructor verifies rather than assumes. Weights pair through the inverse
of the Killing form restricted to the Cartan, so Casimir scalars come out
in the Killing normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import as_fraction, mat_inverse, normalize_scalar, solve
from .liealg import Element, LieAlgebra, LieAlgebraError


@dataclass(frozen=True)
class IdealSet:
    """An ideal of the positive system: indices into datum.positives."""

    root_indices: tuple

    def __len__(self):
        return len(self.root_indices)


class RootDatum:
    """Cartan subalgebra, roots, normalized root vectors, rho.

    positives[k] is the basis index ell + k; its negative partner sits at
    basis index ell + r + k. Root vectors are normalized so that
    (e_phi, e_{-phi}) = 1, rescaling only the negative vector.
    """

    def __init__(self, algebra: LieAlgebra):
        self.algebra = algebra
        ell, r, n = algebra.ell, algebra.r, algebra.n
        self.cartan = [algebra.basis_element(i) for i in range(ell)]

        functionals = []
        for idx in range(ell, n):
            lam = []
            vec = algebra.basis_element(idx)
            for h in self.cartan:
                br = algebra.bracket(h, vec)
                val = br.coords[idx]
                test = val * vec
                if any(a != b for a, b in zip(br.coords, test.coords)):
                    raise LieAlgebraError(f"basis vector {idx} is not an ad-eigenvector")
                lam.append(val)
            functionals.append(tuple(lam))
        self.positive_roots = functionals[:r]
        self.negative_roots = functionals[r:]
        for k in range(r):
            if tuple(-x for x in self.positive_roots[k]) != self.negative_roots[k]:
                raise LieAlgebraError(f"negative root vector {k} does not match its positive")
        if len(set(self.positive_roots)) != r:
            raise LieAlgebraError("repeated positive root")

        self.positives = list(range(r))
        pos_set = set(self.positive_roots)
        sums = set()
        for a in pos_set:
            for b in pos_set:
                sums.add(tuple(x + y for x, y in zip(a, b)))
        self.simples = [k for k in self.positives if self.positive_roots[k] not in sums]
        if len(self.simples) != ell:
            raise LieAlgebraError("simple root count differs from the rank")

        simple_mat = [list(self.positive_roots[s]) for s in self.simples]
        cols = [[simple_mat[j][i] for j in range(ell)] for i in range(ell)]
        self.heights = []
        self._simple_coords = []
        for k in self.positives:
            coeffs = solve(cols, list(self.positive_roots[k]))
            if coeffs is None:
                raise LieAlgebraError("positive root outside the simple span")
            coeffs = [as_fraction(c) for c in coeffs]
            if any(c.denominator != 1 or c < 0 for c in coeffs):
                raise LieAlgebraError("positive root outside the nonnegative simple span")
            coeffs = [int(c) for c in coeffs]
            self._simple_coords.append(tuple(coeffs))
            self.heights.append(sum(coeffs))
        order = sorted(range(r), key=lambda k: (self.heights[k], self.positive_roots[k]))
        if order != list(range(r)):
            raise LieAlgebraError("positive roots are not in height-then-lex order")

        # (e_phi, e_{-phi}) = 1 by rescaling the negative vector only
        self.root_vectors = {}
        for k in range(r):
            pos = algebra.basis_element(ell + k)
            neg_raw = algebra.basis_element(ell + r + k)
            pairing = algebra.killing_form(pos, neg_raw)
            if pairing == 0:
                raise LieAlgebraError("root vector pair is Killing-orthogonal")
            self.root_vectors[self.positive_roots[k]] = pos
            self.root_vectors[self.negative_roots[k]] = Fraction(1, 1) / as_fraction(pairing) * neg_raw

        self.rho = tuple(
            normalize_scalar(sum(Fraction(root[i], 2) for root in self.positive_roots))
            for i in range(ell)
        )

        gram = [[algebra.killing[i][j] for j in range(ell)] for i in range(ell)]
        self._gram_inv = mat_inverse(gram)

    # -- vectors -------------------------------------------------------------

    def positive_vector(self, k) -> Element:
        return self.algebra.basis_element(self.algebra.ell + k)

    def negative_vector(self, k) -> Element:
        """Normalized vector for the negative of positive root k."""
        return self.root_vectors[self.negative_roots[k]]

    def basis_weight(self, idx):
        """h-weight of the fixed basis vector idx (zero on the Cartan)."""
        ell, r = self.algebra.ell, self.algebra.r
        if idx < ell:
            return (0,) * ell
        if idx < ell + r:
            return self.positive_roots[idx - ell]
        return self.negative_roots[idx - ell - r]

    # -- weight arithmetic ----------------------------------------------------

    def weight_pair(self, lam, mu):
        """Killing-dual pairing of two Cartan functionals."""
        total = 0
        for i, a in enumerate(lam):
            if a == 0:
                continue
            row = self._gram_inv[i]
            for j, b in enumerate(mu):
                if b != 0:
                    total += a * row[j] * b
        return normalize_scalar(total)

    def is_dominant_integral(self, lam) -> bool:
        for s in self.simples:
            alpha = self.positive_roots[s]
            num = 2 * as_fraction(self.weight_pair(lam, alpha))
            den = as_fraction(self.weight_pair(alpha, alpha))
            val = num / den
            if val < 0 or val.denominator != 1:
                return False
        return True

    def weyl_dimension(self, lam) -> int:
        """Dimension of the irreducible with highest weight lam."""
        if not self.is_dominant_integral(lam):
            raise LieAlgebraError(f"weight {lam} is not dominant integral")
        lam_rho = tuple(a + b for a, b in zip(lam, self.rho))
        num = Fraction(1)
        for root in self.positive_roots:
            num *= as_fraction(self.weight_pair(lam_rho, root)) / as_fraction(self.weight_pair(self.rho, root))
        if num.denominator != 1 or num <= 0:
            raise LieAlgebraError("Weyl dimension did not come out a positive integer")
        return int(num)

    def casimir_value(self, lam):
        """Killing-normalized Casimir scalar on the irreducible of h.w. lam."""
        lam2rho = tuple(a + 2 * b for a, b in zip(lam, self.rho))
        return self.weight_pair(lam, lam2rho)

    def weight_sum(self, ideal: IdealSet):
        ell = self.algebra.ell
        total = [0] * ell
        for k in ideal.root_indices:
            for i, v in enumerate(self.positive_roots[k]):
                total[i] += v
        return tuple(normalize_scalar(v) for v in total)

    # -- ideals of the positive system ----------------------------------------

    def _upward_neighbors(self):
        """ups[k] = indices of positive roots of the form root_k + alpha."""
        index = {root: k for k, root in enumerate(self.positive_roots)}
        ups = []
        for k, root in enumerate(self.positive_roots):
            up = set()
            for alpha in self.positive_roots:
                target = tuple(a + b for a, b in zip(root, alpha))
                if target in index:
                    up.add(index[target])
            ups.append(up)
        return ups

    def enumerate_ideals(self, k: int):
        """All upward-closed k-subsets of the positive system.

        Built by descending-height extension: roots are decided from the
        top of the root poset down, so a root may enter only when
        everything above it is already in. Results are sorted by the
        sorted height sequence, then by the root tuples, so reports are
        stable.
        """
        if k > self.algebra.r:
            return []
        ups = self._upward_neighbors()
        order = sorted(range(self.algebra.r), key=lambda i: (-self.heights[i], self.positive_roots[i]))
        results = []

        def extend(pos, chosen):
            if len(chosen) == k:
                results.append(frozenset(chosen))
                return
            remaining = len(order) - pos
            if len(chosen) + remaining < k:
                return
            if pos == len(order):
                return
            root = order[pos]
            if ups[root] <= chosen:
                extend(pos + 1, chosen | {root})
            extend(pos + 1, chosen)

        extend(0, frozenset())
        ideals = [IdealSet(tuple(sorted(s))) for s in results]

        def sort_key(ideal):
            hseq = tuple(sorted(self.heights[i] for i in ideal.root_indices))
            roots = tuple(sorted(self.positive_roots[i] for i in ideal.root_indices))
            return (hseq, roots)

        ideals.sort(key=sort_key)
        for ideal in ideals:
            if not self.is_ideal(ideal):
                raise LieAlgebraError("enumerated set fails the closure property")
        return ideals

    def is_ideal(self, ideal: IdealSet) -> bool:
        index = {root: k for k, root in enumerate(self.positive_roots)}
        chosen = set(ideal.root_indices)
        for k in chosen:
            for alpha in self.positive_roots:
                target = tuple(a + b for a, b in zip(self.positive_roots[k], alpha))
                if target in index and index[target] not in chosen:
                    return False
        return True

    def is_abelian(self, ideal: IdealSet) -> bool:
        """True iff no two member roots sum to a root."""
        roots = set(self.positive_roots) | set(self.negative_roots)
        members = [self.positive_roots[k] for k in ideal.root_indices]
        for i in range(len(members)):
            for j in range(i, len(members)):
                s = tuple(a + b for a, b in zip(members[i], members[j]))
                if s in roots:
                    return False
        return True


def compute_root_datum(algebra: LieAlgebra) -> RootDatum:
    return RootDatum(algebra)


def exponents(degrees, r) -> list:
    """Exponents from invariant degrees: m_j = deg p_j - 1, sum must be r."""
    exps = sorted(d - 1 for d in degrees)
    if sum(exps) != r:
        raise LieAlgebraError(f"exponents {exps} do not sum to the positive root count {r}")
    return exps


def partition_count(m: int) -> int:
    """Classical partition function by Euler's pentagonal recurrence."""
    if m < 0 or m > 64:
        raise ValueError("partition_count supports 0 <= m <= 64")
    p = [1] + [0] * m
    for i in range(1, m + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > i and g2 > i:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= i:
                total += sign * p[i - g1]
            if g2 <= i:
                total += sign * p[i - g2]
            k += 1
        p[i] = total
    return p[m]
