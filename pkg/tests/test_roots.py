from fractions import Fraction
from itertools import combinations

import pytest

from singlocus.liealg import LieAlgebraError
from singlocus.roots import IdealSet, exponents, partition_count

from conftest import get_context


def test_sl2_root_datum(ctx_a1):
    datum = ctx_a1.datum
    assert datum.positive_roots == [(2,)]
    assert datum.negative_roots == [(-2,)]
    assert datum.rho == (1,)


def test_sl3_root_counts(ctx_a2):
    datum = ctx_a2.datum
    assert len(datum.positive_roots) == 3
    assert len(datum.simples) == 2
    assert len(set(datum.positive_roots) | set(datum.negative_roots)) == 6


def test_sp4_two_length_classes(ctx_c2):
    datum = ctx_c2.datum
    lengths = {datum.weight_pair(r, r) for r in datum.positive_roots}
    assert len(lengths) == 2
    long_sq, short_sq = max(lengths), min(lengths)
    assert long_sq == 2 * short_sq


def test_g2_length_ratio(ctx_g2):
    datum = ctx_g2.datum
    lengths = {datum.weight_pair(r, r) for r in datum.positive_roots}
    assert len(lengths) == 2
    assert max(lengths) == 3 * min(lengths)


def test_root_vector_normalization():
    for label in ("A1", "A2", "B2", "C2", "G2"):
        ctx = get_context(label)
        alg, datum = ctx.algebra, ctx.datum
        for k in datum.positives:
            pos = datum.root_vectors[datum.positive_roots[k]]
            neg = datum.root_vectors[datum.negative_roots[k]]
            assert alg.killing_form(pos, neg) == 1
            for i, h in enumerate(datum.cartan):
                br = alg.bracket(h, pos)
                assert br == datum.positive_roots[k][i] * pos


def test_exponents():
    assert exponents([2], 1) == [1]
    assert exponents([2, 3], 3) == [1, 2]
    assert exponents([2, 4], 4) == [1, 3]
    with pytest.raises(LieAlgebraError):
        exponents([2, 3], 5)


@pytest.mark.parametrize(
    "label,expected",
    [("A1", [1]), ("A2", [1, 2]), ("A3", [1, 2, 3]), ("B2", [1, 3]), ("C2", [1, 3]), ("G2", [1, 5])],
)
def test_invariant_exponents(label, expected):
    ctx = get_context(label)
    assert ctx.invariants.exponents() == expected
    assert sum(ctx.invariants.exponents()) == ctx.algebra.r


def brute_force_ideals(datum, k):
    """Independent oracle: filter all k-subsets by the closure property."""
    r = len(datum.positives)
    out = []
    for combo in combinations(range(r), k):
        ideal = IdealSet(tuple(combo))
        if datum.is_ideal(ideal):
            out.append(frozenset(combo))
    return out


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "C2", "D3", "G2"])
def test_enumerate_ideals_matches_brute_force(label):
    ctx = get_context(label)
    datum = ctx.datum
    for k in range(0, min(datum.algebra.r, 6) + 1):
        fast = {frozenset(i.root_indices) for i in datum.enumerate_ideals(k)}
        assert fast == set(brute_force_ideals(datum, k))


def test_sl3_ideals_explicit(ctx_a2):
    datum = ctx_a2.datum
    ideals = datum.enumerate_ideals(2)
    assert len(ideals) == 2
    top = datum.positives[-1]  # the highest root, height 2
    for ideal in ideals:
        assert top in ideal.root_indices
        assert datum.is_abelian(ideal)
    # the full positive system is not abelian: alpha + beta is a root
    assert not datum.is_abelian(IdealSet(tuple(datum.positives)))


def test_singleton_sets_abelian(ctx_c2):
    datum = ctx_c2.datum
    for k in datum.positives:
        assert datum.is_abelian(IdealSet((k,)))


def test_weight_sums_distinct():
    for label in ("A2", "A3", "B2", "C2", "G2"):
        datum = get_context(label).datum
        ideals = datum.enumerate_ideals(datum.algebra.ell)
        sums = [datum.weight_sum(i) for i in ideals]
        assert len(set(sums)) == len(sums)


def test_weight_sum_examples(ctx_a2, ctx_a1):
    datum = ctx_a2.datum
    ideals = datum.enumerate_ideals(2)
    sums = {datum.weight_sum(i) for i in ideals}
    # 2a+b and a+2b as functionals: sums of the root tuples
    expected = set()
    for ideal in ideals:
        total = [0, 0]
        for k in ideal.root_indices:
            total = [a + b for a, b in zip(total, datum.positive_roots[k])]
        expected.add(tuple(total))
    assert sums == expected
    d1 = ctx_a1.datum
    assert d1.weight_sum(IdealSet((0,))) == (2,)


def test_weyl_dimension_examples(ctx_a1, ctx_a2):
    d1, d2 = ctx_a1.datum, ctx_a2.datum
    assert d2.weyl_dimension((0, 0)) == 1
    assert d1.weyl_dimension((2,)) == 3  # adjoint of sl(2)
    ideals = d2.enumerate_ideals(2)
    assert [d2.weyl_dimension(d2.weight_sum(i)) for i in ideals] == [10, 10]
    with pytest.raises(LieAlgebraError):
        d2.weyl_dimension((-1, 0))


def test_casimir_value_examples(ctx_a1, ctx_a2, ctx_b2):
    for ctx in (ctx_a1, ctx_a2, ctx_b2):
        datum = ctx.datum
        highest = datum.positive_roots[-1]
        assert datum.casimir_value(highest) == 1
        assert datum.casimir_value((0,) * ctx.algebra.ell) == 0
    d2 = ctx_a2.datum
    for ideal in d2.enumerate_ideals(2):
        assert d2.casimir_value(d2.weight_sum(ideal)) == 2


def test_partition_count():
    assert partition_count(0) == 1
    assert partition_count(1) == 1
    assert [partition_count(m) for m in (2, 3, 4)] == [2, 3, 5]
    assert partition_count(10) == 42
    with pytest.raises(ValueError):
        partition_count(65)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_type_A_ideal_count_is_partition_number(m):
    datum = get_context(f"A{m}").datum
    assert len(datum.enumerate_ideals(m)) == partition_count(m)
