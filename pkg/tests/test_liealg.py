import random

import pytest

from singlocus.exactlinalg import kernel_basis, mat_rank, same_row_space
from singlocus.liealg import (
    LieAlgebraError,
    build_classical,
    principal_nilpotent,
    singular_functional,
)
from singlocus.roots import compute_root_datum

from conftest import get_context


@pytest.mark.parametrize(
    "family,rank,n",
    [("A", 1, 3), ("A", 2, 8), ("A", 3, 15), ("C", 2, 10), ("B", 2, 10), ("D", 3, 15), ("G", 2, 14)],
)
def test_dimensions(family, rank, n):
    alg = get_context(f"{family}{rank}").algebra
    assert alg.n == n
    assert alg.ell == rank
    assert alg.n == alg.ell + 2 * alg.r


def test_unsupported_family_rejected():
    with pytest.raises(LieAlgebraError, match="unsupported"):
        build_classical("E", 6)
    with pytest.raises(LieAlgebraError, match="unsupported"):
        build_classical("A", 9)


def test_sl2_relations(ctx_a1):
    alg = ctx_a1.algebra
    h, e, f = (alg.basis_element(i) for i in range(3))
    assert alg.bracket(h, e) == 2 * e
    assert alg.bracket(h, f) == (-2) * f
    assert alg.bracket(e, f) == h
    assert alg.bracket(e, e).is_zero()


def test_sl2_killing_values(ctx_a1):
    alg = ctx_a1.algebra
    h, e, f = (alg.basis_element(i) for i in range(3))
    assert alg.killing_form(h, h) == 8
    assert alg.killing_form(e, e) == 0
    assert alg.killing_form(e, f) == 4


def test_dual_basis_sl2(ctx_a1):
    alg = ctx_a1.algebra
    h, e, f = (alg.basis_element(i) for i in range(3))
    duals = alg.dual_basis()
    for i, z in enumerate(duals):
        for j in range(3):
            assert alg.killing_form(alg.basis_element(j), z) == (1 if i == j else 0)
    from fractions import Fraction

    assert duals[0] == Fraction(1, 8) * h
    assert duals[1] == Fraction(1, 4) * f
    assert duals[2] == Fraction(1, 4) * e


def test_dual_basis_covariance(ctx_a1):
    alg = ctx_a1.algebra
    basis = alg.basis()
    duals = alg.dual_basis(basis)
    rescaled = alg.dual_basis([2 * b for b in basis])
    from fractions import Fraction

    for z, z2 in zip(duals, rescaled):
        assert z2 == Fraction(1, 2) * z


def test_centralizer_examples(ctx_a1, ctx_a2):
    a1 = ctx_a1.algebra
    assert len(a1.centralizer(a1.zero())) == a1.n
    assert len(a1.centralizer(a1.basis_element(0))) == 1
    # diag(1,1,-2) in sl(3): centralizer is 4-dimensional
    a2 = ctx_a2.algebra
    x = a2.element([1, 2] + [0] * 6)  # h1 + 2 h2 = diag(1, 1, -2)
    assert [row[0] for row in a2.rep_matrices[0]][0] == 1
    assert len(a2.centralizer(x)) == 4
    assert not a2.is_regular(x)


def test_regularity_examples(ctx_a1):
    alg = ctx_a1.algebra
    assert alg.is_regular(alg.basis_element(1))  # nilpotent e
    assert not alg.is_regular(alg.zero())


def test_centralizer_bound_and_ad_rank():
    rng = random.Random(99)
    for label in ("A1", "A2", "C2"):
        ctx = get_context(label)
        alg = ctx.algebra
        for _ in range(100):
            x = alg.element([rng.randint(-9, 9) for _ in range(alg.n)])
            cent = alg.centralizer(x)
            assert len(cent) >= alg.ell
            assert mat_rank(alg.ad_matrix(x)) == alg.n - len(cent)


def test_regular_cartan_elements_exist():
    rng = random.Random(3)
    for label in ("A2", "B2", "G2"):
        ctx = get_context(label)
        alg, datum = ctx.algebra, ctx.datum
        found = False
        for _ in range(20):
            coords = [rng.randint(-9, 9) for _ in range(alg.ell)] + [0] * (alg.n - alg.ell)
            x = alg.element(coords)
            values = [
                sum(a * b for a, b in zip(datum.positive_roots[k], coords[: alg.ell]))
                for k in datum.positives
            ]
            if all(v != 0 for v in values):
                assert alg.is_regular(x)
                found = True
                break
        assert found


@pytest.mark.parametrize("label", ["A1", "A2", "C2"])
def test_principal_nilpotent(label):
    ctx = get_context(label)
    alg = ctx.algebra
    e = principal_nilpotent(alg, ctx.datum)
    assert alg.is_regular(e)
    if label == "A2":
        assert mat_rank(alg.ad_matrix(e)) == 6


def test_singular_functional_sl2(ctx_a1):
    alg = ctx_a1.algebra
    e = principal_nilpotent(alg, ctx_a1.datum)
    cent, xi = singular_functional(alg, ctx_a1.datum, e)
    assert len(cent) == 1
    assert cent[0] == e or cent[0] == (-1) * e
    assert xi == [1]


def test_singular_functional_sl3(ctx_a2):
    alg = ctx_a2.algebra
    datum = ctx_a2.datum
    e = principal_nilpotent(alg, datum)
    cent, xi = singular_functional(alg, datum, e)
    assert len(cent) == 2
    # kernel of xi inside g^e spans the height-2 root space
    kernel_vecs = []
    for combo in ([xi[1], -xi[0]],):
        coords = [0] * alg.n
        for c, vec in zip(combo, cent):
            for i in range(alg.n):
                coords[i] += c * vec.coords[i]
        kernel_vecs.append(coords)
    top = datum.positive_vector(datum.positives[-1])
    assert same_row_space(kernel_vecs, [list(top.coords)])


def test_singular_functional_scale_invariant(ctx_a2):
    alg = ctx_a2.algebra
    datum = ctx_a2.datum
    e = principal_nilpotent(alg, datum)
    cent1, xi1 = singular_functional(alg, datum, e)
    cent2, xi2 = singular_functional(alg, datum, 3 * e)
    # same hyperplane: kernels agree as subspaces of g
    def kernel_rows(cent, xi):
        rows = []
        for v in kernel_basis([list(xi)]):
            coords = [0] * alg.n
            for c, vec in zip(v, cent):
                for i in range(alg.n):
                    coords[i] += c * vec.coords[i]
            rows.append(coords)
        return rows

    assert same_row_space(kernel_rows(cent1, xi1), kernel_rows(cent2, xi2))


def test_structure_cache_roundtrip(tmp_path):
    cache = str(tmp_path / "cache")
    a = build_classical("A", 1, cache_dir=cache)
    path = tmp_path / "cache" / "A1.json"
    assert path.exists()
    b = build_classical("A", 1, cache_dir=cache)
    assert b.structure == a.structure
    assert b.killing == a.killing
    # corrupt the checksum: loader must fall back to a rebuild and rewrite
    import json

    doc = json.loads(path.read_text())
    doc["payload"]["basisNames"][0] = "tampered"
    path.write_text(json.dumps(doc))
    c = build_classical("A", 1, cache_dir=cache)
    assert c.basis_names == a.basis_names
    doc2 = json.loads(path.read_text())
    assert doc2["payload"]["basisNames"][0] != "tampered"


def test_element_algebra_mismatch(ctx_a1, ctx_a2):
    with pytest.raises(LieAlgebraError):
        ctx_a1.algebra.bracket(ctx_a1.algebra.zero(), ctx_a2.algebra.zero())
    with pytest.raises(LieAlgebraError):
        ctx_a1.algebra.killing_form(ctx_a1.algebra.zero(), ctx_a2.algebra.zero())
