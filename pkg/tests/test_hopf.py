import pytest

from braided_forge.braided_space import braiding_from_yd
from braided_forge.exactla import Matrix, QQ, kronecker
from braided_forge.graded import check_bialgebra_compat, check_graded_algebra_axioms, check_graded_coalgebra_axioms
from braided_forge.hopf import (
    FinHopf,
    GroupTable,
    InvalidGroupTable,
    YDModule,
    YDValidationError,
    adjoint_action,
    bosonization_rank_report,
    bosonize,
    check_hopf,
    check_hopf_bimodule,
    check_yd,
    coadjoint_coaction,
    coinvariants,
    cotensor_over_coalgebra,
    group_algebra,
    rebase_yd,
    regular_bimodule,
    relative_typeone,
    tensor_over_algebra,
    typeone_smash_check,
    yd_from_group,
    yd_to_bimodule,
)
from braided_forge.typeone import typeone_truncation
from conftest import GF7


def sign_module():
    h = group_algebra(GroupTable.cyclic(2), QQ)
    return yd_from_group(h, [1], [[[1]], [[-1]]], ("x",))


def character_module():
    h = group_algebra(GroupTable.cyclic(3), GF7)
    return yd_from_group(h, [1], [[[1]], [[2]], [[4]]], ("x",))


def klein_module():
    # Z/2 x Z/2, two vectors of degrees a and b, diagonal characters
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    h = group_algebra(GroupTable(4, table), QQ)
    chars = {0: (1, 1), 1: (-1, 1), 2: (1, -1), 3: (-1, -1)}
    acts = [[[chars[g][0], 0], [0, chars[g][1]]] for g in range(4)]
    return yd_from_group(h, [1, 2], acts)


def test_group_table_validation():
    with pytest.raises(InvalidGroupTable):
        GroupTable(2, ((0, 1), (1, 1)))
    with pytest.raises(InvalidGroupTable):
        GroupTable(2, ((1, 0), (0, 1)))
    with pytest.raises(InvalidGroupTable):
        GroupTable(3, ((0, 1, 2), (1, 0, 2), (2, 2, 0)))
    assert GroupTable.cyclic(4).inv == (0, 3, 2, 1)


@pytest.mark.parametrize("g,field", [(GroupTable.cyclic(2), QQ), (GroupTable.trivial(), QQ),
                                     (GroupTable.cyclic(3), GF7), (GroupTable.cyclic(4), QQ)])
def test_group_algebras_are_hopf(g, field):
    h = group_algebra(g, field)
    assert check_hopf(h).passed
    assert h.S @ h.S == Matrix.identity(h.dim, field)


def test_corrupted_comultiplication_fails_coalgebra_laws():
    h = group_algebra(GroupTable.cyclic(2), QQ)
    d = h.delta.tolist()
    d[1][0] = 1
    bad = FinHopf(h.dim, h.field, h.m, h.u, Matrix.from_rows(d), h.eps, h.S, h.S_inv, h.group)
    failed = {f["indices"][0] for f in check_hopf(bad).failures}
    assert "coassoc" in failed or "counit_left" in failed


@pytest.mark.parametrize("make", [sign_module, character_module, klein_module])
def test_yd_modules_validate(make):
    v = make()
    assert check_yd(v).passed
    assert check_hopf_bimodule(yd_to_bimodule(v)).passed


def test_sign_module_braiding_is_minus_one():
    b = braiding_from_yd(sign_module())
    assert b.c == Matrix.from_rows([[-1]])


def test_invalid_action_rejected():
    h = group_algebra(GroupTable.cyclic(2), QQ)
    v = yd_from_group(h, [1], [[[1]], [[2]]])
    rep = check_yd(v)
    assert "action_assoc" in {f["indices"][0] for f in rep.failures}
    with pytest.raises(YDValidationError):
        braiding_from_yd(v)


def test_nonequivariant_action_breaks_yd_compatibility():
    # on kS3-free data: Klein group, action permuting two vectors of different degrees
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    h = group_algebra(GroupTable(4, table), QQ)
    swap = [[0, 1], [1, 0]]
    ident = [[1, 0], [0, 1]]
    v = yd_from_group(h, [1, 2], [ident, swap, swap, ident])
    failed = {f["indices"][0] for f in check_yd(v).failures}
    assert "yd_compat" in failed


def s3_table():
    from itertools import permutations
    elems = list(permutations(range(3)))
    idx = {p: k for k, p in enumerate(elems)}
    return elems, GroupTable(6, [[idx[tuple(a[b[i]] for i in range(3))] for b in elems] for a in elems])


def test_non_central_degree_breaks_hopfbimod1():
    # one vector graded by the transposition (0 1) but acted on by the sign:
    # the coaction is not conjugation-equivariant
    elems, g = s3_table()
    h = group_algebra(g, QQ)
    sign = [[[1 if sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0 else -1]] for p in elems]
    v = yd_from_group(h, [elems.index((1, 0, 2))], sign)
    assert "yd_compat" in {f["indices"][0] for f in check_yd(v).failures}
    failed = {f["indices"][0] for f in check_hopf_bimodule(yd_to_bimodule(v)).failures}
    assert "hopfbimod1" in failed


def test_s3_transposition_class_module_validates():
    # V spanned by the three transpositions, g . x_t = sgn(g) x_{g t g^-1}
    elems, g = s3_table()
    sgn = [(-1) ** sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) for p in elems]
    h = group_algebra(g, QQ)
    transp = [k for k, p in enumerate(elems) if sum(p[i] != i for i in range(3)) == 2]
    acts = []
    for a in range(6):
        m = [[0] * 3 for _ in range(3)]
        for j, t in enumerate(transp):
            conj = g.mul[g.mul[a][t]][g.inv[a]]
            m[transp.index(conj)][j] = sgn[a]
        acts.append(m)
    v = yd_from_group(h, transp, acts)
    assert check_yd(v).passed
    mb = yd_to_bimodule(v)
    assert check_hopf_bimodule(mb).passed
    _, w = coinvariants(mb)
    assert w.dim == 3


def test_bimodule_shapes_over_trivial_group():
    h = group_algebra(GroupTable.trivial(), QQ)
    v = yd_from_group(h, [0, 0], [[[1, 0], [0, 1]]])
    mb = yd_to_bimodule(v)
    assert mb.dim == 2
    assert mb.mu_l == Matrix.identity(2)
    assert mb.rho_l == Matrix.identity(2)


@pytest.mark.parametrize("make", [sign_module, character_module, klein_module])
def test_coinvariants_recover_the_module(make):
    v = make()
    h = v.hopf
    basis, w = coinvariants(yd_to_bimodule(v))
    assert w.dim == v.dim
    assert check_yd(w).passed
    canonical = kronecker(Matrix.identity(v.dim, v.field), h.u)
    P = basis.solve(canonical)
    back = rebase_yd(w, P)
    assert back.action == v.action
    assert back.coaction == v.coaction


def test_coinvariants_of_regular_bimodule_are_the_unit():
    h = group_algebra(GroupTable.cyclic(3), GF7)
    basis, _ = coinvariants(regular_bimodule(h))
    assert basis.cols == 1
    assert basis.hstack(h.u).rank() == 1


def test_adjoint_and_coadjoint():
    for g, f in ((GroupTable.cyclic(2), QQ), (GroupTable.cyclic(3), GF7), (GroupTable.trivial(), QQ)):
        h = group_algebra(g, f)
        ad = adjoint_action(h)
        assert check_yd(YDModule(h, h.dim, ad, h.delta)).passed
        assert check_yd(YDModule(h, h.dim, h.m, coadjoint_coaction(h))).passed
    h = group_algebra(GroupTable.cyclic(2), QQ)
    # ad(g (x) g) = g g g^-1 = g
    assert adjoint_action(h).column(1 * 2 + 1) == [0, 1]


def test_generic_adjoint_formula_matches_group_shortcut():
    h = group_algebra(GroupTable(4, [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]), QQ)
    plain = FinHopf(h.dim, h.field, h.m, h.u, h.delta, h.eps, h.S, h.S_inv)
    assert adjoint_action(plain) == adjoint_action(h)
    assert coadjoint_coaction(plain) == coadjoint_coaction(h)


@pytest.mark.parametrize("make", [sign_module, character_module])
def test_relative_products_have_expected_dimension(make):
    v = make()
    mb = yd_to_bimodule(v)
    n = v.hopf.dim
    dim, proj = tensor_over_algebra(mb.mu_r, mb.mu_l, n)
    assert dim == v.dim ** 2 * n
    assert proj.shape == (dim, mb.dim ** 2)
    cdim, incl = cotensor_over_coalgebra(mb.rho_r, mb.rho_l, n)
    assert cdim == v.dim ** 2 * n


def test_relative_products_over_the_unit_algebra():
    one = Matrix.identity(1)
    a = Matrix.identity(3)
    dim, proj = tensor_over_algebra(a, Matrix.identity(2), 1)
    assert dim == 6 and proj == Matrix.identity(6)
    dim, incl = cotensor_over_coalgebra(a, Matrix.identity(2), 1)
    assert dim == 6 and incl.rank() == 6
    assert one.rows == 1


def test_regular_bimodule_over_itself():
    h = group_algebra(GroupTable.cyclic(3), GF7)
    assert tensor_over_algebra(h.m, h.m, 3)[0] == 3
    assert cotensor_over_coalgebra(h.delta, h.delta, 3)[0] == 3


@pytest.mark.parametrize("make,dims", [(sign_module, [2, 2, 0, 0]), (character_module, [3, 3, 3, 0])])
def test_relative_typeone_dims(make, dims):
    v = make()
    res = relative_typeone(v.hopf, yd_to_bimodule(v), 3)
    assert res.dims == dims
    B = res.bialgebra
    assert check_graded_coalgebra_axioms(B).passed
    assert check_graded_algebra_axioms(B).passed
    assert check_bialgebra_compat(B).passed


def test_relative_typeone_over_trivial_group_matches_plain_typeone():
    h = group_algebra(GroupTable.trivial(), QQ)
    v = yd_from_group(h, [0, 0], [[[1, 0], [0, 1]]])
    rel = relative_typeone(h, yd_to_bimodule(v), 3)
    plain = typeone_truncation(braiding_from_yd(v), 3)
    assert rel.dims == plain.dims == [1, 2, 3, 4]


def _bosonized_sign(N=2):
    v = sign_module()
    q = typeone_truncation(braiding_from_yd(v), N).bialgebra
    return v, q, bosonize(q, v.hopf)


def test_bosonization_dims_and_axioms():
    v, q, B = _bosonized_sign(3)
    assert B.dims == [2, 2, 0, 0]
    assert check_graded_coalgebra_axioms(B).passed
    assert check_graded_algebra_axioms(B).passed
    assert check_bialgebra_compat(B).passed
    assert bosonization_rank_report(q, B, v.hopf)["passed"]


def test_bosonized_comultiplication_of_generator():
    # basis of (Q # H)_1 is x (x) 1, x (x) g; of (Q # H)_0 it is 1 (x) 1, 1 (x) g
    v, q, B = _bosonized_sign()
    x1 = 0
    # x (x) 1 -> (x (x) 1) (x) (1 (x) 1) in (1,0) and (1 (x) g) (x) (x (x) 1) in (0,1)
    assert B.comult[1, 0].column(x1) == [1, 0, 0, 0]
    assert B.comult[0, 1].column(x1) == [0, 0, 1, 0]


def test_bosonization_of_trivial_q_is_h():
    h = group_algebra(GroupTable.cyclic(3), GF7)
    v = yd_from_group(h, [1], [[[1]], [[2]], [[4]]])
    q = typeone_truncation(braiding_from_yd(v), 0).bialgebra
    B = bosonize(q, h)
    assert B.dims == [3]
    assert B.mult[0, 0] == h.m
    assert B.comult[0, 0] == h.delta


def test_bosonization_requires_yd_structure():
    from braided_forge.tensor import build_tensor_bialgebra
    from conftest import diagonal
    with pytest.raises(ValueError):
        bosonize(build_tensor_bialgebra(diagonal([[-1]]), 2), group_algebra(GroupTable.cyclic(2)))


@pytest.mark.parametrize("make,dims", [(sign_module, [2, 2, 0, 0, 0]), (character_module, [3, 3, 3, 0, 0])])
def test_smash_check(make, dims):
    verdict = typeone_smash_check(make(), 4)
    assert verdict.passed
    assert verdict.left_dims == verdict.right_dims == dims
    js = verdict.to_json()
    assert js["iso_degree_bound"] == 2
    assert "dimension only" in js["limitation"]


def test_smash_check_on_klein_module():
    verdict = typeone_smash_check(klein_module(), 3)
    assert verdict.passed
    assert verdict.left_dims == [4, 8, 4, 0]


def test_smash_check_over_trivial_group():
    h = group_algebra(GroupTable.trivial(), QQ)
    v = yd_from_group(h, [0], [[[1]]])
    verdict = typeone_smash_check(v, 3)
    assert verdict.passed
    assert verdict.left_dims == [1, 1, 1, 1]
