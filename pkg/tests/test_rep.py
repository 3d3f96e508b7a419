import random

import pytest

from nquiver import linalg
from nquiver.errors import (
    EndpointMismatch,
    FieldMismatch,
    NonCommutingSquare,
    QuiverMismatch,
    ShapeMismatch,
    ZeroRep,
)
from nquiver.linalg import FieldSpec, Matrix
from nquiver.quiver import Quiver
from nquiver.rep import (
    CanonicalDecomposition,
    IndecStatus,
    Rep,
    RepMorphism,
    canonical_decomposition,
    cokernel,
    direct_sum,
    hom_basis,
    indec_status,
    kernel,
    morphism_check,
)

from conftest import GF2, GF5, QQ


# ---------------------------------------------------------------- construction


def test_rep_defaults_fill_zero(a2):
    z = Rep(a2, QQ)
    assert z.dims == {"1": 0, "2": 0}
    assert z.maps["alpha"].shape == (0, 0)
    assert z.is_zero() and z.dim_total == 0


def test_rep_partial_dims_force_zero_maps(a2):
    r = Rep(a2, QQ, {"2": 3})
    assert r.dims == {"1": 0, "2": 3}
    assert r.maps["alpha"].shape == (3, 0)


def test_rep_unknown_vertex_rejected(a2):
    with pytest.raises(QuiverMismatch):
        Rep(a2, QQ, {"7": 1})


def test_rep_unknown_arrow_rejected(a2):
    with pytest.raises(QuiverMismatch):
        Rep(a2, QQ, {"1": 1, "2": 1}, {"beta": [[1]]})


def test_rep_shape_checked(a2):
    with pytest.raises(ShapeMismatch):
        Rep(a2, QQ, {"1": 2, "2": 1}, {"alpha": [[1]]})


def test_rep_field_checked(a2):
    m = Matrix(GF5, [[1]])
    with pytest.raises(FieldMismatch):
        Rep(a2, QQ, {"1": 1, "2": 1}, {"alpha": m})


def test_rep_negative_dim_rejected(a2):
    with pytest.raises(ValueError):
        Rep(a2, QQ, {"1": -1})


def test_rep_immutable(v_line):
    with pytest.raises(AttributeError):
        v_line.dims = {}


def test_rep_equality(a2):
    r1 = Rep(a2, QQ, {"1": 1, "2": 1}, {"alpha": [[1]]})
    r2 = Rep(a2, QQ, {"1": 1, "2": 1}, {"alpha": [[1]]})
    r3 = Rep(a2, QQ, {"1": 1, "2": 1}, {"alpha": [[2]]})
    assert r1 == r2 and r1 != r3


# ------------------------------------------------------------------ morphisms


def test_star_morphism_relations_hold(v_star, w_star):
    # components must satisfy c = a, d = b, c + d = e
    f = morphism_check(
        v_star, w_star, {"1": [[1]], "2": [[1]], "3": [[1, 1]], "4": [[2]]}
    )
    assert f.comps["4"].entry(0, 0) == 2


def test_star_morphism_relation_violation(v_star, w_star):
    with pytest.raises(NonCommutingSquare) as ei:
        morphism_check(
            v_star, w_star, {"1": [[1]], "2": [[1]], "3": [[1, 1]], "4": [[1]]}
        )
    assert "b3" in ei.value.where
    assert ei.value.entry == (0, 0)
    assert ei.value.deviation != 0


def test_morphism_missing_component_between_nonzero_spaces(v_line):
    with pytest.raises(ShapeMismatch):
        RepMorphism(v_line, v_line, {"1": [[1]]})


def test_morphism_zero_dim_component_forced(a2, v_line):
    thin = Rep(a2, QQ, {"1": 1})  # vertex 2 is zero-dimensional
    f = RepMorphism(v_line, thin, {"1": [[1]]})
    assert f.comps["2"].shape == (0, 1)


def test_morphism_quiver_and_field_guards(a2, star, v_line):
    other = Rep(star, QQ, {"1": 1})
    with pytest.raises(QuiverMismatch):
        RepMorphism(v_line, other, {})
    gf_line = Rep(a2, GF5, {"1": 1, "2": 1}, {"alpha": [[1]]})
    with pytest.raises(FieldMismatch):
        RepMorphism(v_line, gf_line, {"1": [[1]], "2": [[1]]})


def test_morphism_algebra(v_line):
    one = RepMorphism.identity(v_line)
    zero = RepMorphism.zero(v_line, v_line)
    assert one @ one == one
    assert one + zero == one
    assert one - one == zero
    assert (-one).scale(-1) == one
    assert one**3 == one
    assert zero.is_zero() and one.is_identity()
    assert one.total_rank() == 2
    assert one.inverse() == one


def test_morphism_compose_endpoint_guard(v_line, w_line0):
    f = hom_basis(v_line, w_line0)[0]
    with pytest.raises(EndpointMismatch):
        f @ f
    with pytest.raises(EndpointMismatch):
        f + RepMorphism.identity(v_line)


# ------------------------------------------------------------------------ hom


def test_hom_dim_star_pair(v_star, w_star):
    assert len(hom_basis(v_star, w_star)) == 2


def test_hom_star_solution_structure(v_star, w_star):
    # every solution satisfies c = a, d = b, e = a + b
    for f in hom_basis(v_star, w_star):
        a = f.comps["1"].entry(0, 0)
        b = f.comps["2"].entry(0, 0)
        c = f.comps["3"].entry(0, 0)
        d = f.comps["3"].entry(0, 1)
        e = f.comps["4"].entry(0, 0)
        assert c == a and d == b and e == a + b


def test_hom_dim_line_endos(v_line):
    basis = hom_basis(v_line, v_line)
    assert len(basis) == 1
    f = basis[0]
    assert f.comps["1"] == f.comps["2"]


def test_hom_dim_line_to_zero_map_line(v_line, w_line0):
    basis = hom_basis(v_line, w_line0)
    assert len(basis) == 1
    f = basis[0]
    # f2 . 1 = 0 . f1 forces the target-side component to vanish
    assert f.comps["2"].is_zero()
    assert not f.comps["1"].is_zero()


def test_hom_guards(a2, star, v_line):
    with pytest.raises(QuiverMismatch):
        hom_basis(v_line, Rep(star, QQ))
    with pytest.raises(FieldMismatch):
        hom_basis(v_line, Rep(a2, GF5))


def test_hom_of_zero_rep(a2, v_line):
    assert hom_basis(Rep(a2, QQ), v_line) == []
    assert hom_basis(v_line, Rep(a2, QQ)) == []


def test_hom_members_are_morphisms_gf(a2):
    # loops through a modular example to exercise the finite-field path
    r = Rep(a2, GF5, {"1": 2, "2": 2}, {"alpha": [[1, 2], [0, 1]]})
    basis = hom_basis(r, r)
    assert len(basis) >= 1
    for f in basis:
        for ar in a2.arrows:
            assert f.comps[ar.target] @ r.maps[ar.name] == r.maps[ar.name] @ f.comps[
                ar.source
            ]


# ----------------------------------------------------------------- direct sum


def test_direct_sum_star_blocks(v_star, w_star):
    total, (i1, i2), (p1, p2) = direct_sum(v_star, w_star)
    assert total.dims == {"1": 2, "2": 2, "3": 3, "4": 2}
    assert total.maps["b1"] == Matrix(QQ, [[1, 0], [0, 0], [0, 1]])
    assert total.maps["b2"] == Matrix(QQ, [[0, 0], [1, 0], [0, 1]])
    assert total.maps["b3"] == Matrix(QQ, [[1, 0], [1, 0], [0, 1]])
    assert p1 @ i1 == RepMorphism.identity(v_star)
    assert p2 @ i2 == RepMorphism.identity(w_star)
    assert (p1 @ i2).is_zero() and (p2 @ i1).is_zero()
    assert i1 @ p1 + i2 @ p2 == RepMorphism.identity(total)


def test_direct_sum_with_zero(v_line, a2):
    total, _, _ = direct_sum(v_line, Rep(a2, QQ))
    assert total == v_line


def test_direct_sum_hom_additivity(v_star, w_star, v_line):
    total, _, _ = direct_sum(v_star, w_star)
    lhs = len(hom_basis(total, total))
    parts = (
        len(hom_basis(v_star, v_star))
        + len(hom_basis(v_star, w_star))
        + len(hom_basis(w_star, v_star))
        + len(hom_basis(w_star, w_star))
    )
    assert lhs == parts


# ------------------------------------------------------------- kernel/cokernel


def test_kernel_of_zero_and_identity(v_line):
    k0, incl0 = kernel(RepMorphism.zero(v_line, v_line))
    assert k0.dims == v_line.dims
    assert (incl0.comps["1"], incl0.comps["2"]) == (
        Matrix.identity(QQ, 1),
        Matrix.identity(QQ, 1),
    )
    k1, _ = kernel(RepMorphism.identity(v_line))
    assert k1.is_zero()


def test_kernel_golden_line(v_line, w_line0):
    f = hom_basis(v_line, w_line0)[0]
    K, incl = kernel(f)
    assert K.dims == {"1": 0, "2": 1}
    assert (f @ incl).is_zero()


def test_cokernel_golden_line(v_line, w_line0):
    f = hom_basis(v_line, w_line0)[0]
    C, proj = cokernel(f)
    # f hits all of vertex 1 and nothing at vertex 2
    assert C.dims == {"1": 0, "2": 1}
    assert (proj @ f).is_zero()


def test_kernel_cokernel_star_morphism(v_star, w_star):
    f = morphism_check(
        v_star, w_star, {"1": [[1]], "2": [[1]], "3": [[1, 1]], "4": [[2]]}
    )
    K, incl = kernel(f)
    assert K.dims == {"1": 0, "2": 0, "3": 1, "4": 0}
    assert (f @ incl).is_zero()
    C, proj = cokernel(f)
    assert C.dims == {"1": 0, "2": 0, "3": 0, "4": 0}
    assert (proj @ f).is_zero()


def test_kernel_respects_structure_maps():
    # kernel must carry restricted arrow maps, not just dims
    q = Quiver(["1", "2"], [("alpha", "1", "2")])
    src = Rep(q, QQ, {"1": 2, "2": 2}, {"alpha": [[1, 0], [0, 1]]})
    tgt = Rep(q, QQ, {"1": 1, "2": 1}, {"alpha": [[1]]})
    f = RepMorphism(src, tgt, {"1": [[1, 0]], "2": [[1, 0]]})
    K, incl = kernel(f)
    assert K.dims == {"1": 1, "2": 1}
    assert K.maps["alpha"] == Matrix.identity(QQ, 1)
    for v in q.vertices:
        assert linalg.rank(incl.comps[v]) == K.dims[v]


# ------------------------------------------------------ canonical decomposition


def test_canonical_star_morphism(v_star, w_star):
    f = morphism_check(
        v_star, w_star, {"1": [[1]], "2": [[1]], "3": [[1, 1]], "4": [[2]]}
    )
    dec = canonical_decomposition(f)
    assert isinstance(dec, CanonicalDecomposition)
    assert dec.verified, dec.checks
    assert dec.I.dims == {"1": 1, "2": 1, "3": 1, "4": 1}
    assert dec.j @ dec.iota == f
    assert dec.K.dims == {"1": 0, "2": 0, "3": 1, "4": 0}
    assert dec.C.is_zero()


def test_canonical_of_zero_morphism(v_line, w_line0):
    dec = canonical_decomposition(RepMorphism.zero(v_line, w_line0))
    assert dec.verified
    assert dec.K.dims == v_line.dims
    assert dec.I.is_zero()
    assert dec.C.dims == w_line0.dims


def test_canonical_random_oracle():
    rng = random.Random(7)
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")])
    for _ in range(25):
        dims1 = {v: rng.randrange(3) for v in q.vertices}
        dims2 = {v: rng.randrange(3) for v in q.vertices}

        def rand_rep(dims):
            maps = {}
            for ar in q.arrows:
                nr, nc = dims[ar.target], dims[ar.source]
                if nr and nc:
                    maps[ar.name] = [
                        [rng.randrange(5) for _ in range(nc)] for _ in range(nr)
                    ]
            return Rep(q, GF5, dims, maps)

        x = rand_rep(dims1)
        y = rand_rep(dims2)
        basis = hom_basis(x, y)
        if not basis:
            continue
        f = basis[0]
        for g in basis[1:]:
            f = f + g.scale(rng.randrange(5))
        dec = canonical_decomposition(f)
        assert dec.verified, dec.checks
        for v in q.vertices:
            assert dec.K.dims[v] + dec.I.dims[v] == x.dims[v]
            assert dec.I.dims[v] + dec.C.dims[v] == y.dims[v]


# ----------------------------------------------------------- indecomposability


def test_indec_line_identity_rep(v_line):
    res = indec_status(v_line)
    assert res.status is IndecStatus.INDECOMPOSABLE
    assert res.end_dim == 1


def test_indec_star_reps(v_star, w_star):
    assert indec_status(v_star).status is IndecStatus.INDECOMPOSABLE
    assert indec_status(w_star).status is IndecStatus.INDECOMPOSABLE


def test_indec_zero_rep_raises(a2):
    with pytest.raises(ZeroRep):
        indec_status(Rep(a2, QQ))


def test_decomposable_by_enumeration_gf2(a2):
    line = Rep(a2, GF2, {"1": 1, "2": 1}, {"alpha": [[1]]})
    total, _, _ = direct_sum(line, line)
    res = indec_status(total)
    assert res.status is IndecStatus.DECOMPOSABLE
    assert res.end_dim == 4
    assert "enumeration" in res.certificate
    e = res.witness
    assert e @ e == e and not e.is_zero() and not e.is_identity()
    k1, k2 = res.summands
    for v in a2.vertices:
        assert k1.dims[v] + k2.dims[v] == total.dims[v]
    assert not k1.is_zero() and not k2.is_zero()


def test_decomposable_by_fitting_over_rationals(v_line):
    total, _, _ = direct_sum(v_line, v_line)
    res = indec_status(total)
    assert res.status is IndecStatus.DECOMPOSABLE
    assert "Fitting" in res.certificate
    e = res.witness
    assert e @ e == e and not e.is_zero() and not e.is_identity()
    k1, k2 = res.summands
    assert k1.dim_total + k2.dim_total == total.dim_total


def test_indec_jordan_loop_gf2_exhaustive():
    loop = Quiver(["1"], [("l", "1", "1")])
    r = Rep(loop, GF2, {"1": 2}, {"l": [[0, 1], [0, 0]]})
    res = indec_status(r)
    assert res.status is IndecStatus.INDECOMPOSABLE
    assert res.end_dim == 2
    assert "2^2" in res.certificate


def test_indec_jordan_loop_rationals_unknown():
    # local endomorphism ring of dimension 2 over an infinite field:
    # the sampler can neither enumerate nor split, so it must say so
    loop = Quiver(["1"], [("l", "1", "1")])
    r = Rep(loop, QQ, {"1": 2}, {"l": [[0, 1], [0, 0]]})
    res = indec_status(r, budget=16)
    assert res.status is IndecStatus.UNKNOWN
    assert res.end_dim == 2


def test_indec_seed_budget_are_stable(v_line):
    total, _, _ = direct_sum(v_line, v_line)
    r1 = indec_status(total, budget=64, seed=5)
    r2 = indec_status(total, budget=64, seed=5)
    assert r1.status == r2.status and r1.witness == r2.witness
