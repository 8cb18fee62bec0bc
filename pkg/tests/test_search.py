import random

import pytest

from _samplers import abelian_oxidation_data, random_nondegenerate_skew
from sympla.certificates import (
    build_envelope_certificate,
    invariant_ideal_trap,
    irreducible_structure_certificate,
    verify_no_abelian_escape,
)
from sympla.exactla import Matrix, Q, Subspace, vunit
from sympla.liealg import (
    LieAlgebra,
    ascending_central_series,
    bracket_span,
    center,
    descending_central_series,
    nilpotency_class,
    subspace_algebra_flags,
)
from sympla.oxidation import symplectic_oxidation
from sympla.search import (
    irreducible_base,
    is_completely_reducible,
    isotropic_ideals_enumerate,
    lagrangian_ideal,
    lagrangian_relations_check,
    lagrangian_subalgebra,
    symplectic_length_upper,
    symplectic_rank_bounds,
)
from sympla.symplectic import isotropy_report, omega_orthogonal, validate_symplectic


def two_step_example():
    """h3 + line with a product-type symplectic form."""
    g = LieAlgebra.from_brackets(("X", "Y", "Z", "W"), {(0, 1): {2: 1}})
    rows = [[Q(0)] * 4 for _ in range(4)]
    rows[2][0] = Q(1)  # Z pairs X
    rows[0][2] = Q(-1)
    rows[1][3] = Q(1)  # Y pairs W
    rows[3][1] = Q(-1)
    return validate_symplectic(g, Matrix.from_rows(rows, 4))


def test_enumerate_abelian():
    rng = random.Random(0)
    g = LieAlgebra.abelian(4)
    s = validate_symplectic(g, random_nondegenerate_skew(rng, 4))
    found = isotropic_ideals_enumerate(s)
    assert found
    assert all(sub.dim <= 2 for sub in found)


def test_enumerate_g8_finds_known_ideals(cat):
    e = cat("g8")
    found = isotropic_ideals_enumerate(e.symplectic)
    assert e.marked["Hline"] in found
    assert e.marked["j3"] in found


def test_enumerate_g10_finds_rank_witness(cat):
    e = cat("g10")
    found = isotropic_ideals_enumerate(e.symplectic)
    assert e.marked["j4"] in found


def test_envelope_certificates(cat):
    e = cat("g8")
    cert = build_envelope_certificate(e.symplectic)
    assert cert is not None
    assert cert.m == e.marked["W6"]
    assert cert.nondegenerate
    assert verify_no_abelian_escape(e.symplectic, cert)
    g10 = cat("g10")
    cert = build_envelope_certificate(g10.symplectic)
    assert cert is not None and cert.m == g10.marked["am"]
    assert verify_no_abelian_escape(g10.symplectic, cert)


def test_envelope_vacuous_for_abelian():
    rng = random.Random(1)
    g = LieAlgebra.abelian(4)
    s = validate_symplectic(g, random_nondegenerate_skew(rng, 4))
    cert = build_envelope_certificate(s)
    assert cert is not None
    assert cert.directions == ()
    assert verify_no_abelian_escape(s, cert)


def test_trap_fdim_metab(cat):
    e = cat("fdim_metab")
    cert = build_envelope_certificate(e.symplectic)
    assert cert is not None and cert.m.dim == 3
    trap = invariant_ideal_trap(e.symplectic, cert.m)
    assert trap is not None
    dims = sorted(i.dim for i in trap.ideals)
    assert dims == [0, 1, 2, 3]
    iso = [i for i in trap.ideals
           if i.dim and isotropy_report(e.symplectic, i).isotropic]
    assert max(i.dim for i in iso) == 1


def test_rank_bounds_catalog_values(cat):
    expected = {"fdim_metab": 1, "cs6": 2, "irr6": 0, "g8": 3, "g10": 4}
    for name, rank in expected.items():
        bounds = symplectic_rank_bounds(cat(name).symplectic)
        assert bounds.exact, name
        assert bounds.lower == rank, name


def test_rank_witnesses(cat):
    fm = cat("fdim_metab")
    bounds = symplectic_rank_bounds(fm.symplectic)
    assert bounds.lower_witness == fm.marked["Zline"]
    g8 = cat("g8")
    bounds = symplectic_rank_bounds(g8.symplectic)
    assert bounds.lower_witness.dim == 3
    assert isotropy_report(g8.symplectic, bounds.lower_witness).isotropic


def test_irreducible_structure_certificate(cat):
    e = cat("irr6")
    cert = irreducible_structure_certificate(e.symplectic)
    assert cert is not None
    assert len(cert.blocks) == 2
    assert {cert.blocks[0], cert.blocks[1]} == {e.marked["a1"], e.marked["a2"]}
    assert cat("g8") and irreducible_structure_certificate(cat("g8").symplectic) is None


def test_lagrangian_ideal_two_step():
    s = two_step_example()
    res = lagrangian_ideal(s)
    assert res.status == "found"
    derived = bracket_span(s.algebra, Subspace.full(4), Subspace.full(4))
    assert res.subspace.contains(derived)


def test_lagrangian_ideal_filiform_unique(cat):
    e = cat("filiform4")
    res = lagrangian_ideal(e.symplectic)
    assert res.status == "found"
    assert res.subspace == e.marked["C1"]  # the unique Lagrangian ideal


def test_lagrangian_ideal_certified_none(cat):
    for name in ("fdim_metab", "cs6", "g8", "g10", "irr6"):
        res = lagrangian_ideal(cat(name).symplectic)
        assert res.status == "certified_none", name
        assert res.certificate, name


def test_lagrangian_ideal_abelian_reduction_path():
    rng = random.Random(55)
    data = abelian_oxidation_data(rng, 3)
    s = symplectic_oxidation(data)
    res = lagrangian_ideal(s)
    assert res.status == "found"
    flags = subspace_algebra_flags(s.algebra, res.subspace)
    assert flags.is_ideal
    assert isotropy_report(s, res.subspace).lagrangian


def test_lagrangian_ideal_trivial():
    from sympla.catalog import build

    res = lagrangian_ideal(build("trivial").symplectic)
    assert res.status == "found"


def test_lagrangian_subalgebra_nilpotent(cat):
    for name in ("g8", "g10", "filiform4"):
        res = lagrangian_subalgebra(cat(name).symplectic)
        assert res.status == "found", name
        assert res.path == "complete-reduction"


def test_lagrangian_subalgebra_g8_known_witness(cat):
    e = cat("g8")
    sub = e.marked["lag_subalg"]  # <H, Z, Z', Y>
    flags = subspace_algebra_flags(e.algebra, sub)
    rep = isotropy_report(e.symplectic, sub)
    # [Y, Z] = H stays inside the span, so this is a (non-abelian) subalgebra
    assert flags.is_subalgebra and rep.lagrangian
    assert e.algebra.bracket(vunit(8, 2), vunit(8, 3)) == vunit(8, 7)


def test_lagrangian_subalgebra_irr6_sign_cases(cat):
    for w12 in (1, -1):
        for w34 in (1, -1):
            e = cat("irr6", w12=w12, w34=w34)
            res = lagrangian_subalgebra(e.symplectic)
            assert res.status == "found", (w12, w34)
            assert res.path == "rotation-family"


def test_lagrangian_relations_irr6(cat):
    e = cat("irr6")
    cert = irreducible_structure_certificate(e.symplectic)
    res = lagrangian_subalgebra(e.symplectic)
    report = lagrangian_relations_check(e.symplectic, cert, res.subspace)
    assert report.relations_hold
    assert report.l_dim == 3 and report.b_dim == 2 and report.i_dim == 1
    assert report.split_confirmed


def test_irr_noLag_pipeline(cat):
    """The eight-dimensional rotation family with character conditions has no
    Lagrangian subalgebra; the search stays unresolved and replays the
    relation-based impossibility certificate."""
    e = cat("gklambda", k=1, characters=((1, 2), (2, 1), (3, -1)))
    # check the conditions: plane avoids permutations of (0, 1, -1)
    res = lagrangian_subalgebra(e.symplectic)
    assert res.status == "unresolved"
    assert res.impossibility is not None


def test_two_step_invariant(cat):
    """The commutator of a two-step nilpotent symplectic algebra is isotropic."""
    pool = [two_step_example(), cat("tn_cotangent", n=3).symplectic]
    for s in pool:
        assert nilpotency_class(s.algebra) == 2
        derived = bracket_span(s.algebra, Subspace.full(s.dim), Subspace.full(s.dim))
        assert isotropy_report(s, derived).isotropic


def test_basic_orthogonality(cat):
    """C^i is omega-orthogonal to the i-th ascending term."""
    for name in ("g8", "g10", "fdim_metab", "cs6", "filiform4"):
        s = cat(name).symplectic
        g = s.algebra
        desc = descending_central_series(g).terms
        asc = ascending_central_series(g).terms
        for i in range(min(len(desc), len(asc))):
            perp = omega_orthogonal(s, asc[i])
            assert perp.contains(desc[i])


def test_isotropic_ideal_dims_from_class(cat):
    """Class 2l (or 2l - 1) forces an isotropic ideal of dimension >= l."""
    for name in ("g8", "g10", "filiform4"):
        s = cat(name).symplectic
        k = nilpotency_class(s.algebra)
        ell = (k + 1) // 2
        found = isotropic_ideals_enumerate(s)
        assert found and found[0].dim >= ell


def test_completely_reducible_and_length(cat):
    assert is_completely_reducible(cat("g8").symplectic)
    assert is_completely_reducible(cat("fdim_metab").symplectic)
    s = two_step_example()
    assert symplectic_length_upper(s) == 1
    from sympla.catalog import build

    assert symplectic_length_upper(build("trivial").symplectic) == 0
    assert symplectic_length_upper(cat("irr6").symplectic) == 0


def test_g8_length_exceeds_one(cat):
    """No Lagrangian ideal, so the length of any complete sequence is >= 2."""
    e = cat("g8")
    bound = symplectic_length_upper(e.symplectic)
    assert bound is not None and bound >= 2


def test_base_unresolved_never_wrong(cat):
    e = cat("aff", n=2)
    result = irreducible_base(e.symplectic, "greedy-max")
    assert result.status == "certified"
    assert result.base.dim == 0


def test_three_step_construction_dim_six():
    """Class-three algebra with one-dimensional second descending term."""
    from sympla.catalog import find_symplectic_form
    from sympla.search import _three_step_lagrangian

    g = LieAlgebra.from_brackets(
        ("e1", "e2", "e3", "e4", "a", "b"),
        {(0, 1): {2: 1}, (0, 2): {3: 1}})
    assert nilpotency_class(g) == 3
    s = validate_symplectic(g, find_symplectic_form(g))
    direct = _three_step_lagrangian(s)
    assert direct is not None and direct.dim == 3
    assert subspace_algebra_flags(g, direct).is_ideal
    assert isotropy_report(s, direct).lagrangian
    assert lagrangian_ideal(s).status == "found"


def test_three_step_construction_dim_eight():
    """Class-three algebra with two-dimensional second descending term."""
    from sympla.catalog import find_symplectic_form
    from sympla.search import _three_step_lagrangian

    g = LieAlgebra.from_brackets(
        8, {(0, 1): {2: 1}, (0, 2): {3: 1}, (4, 5): {6: 1}, (4, 6): {7: 1}})
    assert nilpotency_class(g) == 3
    s = validate_symplectic(g, find_symplectic_form(g))
    direct = _three_step_lagrangian(s)
    assert direct is not None and direct.dim == 4
    assert subspace_algebra_flags(g, direct).is_ideal
    assert isotropy_report(s, direct).lagrangian
    assert lagrangian_ideal(s).status == "found"


def test_class_four_dimension_six_construction():
    from sympla.catalog import find_symplectic_form
    from sympla.search import _low_dim_lagrangian

    for brackets in (
        {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {4: 1}},
        {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {4: 1}, (1, 2): {5: 1}},
    ):
        g = LieAlgebra.from_brackets(6, brackets)
        assert nilpotency_class(g) == 4
        s = validate_symplectic(g, find_symplectic_form(g))
        direct = _low_dim_lagrangian(s)
        assert direct is not None and direct.dim == 3
        assert subspace_algebra_flags(g, direct).is_ideal
        assert isotropy_report(s, direct).lagrangian


def test_enumerate_randomized_mode(cat):
    e = cat("g8")
    found = isotropic_ideals_enumerate(e.symplectic, modes=("randomized",),
                                       budget=200, seed=5)
    for sub in found:
        assert isotropy_report(e.symplectic, sub).isotropic
        assert subspace_algebra_flags(e.algebra, sub).is_ideal


def test_transfer_precondition_errors(cat):
    from sympla.liealg import ValidationError
    from sympla.reduction import reduce as reduce_step, transfer_isotropic

    e = cat("g8")
    step = reduce_step(e.symplectic, e.marked["Hline"])
    with pytest.raises(ValidationError):
        # <r1, r2> in the reduction is not isotropic for the reduced form
        transfer_isotropic(step, Subspace.span(6, [vunit(6, 0), vunit(6, 2)]),
                           "lift")


def test_structure_certificate_sign_pattern_characters(cat):
    """Characters equal up to per-coordinate signs are separated by squares
    of operator sums."""
    e = cat("gklambda", k=1, characters=((1, 2), (1, -2)))
    cert = irreducible_structure_certificate(e.symplectic)
    assert cert is not None
    bounds = symplectic_rank_bounds(e.symplectic)
    assert bounds.upper == 0
