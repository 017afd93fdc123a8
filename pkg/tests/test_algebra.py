import pytest

from fibcat.core import InvalidCleavage, identity_functor, identity_nat
from fibcat.arrowcat import op_bundle, identity_square, compose_squares
from fibcat.street import L_mor, c_component, i_component
from fibcat.algebra import (
    Cleavage, chevalley_tilde, cleavage_to_algebra, direct_prone_oracle,
    direct_supine_oracle, find_left_adjoint, free_algebra, is_fibration,
    is_opfibration, is_pseudo_fibration, is_pseudo_opfibration,
    verify_chevalley_vs_oracle, verify_duality, verify_lax_homomorphism,
    verify_pseudoalgebra,
)
from fibcat.arrowcat import BundleTwoCell


EXPECTED = {
    # name: (opfibration, fibration)
    "id1": (True, True),
    "id2": (True, True),
    "id3": (True, True),
    "j0": (False, True),
    "j1": (True, False),
    "k2": (True, False),
    "cod": (True, True),
    "dom": (True, True),
    "pi": (True, True),
    "span2in3": (False, False),
    "disc2in2": (False, False),
    "isopt": (True, True),
}


def test_expected_classification(bundles):
    for name, (op_exp, fib_exp) in EXPECTED.items():
        assert is_opfibration(bundles[name])[0] == op_exp, name
        assert is_fibration(bundles[name])[0] == fib_exp, name


def test_oracle_matches_adjoint_criterion(bundles):
    reports = verify_chevalley_vs_oracle(list(bundles.values()))
    failed = [r for r in reports if not r.ok]
    assert not failed, [r.id for r in failed]
    assert len(reports) >= 10


def test_duality(bundles):
    reports = verify_duality(list(bundles.values()))
    assert all(r.ok for r in reports)
    for p in bundles.values():
        assert is_fibration(p)[0] == is_opfibration(op_bundle(p))[0]


def test_oracle_witness_for_point_inclusion(bundles):
    ok, cl, witness = direct_supine_oracle(bundles["j0"])
    assert not ok and cl is None
    assert "alpha=le(0,1)" in witness


def test_pseudo_variants(bundles):
    # everything strict is also pseudo; the walking iso point is pseudo both
    for name, (op_exp, fib_exp) in EXPECTED.items():
        if op_exp:
            assert is_pseudo_opfibration(bundles[name]), name
        if fib_exp:
            assert is_pseudo_fibration(bundles[name]), name
    assert not is_pseudo_opfibration(bundles["j0"])


def test_adjoint_triangle_identities(bundles):
    w = find_left_adjoint(chevalley_tilde(bundles["cod"]), "identity")
    assert w is not None  # triangle identities asserted inside
    assert find_left_adjoint(chevalley_tilde(bundles["j0"]), "identity") is None


def test_cleavage_to_algebra_laws(bundles):
    for name in ("id2", "cod", "dom", "j1", "pi", "isopt"):
        ok, cl = is_opfibration(bundles[name])
        assert ok
        alg = cleavage_to_algebra(bundles[name], cl)
        reports = verify_pseudoalgebra(alg, label=name)
        failed = [r for r in reports if not r.ok]
        assert not failed, (name, [r.id for r in failed])


def test_free_algebra_is_strict(bundles):
    alg = free_algebra(bundles["j0"])
    assert alg.is_normalized()
    assert alg.theta.up.is_identity()
    assert all(r.ok for r in verify_pseudoalgebra(alg, label="free"))


def test_nonnormalized_cleavage_gives_pseudo_only(bundles):
    # the adjoint extraction on the walking-iso point picks the iso as the
    # lift of an identity, so zeta is invertible but not the identity
    ok, cl = is_opfibration(bundles["isopt"])
    assert ok and not cl.is_normalized()
    alg = cleavage_to_algebra(bundles["isopt"], cl)
    assert not alg.is_normalized()
    assert alg.zeta.up.is_invertible()
    assert all(r.ok for r in verify_pseudoalgebra(alg, label="isopt"))


def test_broken_cleavage_rejected(bundles):
    p = bundles["cod"]
    ok, cl = is_opfibration(p)
    bad = dict(cl.lifts)
    key = sorted(bad)[0]
    # point the first lift at an ill-typed morphism
    bad[key] = p.total.id_of(p.total.objects[-1])
    with pytest.raises(InvalidCleavage):
        cleavage_to_algebra(p, Cleavage("opcleavage", bad, p))


def test_strict_homomorphism_laws(bundles):
    # L of a bundle square is a strict homomorphism between free algebras
    p, q = bundles["j1"], bundles["id2"]
    from fibcat.arrowcat import BundleSquare
    f0 = BundleSquare(p, q, p.proj, identity_functor(p.base))
    src_alg = free_algebra(p)
    tgt_alg = free_algebra(q)
    f = L_mor(f0)
    theta_f_src = compose_squares(tgt_alg.structure, L_mor(f))
    theta_f = BundleTwoCell(theta_f_src,
                            compose_squares(f, src_alg.structure),
                            identity_nat(theta_f_src.up),
                            identity_nat(theta_f_src.down))
    reports = verify_lax_homomorphism(src_alg, tgt_alg, f, theta_f, "Lj1")
    failed = [r for r in reports if not r.ok]
    assert not failed, [r.id for r in failed]


def test_prone_oracle_duality(bundles):
    ok, cl, _ = direct_prone_oracle(bundles["j0"])
    assert ok and cl.kind == "cleavage"
    ok2, _, witness = direct_prone_oracle(bundles["j1"])
    assert not ok2 and witness
