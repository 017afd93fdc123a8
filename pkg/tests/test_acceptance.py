"""Acceptance gate: nine end-to-end criteria, one verdict line each.

Each test prints a single ``criterion N PASS/FAIL`` line directly to the
terminal (bypassing capture) and enforces a wall-clock budget, so a plain
``pytest tests/test_acceptance.py`` run doubles as the sign-off checklist.
"""

import contextlib
import json
import os
import sys
import time

from fibcat.core import (
    FinFunctor, chain_category, constant_functor, discrete_category,
    identity_functor, identity_nat, pick_object, terminal_category,
    walking_iso_category,
)
from fibcat.constructions import (
    comma, extract_comma, iso_search, mediate_comma, mediate_comma_2cell,
    mediate_pullback, phi, pullback,
)
from fibcat.arrowcat import (
    Bundle, BundleSquare, compose_squares, identity_functor as _idf,  # noqa: F401
    is_prone, is_supine, op_bundle,
)
from fibcat.street import (
    L_mor, c_component, d0K_component, d1K_component, verify_K_lemmas,
    verify_L_monad,
)
from fibcat.algebra import (
    cleavage_to_algebra, is_fibration, is_opfibration,
    verify_chevalley_vs_oracle, verify_duality, verify_pseudoalgebra,
)
from fibcat.transport import (
    Psi_component, builtin_functors, check_preservation, lift_algebra,
    slice_endofunctor, validate_indexed, verify_transition,
)
from fibcat import cli


def _announce(num, desc, budget, body, uncapture=contextlib.nullcontext):
    t0 = time.perf_counter()
    try:
        body()
    except BaseException:
        elapsed = time.perf_counter() - t0
        with uncapture():
            print("criterion %d FAIL: %s (%.1fs, budget %ds)"
                  % (num, desc, elapsed, budget),
                  file=sys.__stdout__, flush=True)
        raise
    elapsed = time.perf_counter() - t0
    status = "PASS" if elapsed <= budget else "FAIL"
    with uncapture():
        print("criterion %d %s: %s (%.1fs, budget %ds)"
              % (num, status, desc, elapsed, budget),
              file=sys.__stdout__, flush=True)
    assert elapsed <= budget, "over the %ds budget: %.1fs" % (budget, elapsed)


def _assert_all_ok(reports, label):
    failed = [r for r in reports if not r.ok]
    assert not failed, (label, [r.id for r in failed])


# ---------------------------------------------------------------------------


def test_criterion_1_comma_objects(capfd):
    def body():
        two = chain_category("2", 2)
        p2 = phi(two)
        assert len(p2.apex.objects) == 3 and len(p2.apex.morphisms) == 6
        assert iso_search(p2.apex, chain_category("3", 3)) is not None
        # mediate-then-extract and extract-then-mediate are inverse
        m = mediate_comma(p2, p2.d0, p2.d1, p2.lam)
        assert extract_comma(p2, m) == (p2.d0, p2.d1, p2.lam)
        cr = comma(pick_object(two, 0), identity_functor(two))
        f = identity_functor(cr.apex)
        u0, u1, sigma = extract_comma(cr, f)
        assert mediate_comma(cr, u0, u1, sigma) == f
        # the two-dimensional universal property round-trips as well
        out = mediate_comma_2cell(p2, m, m, identity_nat(p2.d0),
                                  identity_nat(p2.d1))
        assert out == identity_nat(m)
        # pullback mediation is the identity on the canonical cone
        pb = pullback(pick_object(two, 1), identity_functor(two))
        assert mediate_pullback(pb, pb.proj0, pb.proj1) == identity_functor(pb.apex)

    _announce(1, "comma objects and their universal property", 5, body, uncapture=capfd.disabled)


def test_criterion_2_monad_laws(bundles, squares, twocells, capfd):
    def body():
        reports = verify_L_monad(list(bundles.values()),
                                 list(squares.values()),
                                 list(twocells.values()))
        _assert_all_ok(reports, "monad")
        assert len(reports) >= 30
        # a deliberately twisted multiplication must be caught
        iso = walking_iso_category()
        one = terminal_category()
        p = Bundle(iso, one, constant_functor(iso, one, "*"))
        swap = FinFunctor(iso, iso, {"x": "y", "y": "x"},
                          {("id", "x"): ("id", "y"),
                           ("id", "y"): ("id", "x"), "u": "v", "v": "u"})
        swap_sq = BundleSquare(p, p, swap, identity_functor(one))

        def broken(q):
            if q == p:
                return compose_squares(L_mor(swap_sq), c_component(q))
            return c_component(q)

        mutated = verify_L_monad([p], c_override=broken)
        bad = [r for r in mutated if not r.ok]
        assert bad and any("unit" in r.id for r in bad)

    _announce(2, "slice monad laws hold and mutations are detected", 30, body, uncapture=capfd.disabled)


def test_criterion_3_chevalley_criterion(bundles, capfd):
    def body():
        reports = verify_chevalley_vs_oracle(list(bundles.values()))
        _assert_all_ok(reports, "chevalley")
        assert len(reports) >= 10
        # spot-check that the criterion actually separates the two sides
        assert is_fibration(bundles["j0"])[0]
        assert not is_opfibration(bundles["j0"])[0]
        assert is_opfibration(bundles["j1"])[0]
        assert not is_fibration(bundles["j1"])[0]

    _announce(3, "adjoint criterion agrees with the brute-force oracle",
              60, body, uncapture=capfd.disabled)


def test_criterion_4_duality(bundles, capfd):
    def body():
        reports = verify_duality(list(bundles.values()))
        _assert_all_ok(reports, "duality")
        for p in bundles.values():
            assert is_fibration(p)[0] == is_opfibration(op_bundle(p))[0]

    _announce(4, "fibration checks dualize through the opposite bundle",
              10, body, uncapture=capfd.disabled)


def test_criterion_5_k_lemmas(bundles, capfd):
    def body():
        for name in ("cod", "dom", "j1", "isopt"):
            p = bundles[name]
            for n in (0, 1):
                assert is_prone(d0K_component(p, n)), (name, n)
                assert is_supine(d1K_component(p, n)), (name, n)
        reports = verify_K_lemmas(list(bundles.values()))
        _assert_all_ok(reports, "k-lemmas")
        assert len(reports) >= 50

    _announce(5, "iterated slice projections are prone/supine with their "
                 "simplicial identities", 30, body, uncapture=capfd.disabled)


def test_criterion_6_transitions(tbundles, squares, capfd):
    def body():
        for t in builtin_functors():
            reports = verify_transition(t, tbundles, squares)
            _assert_all_ok(reports, t.name)
        # a twisted transition on the two-point constant fibre is caught
        disc2 = discrete_category("disc2", ["d0", "d1"])
        from fibcat.transport import const_fiber
        t = const_fiber(disc2, "disc2")
        swapname = {"d0": "d1", "d1": "d0"}

        def broken(p):
            real = Psi_component(t, p)
            tot = real.src.total
            obj_map = {o: ("comma", ("pb", o[1][1], swapname[o[1][2]]),
                           o[2], o[3]) for o in tot.objects}
            mor_map = {m: ("comma",
                           ("pb", m[1][1], ("id", swapname[m[1][2][1]])),
                           m[2], m[3], m[4]) for m in tot.morphisms}
            auto = FinFunctor(tot, tot, obj_map, mor_map)
            return compose_squares(real, BundleSquare(real.src, real.src,
                                                      auto, real.down))

        mutated = verify_transition(t, {"id2": tbundles["id2"]},
                                    psi_override=broken)
        bad = [r for r in mutated if not r.ok]
        assert any("transition-unit" in r.id for r in bad)
        assert any("transition-mult" in r.id for r in bad)

    _announce(6, "transitions satisfy unit/multiplication/naturality laws "
                 "and mutations are detected", 120, body, uncapture=capfd.disabled)


def test_criterion_7_preservation_theorem(tbundles, capfd):
    def body():
        modes = ("opfibration", "fibration",
                 "pseudo-opfibration", "pseudo-fibration")
        passes = 0
        for t in builtin_functors():
            for mode in modes:
                for name, p in sorted(tbundles.items()):
                    reports = check_preservation(t, p, mode, label=name)
                    _assert_all_ok(reports, (t.name, mode, name))
                    passes += sum(1 for r in reports if r.status == "pass")
        assert passes >= 100  # the sweep is far from vacuous
        # lifting a normalized algebra stays normalized, for every functor
        ok, cl = is_opfibration(tbundles["cod"])
        alg = cleavage_to_algebra(tbundles["cod"], cl)
        assert alg.is_normalized()
        for t in builtin_functors():
            lifted = lift_algebra(t, alg)
            assert lifted.is_normalized(), t.name
            _assert_all_ok(verify_pseudoalgebra(lifted, label="lift"), t.name)

    _announce(7, "indexed endofunctors preserve (op)fibrations in all four "
                 "modes with lawful lifted algebras", 180, body, uncapture=capfd.disabled)


def test_criterion_8_negative_controls(bundles, squares, twocells, capfd):
    def body():
        prone_squares = [(k, v) for k, v in squares.items()
                         if k.startswith("prone")]
        reports = validate_indexed(slice_endofunctor(), bundles, squares,
                                   twocells, prone_squares)
        prone_report = [r for r in reports if "preserves-prone" in r.id][0]
        assert prone_report.status == "fail" and prone_report.witnesses
        # the extracted cleavage on the walking-iso point is pseudo-only
        ok, cl = is_opfibration(bundles["isopt"])
        assert ok and not cl.is_normalized()
        alg = cleavage_to_algebra(bundles["isopt"], cl)
        assert not alg.is_normalized()
        assert alg.zeta.up.is_invertible()
        assert not alg.zeta.up.is_identity()
        _assert_all_ok(verify_pseudoalgebra(alg, label="isopt"), "isopt")

    _announce(8, "non-indexed functors and non-normalized cleavages are "
                 "flagged, not silently accepted", 10, body, uncapture=capfd.disabled)


def test_criterion_9_cli_contract(tmp_path, capfd):
    root = os.path.join(os.path.dirname(__file__), "..", "corpus")
    j_cat = os.path.join(root, "j.cat")
    suite_cat = os.path.join(root, "suite.cat")

    def run(argv):
        capfd.readouterr()  # drop anything pending
        code = cli.main(argv)
        return code, capfd.readouterr().out

    def body():
        code1, out1 = run(["report", suite_cat, "--format", "json"])
        code2, out2 = run(["report", suite_cat, "--format", "json"])
        assert code1 == 0 and code2 == 0
        assert out1 == out2  # byte-identical across runs
        assert json.loads(out1)["checks"]
        assert run(["check", "--fibration", j_cat])[0] == 0
        code, out = run(["check", "--opfibration", j_cat])
        assert code == 1 and "(e=*, alpha=a)" in out
        assert run(["preserve", "--functor", "nosuch",
                    "--mode", "opfibration", j_cat])[0] == 2
        out_dir = tmp_path / "artifacts"
        assert run(["report", suite_cat, "--out", str(out_dir)])[0] == 0
        assert (out_dir / "report.json").exists()
        assert (out_dir / "report.csv").read_bytes().startswith(b"id,")
        assert (out_dir / "report.png").stat().st_size > 1000

    _announce(9, "CLI output is deterministic with a stable exit-code "
                 "contract and rendered artifacts", 60, body,
              uncapture=capfd.disabled)
