import json
import os

import pytest
from hypothesis import given, settings, strategies as st

from fibcat import dsl
from fibcat import cli


J_CAT = os.path.join(os.path.dirname(__file__), "..", "corpus", "j.cat")
COD_CAT = os.path.join(os.path.dirname(__file__), "..", "corpus", "cod2.cat")
SUITE_CAT = os.path.join(os.path.dirname(__file__), "..", "corpus", "suite.cat")


# ---------------------------------------------------------------------------
# parser


def test_parse_category_example():
    doc = dsl.parse("category two { objects 0 1; arrow a: 0 -> 1; "
                    "compose id(1) . a = a; compose a . id(0) = a; }")
    ctx = dsl.elaborate(doc)
    two = ctx.categories["two"]
    assert len(two.objects) == 2 and len(two.morphisms) == 3


def test_poset_flag_infers_composition():
    doc = dsl.parse("category c { poset; objects 0 1 2; "
                    "arrow a: 0 -> 1; arrow b: 1 -> 2; arrow c: 0 -> 2; }")
    cat = dsl.elaborate(doc).categories["c"]
    assert cat.compose("b", "a") == "c"


def test_missing_composite_is_an_error():
    with pytest.raises(dsl.ParseError) as err:
        dsl.elaborate(dsl.parse(
            "category c { objects 0 1; arrow a: 0 -> 1; arrow b: 1 -> 0; }"))
    assert "missing composite" in str(err.value)


def test_ambiguous_poset_composite_is_an_error():
    text = ("category c { poset; objects 0 1; arrow a: 0 -> 1; "
            "arrow b: 0 -> 1; }")
    with pytest.raises(dsl.ParseError):
        dsl.elaborate(dsl.parse(text))


def test_duplicate_names_rejected():
    with pytest.raises(dsl.DuplicateName):
        dsl.parse("bundle X = f; bundle X = g;")


def test_unknown_reference_rejected():
    with pytest.raises(dsl.UnknownReference):
        dsl.elaborate(dsl.parse("bundle X = nosuch;"))


def test_functor_arrow_inference():
    doc = dsl.parse(
        "category one { objects *; }"
        "category two { poset; objects 0 1; arrow a: 0 -> 1; }"
        "functor j: one -> two { * |-> 0; }")
    j = dsl.elaborate(doc).functors["j"]
    assert j.mor_map[("id", "*")] == ("id", "0")


def test_roundtrip_on_corpus_files():
    for path in (J_CAT, COD_CAT, SUITE_CAT):
        doc = dsl.parse_file(path)
        assert dsl.parse(dsl.print_document(doc)) == doc


@settings(max_examples=25)
@given(st.lists(st.sampled_from(["p", "q", "r"]), min_size=1, max_size=3,
                unique=True))
def test_roundtrip_generated_discrete(objs):
    doc = dsl.Document([dsl.CategoryDecl("c", False, list(objs), [], [])])
    assert dsl.parse(dsl.print_document(doc)) == doc


def test_syntax_error_has_position():
    with pytest.raises(dsl.ParseError) as err:
        dsl.parse("category { }")
    assert str(err.value).split(":")[0].isdigit()


# ---------------------------------------------------------------------------
# CLI


def test_cli_validate_ok(capsys):
    assert cli.main(["validate", J_CAT, COD_CAT]) == 0


def test_cli_check_opfibration_fails_with_witness(capfd):
    code = cli.main(["check", "--opfibration", J_CAT])
    out = capfd.readouterr().out
    assert code == 1
    assert "(e=*, alpha=a)" in out


def test_cli_check_fibration_passes(capsys):
    assert cli.main(["check", "--fibration", J_CAT]) == 0


def test_cli_preserve(capsys):
    assert cli.main(["preserve", "--functor", "fiber_power:2",
                     "--mode", "opfibration", COD_CAT]) == 0


def test_cli_usage_errors_exit_2(capsys):
    assert cli.main(["check", J_CAT]) == 2              # no mode picked
    assert cli.main(["preserve", "--functor", "nosuch",
                     "--mode", "opfibration", COD_CAT]) == 2
    assert cli.main(["validate", "/nonexistent.cat"]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_cli_monad_laws_json(capfd):
    assert cli.main(["monad-laws", J_CAT, "--format", "json"]) == 0
    doc = json.loads(capfd.readouterr().out)
    assert doc["version"] == 1
    assert all(c["status"] == "pass" for c in doc["checks"])
    assert all(c["millis"] == 0 for c in doc["checks"])  # byte-stable field


def test_cli_suite_deterministic(capfd):
    assert cli.main(["report", SUITE_CAT, "--format", "json"]) == 0
    first = capfd.readouterr().out
    assert cli.main(["report", SUITE_CAT, "--format", "json"]) == 0
    second = capfd.readouterr().out
    assert first == second
    assert json.loads(first)["checks"]


def test_cli_report_writes_artifacts(tmp_path, capfd):
    out = tmp_path / "artifacts"
    assert cli.main(["report", SUITE_CAT, "--out", str(out),
                     "--format", "json"]) == 0
    capfd.readouterr()
    assert (out / "report.json").exists()
    assert (out / "report.csv").read_bytes().startswith(b"id,")
    assert (out / "report.png").stat().st_size > 1000  # a rendered figure


def test_cli_fibre_and_comma(capfd):
    assert cli.main(["fibre", COD_CAT, "COD", "1"]) == 0
    out = capfd.readouterr().out
    assert "objects=2" in out
    assert cli.main(["comma", J_CAT, "j", "j"]) == 0
    out = capfd.readouterr().out
    assert "objects=1" in out


def test_cli_transition_and_lift(capsys):
    assert cli.main(["transition", "--functor", "const_fiber:2", J_CAT]) == 0
    assert cli.main(["lift", "--functor", "identity", COD_CAT]) == 0
