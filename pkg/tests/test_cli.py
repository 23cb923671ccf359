import json

import jsonschema
import pytest

from ulrichsyz.cli import main
from ulrichsyz.report import golden_path, load_schema, parse_range, ConfigError, load_config

SCHEMA = load_schema()

# a narrow configuration keeps full verify-theorem runs to a second or two
NARROW = ["--set", "sweep.p1_m=1..2", "--set", "sweep.p2_L=1..1", "--set", "sweep.quadric=1..1",
          "--set", "sweep.k=-2..3", "--set", "sweep.a=1..3", "--set", "prop52.H2=1..3",
          "--set", "prop52.LH=1..3", "--set", "cor54.L=1..4", "--set", "cor54.H=1..6"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


# --------------------------------------------------------------------------
# coh


@pytest.mark.parametrize("model, sheaf, h", [
    ("p2", "dualsyz:1:-2", [0, 1, 0]),
    ("p2", "dualsyz:1:-1", [0, 0, 0]),
    ("p2", "dualsyz:1:1", [8, 0, 0]),
    ("p1", "syz:4:0", [0, 0]),
    ("p1", "syz:4:-1", [0, 4]),
    ("quadric", "line:0,-2", [0, 1, 0]),
    ("p3", "sum:line:1+syz:1:1", [4 + 6, 0, 0, 0]),
])
def test_coh_examples(capsys, model, sheaf, h):
    code, doc = run_json(capsys, "coh", "--model", model, "--sheaf", sheaf)
    assert code == 0
    assert doc["results"]["h"] == h
    assert doc["results"]["euler"] == doc["results"]["chi_riemann_roch"]
    assert doc["summary"]["checks"] == {"euler": "pass"}


# --------------------------------------------------------------------------
# check-ulrich


def test_check_ulrich_tangent_plane(capsys):
    code, doc = run_json(capsys, "check-ulrich", "--model", "p2", "--sheaf", "dualsyz:1:1", "--H", "2")
    assert code == 0
    assert doc["results"]["verdict"] is True
    assert doc["results"]["h0E"] == 8 == doc["results"]["rank_times_degree"]
    assert [row["p"] for row in doc["results"]["table"]] == [1, 2]


def test_check_ulrich_rational_normal_member(capsys):
    code, doc = run_json(capsys, "check-ulrich", "--model", "p1", "--sheaf", "syz:3:9", "--H", "9")
    assert code == 0 and doc["results"]["verdict"] is True


def test_check_ulrich_quadric_obstruction(capsys):
    code, doc = run_json(capsys, "check-ulrich", "--model", "quadric",
                         "--sheaf", "dualsyz:1,4:3,12", "--H", "2,6")
    # a false verdict is an answer, not a failed check
    assert code == 0
    assert doc["results"]["verdict"] is False
    assert "h0-equals-rm" not in doc["summary"]["checks"]


@pytest.mark.parametrize("argv, needle", [
    (["coh", "--model", "p2", "--sheaf", "syz:1"], "grammar"),
    (["coh", "--model", "p2", "--sheaf", "tensor:1:1"], "grammar"),
    (["coh", "--model", "quadric", "--sheaf", "line:1"], "2 component"),
    (["coh", "--model", "p2", "--sheaf", "syz:0:1"], "not very ample"),
    (["coh", "--model", "k3", "--sheaf", "line:1"], "unknown model"),
    (["check-ulrich", "--model", "surface", "--sheaf", "line:1", "--H", "1"], "classify"),
    (["check-ulrich", "--model", "curve", "--sheaf", "line:1", "--H", "1"], "classify"),
    (["check-ulrich", "--model", "p2", "--sheaf", "line:1", "--H", "0"], "not very ample"),
])
def test_usage_errors_exit_two(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert needle in err


def test_markdown_rendering(capsys):
    code, out, _ = run(capsys, "check-ulrich", "--model", "p2", "--sheaf", "dualsyz:1:1",
                       "--H", "2", "--format", "md")
    assert code == 0
    assert out.startswith("# check-ulrich")
    assert "| check | status |" in out
    assert "**overall: pass**" in out
    assert "| h | p |" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "coh", "--model", "p1", "--sheaf", "line:3", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["results"]["h"] == [4, 0]


# --------------------------------------------------------------------------
# classify


CLASSIFY = ["curves-dual", "curves-syz", "surfaces-dual", "p1xp1-example", "prop52-scan"]


@pytest.mark.parametrize("which", CLASSIFY)
def test_classify_matches_golden(capsys, which):
    code, out, _ = run(capsys, "classify", which)
    assert code == 0
    assert out == golden_path(f"classify-{which}").read_text()
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["results"]["unexpected"] == 0


def test_classify_curves_dual_families(capsys):
    _, doc = run_json(capsys, "classify", "curves-dual")
    assert doc["results"]["families"] == ["dual-conic", "dual-line"]


def test_classify_surfaces_single_tuple(capsys):
    _, doc = run_json(capsys, "classify", "surfaces-dual")
    assert [s["params"] for s in doc["results"]["solutions"]] == [[2, 1, 0, 2]]


def test_classify_p1xp1_empty(capsys):
    _, doc = run_json(capsys, "classify", "p1xp1-example")
    assert doc["results"]["solutions"] == []


def test_classify_surfaces_raw_diagnostic(capsys):
    code, doc = run_json(capsys, "classify", "surfaces-dual", "--raw")
    assert code == 0
    assert doc["manifest"]["config"]["raw"] is True
    assert [s["params"] for s in doc["results"]["solutions"]] == [[2, 1, 0, 2], [2, 2, -1, 1]]


@pytest.mark.parametrize("which", CLASSIFY)
def test_widened_ranges_still_have_no_unexpected_solutions(capsys, which):
    code, doc = run_json(capsys, "classify", which, "--widen", "2")
    assert code == 0
    assert doc["results"]["unexpected"] == 0


def test_config_file_and_overrides(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[curves]\nk = 0..2\nn = 1..3\n")
    code, doc = run_json(capsys, "classify", "curves-dual", "--config", str(cfg))
    assert code == 0
    assert doc["manifest"]["config"]["curves"]["k"] == [0, 2]
    assert sorted(s["params"][3] for s in doc["results"]["solutions"]) == [0, 0, 1, 1, 2, 2]
    code, doc = run_json(capsys, "classify", "curves-dual", "--config", str(cfg),
                         "--set", "curves.k=1..1")
    assert sorted(s["params"] for s in doc["results"]["solutions"]) == [[1, 1, 0, 1, 4], [2, 2, 0, 1, 3]]


@pytest.mark.parametrize("argv, needle", [
    (["classify", "curves-dual", "--set", "curves.k=-5.."], "finite"),
    (["classify", "curves-dual", "--set", "curves.k=-5..inf"], "finite"),
    (["classify", "curves-dual", "--set", "curves.zz=1..2"], "unknown key"),
    (["classify", "curves-dual", "--set", "nowhere.k=1..2"], "unknown config section"),
    (["classify", "curves-dual", "--set", "curves.k"], "bad override"),
    (["classify", "curves-dual", "--set", "curves.a=0..3"], "positive"),
    (["classify", "curves-dual", "--set", "curves.k=3..1"], "exceeds"),
    (["classify", "curves-dual", "--widen", "0"], "positive integer"),
    (["verify-theorem", "--set", "sweep.p1_m=0..2"], "positive"),
])
def test_bad_ranges_are_refused(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2 and needle in err


def test_missing_config_file(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "curves-dual", "--config", str(tmp_path / "nope.ini"))
    assert code == 2 and "cannot read config" in err


def test_parse_range():
    assert parse_range(" -3 .. 7 ") == (-3, 7)
    with pytest.raises(ConfigError):
        parse_range("3")


def test_defaults_cover_every_section():
    assert sorted(load_config()) == ["cor54", "curves", "p1xp1", "prop52", "surfaces", "sweep"]


def test_classify_is_deterministic(capsys):
    first = run(capsys, "classify", "curves-syz")[1]
    assert run(capsys, "classify", "curves-syz")[1] == first


# --------------------------------------------------------------------------
# verify-theorem and the golden harness


def test_verify_theorem_against_own_golden(tmp_path, capsys):
    golden = tmp_path / "golden.json"
    code, out, _ = run(capsys, "verify-theorem", "--no-golden", *NARROW, "--out", str(golden))
    doc = json.loads(golden.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert "golden" not in doc["summary"]["checks"]
    # the narrow sweep still contains the plane witness (p2, L=1, syz, k=3, a=2)
    assert code == 1
    failing = [k for k, v in doc["summary"]["checks"].items() if v == "fail"]
    assert failing == ["exclusivity"]

    code, doc = run_json(capsys, "verify-theorem", "--golden", str(golden), *NARROW)
    assert doc["summary"]["checks"]["golden"] == "pass"
    assert doc["results"]["golden"]["differing_sections"] == []


def test_tampered_golden_exits_nonzero(tmp_path, capsys):
    golden = tmp_path / "golden.json"
    narrow = NARROW + ["--set", "sweep.k=-2..1"]
    code, _, _ = run(capsys, "verify-theorem", "--no-golden", *narrow, "--out", str(golden))
    assert code == 0
    code, doc = run_json(capsys, "verify-theorem", "--golden", str(golden), *narrow)
    assert code == 0 and doc["summary"]["checks"]["golden"] == "pass"

    tampered = json.loads(golden.read_text())
    tampered["results"]["surfaces-dual"]["solutions"][0]["params"] = [2, 1, 0, 3]
    golden.write_text(json.dumps(tampered))
    code, doc = run_json(capsys, "verify-theorem", "--golden", str(golden), *narrow)
    assert code == 1
    assert doc["summary"]["checks"]["golden"] == "fail"
    assert doc["results"]["golden"]["differing_sections"] == ["surfaces-dual"]


def test_golden_skipped_when_config_differs(capsys):
    narrow = NARROW + ["--set", "sweep.k=-2..1"]
    code, doc = run_json(capsys, "verify-theorem", *narrow)
    assert "golden" not in doc["summary"]["checks"]
    assert doc["results"]["golden"]["skipped"]


def test_unreadable_golden(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "verify-theorem", "--golden", str(bad), *NARROW)
    assert code == 2 and "golden" in err


def test_shipped_goldens_validate():
    for name in ["verify-theorem"] + [f"classify-{w}" for w in CLASSIFY]:
        jsonschema.validate(json.loads(golden_path(name).read_text()), SCHEMA)


def test_help_lists_grammar_and_serial_switch(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    out = capsys.readouterr().out
    assert "dualsyz:<L>:<t>" in out
    assert "ULRICHSYZ_SERIAL" in out
