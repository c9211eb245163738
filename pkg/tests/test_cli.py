import io
import json
import subprocess
import sys

import pytest

from atomspec.cli import RunConfig, main
from atomspec.errors import ParseError

from conftest import DATA


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--format", "json")
    return code, json.loads(out) if out.strip() else None, err


def leaves(d):
    if isinstance(d, dict):
        for k, v in d.items():
            yield str(k)
            yield from leaves(v)
    elif isinstance(d, list):
        for v in d:
            yield from leaves(v)
    else:
        yield d


def test_config_requires_exactly_one_source():
    with pytest.raises(ParseError):
        RunConfig(("space", "check"), None, None)
    with pytest.raises(ParseError):
        RunConfig(("space", "check"), "x.json", "chain2")


# -- space check ------------------------------------------------------------------


def test_space_check_omega():
    code, rep, _ = run_json("space", "check", "--builtin", "omega-plus-one", "--assert")
    assert code == 0
    assert rep["summary"]["spectral"] == "pass"
    assert rep["summary"]["obstruction"] == "{x_inf}"
    assert all(a["passed"] for a in rep["assertions"])


def test_space_check_omega_truncated():
    code, rep, _ = run_json("space", "check", "--builtin", "omega-plus-one", "--truncate", "3")
    assert code == 0 and rep["truncation"]["obstruction_points"] == []


def test_space_check_graded():
    code, rep, _ = run_json("space", "check", "--builtin", "graded-kx", "--assert")
    assert code == 0
    assert rep["summary"]["kgdim"] == 1 and rep["summary"]["chain_dimension"] == 0


def test_space_check_chain_file():
    code, rep, _ = run_json("space", "check", str(DATA / "chain2.json"), "--assert")
    assert code == 0
    assert rep["summary"]["kgdim"] == 1 and rep["obstruction_points"] == []
    assert rep["summary"]["spectral"] == "pass"


def test_table_mode():
    code, out, _ = run("space", "check", "--builtin", "omega-plus-one")
    assert code == 0
    assert "spectral: pass" in out and "obstruction: {x_inf}" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("space", "check", "--builtin", "diamond"),
        ("space", "check", "--builtin", "graded-kx"),
        ("space", "stratify", "--builtin", "chain3"),
        ("model", "classify", "--builtin", "kronecker"),
        ("model", "classify", "--builtin", "graded-kx", "--window", "-1", "1"),
        ("model", "dims", "--builtin", "kronecker"),
    ],
)
def test_table_and_json_carry_the_same_data(argv):
    _, table, _ = run(*argv)
    _, data, _ = run_json(*argv)
    for leaf in leaves(data):
        if leaf is None:
            continue
        text = ("true" if leaf else "false") if isinstance(leaf, bool) else str(leaf)
        assert text in table, text


def test_deterministic_output():
    argv = ("model", "classify", "--family", "triangular", str(DATA / "chain2.json"), "--format", "json")
    assert run(*argv) == run(*argv)


# -- dual and stratify ----------------------------------------------------------------


def test_dual_chain():
    code, rep, _ = run_json("space", "dual", str(DATA / "chain2.json"))
    assert code == 0 and rep == {"elements": ["a", "b"], "le": [["b", "a"]]}


def test_dual_twice_is_identity():
    code, rep, _ = run_json("space", "dual", str(DATA / "diamond.json"), "--twice")
    original = json.loads((DATA / "diamond.json").read_text())
    assert code == 0
    assert sorted(map(tuple, rep["le"])) == sorted(map(tuple, original["le"]))


def test_dual_diamond_reversed():
    code, rep, _ = run_json("space", "dual", "--builtin", "diamond")
    assert code == 0 and ["top", "l"] in rep["le"] and ["l", "bot"] in rep["le"]


def test_dual_symbolic_rejected():
    code, _, err = run("space", "dual", "--builtin", "omega-plus-one")
    assert code == 2 and "finite" in err


def test_stratify_commands():
    code, rep, _ = run_json("space", "stratify", "--builtin", "chain3", "--assert")
    assert code == 0 and rep["space_dim"] == 2
    code, rep, _ = run_json("space", "stratify", "--builtin", "omega-plus-one")
    assert code == 0 and rep["stalled"] is True
    code, rep, _ = run_json("space", "stratify", "--builtin", "graded-kx", "--window", "-2", "2")
    assert code == 0 and rep["level"]["g"] == 1 and rep["level"]["-2"] == 0


# -- model commands ----------------------------------------------------------------------


def test_classify_triangular_chain2():
    code, rep, _ = run_json("model", "classify", "--family", "triangular", str(DATA / "chain2.json"),
                            "--brute-force", "--assert")
    assert code == 0 and len(rep["qualifying"]) == 6 and rep["brute_force"]["agrees"]


def test_classify_commutative_chain2():
    code, rep, _ = run_json("model", "classify", "--family", "commutative", str(DATA / "chain2.json"))
    assert code == 0 and len(rep["qualifying"]) == 3


def test_classify_kronecker_file():
    code, rep, _ = run_json("model", "classify", "--family", "quiver", str(DATA / "kronecker.quiver"),
                            "--brute-force")
    assert code == 0
    assert rep["qualifying"] == [[], ["1"], ["1", "2"]] and rep["brute_force"]["agrees"]


def test_classify_graded():
    code, rep, _ = run_json("model", "classify", "--family", "graded-kx", "--brute-force")
    assert code == 0 and rep["mode"] == "rule-described" and rep["brute_force"]["agrees"]
    assert any("not listed" in f for f in rep["flags"])


def test_dims_commands():
    code, rep, _ = run_json("model", "dims", "--builtin", "kronecker", "--assert")
    assert code == 0 and rep["gldim"] == 1 and rep["bound_holds"]
    code, rep, _ = run_json("model", "dims", "--builtin", "semisimple")
    assert code == 0 and rep["gldim"] == 0
    code, rep, _ = run_json("model", "dims", "--builtin", "graded-kx", "--assert")
    assert code == 0 and rep["kgdim"] == 1 and rep["bound_holds"]


def test_dims_undetermined_commutative():
    code, rep, _ = run_json("model", "dims", "--family", "commutative", "--builtin", "chain2")
    assert code == 0 and rep["gldim"] == "undetermined"


# -- errors and exit codes ------------------------------------------------------------------


def test_bad_json_has_position(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements": ["a",\n ]}')
    code, _, err = run("space", "check", str(bad))
    assert code == 2 and f"{bad}:2:" in err


def test_cycle_in_file(tmp_path):
    f = tmp_path / "cyc.json"
    f.write_text(json.dumps({"elements": ["a", "b"], "le": [["a", "b"], ["b", "a"]]}))
    code, _, err = run("space", "check", str(f))
    assert code == 2 and "cycle" in err.lower()


def test_bad_quiver_has_position(tmp_path):
    f = tmp_path / "q.quiver"
    f.write_text("vertex 1\narrow 1 2\n")
    code, _, err = run("model", "classify", "--family", "quiver", str(f))
    assert code == 2 and ":2:" in err


def test_missing_file_and_unknown_builtin():
    assert run("space", "check", "/nonexistent/x.json")[0] == 2
    assert run("space", "check", "--builtin", "nope")[0] == 2
    assert run("space", "check")[0] == 2
    assert run("model", "classify", str(DATA / "chain2.json"))[0] == 2


def test_unknown_ext_read_is_input_error(tmp_path, monkeypatch):
    import atomspec.cli as cli
    from atomspec.models import FiniteAtomicModel
    from atomspec.poset import antichain

    monkeypatch.setattr(cli, "_load_model",
                        lambda cfg: FiniteAtomicModel("custom", antichain("a", "b"), fallback="unknown"))
    code, _, err = run("model", "classify", "--builtin", "kronecker")
    assert code == 2 and "Ext^1" in err


def test_assert_failure_exit_code(monkeypatch):
    import atomspec.cli as cli

    monkeypatch.setattr(cli.checks, "dual_check", lambda space: False)
    code, out, _ = run("space", "check", "--builtin", "chain2", "--assert")
    assert code == 1


def test_argparse_error_exit_code():
    assert run("space", "check", "--format", "xml")[0] == 2
    assert run("space", "explode")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "atomspec", "space", "check", "--builtin", "chain2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "spectral: pass" in proc.stdout
