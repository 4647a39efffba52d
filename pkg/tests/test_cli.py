import json
from fractions import Fraction

import pytest

from cyclic_quiver.cli import main
from cyclic_quiver.config import ConfigError, Geometry, RunConfig, params_from_mapping


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(n=1)
    with pytest.raises(ConfigError):
        RunConfig(n=2, max_degree=-1)
    with pytest.raises(ConfigError):
        RunConfig(n=2, suites=())
    with pytest.raises(ConfigError):
        RunConfig(n=2, c=(1, 2), geometry=Geometry(0, 1))
    with pytest.raises(ConfigError):
        RunConfig(n=2, suites=("nope",))


def test_params_mapping():
    assert params_from_mapping({"c": ["5/2", "−1", "0"]}) == {"c": (Fraction(5, 2), -1, 0), "n": 3}
    assert params_from_mapping({"genus": 1, "d": 2, "degL": [0, 1]})["n"] == 2
    with pytest.raises(ConfigError):
        params_from_mapping({"c": [1], "genus": 0, "d": 1})
    with pytest.raises(ConfigError):
        params_from_mapping({"genus": 0})


def test_verify_json_is_byte_identical(capsys):
    argv = ("verify", "--n", "2", "--max-degree", "3", "--suites", "serre,pn,dims,reps", "--seed", "3")
    code, first, _ = run(capsys, *argv)
    assert code == 0 and json.loads(first)["status"] == "pass"
    _, second, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--workers", "2")
    assert first == second == parallel


def test_verify_params_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"c": ["5/2", "−1", "0"]}))
    code, out, _ = run(capsys, "verify", "--params", str(path), "--max-degree", "3", "--suites", "serre")
    assert code == 0
    assert json.loads(out)["config"]["params"]["c"] == ["5/2", "-1", "0"]


def test_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--max-degree", "2", "--suites", "commlemmas", "--literal")
    assert code == 1
    report = json.loads(out)
    assert report["suites"][0]["witness"]["relation"].startswith("comm")


@pytest.mark.parametrize("argv", [
    ("verify", "--n", "1"),
    ("verify",),
    ("verify", "--n", "2", "--suites", "bogus"),
    ("matrix", "--n", "2", "--op", "e", "--alpha", "1,0,0"),
    ("frobnicate",),
    ("dims", "--n", "2", "--params", "/nonexistent.json"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "usage" in err


def test_matrix_subcommand(capsys):
    code, out, _ = run(capsys, "matrix", "--n", "2", "--op", "h", "--i", "0", "--alpha", "1,1")
    m = json.loads(out)
    assert code == 0 and set(m) >= {"source_basis", "target_basis", "entries"}
    assert m["entries"] == [["2", "0", "0"], ["0", "2", "0"], ["0", "0", "2"]]
    code, out, _ = run(capsys, "matrix", "--n", "2", "--op", "a", "--p", "1", "--alpha", "1,1")
    assert json.loads(out)["target_alpha"] == [0, 0]


def test_tables(capsys):
    code, out, _ = run(capsys, "dims", "--n", "2", "--max-degree", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("alpha,FK,FM")
    code, out, _ = run(capsys, "strata", "--n", "2", "--alpha", "1,1")
    assert len(json.loads(out)) == 4
    code, out, _ = run(capsys, "components", "--n", "2", "--alpha", "0,0", "--i", "1")
    rows = json.loads(out)
    assert [r["kind"] for r in rows if r["side"] == "source"] == ["horizontal-C-fibration"]


def test_heis_subcommand(capsys):
    code, out, _ = run(capsys, "heis", "--n", "2", "--max-degree", "4", "--pmax", "2", "--format", "text")
    assert code == 0 and "overall: pass" in out
