import io
import json
from importlib import resources

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from maxlex.cli import run


def _registry():
    pairs = []
    for entry in resources.files("maxlex").joinpath("schemas").iterdir():
        if entry.name.endswith(".json"):
            pairs.append((entry.name, Resource.from_contents(json.loads(entry.read_text()))))
    return Registry().with_resources(pairs)


REGISTRY = _registry()


def validate(name, instance):
    schema = REGISTRY.contents(f"{name}.json")
    Draft202012Validator(schema, registry=REGISTRY).validate(instance)


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv, **kw):
    code, out, err = call(*argv, "--format", "json", **kw)
    return code, json.loads(out), err


def test_schemas_are_valid():
    for name in REGISTRY:
        Draft202012Validator.check_schema(REGISTRY.contents(name))


def test_maxlex_example():
    code, data, _ = call_json("maxlex", "2", "3")
    assert code == 0
    assert data == {"spectrum": ["2/3", "1/6", "1/6"], "nu": [4, 1, 1], "k": 6, "rank": 3}
    validate("maxlex", data)


def test_kron_example():
    code, out, _ = call("kron", "[1,1]", "[1,1]", "[2]")
    assert code == 0 and out.strip() == "1"
    code, data, _ = call_json("kron", "[1,1]", "[1,1]", "[2]")
    assert data["g"] == 1
    validate("kron", data)


def test_counterexample_adjacent_example():
    code, data, _ = call_json("counterexample", "--family", "adjacent", "--param", "2")
    assert code == 0
    assert data["maxlex_rank"] == 3 and data["witness_rank"] == 2 and data["refutes_conjecture"] is True
    validate("counterexample", data)


def test_counterexample_two_by_m():
    code, data, _ = call_json("counterexample", "--family", "2xm", "--param", "5")
    assert code == 0 and data["maxlex_nu"] == [4, 4, 1, 1]
    validate("counterexample", data)


def test_phi_lr_slice_striptype_schemas():
    code, data, _ = call_json("phi", "[2,1]", "[2,1]")
    assert code == 0 and [m["nu"] for m in data["members"]] == [[3], [2, 1], [1, 1, 1]]
    validate("phi", data)

    code, data, _ = call_json("lr", "[3,2,1]", "[2,1]", "[2,1]")
    assert code == 0 and data["c"] == 2
    validate("lr", data)

    code, data, _ = call_json("slice", "2", "3", "1")
    assert code == 0 and ["2/3", "1/6", "1/6"] in data["spectra"]
    validate("slice", data)

    code, data, _ = call_json("striptype", "[2^5]", "[5,5]")
    assert code == 0 and data["nu"] == [4, 4, 1, 1]
    validate("striptype", data)


def test_striptype_text():
    code, out, _ = call("striptype", "[2^5]", "[5^2]")
    assert code == 0
    assert "[2,2,2,2,2] ⊃ [2,2,2] ⊃ [2] ⊃ [1] ⊃ ∅" in out
    assert out.strip().endswith("[4,4,1,1]")


def test_format_flag_position():
    code, out, _ = call("--format", "json", "maxlex", "2", "4")
    assert code == 0 and json.loads(out)["spectrum"] == ["1/2", "1/2"]


@pytest.mark.parametrize("n, m, k, mode", [(2, 3, 4, "full"), (2, 2, 1, "divisible"), (2, 4, 2, "divisible"), (3, 4, 12, "full")])
def test_construct_verify_roundtrip(n, m, k, mode, tmp_path, monkeypatch):
    code, data, _ = call_json("construct", str(n), str(m), str(k), "--mode", mode)
    assert code == 0
    validate("construct", data)
    assert data["verification"]["rank"] == k and data["verification"]["passed"]

    path = tmp_path / "state.json"
    path.write_text(json.dumps(data["state"]))
    code, report, _ = call_json("verify", str(path))
    assert code == 0 and report["passed"] and report["rank"] == k
    validate("verify", report)

    # the whole construct document is accepted on stdin as well
    code, report, _ = call_json("verify", "-", stdin=json.dumps(data), monkeypatch=monkeypatch)
    assert code == 0 and report["passed"]


def test_verify_reports_failed_margins(tmp_path):
    path = tmp_path / "state.json"
    # |00><00| is a valid state, but its margins are pure rather than uniform
    entries = [[1.0, 0.0]] + [[0.0, 0.0]] * 15
    path.write_text(json.dumps({"dim_a": 2, "dim_b": 2, "entries": entries}))
    code, report, _ = call_json("verify", str(path))
    assert code == 3 and not report["passed"] and not report["margins_ok"]
    assert report["margin_error_a"] == pytest.approx(0.5) and report["is_extreme"]


def test_usage_errors():
    code, out, err = call("frobnicate")
    assert code == 2 and err
    code, data, _ = call_json("kron", "[1,1]", "[1,1]")
    assert code == 2 and data["code"] == 2
    validate("error", data)
    code, _, _ = call("maxlex", "2", "3", "--tolerance", "-1")
    assert code == 2
    code, _, _ = call("kron", "[1,2]", "[2,1]", "[3]")
    assert code == 2


def test_domain_errors():
    code, data, err = call_json("maxlex", "3", "2")
    assert code == 3 and data["code"] == 3 and "DomainError" in err
    validate("error", data)
    code, data, _ = call_json("kron", "[2]", "[2]", "[1]")
    assert code == 3 and data["error"] == "SizeMismatch"
    code, data, _ = call_json("construct", "2", "3", "2")
    assert code == 3 and data["error"] == "RankOutOfRange"
    code, _, _ = call("striptype", "[2,1]", "[3]")
    assert code == 3
    code, _, _ = call("verify", "/nonexistent/state.json")
    assert code == 3


def test_budget_errors():
    code, data, _ = call_json("phi", "[15]", "[15]")
    assert code == 4 and data["error"] == "BudgetExceeded"
    code, _, _ = call("kron", "[3]", "[3]", "[3]", "--budget", "2")
    assert code == 4
    code, _, _ = call("counterexample", "--family", "2xm", "--param", "11")
    assert code == 4


def test_convergence_failure(monkeypatch, tmp_path):
    from maxlex import eigen
    from maxlex.errors import ConvergenceFailure

    def fail(*args, **kwargs):
        raise ConvergenceFailure("forced")

    monkeypatch.setattr(eigen, "jacobi_eigh", fail)
    monkeypatch.setattr("maxlex.states.jacobi_eigh", fail, raising=False)
    path = tmp_path / "state.json"
    entries = [[0.25, 0.0] if i % 5 == 0 else [0.0, 0.0] for i in range(16)]
    path.write_text(json.dumps({"dim_a": 2, "dim_b": 2, "entries": entries}))
    code, data, _ = call_json("verify", str(path))
    assert code == 5 and data["code"] == 5
