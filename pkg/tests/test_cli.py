import json
import os

import pytest

from planarflows import INTEGERS
from planarflows.cli import main
from planarflows.network import build_half_grid, network_to_json

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture(name):
    return os.path.join(FIXTURES, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


@pytest.mark.parametrize(
    "name",
    [
        "p3_flag.json",
        "p4_flag.json",
        "quintuple_flag.json",
        "homogeneous3.json",
        "dodgson.json",
        "rowdecomposition3.json",
    ],
)
def test_check_balance_on_stock_fixtures(capsys, name):
    code, out = run(capsys, "check-balance", "--patterns", fixture(name))
    assert code == 0
    assert out == {"balanced": True}


def test_check_balance_unbalanced(capsys):
    code, out = run(capsys, "check-balance", "--patterns", fixture("unbalanced_p3.json"))
    assert code == 1
    assert not out["balanced"]
    assert out["witness"]["lower"] == [[1, 2]]
    assert out["counts"] == [1, 0]


def test_witness_command(capsys, tmp_path):
    code, out = run(
        capsys, "witness", "--patterns", fixture("unbalanced_p3.json"), "--audit"
    )
    assert code == 1
    assert out["lhs"] == 1 and out["rhs"] == 0
    assert out["audit_ok"]
    net_file = tmp_path / "witness_net.json"
    net_file.write_text(json.dumps(out["network"]))
    code2, report = run(capsys, "validate-network", "--network", str(net_file))
    assert code2 == 0 and report["ok"]


def test_verify_relation_command(capsys, tmp_path):
    net = build_half_grid(3).unit_weights(INTEGERS)
    net_file = tmp_path / "net.json"
    net_file.write_text(json.dumps(network_to_json(net, INTEGERS)))
    code, out = run(
        capsys,
        "verify-relation",
        "--patterns",
        fixture("p3_flag.json"),
        "--semiring",
        "integers",
        "--network",
        str(net_file),
    )
    assert code == 0
    assert out["equal"]


def test_eval_fg_command(capsys, tmp_path):
    net = build_half_grid(3).unit_weights(INTEGERS)
    net_file = tmp_path / "net.json"
    net_file.write_text(json.dumps(network_to_json(net, INTEGERS)))
    args_file = tmp_path / "args.json"
    args_file.write_text(json.dumps({"I": [1, 2], "Iprime": [1, 2]}))
    code, out = run(
        capsys,
        "eval-fg",
        "--network",
        str(net_file),
        "--semiring",
        "integers",
        "--args",
        str(args_file),
    )
    assert code == 0
    assert out == {"value": 1}


def test_compile_matrix_command(capsys, tmp_path):
    mat_file = tmp_path / "m.json"
    mat_file.write_text(
        json.dumps({"rows": 2, "cols": 2, "entries": [["1/2", 3], [0, "5"]]})
    )
    code, out = run(capsys, "compile-matrix", "--matrix", str(mat_file))
    assert code == 0
    assert out["exact"]
    assert out["flow_matrix"]["entries"] == [["1/2", 3], [0, 5]]


def test_schur_command(capsys):
    code, out = run(
        capsys, "schur", "--identity", "tworow", "--params", "1,2,2,3", "--nvars", "3"
    )
    assert code == 0 and out["equal"]
    code, out = run(
        capsys, "schur", "--identity", "condensation", "--params", "3,1", "--nvars", "3"
    )
    assert code == 0 and out["equal"]


def test_reconstruct_command(capsys, tmp_path):
    basis_file = tmp_path / "basis.json"
    basis_file.write_text(
        json.dumps(
            {
                "case": "flag-intervals",
                "n": 3,
                "values": {
                    "1..1": 2, "2..2": 3, "3..3": 5,
                    "1..2": 7, "2..3": 11, "1..3": 13,
                },
            }
        )
    )
    code, out = run(
        capsys,
        "reconstruct",
        "--basis",
        str(basis_file),
        "--semiring",
        "tropical-int",
        "--target",
        "1,3",
    )
    assert code == 0
    assert out == {"value": max(7 + 5, 2 + 11) - 3}


def test_validate_network_failure(capsys, tmp_path):
    data = {
        "vertices": [
            {"id": "s1", "x": "0", "y": "0"},
            {"id": "t1", "x": "0", "y": "1"},
        ],
        "edges": [["s1", "t1"], ["t1", "s1"]],
        "sources": ["s1"],
        "sinks": ["t1"],
        "weight_mode": "vertex",
        "weights": {},
    }
    net_file = tmp_path / "bad.json"
    net_file.write_text(json.dumps(data))
    code, report = run(capsys, "validate-network", "--network", str(net_file))
    assert code == 1
    assert not report["acyclic"]


def test_usage_errors(capsys):
    assert main(["check-balance", "--patterns", "/nonexistent.json"]) == 2
    capsys.readouterr()
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_output_is_byte_stable(capsys, tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    for target in (first, second):
        code = main(
            [
                "witness",
                "--patterns",
                fixture("unbalanced_p3.json"),
                "--output",
                str(target),
            ]
        )
        assert code == 1
    assert first.read_bytes() == second.read_bytes()
