import json

from nildist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_nf(capsys):
    code, out, err = run(capsys, "nf", "-m", "2", "-c", "2", "[a,b]^2 [b,a]")
    assert code == 0
    assert out == "normal form: [a,b]\ncoordinates: (0, 0, -1)\n"
    assert err == ""


def test_nf_identity(capsys):
    code, out, _ = run(capsys, "nf", "-m", "2", "-c", "2", "a a^-1")
    assert code == 0
    assert out == "normal form: 1\ncoordinates: (0, 0, 0)\n"


def test_nf_json(capsys):
    code, out, _ = run(
        capsys, "nf", "-m", "2", "-c", "2", "--format", "json", "a b a^-1"
    )
    assert code == 0
    assert json.loads(out) == {
        "normal_form": "b [a,b]",
        "coordinates": [0, 1, -1],
    }


def test_mul_and_comm(capsys):
    code, out, _ = run(capsys, "mul", "-m", "2", "-c", "2", "a", "a^-1")
    assert code == 0
    assert "normal form: 1" in out

    code, out, _ = run(capsys, "comm", "-m", "2", "-c", "2", "a^3", "b^3")
    assert code == 0
    assert "coordinates: (0, 0, -9)" in out


def test_weight(capsys):
    code, out, _ = run(capsys, "weight", "-m", "2", "-c", "3", "[a,[a,b]]")
    assert code == 0
    assert out == "3\n"

    code, out, _ = run(capsys, "weight", "-m", "2", "-c", "3", "a a^-1")
    assert code == 0
    assert out == "infinity\n"

    code, out, _ = run(
        capsys, "weight", "-m", "2", "-c", "3", "--format", "json", "a a^-1"
    )
    assert code == 0
    assert json.loads(out) == {"weight": None}


def test_coords(capsys):
    code, out, _ = run(capsys, "coords", "-m", "2", "-c", "2", "a^2 b^-1")
    assert code == 0
    assert out == "(2, -1, 0)\n"


def test_hall(capsys):
    code, out, _ = run(capsys, "hall", "-m", "2", "-c", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines == [
        "0\t1\ta",
        "1\t1\tb",
        "2\t2\t[b,a]",
        "3\t3\t[[b,a],a]",
        "4\t3\t[[b,a],b]",
    ]

    code, out, _ = run(capsys, "hall", "-m", "2", "-c", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [row["commutator"] for row in data] == ["a", "b", "[b,a]"]


def test_analyze_json_default(capsys):
    code, out, _ = run(capsys, "analyze", "-m", "2", "-c", "2", "a^2[a,b]^3")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "undistorted"
    assert data["k"] == 1
    assert data["hirsch"] == {"H": 1, "rH": 1, "F": 3}
    assert data["finite_index"] is False
    assert data["cyclic_exponent"] == 1
    assert data["retract"] == {"kept": ["a"], "killed": ["b"]}
    assert data["kernel_witness"] is None


def test_analyze_distorted(capsys):
    code, out, _ = run(capsys, "analyze", "-m", "2", "-c", "2", "[a,b]")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "distorted"
    assert data["cyclic_exponent"] == 2
    assert data["kernel_witness"]["weight"] == 2

    code, out, _ = run(
        capsys, "analyze", "-m", "2", "-c", "2", "--format", "text", "[a,b]"
    )
    assert code == 0
    assert "verdict: distorted" in out
    assert "cyclic exponent: 2" in out


def test_analyze_multiple_generators(capsys):
    code, out, _ = run(capsys, "analyze", "-m", "2", "-c", "2", "a^2", "b", "[a,b]")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "undistorted"
    assert data["finite_index"] is True


def test_exponent(capsys):
    code, out, _ = run(capsys, "exponent", "-m", "2", "-c", "2", "[a,b]")
    assert code == 0
    assert out == "2\n"


def test_measure_csv_default(capsys):
    code, out, _ = run(
        capsys, "measure", "-m", "2", "-c", "2", "--radius", "5", "[a,b]"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,delta,exact"
    assert lines[1:] == [
        "1,0,true",
        "2,0,true",
        "3,0,true",
        "4,1,true",
        "5,1,true",
    ]


def test_measure_json(capsys):
    code, out, _ = run(
        capsys,
        "measure", "-m", "2", "-c", "2", "--radius", "3", "--format", "json", "a", "b",
    )
    assert code == 0
    data = json.loads(out)
    assert data["rows"] == [
        {"n": 1, "delta": 1, "exact": True},
        {"n": 2, "delta": 2, "exact": True},
        {"n": 3, "delta": 3, "exact": True},
    ]


def test_seed_flag_is_accepted(capsys):
    code, _, _ = run(capsys, "nf", "-m", "2", "-c", "2", "--seed", "7", "a")
    assert code == 0


def test_output_is_deterministic(capsys):
    first = run(capsys, "analyze", "-m", "2", "-c", "3", "a", "[a,b]")
    second = run(capsys, "analyze", "-m", "2", "-c", "3", "a", "[a,b]")
    assert first == second


def test_usage_errors_exit_1(capsys):
    code, _, err = run(capsys, "nf", "-m", "2", "-c", "2", "[a")
    assert code == 1
    assert "error" in err

    code, _, err = run(capsys, "nf", "-m", "2", "-c", "2", "z")
    assert code == 1
    assert "unknown generator" in err

    code, _, err = run(capsys, "nf", "-m", "2", "-c", "2", "a^")
    assert code == 1
    assert "position" in err

    code, _, err = run(capsys)
    assert code == 1

    code, _, err = run(capsys, "nf", "-m", "2", "-c", "2", "--format", "csv", "a")
    assert code == 1
    assert "not supported" in err

    code, _, err = run(capsys, "analyze", "-m", "2", "-c", "2")
    assert code == 1

    code, _, err = run(capsys, "exponent", "-m", "2", "-c", "2", "a a^-1")
    assert code == 1


def test_cap_exceeded_exits_2(capsys):
    code, _, err = run(capsys, "hall", "-m", "3", "-c", "9")
    assert code == 2
    assert "cap exceeded" in err

    code, _, err = run(capsys, "nf", "-m", "2", "-c", "2", "--max-hirsch", "2", "a")
    assert code == 2


def test_bad_presentation_exits_1(capsys):
    code, _, err = run(capsys, "nf", "-m", "0", "-c", "2", "a")
    assert code == 1
