import json

import pytest

from fatpoints.cli import main

F = '{"1,1,0":"1","0,0,2":"-1"}'
G = '{"2,1,0":"1","0,0,3":"-1"}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def scheme21(tmp_path, capsys):
    code, out, _ = run(capsys, "realize", "--dvector", "8,6,5,2", "--json")
    assert code == 0
    path = tmp_path / "z21.json"
    path.write_text(out)
    return str(path)


def test_hilbert_table(capsys, scheme21):
    code, out, _ = run(capsys, "hilbert", scheme21)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t\tH_I\tH_R/I\tdelta"
    assert lines[-1] == "H_R/I: 1,3,6,10,14,17,20,21,21 (stable)"


def test_output_is_reproducible(capsys, scheme21):
    a = run(capsys, "generators", scheme21)[1]
    b = run(capsys, "generators", scheme21)[1]
    assert a == b and a.count("\n") > 1


def test_reduce_golden(capsys):
    code, out, _ = run(capsys, "reduce", "17;6,6,6,6,6,6,6,6", "--steps")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "e0"
    assert lines[1].startswith("word\ts0 ")
    assert lines[2] == "step\tgenerator\tclass"
    assert lines[-1].endswith("1;0,0,0,0,0,0,0,0")


def test_macaulay_golden(capsys):
    assert run(capsys, "macaulay", "--h", "15", "--d", "3")[1] == "22\n"


def test_curve_commands(capsys):
    assert run(capsys, "intmult", "--f", F, "--g", G, "--point", "0,1,0")[1] == "3\n"
    out = run(capsys, "intmult", "--f", F, "--g", G, "--point", "1,0,0",
              "--method", "graded", "--trace")[1]
    assert out.splitlines()[0] == "2"
    assert run(capsys, "mult", "--curve", G, "--point", "1,1,1")[1] == "1\n"
    out = run(capsys, "tangent", "--curve", F, "--point", "1,0,0", "--other", G)[1]
    assert "cone\tX1" in out and "common tangent\tyes" in out
    out = run(capsys, "bezout", "--f", F, "--g", G, "--points", "1,0,0;0,1,0;1,1,1")[1]
    assert out.splitlines()[-1] == "total\t6 / 6 (equal)"
    out = run(capsys, "bezout", "--f", F, "--g", G, "--field", "prime:31")[1]
    assert out.splitlines()[-1] == "total\t6 / 6 (equal)"


def test_curve_envelope(capsys, tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"field": {"kind": "prime", "p": 31}, "form": json.loads(F)}))
    assert run(capsys, "mult", "--curve", str(path), "--point", "1,0,0")[1] == "1\n"


def test_lattice_commands(capsys):
    assert run(capsys, "pair", "4;3,3,1,1", "1;1,1,0,0")[1] == "-2\n"
    assert run(capsys, "weyl", "0;-1,0,0", "0")[1] == "e0-e2-e3\n"
    assert run(capsys, "expdim", "4;3,3,1,1")[1] == "1\n"
    assert run(capsys, "shgh", "--mults", "13,13,10^5", "--t", "30")[1] == "39\n"
    assert run(capsys, "shgh-alpha", "--mults", "6^8")[1] == "17\n"
    assert run(capsys, "exceptional", "--r", "6")[1].splitlines()[-1] == "count\t27"
    assert run(capsys, "shgh", "--mults", "1^10", "--t", "4", "--conjectural")[1] == "5 (conjectural)\n"


def test_sequence_commands(capsys):
    assert run(capsys, "diag", "8,6,5,2")[1] == "1,2,3,4,4,3,3,1\n"
    out = run(capsys, "cht-bounds", "8,5,5,2", "--t", "6")[1]
    assert "upper\t19" in out and "terms\t28 - 6 - 3" in out
    assert "kind\tdifferentiable-O" in run(capsys, "osequence", "1,3,6,9,10,11")[1]
    out = run(capsys, "gmr", "--sequence", "1,3,6,9,10,11", "--check")[1]
    assert "check\tok" in out and "x1^6" in out


def test_scheme_commands(capsys):
    assert run(capsys, "alpha", "--star", "4", "--mult", "3")[1] == "7\n"
    out = run(capsys, "waldschmidt", "--generic", "3", "--mmax", "2")[1]
    assert "upper\t3/2" in out and "lower\t1" in out
    out = run(capsys, "containment", "--generic", "3", "--m", "3", "--r", "2")[1]
    assert out.startswith("I^2 in I^(3)\tno")
    code, out, _ = run(capsys, "reduction", "--generic", "3", "--lines", "1,0,0")
    assert code == 2


def test_exit_codes(capsys):
    code, _, err = run(capsys, "pair", "4;3", "1;1,1")
    assert code == 2 and "pair" in err
    code, _, err = run(capsys, "shgh", "--mults", "1,x", "--t", "3")
    assert code == 2 and "--mults" in err
    assert run(capsys, "shgh", "--mults", "1^10", "--t", "3")[0] == 2
    assert run(capsys, "alpha", "--generic", "5", "--mult", "9", "--cap", "3")[0] == 3
    assert run(capsys, "intmult", "--f", "{bad", "--g", G, "--point", "1,0,0")[0] == 2
    assert run(capsys, "hilbert")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_invariant_exit_code(capsys, monkeypatch):
    from fatpoints import picard
    monkeypatch.setattr(picard, "apply_word", lambda word, x: x)
    assert run(capsys, "reduce", "17;6^8")[0] == 4
