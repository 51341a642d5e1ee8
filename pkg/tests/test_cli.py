import pytest

from ribbonknots import cli
from ribbonknots.presentations import parse_presentation


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_realize_cyclic_wirtinger(capsys):
    code, out, _ = run(capsys, "realize", "cyclic", "--coeffs", "1,-1,1", "--emit", "wirtinger")
    assert code == 0
    assert "rel u^-1 t u t u^-1 t^-1" in out
    p = parse_presentation(out)
    assert p.generators == ("t", "u")


def test_realize_both_and_dot(capsys, tmp_path):
    dot = tmp_path / "lot.dot"
    code, out, _ = run(
        capsys, "realize", "cyclic", "--coeffs", "1,-1,1", "--emit", "both", "--dot", str(dot)
    )
    assert code == 0
    assert out.count("gens") == 2
    assert dot.read_text().startswith("digraph {")


def test_realize_bad_matrix(capsys, tmp_path):
    bad = tmp_path / "bad.mat"
    bad.write_text("1 1\n1\n")
    code, _, err = run(capsys, "realize", "trotter", "-m", str(bad))
    assert code == 3
    assert "det(M - I)" in err


def test_realize_lemma3_refuses_wirtinger(capsys, corpus):
    code, _, err = run(
        capsys, "realize", "lemma3", "-m", str(corpus / "lemma3_companion.mat"),
        "--emit", "wirtinger",
    )
    assert code == 3
    code, out, _ = run(
        capsys, "realize", "lemma3", "-m", str(corpus / "lemma3_companion.mat"),
        "--emit", "hnn",
    )
    assert code == 0 and "gens t x1 x2" in out


def test_alex(capsys, corpus):
    code, out, _ = run(capsys, "alex", str(corpus / "spun_trefoil.pres"))
    assert code == 0
    assert out.strip() == "poly 0 1 -1 1"


def test_covers_with_module(capsys, corpus):
    code, out, _ = run(
        capsys, "covers", str(corpus / "spun_trefoil.pres"), "-N", "2,3,6",
        "--module", str(corpus / "spun_trefoil.module"),
    )
    assert code == 0
    assert "N=2: group Z + Z/3 | module Z + Z/3 [ok]" in out


def test_covers_without_module(capsys, corpus):
    code, out, _ = run(capsys, "covers", str(corpus / "trotter_2.pres"), "-N", "3")
    assert code == 0
    assert out.strip() == "N=3: Z + Z/7"


def test_tc(capsys, corpus, tmp_path):
    pres = tmp_path / "z5.pres"
    pres.write_text("gens x\nrel x^5\n")
    code, out, _ = run(capsys, "tc", str(pres), "--max-cosets", "50")
    assert code == 0 and out.strip() == "closed index=5"
    free = tmp_path / "free.pres"
    free.write_text("gens x y\n")
    code, out, _ = run(capsys, "tc", str(free), "--max-cosets", "10")
    assert code == 2 and "overflow" in out


def test_ac_search(capsys, corpus, tmp_path):
    moves = tmp_path / "moves.txt"
    code, out, err = run(
        capsys, "ac-search", str(corpus / "spun_trefoil.pres"), "--kill", "t",
        "--max-len", "32", "--max-depth", "12", "--emit-moves", str(moves),
    )
    assert code == 0
    assert "found" in err
    assert moves.read_text().strip().endswith("rm t")


def test_ac_search_budget(capsys, tmp_path):
    pres = tmp_path / "hard.pres"
    pres.write_text("gens x\n")  # free group: killing x leaves <x | x>, trivial
    code, _, _ = run(capsys, "ac-search", str(pres), "--kill", "x",
                     "--max-len", "8", "--max-depth", "2")
    assert code == 0  # immediate removal
    pres.write_text("gens x\nrel x^2 # Z/2, never AC-trivial\n")
    # deficiency 0: kill_meridian rejects -> input error
    code, _, _ = run(capsys, "ac-search", str(pres), "--kill", "x",
                     "--max-len", "8", "--max-depth", "2")
    assert code == 3


def test_lot(capsys, corpus, tmp_path):
    code, out, err = run(capsys, "lot", str(corpus / "trotter_2.pres"))
    assert code == 0 and out.startswith("digraph {") and "tree=yes" in err
    bad = tmp_path / "bad.pres"
    bad.write_text("gens x y\nrel x y\nrel y\n")
    code, _, err = run(capsys, "lot", str(bad))
    assert code == 1 and "not a Wirtinger" in err


def test_tietze(capsys, corpus):
    code, out, _ = run(
        capsys, "tietze", str(corpus / "yoshikawa.pres"),
        "--script", str(corpus / "yoshikawa.tz"),
    )
    assert code == 0
    p = parse_presentation(out)
    assert len(p.generators) == 4 and len(p.relators) == 3


def test_verify_pass(capsys, corpus):
    code, out, _ = run(
        capsys, "verify", str(corpus / "spun_trefoil.pres"),
        "--module", str(corpus / "spun_trefoil.module"),
        "-N", "2,3,6", "--meridian", "t", "--max-cosets", "100",
    )
    assert code == 0
    assert "FAIL" not in out and "INCONCLUSIVE" not in out


def test_verify_mismatch(capsys, corpus, tmp_path):
    mutated = tmp_path / "mut.pres"
    mutated.write_text("gens t u\nrel u^-1 t u t^2 u^-1 t^-2\n")
    code, out, _ = run(
        capsys, "verify", str(mutated),
        "--module", str(corpus / "spun_trefoil.module"),
        "-N", "2,3", "--meridian", "t", "--max-cosets", "100",
    )
    assert code == 1
    assert "FAIL" in out


def test_exit_code_3_on_bad_input(capsys, tmp_path):
    code, _, err = run(capsys, "alex", str(tmp_path / "missing.pres"))
    assert code == 3 and "error:" in err
    code, _, err = run(capsys, "covers", str(tmp_path / "missing.pres"), "-N", "x")
    assert code == 3


def test_byte_stable_outputs(capsys, corpus):
    cases = [
        ("realize", "cyclic", "--coeffs", "1,-1,1", "--emit", "both"),
        ("realize", "trotter", "-m", str(corpus / "trotter_2.mat"), "--emit", "both"),
        ("alex", str(corpus / "lemma4_companion.pres")),
        ("covers", str(corpus / "lemma4_companion.pres"), "-N", "2,3",
         "--module", str(corpus / "lemma4_companion.module")),
        ("lot", str(corpus / "spun_trefoil.pres")),
        ("tietze", str(corpus / "yoshikawa.pres"), "--script", str(corpus / "yoshikawa.tz")),
        ("verify", str(corpus / "trotter_2.pres"), "--module",
         str(corpus / "trotter_2.module"), "-N", "2,3", "--meridian", "t"),
    ]
    for argv in cases:
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second, argv


def test_emitted_presentations_reparse(capsys, corpus):
    for name in ("cyclic",):
        code, out, _ = run(capsys, "realize", name, "--coeffs", "2,-3,2", "--emit", "wirtinger")
        assert code == 0
        parse_presentation(out)
