import json
import subprocess
import sys

import pytest

from camoca.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def family_file(tmp_path, capsys):
    path = tmp_path / "fam.json"
    code, _, _ = run(capsys, "mols", "build", "--rules", "90,150", "--out", path)
    assert code == 0
    return path


def deal(capsys, tmp_path, family_file, *extra, name="deal"):
    out = tmp_path / name
    code, text, err = run(capsys, "deal", *extra, "--family", family_file, "--out", out)
    assert code == 0, err
    return out, text


def test_mols_build_count(capsys, tmp_path):
    path = tmp_path / "f.json"
    code, out, _ = run(capsys, "mols", "build", "--q", 2, "--d", 3, "--count", 2, "--out", path)
    assert code == 0
    assert "family: 150, 90" in out
    assert "max family size: 2" in out
    assert "printed-formula size (X counted, unadjusted): 3" in out
    doc = json.loads(path.read_text())
    assert [r["wolfram"] for r in doc["rules"]] == [150, 90]


def test_mols_build_to_stdout(capsys):
    code, out, err = run(capsys, "mols", "build", "--count", 2)
    assert code == 0 and json.loads(out)["kind"] == "moca-family"
    assert "max family size: 2" in err


def test_mols_build_infeasible(capsys):
    code, _, err = run(capsys, "mols", "build", "--count", 3)
    assert code == 1 and "maximum is 2" in err


def test_mols_build_passes_check(capsys, tmp_path):
    for q, d, m in [(2, 3, 2), (2, 4, 3), (3, 3, 3), (4, 3, 4)]:
        path = tmp_path / f"f{q}{d}.json"
        assert run(capsys, "mols", "build", "--q", q, "--d", d, "--count", m, "--out", path)[0] == 0
        code, out, _ = run(capsys, "mols", "check", "--family", path)
        assert code == 0 and out.startswith("ok:")


def test_mols_check_duplicate_rule(capsys, tmp_path, family_file):
    doc = json.loads(family_file.read_text())
    doc["rules"][1] = doc["rules"][0]
    from camoca.formats import family_digest
    doc["digest"] = family_digest(doc)
    bad = tmp_path / "dup.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "mols", "check", "--family", bad)
    assert code == 1 and "pair (1,2) not orthogonal" in out


def test_mols_check_digest_mismatch(capsys, tmp_path, family_file):
    doc = json.loads(family_file.read_text())
    doc["rules"].reverse()
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "mols", "check", "--family", bad)
    assert code == 1 and "digest" in err


def test_mols_print_rule90(capsys):
    code, out, _ = run(capsys, "mols", "print", "--q", 2, "--d", 3, "--rule", 90)
    assert code == 0
    lines = out.splitlines()
    assert lines[:5] == ["rule 90", "1 2 3 4", "2 1 4 3", "3 4 1 2", "4 3 2 1"]
    assert "10 (2) | {2,5,12,15}" in out


def test_mols_print_family_classes(capsys, family_file):
    code, out, _ = run(capsys, "mols", "print", "--family", family_file)
    assert code == 0
    assert "01 (3) | {3,8,9,14}  | {3,6,12,13}" in out
    assert "1 4 3 2" in out


def test_deal_anon_forced_r(capsys, tmp_path, family_file):
    out, text = deal(capsys, tmp_path, family_file, "anon", "--secret-index", 1, "--testing", "--force-r", "10")
    assert "dealt 4 shares: 2, 5, 12, 15" in text
    cells = [json.loads((out / f"share_{i}.json").read_text())["cell_index"] for i in range(1, 5)]
    assert cells == [2, 5, 12, 15]
    dealer = json.loads((out / "dealer.json").read_text())
    assert dealer["sensitive"] is True and dealer["random_block"] == "10"


def test_deal_basic_forced_r(capsys, tmp_path, family_file):
    out, text = deal(capsys, tmp_path, family_file, "basic", "--secret", "00", "--testing", "--force-r", "10")
    assert "dealt 2 shares: 10, 11" in text
    assert json.loads((out / "share_2.json").read_text())["share"] == "11"


def test_deal_errors(capsys, tmp_path, family_file):
    code, _, err = run(capsys, "deal", "anon", "--family", family_file, "--secret-index", 3, "--out", tmp_path / "x")
    assert code == 1
    code, _, err = run(capsys, "deal", "anon", "--family", family_file, "--secret-index", 1,
                       "--force-r", "10", "--out", tmp_path / "y")
    assert code == 2 and "--testing" in err
    code, _, _ = run(capsys, "deal", "anon", "--family", tmp_path / "missing.json", "--secret-index", 1)
    assert code == 1
    assert run(capsys, "deal", "basic", "--family", family_file, "--out", tmp_path / "z")[0] == 2


def test_recover_anon_worked_example(capsys, tmp_path, family_file):
    out, _ = deal(capsys, tmp_path, family_file, "anon", "--secret-index", 1, "--testing", "--force-r", "10")
    a, b = out / "share_1.json", out / "share_3.json"
    code, text, _ = run(capsys, "recover", "anon", "--family", family_file, "--share", a, "--share", b)
    assert code == 0
    assert text.startswith("secret rule: 90 (index 1); intersection {2,5,12,15}")
    assert run(capsys, "recover", "anon", "--family", family_file, "--share", b, "--share", a)[1] == text


def test_recover_basic_swap_invariant(capsys, tmp_path, family_file):
    out, _ = deal(capsys, tmp_path, family_file, "basic", "--secret", "01", "--seed", 4)
    a, b = out / "share_1.json", out / "share_2.json"
    r1 = run(capsys, "recover", "basic", "--family", family_file, "--share", a, "--share", b)
    r2 = run(capsys, "recover", "basic", "--family", family_file, "--share", b, "--share", a)
    assert r1 == r2 and r1[1].startswith("secret: 01")


def test_recover_errors(capsys, tmp_path, family_file):
    d1, _ = deal(capsys, tmp_path, family_file, "anon", "--secret-index", 1, "--testing", "--force-r", "00", name="d1")
    d2, _ = deal(capsys, tmp_path, family_file, "anon", "--secret-index", 1, "--testing", "--force-r", "10", name="d2")
    same = d2 / "share_1.json"
    code, _, err = run(capsys, "recover", "anon", "--family", family_file, "--share", same, "--share", same)
    assert code == 1 and "same share" in err
    code, _, err = run(capsys, "recover", "anon", "--family", family_file,
                       "--share", d1 / "share_1.json", "--share", d2 / "share_1.json")
    assert code == 1 and "no set in common" in err
    other = tmp_path / "other.json"
    run(capsys, "mols", "build", "--rules", "150,90", "--out", other)
    code, _, err = run(capsys, "recover", "anon", "--family", other,
                       "--share", d2 / "share_1.json", "--share", d2 / "share_2.json")
    assert code == 1 and "different public family" in err
    assert run(capsys, "recover", "anon", "--family", family_file, "--share", same)[0] == 2


def test_precompute_and_candidates(capsys, tmp_path, family_file):
    out, _ = deal(capsys, tmp_path, family_file, "anon", "--secret-index", 1, "--testing", "--force-r", "10")
    files = []
    for i in (1, 3):
        path = tmp_path / f"cand{i}.json"
        assert run(capsys, "precompute", "--family", family_file, "--share", out / f"share_{i}.json", "--out", path)[0] == 0
        files.append(path)
    doc = json.loads(files[0].read_text())
    assert doc["sets"] == [[2, 5, 12, 15], [2, 7, 9, 16]] and "share" not in doc
    assert json.loads(files[1].read_text())["sets"] == [[2, 5, 12, 15], [3, 6, 12, 13]]
    code, text, _ = run(capsys, "recover", "anon", "--family", family_file,
                        "--candidates", files[1], "--candidates", files[0])
    assert code == 0 and text.strip() == "secret rule: 90 (index 1); intersection {2,5,12,15}"


def test_simulate_exhaustive(capsys, family_file):
    code, out, _ = run(capsys, "simulate", "--q", 2, "--d", 3, "--scheme", "anon", "--exhaustive")
    assert code == 0 and "successes: 48/48" in out
    code, out, _ = run(capsys, "simulate", "--q", 2, "--d", 3, "--scheme", "basic", "--exhaustive")
    assert code == 0 and "successes: 16/16" in out


def test_simulate_random_and_empty(capsys):
    code, out, _ = run(capsys, "simulate", "--q", 3, "--d", 3, "--trials", 30, "--seed", 2)
    assert code == 0 and "successes: 30/30" in out
    code, out, _ = run(capsys, "simulate", "--trials", 0)
    assert code == 0 and out == "trials: 0\nsuccesses: 0/0\n"
    code, _, err = run(capsys, "simulate", "--q", 2, "--d", 10)
    assert code == 1 and "bound" in err


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--q", 2, "--d", 3, "--size", 2)
    assert code == 0 and "{90, 150}" in out
    code, out, _ = run(capsys, "search", "--q", 2, "--d", 3, "--size", 2, "--nonlinear")
    assert out.splitlines()[1:] == ["{90, 105}", "{90, 150}", "{105, 165}", "{150, 165}"]
    code, out, _ = run(capsys, "search", "--q", 2, "--d", 3, "--size", 5, "--nonlinear")
    assert code == 0 and out.startswith("families of size 5") and ": 0" in out
    code, _, err = run(capsys, "search", "--q", 2, "--d", 5)
    assert code == 1 and "infeasible" in err


def test_json_format(capsys, family_file):
    code, out, _ = run(capsys, "simulate", "--exhaustive", "--format", "json")
    assert json.loads(out)["successes"] == 48
    code, out, _ = run(capsys, "mols", "print", "--rule", 150, "--format", "json")
    assert json.loads(out)["150"]["square"][0] == [1, 4, 3, 2]


def test_usage_errors(capsys):
    assert run(capsys, "mols", "build")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "mols", "build", "--q", 3, "--rules", "90")[0] == 2
    assert run(capsys, "mols", "build", "--q", 6, "--count", 2)[0] == 1


def test_byte_identical_reruns(tmp_path):
    def once(tag):
        out = tmp_path / tag
        cmds = [
            ["mols", "build", "--q", "3", "--d", "3", "--count", "3", "--out", str(out / "fam.json")],
            ["deal", "anon", "--family", str(out / "fam.json"), "--secret-index", "2", "--seed", "9", "--out", str(out / "deal")],
            ["recover", "anon", "--family", str(out / "fam.json"),
             "--share", str(out / "deal" / "share_1.json"), "--share", str(out / "deal" / "share_5.json")],
            ["simulate", "--q", "2", "--d", "4", "--trials", "20", "--seed", "3"],
        ]
        (out).mkdir()
        texts = []
        for c in cmds:
            res = subprocess.run([sys.executable, "-m", "camoca", *c], capture_output=True, check=True)
            texts.append(res.stdout.replace(str(out).encode(), b"OUT"))
        files = sorted(p.relative_to(out) for p in out.rglob("*.json"))
        return texts, [(f, (out / f).read_bytes()) for f in files]

    assert once("a") == once("b")
