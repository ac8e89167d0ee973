import os

from repstable.cli import main

A2_TEXT = "vertices 1 2\narrow a : 1 -> 2\n"


def write_a2(tmp_path):
    p = tmp_path / "a2.quiver"
    p.write_text(A2_TEXT)
    return str(p)


def test_validate_gentle_exit_zero(tmp_path, capsys):
    path = write_a2(tmp_path)
    rc = main(["validate", path, "--out", str(tmp_path / "out")])
    assert rc == 0
    assert "gentle: yes" in capsys.readouterr().out
    assert (tmp_path / "out" / "validate.txt").exists()


def test_validate_not_gentle_exit_nonzero(tmp_path, capsys):
    p = tmp_path / "bad.quiver"
    p.write_text("vertices 0 1 2 3\narrow a : 0 -> 1\n"
                 "arrow b : 0 -> 2\narrow c : 0 -> 3\n")
    rc = main(["validate", str(p), "--out", str(tmp_path / "out")])
    assert rc == 1


def test_parse_error_exit_two(tmp_path, capsys):
    p = tmp_path / "broken.quiver"
    p.write_text("arrow a : 1 -> 2\n")
    rc = main(["validate", str(p), "--out", str(tmp_path / "out")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_repetitive_and_strings(tmp_path):
    path = write_a2(tmp_path)
    out = str(tmp_path / "out")
    assert main(["repetitive", path, "--window", "0", "3",
                 "--out", out]) == 0
    assert (tmp_path / "out" / "window.quiver").exists()
    assert (tmp_path / "out" / "window.degrees").exists()
    assert main(["strings", path, "--window", "0", "3", "--max-len", "2",
                 "--out", out]) == 0
    text = (tmp_path / "out" / "strings.txt").read_text()
    assert "# 9 words" in text


def test_ar_command(tmp_path):
    path = write_a2(tmp_path)
    out = str(tmp_path / "out")
    rc = main(["ar", path, "--window", "0", "3", "--seed", "v:1@1",
               "--max-len", "4", "--out", out])
    assert rc == 0
    text = (tmp_path / "out" / "ar.txt").read_text()
    assert "ars1\tTrue" in text and "art3_star\tTrue" in text


def test_triangles_allowed_cells(tmp_path):
    path = write_a2(tmp_path)
    out = str(tmp_path / "out")
    rc = main(["triangles", path, "--window", "0", "5", "--seed", "v:1@2",
               "--max-len", "8", "--out", out])
    assert rc == 0
    lines = [l for l in (tmp_path / "out" / "findings.tsv")
             .read_text().splitlines() if l and not l.startswith("#")]
    assert len(lines) >= 6
    for line in lines:
        cols = line.split("\t")
        assert cols[5] in ("i", "ii", "iii-a", "iii-b")
        assert cols[-1] == "pass"


def test_knit_deterministic(tmp_path):
    path = write_a2(tmp_path)
    out1, out2 = str(tmp_path / "o1"), str(tmp_path / "o2")
    args = ["knit", path, "--window", "0", "5", "--seed", "v:1@2",
            "--max-len", "6"]
    assert main(args + ["--out", out1]) == 0
    assert main(args + ["--out", out2]) == 0
    for name in ("component.dot", "component.tsv"):
        a = open(os.path.join(out1, name), "rb").read()
        b = open(os.path.join(out2, name), "rb").read()
        assert a == b


def test_no_partial_artifacts_left(tmp_path):
    path = write_a2(tmp_path)
    out = str(tmp_path / "out")
    main(["knit", path, "--window", "0", "4", "--seed", "v:1@1",
          "--max-len", "3", "--out", out])
    assert not [f for f in os.listdir(out) if f.endswith(".partial")]


def test_example4_check(tmp_path):
    rc = main(["example4", "--out", str(tmp_path / "ex4"), "--check"])
    assert rc == 0


def test_window_too_short(tmp_path, capsys):
    path = write_a2(tmp_path)
    rc = main(["repetitive", path, "--window", "0", "1",
               "--out", str(tmp_path / "out")])
    assert rc == 2
