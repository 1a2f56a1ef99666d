import csv
import io
import subprocess
import sys

import pytest

from square_tiled.censusfile import parse, serialize
from square_tiled.cli import main

GENUS_TWO_SIX = "(1,2,3,4)(5,6)|(1,5)(2,6)(3,4)"
WOLLMILCHSAU = "(1,2,3,4)(5,6,7,8)|(1,5,3,7)(2,8,4,6)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEnumerate:
    def test_six_squares_summary(self, capsys):
        code, out, _ = run(capsys, "enumerate", "6")
        assert code == 0
        assert out.startswith("total=624 reduced=603 primitive=500 ")
        assert "non_visibility=36" in out

    def test_single_square_file(self, capsys, tmp_path):
        path = tmp_path / "one.txt"
        code, _, _ = run(capsys, "enumerate", "1", "--out", str(path))
        assert code == 0
        assert path.read_text() == "#sts-census v1 n=1\n1|1|-|RPNHVSCU\n"

    def test_round_trip_is_byte_identical(self, capsys, tmp_path):
        path = tmp_path / "five.txt"
        run(capsys, "enumerate", "5", "--out", str(path))
        text = path.read_text()
        assert serialize(parse(text)) == text
        assert len(parse(text).lines) == 97

    def test_stratum_slice_and_filter(self, capsys):
        code, out, _ = run(capsys, "enumerate", "7", "--stratum", "2", "--filter", "R!V")
        assert code == 0
        assert out.startswith("total=90 reduced=90 ")
        assert "non_visibility=90" in out

    def test_cap_and_bad_filter(self, capsys):
        assert run(capsys, "enumerate", "10")[0] == 2
        assert run(capsys, "enumerate", "3", "--filter", "Q")[0] == 2

    def test_unwritable_output(self, capsys, tmp_path):
        assert run(capsys, "enumerate", "2", "--out", str(tmp_path / "missing" / "x.txt"))[0] == 2


class TestClassify:
    def test_wollmilchsau(self, capsys):
        code, out, _ = run(capsys, "classify", "--in", WOLLMILCHSAU, "--orbit")
        assert code == 0
        assert "flags=RNHVSCU" in out and out.rstrip().endswith("orbit=1")

    def test_genus_two_six_squares(self, capsys):
        _, out, _ = run(capsys, "classify", "--in", GENUS_TWO_SIX)
        assert "stratum=H(1,1)" in out and "genus=2" in out
        flags = out.split("flags=")[1].split()[0]
        assert "H" not in flags

    def test_one_line_notation(self, capsys):
        _, a, _ = run(capsys, "classify", "--in", "2,3,4,1,6,5|5,6,4,3,1,2")
        _, b, _ = run(capsys, "classify", "--in", GENUS_TWO_SIX)
        assert a.split(" n=")[1] == b.split(" n=")[1]

    def test_torus(self, capsys):
        _, out, _ = run(capsys, "classify", "--in", "1|1")
        assert "n=1" in out and "genus=1" in out and "flags=RPNHVSCU" in out

    def test_census_file_input(self, capsys, tmp_path):
        path = tmp_path / "three.txt"
        run(capsys, "enumerate", "3", "--out", str(path))
        _, out, _ = run(capsys, "classify", "--in", str(path))
        assert len(out.strip().splitlines()) == 7

    @pytest.mark.parametrize("bad", ["1,1|1,2", "(1,2)|(3,4)", "1,2|", "garbage"])
    def test_malformed(self, capsys, bad):
        assert run(capsys, "classify", "--in", bad)[0] == 2


class TestVerify:
    def test_formulas(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "formulas", "--max-n", "40")
        assert code == 0
        assert "FAIL" not in out and out.count("PASS") >= 4

    def test_census(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "census", "--max-n", "6")
        assert code == 0 and "FAIL" not in out

    def test_thresholds(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "thresholds", "--max-n", "12")
        assert code == 0
        assert "PASS largest visibility torus in H(2) up to n=12 is n=5" in out

    def test_failure_exit_code(self, capsys, monkeypatch):
        from square_tiled import cli

        monkeypatch.setitem(cli.SUITES, "formulas", lambda max_n: iter([("always wrong", False)]))
        code, out, _ = run(capsys, "verify", "--suite", "formulas", "--max-n", "3")
        assert code == 1 and "FAIL always wrong" in out

    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nonsense", "--max-n", "3"])
        assert exc.value.code == 2
        assert run(capsys, "verify", "--suite", "census", "--max-n", "11")[0] == 2


class TestStats:
    def test_three_squares(self, capsys):
        code, out, _ = run(capsys, "stats", "--stratum", "2", "--n-range", "3..3")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows[0]["n"] == "3" and float(rows[0]["proportion"]) == 1.0

    def test_csv_file_and_fit(self, capsys, tmp_path):
        path = tmp_path / "s.csv"
        code, _, err = run(capsys, "stats", "--n-range", "10..20", "--out", str(path))
        assert code == 0 and "r2=" in err
        rows = list(csv.DictReader(path.open()))
        assert [r["n"] for r in rows] == [str(n) for n in range(10, 21)]
        assert list(rows[0]) == ["n", "total", "reduced", "unit_saddle", "proportion", "reciprocal"]

    @pytest.mark.parametrize("argv", [["--stratum", "1,1", "--n-range", "4..5"], ["--n-range", "10-20"]])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, "stats", *argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "square_tiled", "enumerate", "4"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("total=26 reduced=19 primitive=13")
