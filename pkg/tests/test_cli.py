"""End-to-end command-line checks: exit codes, file formats, determinism."""

import csv
from fractions import Fraction

import pytest

from errlab.cli import main
from errlab.piecewise import monomial
from errlab.sequences import convolve_id, mobius_sieve, read_sequence_csv


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(path):
    with open(path, newline="") as fh:
        return [r for r in csv.reader(fh) if r]


class TestVerify:
    def test_mu_passes(self, tmp_path, capsys):
        out = tmp_path / "rep.csv"
        code, _, err = run(["verify", "--seq", "mu", "--X", "30",
                            "--A", "0", "--A", "1", "-o", str(out)], capsys)
        assert code == 0
        assert "PASS" in err
        rows = rows_of(out)
        assert rows[0] == ["identity", "x", "residual", "exact_zero"]
        assert all(r[3] == "true" for r in rows[1:])
        assert any(r[0] == "volterra[A=1/1]" for r in rows[1:])

    def test_twisted_passes(self, tmp_path, capsys):
        out = tmp_path / "rep.csv"
        code, _, _ = run(["verify", "--seq", "mu_chi", "--D", "-3",
                          "--X", "20", "-o", str(out)], capsys)
        assert code == 0
        assert any(r[0] == "decomposition" for r in rows_of(out)[1:])

    def test_complex_a_flag(self, tmp_path, capsys):
        code, _, _ = run(["verify", "--seq", "mu", "--X", "10",
                          "--A", "3/2+1/2*i", "-o", str(tmp_path / "r.csv")], capsys)
        assert code == 0

    def test_tampered_pair_file_fails(self, tmp_path, capsys):
        mu = mobius_sieve(40)
        b = convolve_id(mu)
        bad = tmp_path / "bad.csv"
        with bad.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "a", "b"])
            for n in range(1, 41):
                bv = b.value(n) + (1 if n == 23 else 0)
                w.writerow([n, f"{mu.value(n)}/1", f"{bv}/1"])
        out = tmp_path / "rep.csv"
        code, _, err = run(["verify", "--seq", f"file:{bad}", "--X", "40",
                            "-o", str(out)], capsys)
        assert code == 1
        assert "FAIL" in err and "x=23" in err
        assert any(r[3] == "false" for r in rows_of(out)[1:])

    def test_b_file_override_fails(self, tmp_path, capsys):
        mu = mobius_sieve(30)
        b = convolve_id(mu)
        bfile = tmp_path / "b.csv"
        with bfile.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "value"])
            for n in range(1, 31):
                w.writerow([n, f"{b.value(n) + (2 if n == 19 else 0)}/1"])
        code, _, err = run(["verify", "--seq", "mu", "--X", "30",
                            "--b-file", str(bfile), "-o", str(tmp_path / "r.csv")], capsys)
        assert code == 1

    def test_rerun_bit_identical(self, tmp_path, capsys):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        run(["verify", "--seq", "mu", "--X", "15", "-o", str(p1)], capsys)
        run(["verify", "--seq", "mu", "--X", "15", "-o", str(p2)], capsys)
        assert p1.read_bytes() == p2.read_bytes()

    def test_numeric_growth_row(self, tmp_path, capsys):
        out = tmp_path / "rep.csv"
        code, _, _ = run(["verify", "--seq", "mu", "--X", "10",
                          "--mode", "numeric", "-o", str(out)], capsys)
        assert code == 0
        growth = [r for r in rows_of(out)[1:] if r[0].startswith("growth")]
        assert growth and growth[0][3] == "true"

    def test_usage_errors(self, tmp_path, capsys):
        assert run(["verify", "--seq", "mu_chi", "--X", "10"], capsys)[0] == 2
        assert run(["verify", "--seq", "nope"], capsys)[0] == 2
        assert run(["verify", "--seq", "mu_chi", "--D", "9"], capsys)[0] == 2
        assert run(["verify", "--seq", "file:/does/not/exist.csv"], capsys)[0] == 2


class TestTable:
    def test_row_count_and_modes(self, tmp_path, capsys):
        out = tmp_path / "t.csv"
        code, _, _ = run(["table", "--seq", "mu", "--X", "100", "--denom", "10",
                          "--mode", "numeric", "-o", str(out)], capsys)
        assert code == 0
        lines = out.read_text().splitlines()
        comments = [l for l in lines if l.startswith("#")]
        data = [l for l in lines if not l.startswith("#")]
        assert len(comments) == 2 and "a2" in comments[0]
        assert data[0] == "x,E,E_AR,E_AN"
        assert len(data) - 1 == 1001

    def test_numeric_value_at_three_halves(self, tmp_path, capsys):
        out = tmp_path / "t.csv"
        run(["table", "--seq", "mu", "--X", "2", "--denom", "2",
             "--mode", "numeric", "-o", str(out)], capsys)
        for row in rows_of(out):
            if row and row[0] == "1.5":
                assert abs(float(row[1]) - 0.3161) < 1e-3
                break
        else:
            pytest.fail("row x=1.5 missing")

    def test_exact_mode_has_no_floats(self, tmp_path, capsys):
        out = tmp_path / "t.csv"
        code, _, _ = run(["table", "--seq", "mu", "--X", "3", "-o", str(out)], capsys)
        assert code == 0
        rows = rows_of(out)
        assert all("A2" in r[1] for r in rows[1:])

    def test_twisted_table(self, tmp_path, capsys):
        out = tmp_path / "t.csv"
        code, _, _ = run(["table", "--seq", "mu_chi", "--D", "-4", "--X", "5",
                          "-o", str(out)], capsys)
        assert code == 0
        assert len(rows_of(out)) == 17  # header + 5*3 + 1

    def test_precision_unattainable(self, tmp_path, capsys):
        code, _, err = run(["table", "--seq", "mu", "--X", "5", "--mode", "numeric",
                            "--precision", "1e-12", "-o", str(tmp_path / "t.csv")], capsys)
        assert code == 3

    def test_file_sequence_rejected(self, tmp_path, capsys):
        seq = tmp_path / "s.csv"
        seq.write_text("n,value\n1,1/1\n")
        code, _, _ = run(["table", "--seq", f"file:{seq}"], capsys)
        assert code == 2


class TestSolve:
    def test_square_input(self, tmp_path, capsys):
        dump = tmp_path / "e.dump"
        dump.write_text(monomial(3, 2).dumps())
        out = tmp_path / "f.csv"
        code, _, _ = run(["solve", "--input", str(dump), "--X", "2", "--denom", "2",
                          "-o", str(out)], capsys)
        assert code == 0
        rows = rows_of(out)
        assert rows[0] == ["x", "F", "residual", "exact_zero"]
        assert rows[-1][0] == "2" and rows[-1][1].startswith("8/1")
        assert all(r[3] == "true" for r in rows[1:])

    def test_error_term_dump_matches_solution(self, tmp_path, capsys):
        from errlab.volterra import build_error_term, build_fracpart_series, make_case
        from errlab.piecewise import Side
        case = make_case(mobius_sieve(10), 10)
        dump = tmp_path / "er.dump"
        dump.write_text(build_error_term(case).dumps())
        out = tmp_path / "f.csv"
        code, _, _ = run(["solve", "--input", str(dump), "-o", str(out)], capsys)
        assert code == 0
        h = build_fracpart_series(case)
        for row in rows_of(out)[1:]:
            x = Fraction(row[0])
            expect = h.eval_at(x, Side.RIGHT) * x
            assert row[1] == expect.to_text(), x

    def test_log_case_exits_2(self, tmp_path, capsys):
        dump = tmp_path / "e.dump"
        dump.write_text(monomial(3, 1).dumps())
        code, _, err = run(["solve", "--input", str(dump)], capsys)
        assert code == 2
        assert "t^-1" in err and "(0, 1)" in err

    def test_malformed_dump_exits_2(self, tmp_path, capsys):
        dump = tmp_path / "e.dump"
        dump.write_text("0: e9=1/1 + 0/1*A2 + 0/1*A1\n")
        assert run(["solve", "--input", str(dump)], capsys)[0] == 2


class TestSieve:
    def test_sequence_roundtrip(self, tmp_path, capsys):
        out = tmp_path / "mu.csv"
        code, _, _ = run(["sieve", "--seq", "mu", "--N", "50", "-o", str(out)], capsys)
        assert code == 0
        back, _ = read_sequence_csv(out)
        mu = mobius_sieve(50)
        assert all(back.value(n) == mu.value(n) for n in range(1, 51))
        # and the emitted file is accepted by verify
        code, _, _ = run(["verify", "--seq", f"file:{out}", "--X", "50",
                          "-o", str(tmp_path / "r.csv")], capsys)
        assert code == 0

    def test_character_emission(self, tmp_path, capsys):
        out = tmp_path / "chi.csv"
        code, _, _ = run(["sieve", "--seq", "mu_chi", "--D", "-3",
                          "--emit", "character", "-o", str(out)], capsys)
        assert code == 0
        assert rows_of(out) == [["residue", "value"], ["0", "0"], ["1", "1"], ["2", "-1"]]
        # usable as a custom character table
        code, _, _ = run(["verify", "--seq", "mu_chi", "--chi-file", str(out),
                          "--X", "10", "-o", str(tmp_path / "r.csv")], capsys)
        assert code == 0

    def test_stdout_default(self, capsys):
        code, out, _ = run(["sieve", "--seq", "mu", "--N", "4"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "n,value"
        assert out.splitlines()[2] == "2,-1/1"
