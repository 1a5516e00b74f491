import hashlib
import json

import pytest

from abds.cli import main
from abds.jobs import REPORT_SCHEMA

CODE2_TEXT = """\
q: 2
r: 5,15
bounds: bch,ht
(0,0)
(0,3)
(0,5)
(0,7)
(1,0)
(1,2)
(1,4)
"""


@pytest.fixture()
def code2_job(tmp_path):
    path = tmp_path / "code2.job"
    path.write_text(CODE2_TEXT)
    return path


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestOrbitCommand:
    def test_text_output(self, capsys, tmp_path):
        job = tmp_path / "orbit.job"
        job.write_text("q: 5\nr: 3,24\n(0,1)\n")
        rc, out, _ = run(capsys, "orbit", "--input", str(job))
        assert rc == 0
        assert "(0,1) -> size 2: (0,1) (0,5)" in out
        assert "total |D| = 2" in out


class TestBoundCommand:
    def test_text_output(self, capsys, tmp_path):
        job = tmp_path / "bound.job"
        job.write_text("n: 24\nsubset: 0,1,5,6\nbounds: bch,ht\n")
        rc, out, _ = run(capsys, "bound", "--input", str(job))
        assert rc == 0
        assert "bch: 3" in out
        assert "ht: 4" in out

    def test_bounds_flag_overrides_document(self, capsys, tmp_path):
        job = tmp_path / "bound.job"
        job.write_text("n: 24\nsubset: 0,1,5,6\nbounds: bch,ht\n")
        rc, out, _ = run(capsys, "bound", "--input", str(job), "--bounds", "bch")
        assert rc == 0
        assert "bch: 3" in out
        assert "ht:" not in out


class TestAppdistCommand:
    def test_text_output(self, capsys, code2_job):
        rc, out, _ = run(capsys, "appdist", "--input", str(code2_job))
        assert rc == 0
        assert "Delta_B = 8" in out
        assert "axis 0: omega=1 epsilon=8 delta=8 involved=[0]" in out


class TestMadCommand:
    def test_text_trace(self, capsys, code2_job):
        rc, out, _ = run(capsys, "mad", "--input", str(code2_job))
        assert rc == 0
        assert "M_0: 13 orbits, 52 cells" in out
        assert "deltas: 8, 8" in out
        assert "values: 8, 8 -> result 8" in out
        assert "stop: zero-matrix" in out
        assert "mu: 7 (trace length 1)" in out


class TestCodeCommand:
    def test_fixed_root(self, capsys, code2_job):
        rc, out, _ = run(capsys, "code", "--input", str(code2_job))
        assert rc == 0
        assert "n=75 dim=52 Delta=8 bounds=bch,ht" in out

    def test_over_u_flag_with_trace(self, capsys, tmp_path):
        job = tmp_path / "c5.job"
        job.write_text("q: 2\nr: 3,35\nbounds: ht,bch\n(0,5)\n(0,7)\n(0,15)\n(1,0)\n")
        rc, out, _ = run(capsys, "code", "--input", str(job), "--over-u", "--trace")
        assert rc == 0
        assert "n=105 dim=93 Delta=4" in out
        assert "alpha-variant=" in out
        assert "deltas:" in out

    def test_structured_envelope(self, capsys, code2_job):
        rc, out, _ = run(capsys, "code", "--input", str(code2_job), "--format", "structured")
        assert rc == 0
        envelope = json.loads(out)
        assert envelope["schema"] == REPORT_SCHEMA
        assert envelope["command"] == "code"
        assert envelope["input_sha256"] == hashlib.sha256(CODE2_TEXT.encode()).hexdigest()
        assert envelope["result"]["value"] == 8
        assert envelope["result"]["dimension"] == 52


class TestVerifyCommand:
    def test_weight_suite(self, capsys, tmp_path):
        job = tmp_path / "verify.job"
        job.write_text("q: 2\nr: 3,5\nsuite: weight\ntrials: 30\nseed: 4\n")
        rc, out, _ = run(capsys, "verify", "--input", str(job))
        assert rc == 0
        assert "violations: 0" in out

    def test_seed_flag_overrides(self, capsys, tmp_path):
        job = tmp_path / "verify.job"
        job.write_text("q: 2\nr: 3,5\nsuite: weight\ntrials: 10\nseed: 4\n")
        rc, out, _ = run(capsys, "verify", "--input", str(job), "--seed", "99", "--format", "structured")
        assert rc == 0
        assert json.loads(out)["result"]["report"]["seed"] == 99

    def test_missing_suite(self, capsys, tmp_path):
        job = tmp_path / "verify.job"
        job.write_text("q: 2\nr: 3,5\n")
        rc, _, err = run(capsys, "verify", "--input", str(job))
        assert rc == 2
        assert "needs suite" in err

    def test_capacity_exit_code(self, capsys, tmp_path):
        job = tmp_path / "verify.job"
        job.write_text("q: 2\nr: 3,31\nsuite: soundness-exhaustive\nmax_dim: 30\n")
        rc, _, err = run(capsys, "verify", "--input", str(job))
        assert rc == 3
        assert "capacity" in err


class TestTable1Command:
    def test_honest_mismatch_report(self, capsys):
        rc, out, _ = run(capsys, "table1")
        assert rc == 1
        assert "C1 ok: n=21 dim=16 Delta=3" in out
        assert "C3 MISMATCH: expected n=51 dim=35 Delta=3, got n=51 dim=35 Delta=5" in out
        assert "C4 skipped: requires shifting bound (out of scope)" in out
        assert "C5 MISMATCH" in out
        assert "2/4 rows match" in out

    def test_structured_still_signals_mismatch(self, capsys):
        rc, out, _ = run(capsys, "table1", "--format", "structured")
        assert rc == 1
        envelope = json.loads(out)
        assert envelope["input_sha256"] is None
        assert envelope["result"]["matches"] == 2


class TestErrorPaths:
    def test_missing_input_flag(self, capsys):
        rc, _, err = run(capsys, "code")
        assert rc == 2
        assert "requires --input" in err

    def test_unreadable_file(self, capsys, tmp_path):
        rc, _, err = run(capsys, "code", "--input", str(tmp_path / "absent.job"))
        assert rc == 2
        assert "cannot read input file" in err

    def test_invalid_field_value(self, capsys, tmp_path):
        job = tmp_path / "bad.job"
        job.write_text("q: 6\nr: 5\n(1)\n")
        rc, _, err = run(capsys, "code", "--input", str(job))
        assert rc == 2
        assert "prime power" in err

    def test_capacity_error_from_bound(self, capsys, tmp_path):
        job = tmp_path / "cap.job"
        job.write_text("q: 2\nr: 3,1249\n(0,1)\n")
        rc, _, err = run(capsys, "code", "--input", str(job))
        assert rc == 3

    def test_unreachable_server(self, capsys, code2_job):
        rc, _, err = run(
            capsys, "code", "--input", str(code2_job), "--server", "http://127.0.0.1:9"
        )
        assert rc == 1
        assert "cannot reach service" in err
