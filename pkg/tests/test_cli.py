import json
import subprocess
import sys

import jsonschema
import pytest

from hsverify.cli import main, parse_group_spec
from hsverify.verify.report import RunOptions, VerificationReport, load_schema, run, summarize


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("spec,value", [("A5", "103/60"), ("A4", "11/6"), ("S4", "5/2"), ("C6", "2/1")])
def test_j(capsys, spec, value):
    code, out, _ = run_cli(capsys, "j", spec)
    assert code == 0 and out.strip() == value


def test_indices(capsys):
    code, out, _ = run_cli(capsys, "indices", "S3")
    assert code == 0 and out.split() == ["1", "2", "3", "6"]


def test_hs_search(capsys):
    code, out, _ = run_cli(capsys, "hs-search", "C6")
    assert code == 0 and "no partition with distinct indices" in out
    code, out, _ = run_cli(capsys, "hs-search", "C6", "--allow-repeats")
    assert code == 0 and "partition into" in out


def test_verify_e8(capsys):
    code, out, _ = run_cli(capsys, "verify", "e8")
    assert code == 0 and out.strip() == "max total = 166 at p=2; verified"


def test_skip_policy(capsys):
    code, out, _ = run_cli(capsys, "verify", "alternating", "--nmax", "1000")
    assert code != 0 and "skipped-missing-data" in out
    code, _, _ = run_cli(capsys, "verify", "alternating", "--nmax", "1000", "--allow-skips")
    assert code == 0


def test_failed_certificate_gives_nonzero_exit(capsys):
    code, out, _ = run_cli(capsys, "verify", "sporadic")
    assert code != 0 and "failed" in out and "sporadic/M12" in out


def test_catalog_flag(capsys, tmp_path):
    path = tmp_path / "cat.txt"
    path.write_text("".join(f"{n} primitive 1 {n * (n - 1)}\n" for n in range(14, 44)))
    code, out, _ = run_cli(capsys, "verify", "alternating", "--nmax", "100", "--catalog", str(path))
    assert code == 0 and "skipped" in out.splitlines()[-1]


def test_bad_catalog_is_reported(capsys, tmp_path):
    path = tmp_path / "cat.txt"
    path.write_text("14 primitive 1 11\n")
    code, _, err = run_cli(capsys, "verify", "alternating", "--catalog", str(path))
    assert code == 2 and "line 1" in err


def test_parse_errors(capsys):
    code, _, err = run_cli(capsys, "j", "perm: (1 2 2)")
    assert code == 2 and "position" in err
    assert main(["frobnicate"]) == 2


def test_reexported_parser():
    assert parse_group_spec("C2 x C4").factors[1].args == (4,)


def test_report_schema_and_round_trip(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run_cli(capsys, "report", "--out", str(out), "--target", "exceptional", "--qmax", "300")
    assert code == 0
    data = json.loads(out.read_text())
    jsonschema.validate(data, load_schema())
    rep = VerificationReport.from_json(data)
    assert summarize(rep.certificates) == data["summary"]
    assert rep.to_json() == data
    assert data["timestamp"] is None and all(c["elapsed_ms"] == 0 for c in data["certificates"])
    assert data["trend"]


def test_report_is_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        run_cli(capsys, "report", "--out", str(p), "--target", "tables")
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_timings_add_timestamp(capsys, tmp_path):
    out = tmp_path / "t.json"
    run_cli(capsys, "report", "--out", str(out), "--target", "e8", "--timings")
    data = json.loads(out.read_text())
    assert data["timestamp"]
    jsonschema.validate(data, load_schema())


def test_precision_env(tmp_path):
    out = tmp_path / "p.json"
    env = {"HS_PRECISION_BITS": "96", "PATH": ""}
    subprocess.run([sys.executable, "-m", "hsverify.cli", "report", "--out", str(out), "--target", "e8"],
                   check=True, env=env, capture_output=True)
    assert json.loads(out.read_text())["precision_bits"] == 96


def test_jobs_matches_serial():
    serial = run("tables,e8,sporadic")
    pooled = run("tables,e8,sporadic", RunOptions(jobs=2))
    assert [c.to_json() for c in serial] == [c.to_json() for c in pooled]


def test_verify_accepts_target_list(capsys):
    code, out, _ = run_cli(capsys, "verify", "e8,tables")
    assert code == 0 and "e8/count" in out and "tables/digest" in out
    assert main(["verify", "e8,bogus"]) == 2
