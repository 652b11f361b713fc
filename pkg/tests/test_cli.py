import json
import os
import subprocess
import sys

import pytest

from stackylg.cli import main

REF = ["--p", "7", "--q", "47", "--r", "31", "--form", "3,1,850"]


def run(*args):
    return subprocess.run(
        [sys.executable, "-m", "stackylg", *args], capture_output=True, text=True, timeout=120
    )


@pytest.fixture(scope="module")
def ref_cert(tmp_path_factory):
    path = tmp_path_factory.mktemp("cert") / "ref.cert.json"
    assert main(["verify", *REF, "--out", str(path)]) == 0
    return path


def test_verify_reference_instance_subprocess(tmp_path):
    out = tmp_path / "c.json"
    proc = run("verify", *REF, "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(out.read_text())
    assert doc["verdict"] is True
    assert list(doc)[:8] == [
        "schema_version", "triple", "form", "genus", "local", "obstruction", "verdict", "mode",
    ]


def test_verify_to_stdout(capsys):
    assert main(["verify", *REF, "--height-bound", "10"]) == 0
    assert json.loads(capsys.readouterr().out)["form"] == [3, 1, 850]


@pytest.mark.parametrize(
    "args, code",
    [
        (["--p", "5", "--q", "47", "--r", "31", "--form", "3,1,850"], 2),
        (["--p", "7", "--q", "47", "--r", "31", "--form", "3,1,851"], 2),
        (["--p", "7", "--q", "47", "--form", "3,1,850"], 64),
        (["--p", "7", "--q", "47", "--r", "31", "--form", "3,1"], 64),
        (["--p", "x", "--q", "47", "--r", "31", "--form", "3,1,850"], 64),
    ],
)
def test_verify_exit_codes(args, code, tmp_path):
    assert main(["verify", *args, "--out", str(tmp_path / "c.json")]) == code


def test_usage_errors_go_to_stderr(capsys):
    assert main(["verify"]) == 64
    err = capsys.readouterr()
    assert "usage" in err.err and err.out == ""
    assert main([]) == 64


def test_byte_identical_reruns(tmp_path, ref_cert):
    again = tmp_path / "again.json"
    assert main(["verify", *REF, "--out", str(again)]) == 0
    assert again.read_bytes() == ref_cert.read_bytes()


def test_paranoid_matches_fast_table(tmp_path, ref_cert):
    out = tmp_path / "p.json"
    assert main(["verify", *REF, "--mode", "paranoid", "--out", str(out)]) == 0
    a, b = json.loads(out.read_text()), json.loads(ref_cert.read_text())
    assert a["obstruction"] == b["obstruction"] and a["mode"] == "paranoid"


def test_recheck_pass(ref_cert, capsys):
    assert main(["recheck", str(ref_cert)]) == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_recheck_bit_flipped_witness(ref_cert, tmp_path, capsys):
    doc = json.loads(ref_cert.read_text())
    doc["local"]["3"]["witness"][0] ^= 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["recheck", str(ref_cert), str(bad)]) == 3
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("PASS") and out[1].startswith("FAIL")


def test_recheck_errors(tmp_path):
    assert main(["recheck"]) == 64
    assert main(["recheck", str(tmp_path / "missing.json")]) == 66
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert main(["recheck", str(junk)]) == 65
    partial = tmp_path / "partial.json"
    partial.write_text(json.dumps({"schema_version": 1, "triple": {"p": 7}}))
    assert main(["recheck", str(partial)]) == 65


def test_search(tmp_path, capsys):
    out = tmp_path / "s"
    assert main(["search", "--bound", "50", "--out-dir", str(out)]) == 0
    files = sorted(os.listdir(out))
    assert "7_47_31_3_1_850.cert.json" in files
    assert "verdict" in capsys.readouterr().out
    assert main(["recheck", *[str(out / f) for f in files]]) == 0


def test_search_nothing_found(tmp_path):
    out = tmp_path / "empty"
    assert main(["search", "--bound", "7", "--out-dir", str(out)]) == 0
    assert os.listdir(out) == []


def test_search_unwritable_dir(tmp_path, monkeypatch):
    d = tmp_path / "ro"
    d.mkdir()
    d.chmod(0o500)
    # root bypasses permission bits, so report the directory as unwritable directly
    monkeypatch.setattr(os, "access", lambda path, mode: False)
    assert main(["search", "--bound", "50", "--out-dir", str(d)]) == 66
    assert os.listdir(d) == []


def test_search_out_dir_is_a_file(tmp_path):
    f = tmp_path / "file"
    f.write_text("")
    assert main(["search", "--bound", "50", "--out-dir", str(f / "sub")]) == 66


@pytest.mark.parametrize(
    "signature, lines",
    [
        ("0;0;[(2),(2)]", ["chi = 1", "genus = 1/2"]),
        ("0;0;[]", ["chi = 2", "genus = 0"]),
        ("0;0;[(5)]", ["chi = 6/5", "genus = 2/5"]),
    ],
)
def test_chi(signature, lines, capsys):
    assert main(["chi", "--signature", signature]) == 0
    assert capsys.readouterr().out.splitlines() == lines


def test_chi_parse_error():
    assert main(["chi", "--signature", "0;0;[(2"]) == 64


def test_exclude_two_adic_flag(tmp_path):
    out = tmp_path / "x.json"
    assert main(["verify", *REF, "--exclude-2adic", "--height-bound", "20", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["config"]["exclude_two_adic"] is True
    assert main(["recheck", str(out)]) == 0
