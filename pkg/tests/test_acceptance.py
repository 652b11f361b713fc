"""End-to-end acceptance checks; each test carries a ``criterion`` marker and
the terminal summary prints one PASS/FAIL line per criterion."""

import itertools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from stackylg.arithmetic import REAL, Place, factorize, hilbert_symbol, primes_up_to
from stackylg.certificate import Certificate
from stackylg.cli import main
from stackylg.forms import BinaryQuadraticForm, DiagonalForm
from stackylg.hypotheses import PrimeTriple
from stackylg.local import (
    all_squareclasses,
    diagonal_labels,
    local_diagonal,
    represents_squareclass,
)
from stackylg.stacky import lemma_grid_violations
from stackylg.verifier import brute_force_search, recheck, verify_global_obstruction

p, q, r = 7, 47, 31
T = PrimeTriple(p, q, r)
REF = BinaryQuadraticForm(3, 1, 850)
VERIFY = ["verify", "--p", "7", "--q", "47", "--r", "31", "--form", "3,1,850"]
FOUR = {"real", str(p), str(q), str(r)}

R_, P_, Q_, S_ = "real", str(p), str(q), str(r)
# square values at / failures at, over {R, Q_p, Q_q, Q_r}
EXPECTED_ROWS = {
    1: ({R_, Q_}, {P_, S_}),
    p: ({R_, Q_}, {P_, S_}),
    q: ({R_, P_}, {Q_, S_}),
    r: ({R_, P_}, {Q_, S_}),
    p * q: ({R_, P_}, {Q_, S_}),
    p * r: ({R_, P_}, {Q_, S_}),
    q * r: ({R_, Q_}, {P_, S_}),
    p * q * r: ({R_, Q_}, {P_, S_}),
}


def pattern(row):
    return set(row.square_at) & FOUR, set(row.fails_at) & FOUR


@pytest.fixture(scope="module")
def table():
    return verify_global_obstruction(T, REF)


def _verify_cli(tmp_path, *extra):
    out = tmp_path / "cert.json"
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "stackylg", *VERIFY, *extra, "--out", str(out)],
        capture_output=True,
        text=True,
    )
    return proc, time.perf_counter() - start, out


def _check_ref_certificate(path):
    doc = json.loads(path.read_text())
    cert = Certificate.loads(path.read_text())
    g = doc["genus"]
    assert Fraction(g["g_num"], g["g_den"]) == Fraction(1, 2)
    local = doc["local"]
    assert local["real"]["method"] == "positive_definite"
    for ell in set(primes_up_to(100)) | {2, p, q, r}:
        assert str(ell) in local, ell
    assert local["rest"]["method"] == "good_reduction"
    rows = doc["obstruction"]
    assert len(rows) == 32
    assert {tuple(row["t_exponents"]) for row in rows} == set(itertools.product((0, 1), repeat=5))
    for row in rows:
        assert set(row["fails_at"]) & FOUR, row
    assert doc["verdict"] is True
    assert recheck(cert)


@pytest.mark.criterion(1, "reference instance end-to-end (fast <= 10 s, paranoid <= 5 min)")
def test_reference_instance_fast(tmp_path):
    proc, elapsed, out = _verify_cli(tmp_path)
    assert proc.returncode == 0, proc.stderr
    _check_ref_certificate(out)
    print(f"fast verify: {elapsed:.2f} s")
    assert elapsed <= 10


@pytest.mark.criterion(1, "reference instance end-to-end (fast <= 10 s, paranoid <= 5 min)")
def test_reference_instance_paranoid(tmp_path):
    proc, elapsed, out = _verify_cli(tmp_path, "--mode", "paranoid")
    assert proc.returncode == 0, proc.stderr
    _check_ref_certificate(out)
    assert json.loads(out.read_text())["mode"] == "paranoid"
    print(f"paranoid verify: {elapsed:.2f} s")
    assert elapsed <= 300


@pytest.mark.criterion(2, "obstruction rows for t in {1,p,q,r,pq,pr,qr,pqr} match the expected patterns")
def test_bullets(table):
    for t, (square, fails) in EXPECTED_ROWS.items():
        assert pattern(table.row(t)) == (square, fails), t


@pytest.mark.criterion(3, "multiplier laws: 2t keeps the pattern, -t and -2t fail at the real place")
def test_multiplier_laws(table):
    for t in EXPECTED_ROWS:
        base = pattern(table.row(t))
        assert pattern(table.row(2 * t)) == base
        for s in (-t, -2 * t):
            row = table.row(s)
            assert "real" in row.fails_at
            # every condition reversed
            assert pattern(row) == (base[1], base[0])


@pytest.mark.criterion(4, "local diagonalizations at 7, 47, 31")
def test_local_diagonals():
    assert diagonal_labels(local_diagonal(REF, T, 7)) == ("u", "7u")
    assert diagonal_labels(local_diagonal(REF, T, 47)) == ("1", "47u")
    assert diagonal_labels(local_diagonal(REF, T, 31)) == ("u", "31u")


@pytest.mark.criterion(5, "Hilbert path equals exhaustive oracle; product formula on 10^4 pairs")
@pytest.mark.parametrize("ell", [3, 5, 7, 11, 13, 31, 47, 2])
def test_oracle_equivalence(ell):
    classes = all_squareclasses(ell)
    reps = [c.representative() for c in classes]
    cases = disagreements = 0
    for a, b in itertools.product(reps, repeat=2):
        g = DiagonalForm(a, b)
        for t in classes:
            cases += 1
            fast = represents_squareclass(g, t, ell)
            slow = represents_squareclass(g, t, ell, method="oracle")
            disagreements += fast != slow
    print(f"ell={ell}: {cases} cases, {disagreements} disagreements")
    assert disagreements == 0


@pytest.mark.criterion(5, "Hilbert path equals exhaustive oracle; product formula on 10^4 pairs")
def test_product_formula():
    rng = random.Random(5)
    n = 10_000
    for _ in range(n):
        a = rng.choice((1, -1)) * rng.randint(1, 10**4)
        b = rng.choice((1, -1)) * rng.randint(1, 10**4)
        places = [REAL] + [Place(ell) for ell in factorize(2 * a * b)]
        prod = 1
        for v in places:
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1, (a, b)


@pytest.mark.criterion(6, "search regression at bounds 50 and 150 (<= 2 min)")
def test_search_regression(tmp_path, capsys):
    start = time.perf_counter()
    d50, d150 = tmp_path / "b50", tmp_path / "b150"
    assert main(["search", "--bound", "50", "--out-dir", str(d50)]) == 0
    found = [f for f in d50.iterdir() if f.name.startswith("7_47_31_")]
    assert found
    assert main(["recheck", *map(str, found)]) == 0
    assert main(["search", "--bound", "150", "--out-dir", str(d150)]) == 0
    files = sorted(d150.iterdir())
    assert files
    for f in files:
        cert = Certificate.loads(f.read_text())
        assert cert.verdict and recheck(cert), f.name
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    print(f"search: {len(files)} certificates at bound 150, {elapsed:.1f} s")
    assert elapsed <= 120


@pytest.mark.criterion(7, "genus < 1/2 lemma has no violations on the signature grid")
def test_lemma_grid():
    n, bad = lemma_grid_violations(
        max_genus=2, max_punctures=2, max_points=3, max_order=6, max_filtration=3
    )
    print(f"lemma grid: {n} signatures, {len(bad)} violations")
    assert n > 0 and bad == []


@pytest.mark.criterion(8, "no solutions up to height 200 over all 32 twists (<= 60 s)")
def test_brute_force_emptiness():
    start = time.perf_counter()
    res = brute_force_search(T, REF, 200)
    elapsed = time.perf_counter() - start
    print(f"brute force: {res.scanned} tuples in {elapsed:.1f} s")
    assert res.solutions == ()
    assert res.scanned == 401**2 * 400 * 32
    assert elapsed <= 60
