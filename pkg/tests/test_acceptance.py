"""Exit criteria.  One PASS/FAIL line per criterion is printed after the run."""

import io
import json
import statistics
import time

import pytest

from sextic_sieve import cli
from sextic_sieve.closed_form import mod_square_closed, residue_families
from sextic_sieve.exclusion import (bound_audit, excluded_set_stream, find_witness,
                                    literal_i_range, theorem_verdict)
from sextic_sieve.sieve import SieveRange, eratosthenes, wheel_sieve
from sextic_sieve.verify import factor_small, search_counterexamples

from test_cli import CASES, GOLDEN


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def median_time(fn, repeat=5):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


@pytest.mark.acceptance(1, "worked examples N=2,12,20 give primes 71,431,719 (<1 ms each)")
def test_ac1_worked_examples():
    for N, P in ((2, 71), (12, 431), (20, 719)):
        code, out, _ = run("check", "--N", str(N), "--m", "1", "--format", "json")
        rec = json.loads(out)
        assert code == 0
        assert rec["P"] == P and rec["verdict"] == "prime" and rec["oracle"] == "prime"
        elapsed = median_time(lambda: run("check", "--N", str(N), "--m", "1"))
        assert elapsed < 1e-3, f"N={N}: {elapsed * 1e3:.3f} ms"


@pytest.mark.acceptance(2, "six residue families reproduced, zero mismatches for i <= 1e5 (<1 s)")
def test_ac2_families():
    t0 = time.perf_counter()
    fams = residue_families(6, 1)
    assert [(f.slope, f.intercept) for f in fams] == [
        (5, 1), (11, 4), (17, 9), (23, 16), (29, 25), (35, 36)]
    mismatches = 0
    for i in range(1, 10**5 + 1):
        q = (i - 1) % 6 + 1
        p = (i - q) // 6
        mismatches += fams[q - 1].member(p) != i * i % (6 * i + 1)
    assert mismatches == 0
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.acceptance(3, "closed form equals direct reduction, 0 < R < Ai+B, A in 2..12")
def test_ac3_mod_theorem():
    mismatches = out_of_range = 0
    for A in range(2, 13):
        for B in range(1, A):
            for i in range(1, 1001):
                R = mod_square_closed(i, A, B)
                mismatches += R != i * i % (A * i + B)
                out_of_range += not (0 < R < A * i + B)
    assert mismatches == 0 and out_of_range == 0


@pytest.mark.acceptance(4, "witness soundness for m in {1,3,5}, N <= 1e4 (<30 s)")
def test_ac4_witness_soundness():
    t0 = time.perf_counter()
    violations = witnesses = 0
    for m in (1, 3, 5):
        for N in range(1, 10**4 + 1):
            w = theorem_verdict(N, m).witness
            if w is None:
                continue
            witnesses += 1
            P = 6 ** (m + 1) * N - 1
            violations += not (w.divisor * w.cofactor == P and 1 < w.divisor < P)
    assert witnesses > 0 and violations == 0
    assert time.perf_counter() - t0 < 30


@pytest.mark.acceptance(5, "sound verdict agrees with the oracle on m=1 N<=1e4, m=3 N<=1e3 (<60 s)")
def test_ac5_iff_equivalence():
    t0 = time.perf_counter()
    assert search_counterexamples([1], 2, 10**4, "sound") == []
    assert search_counterexamples([3], 2, 10**3, "sound") == []
    code, out, _ = run("search", "--m", "1", "--from", "2", "--to", "10000",
                       "--engine", "sound")
    assert code == 0 and json.loads(out) == []
    code, out, _ = run("search", "--m", "3", "--from", "2", "--to", "1000",
                       "--engine", "sound")
    assert code == 0 and json.loads(out) == []
    assert time.perf_counter() - t0 < 60


@pytest.mark.acceptance(6, "bound audit m=1 N<=1e3 lists every small-i miss; N=6 probe P=215=5*43")
def test_ac6_bound_audit():
    rows = bound_audit(1, 2, 1000)
    audited = {r.N for r in rows}
    expected = set()
    for N in range(2, 1001):
        sound = theorem_verdict(N, 1).witness
        reach = literal_i_range(N)
        small = find_witness(N, 1, reach) if reach >= 1 else None
        if sound is not None and small is None:
            expected.add(N)
    assert audited == expected
    stream = dict(excluded_set_stream(1, 1000))
    probe = stream[6]
    assert probe.i == 7 and probe.divisor == 43 and probe.cofactor == 5
    assert factor_small(215) == [5, 43]
    doc = json.loads(run("audit", "--m", "1", "--from", "2", "--to", "1000")[1])
    shown = [r for r in doc["small_i_misses"] if r["N"] == 6]
    assert shown and shown[0]["P"] == 215
    print(f"small-i scan misses {len(rows)} of {len(stream)} composite P; "
          f"literal engine disagreements: {len(doc['literal_disagreements'])}")


@pytest.mark.acceptance(7, "wheel sieve equals Eratosthenes on [1,1e6], 78498 primes, ratio reported (<10 s)")
def test_ac7_sieve_equivalence():
    t0 = time.perf_counter()
    rng = SieveRange(1, 10**6)
    wp, ws = wheel_sieve(rng)
    ep, es = eratosthenes(rng)
    assert wp == ep
    assert len(ep) == 78498 == es.primes_found == ws.primes_found
    code, out, _ = run("bench", "--hi", "1000000")
    rows = [l.split(",") for l in out.splitlines()[1:]]
    assert code == 0 and len(rows) == 6
    top = {r[0]: int(r[4]) for r in rows if r[2] == "1000000"}
    ratio = top["wheel6"] / top["eratosthenes"]
    print(f"marks wheel6={top['wheel6']} eratosthenes={top['eratosthenes']} "
          f"ratio={ratio:.4f}")
    assert time.perf_counter() - t0 < 10


@pytest.mark.acceptance(8, "CLI goldens, exit-code matrix 0/1/2, byte-identical reruns")
def test_ac8_cli_contract(monkeypatch):
    for name, (argv, _) in CASES.items():
        first = run(*argv)
        assert first[0] == 0
        assert first[1] == (GOLDEN / name).read_text(), name
        assert run(*argv)[:2] == first[:2]
    assert run("check", "--N", "0", "--m", "1")[0] == 2
    assert run("families", "--A", "1", "--B", "1")[0] == 2
    assert run("sieve", "--lo", "10", "--hi", "5")[0] == 2
    assert run("search", "--m", "1", "--from", "2", "--to", "10^18")[0] == 2
    assert run("check", "--N", "8", "--m", "1", "--engine", "sound")[0] == 0
    from sextic_sieve import exclusion
    real = exclusion.theorem_verdict
    monkeypatch.setattr(exclusion, "theorem_verdict",
                        lambda N, m: exclusion.Verdict(real(N, m).params, real(N, m).P,
                                                       "composite", None, 0, 0))
    assert run("check", "--N", "20", "--m", "1")[0] == 1
