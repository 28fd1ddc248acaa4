"""Acceptance criteria 1-14, one test each; a PASS/FAIL line per criterion is printed
(inline with -s, and always in the terminal summary)."""
import io
import json
import random
import time
from contextlib import contextmanager

import pytest

from deltaexp.cli import main
from deltaexp.deltachar import build_psi, pdiv_test, psi_eval_point
from deltaexp.ellcurve import builtin_curves, fixture_primes, rational_torsion
from deltaexp.formalgroup import formal_add, formal_eval, formal_log, required_truncation
from deltaexp.padic import UnramifiedRing, cp_polynomial
from deltaexp.reciprocity import (finiteness_bound, hasse_check, level_invariants,
                                  level_invariants_enumerated, verify_eigen, verify_f1_shadow,
                                  verify_floare, verify_floarenoua, verify_fruct4,
                                  verify_theta_congruence)

TABLE = builtin_curves()
M = 6

# psi(G) mod p, computed once and frozen; 43a1 at 13 is omitted because psi(G) = 0 mod 13 there
GENERATOR_RESIDUES = {
    "37a1": {5: 4, 7: 6, 11: 4, 13: 4},
    "43a1": {11: 4, 17: 4, 19: 9},
    "x3m2": {13: 9, 19: 5, 31: 26, 37: 30},
}

NON_CM_FLOARE = [("11a1", p) for p in (7, 13, 17, 23)] + [("37a1", p) for p in (5, 7, 11, 13)]
CL_FIXTURES = [("32a2", 13), ("32a2", 17), ("36a1", 7), ("36a1", 13)]
FLOARENOUA = [("37a1", 5), ("37a1", 7), ("11a1", 7), ("32a2", 5), ("36a1", 7), ("x3m2", 7)]
EIGEN = [("11a1", 7), ("37a1", 5), ("14a1", 13), ("15a1", 7), ("32a2", 13), ("36a1", 7)]


@pytest.fixture
def criterion(request):
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = elapsed < limit
            verdict = "PASS" if ok and within else "FAIL"
            line = f"criterion {number:2d} {verdict}  {title}  ({elapsed:.2f} s, limit {limit:g} s)"
            lines.append((number, line))
            print(line)
        assert within, f"criterion {number} took {elapsed:.2f} s, limit {limit} s"

    return run


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, [json.loads(line) for line in out.getvalue().splitlines()]


def test_criterion_01_delta_axioms(criterion):
    with criterion(1, "delta-ring axioms, 1000 pairs per (p, d)", 5):
        rng = random.Random(20261016)
        for p in (5, 7, 13):
            for d in (1, 2, 3):
                R = UnramifiedRing(p, d, M)
                for _ in range(1000):
                    x, y = R.random_element(rng), R.random_element(rng)
                    dx, dy = x.fermat_quotient(), y.fermat_quotient()
                    assert (x + y).fermat_quotient() == dx + dy + cp_polynomial(x, y).with_prec(M - 1)
                    assert (x * y).fermat_quotient() == (x ** p * dy + y ** p * dx + dx * dy * p).with_prec(M - 1)


def test_criterion_02_frobenius_laws(criterion):
    with criterion(2, "Frobenius lifts x^p and has order d", 2):
        rng = random.Random(2)
        for p in (5, 7, 13):
            for d in (1, 2, 3):
                R = UnramifiedRing(p, d, M)
                for _ in range(500):
                    x = R.random_element(rng)
                    fx = x.frobenius()
                    assert (fx - x ** p).valuation() >= 1
                    z = fx
                    for _ in range(d - 1):
                        z = z.frobenius()
                    assert z == x


def test_criterion_03_formal_log_linearity(criterion):
    with criterion(3, "formal log is additive over Z_p and W(F_p^2)", 10):
        rng = random.Random(3)
        for label in ("11a1", "37a1"):
            E = TABLE[label]
            for p in (5, 7, 11):
                for d in (1, 2):
                    R = UnramifiedRing(p, d, M)
                    L = formal_log(E, required_truncation(1, M, p))
                    for _ in range(200):
                        t1 = R([p * rng.randrange(p ** (M - 1)) for _ in range(d)])
                        t2 = R([p * rng.randrange(p ** (M - 1)) for _ in range(d)])
                        s = formal_add(E, t1, t2)
                        diff = formal_eval(L, s) - formal_eval(L, t1) - formal_eval(L, t2)
                        assert diff.with_prec(M - 1).is_zero()


def _random_points(E, rng, count):
    tors = [T for T, _ in rational_torsion(E)]
    gens = list(E.generators)
    pts = []
    for _ in range(count):
        P = rng.choice(tors)
        for G in gens:
            P = E.add(P, E.mul(rng.randint(-3, 3), G))
        pts.append(P)
    return pts


def test_criterion_04_psi_homomorphism_and_kernel(criterion):
    with criterion(4, "psi additive, kills torsion, pP is p-divisible", 60):
        rng = random.Random(4)
        for label, E in sorted(TABLE.items()):
            tors = rational_torsion(E)
            for p in fixture_primes(E):
                psi = build_psi(E, p, M)
                for T, _ in tors:
                    assert psi_eval_point(psi, T).valuation() >= M - 1
                pts = _random_points(E, rng, 6)
                for P, Q in zip(pts[::2], pts[1::2]):
                    lhs = psi_eval_point(psi, E.add(P, Q))
                    assert lhs == psi_eval_point(psi, P) + psi_eval_point(psi, Q), (label, p)
                for P in pts[:2] + list(E.generators):
                    assert pdiv_test(psi, [(E.mul(p, P), 1)]).in_pdiv


def test_criterion_05_generator_nonvanishing(criterion):
    with criterion(5, "psi(G) mod p matches the frozen nonzero residues", 30):
        for label, table in GENERATOR_RESIDUES.items():
            E = TABLE[label]
            G = E.generators[0]
            for p, residue in table.items():
                psi = build_psi(E, p, M)
                res = pdiv_test(psi, [(G, 1)])
                assert not res.in_pdiv
                assert res.value.lift() % p == residue


def test_criterion_06_floare(criterion):
    with criterion(6, "f# natural part equals the twisted series to q^200, both branches", 60):
        for label, p in NON_CM_FLOARE + CL_FIXTURES:
            rep = verify_floare(TABLE[label], p, M=3, N_trunc=200)
            assert rep.passed, rep


def test_criterion_07_floarenoua(criterion):
    with criterion(7, "mod-p delta expansion, caps (p+1, 2), q-truncation 8p", 120):
        for label, p in FLOARENOUA:
            rep = verify_floarenoua(TABLE[label], p, caps=(p + 1, 2), N_q=8 * p)
            assert rep.passed, rep


def test_criterion_08_fruct4(criterion):
    with criterion(8, "resummed-twist Frobenius identity on CL fixtures", 10):
        for label, p in CL_FIXTURES:
            assert verify_fruct4(TABLE[label], p, N_trunc=200).passed


def test_criterion_09_eigen(criterion):
    with criterion(9, "U kills f(-1); T(l) eigenvalue a_l/l (incl. l | level)", 10):
        eps0 = 0
        for label, p in EIGEN:
            E = TABLE[label]
            assert verify_eigen(E, p, (2, 3, 5, 7), N_trunc=200).passed
            eps0 += any(E.conductor() % l == 0 for l in (2, 3, 5, 7) if l != p)
        assert eps0 >= 1


def test_criterion_10_theta_and_hasse(criterion):
    with criterion(10, "theta^(p-2) congruence to q^200; E_(p-1) = 1 mod p to q^100", 10):
        for p in (5, 7, 11):
            assert verify_theta_congruence(TABLE["37a1"], p, N_trunc=200).passed
        assert verify_theta_congruence(TABLE["11a1"], 7, N_trunc=200).passed
        for p in (5, 7, 11, 13):
            assert hasse_check(p, 100) is None


def test_criterion_11_f1_shadows(criterion):
    with criterion(11, "f1 = sigma and sigma^p - lam sigma with root sets over F_p", 5):
        for p in (5, 7):
            for lam in range(p):
                assert verify_f1_shadow(p, lam).passed


def test_criterion_12_bound(criterion):
    with criterion(12, "finiteness bound and level invariants", 5):
        assert level_invariants(11) == (1, 10, 60)
        assert finiteness_bound(11, 5, 0)[1] == 13200
        assert finiteness_bound(11, 5, 1)[1] == 37200
        for N in range(5, 31):
            g, nu, lam = level_invariants(N)
            assert level_invariants_enumerated(N) == (nu, lam)


def test_criterion_13_negative_controls(criterion):
    with criterion(13, "mutated a_l break criteria 6-9 at a located monomial; exit codes", 60):
        cases = ([(label, p, "floare") for label, p in NON_CM_FLOARE[:2] + CL_FIXTURES[:2]]
                 + [(label, p, "floarenoua") for label, p in FLOARENOUA[:2] + FLOARENOUA[3:5]]
                 + [(label, p, "fruct4") for label, p in CL_FIXTURES]
                 + [(label, p, "eigen") for label, p in EIGEN[:3]])
        for label, p, ident in cases:
            code, rows = cli("verify", "--curve", label, "-p", str(p), "--identity", ident)
            assert code == 0 and rows[0]["verdict"] == "pass"
            code, rows = cli("verify", "--curve", label, "-p", str(p), "--identity", ident, "--mutate-ap")
            assert code == 1
            (row,) = rows
            assert row["verdict"] == "fail"
            loc = row["first_discrepancy"]
            assert loc and loc != "setup" and "q^" in loc, row
        assert cli("verify", "--identity", "no-such-identity")[0] == 2
        assert cli("bound", "4", "5", "0")[0] == 2


def test_criterion_14_full_suite_single_threaded(criterion):
    with criterion(14, "every identity on the built-in table, --jobs 1", 300):
        code, rows = cli("verify", "--jobs", "1")
        assert code == 0
        assert len(rows) == 6 * 4 * len(TABLE)
        assert all(r["verdict"] == "pass" for r in rows)
