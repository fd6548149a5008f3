"""Acceptance checks, one test per criterion.

Each test prints a single ``[PASS]`` or ``[FAIL]`` line.  Also runnable as
``python tests/test_acceptance.py``.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from degencheck.algebra import (  # noqa: E402
    AlgebraStructure,
    annihilator_dimension,
    check_malcev,
    check_metabelian,
    check_tortkara,
    lcs_dimensions,
)
from degencheck.arith import evaluate, substitute  # noqa: E402
from degencheck.catalog import CLASSIFIED_ALGEBRAS, RIGID, builtin  # noqa: E402
from degencheck.degeneration import numeric_constants, verify_all  # noqa: E402
from degencheck.derivations import derivation_dimension  # noqa: E402
from degencheck.expr import parse_expression  # noqa: E402

# pinned limits and tolerances
IDENTITY_SUITE_SECONDS = 60
TABLE_SECONDS = 300
T_SAMPLE = Fraction(1, 10**4)
CONSTANT_TOLERANCE = Fraction(1, 10**2)
RANDOM_TUPLES = 100
PARAM_POINTS = 3
SEED = 20240601

T_NAMES = [f"T{i:02d}" for i in range(20)]
PROPERTY_TESTS = [
    "tests/test_arith.py", "tests/test_expr.py", "tests/test_linalg.py",
    "tests/test_algebra.py", "tests/test_derivations.py", "tests/test_degeneration.py",
    "tests/test_catalog.py",
]
PROPERTY_SELECTION = (
    "axioms or canonical or multiplicative or limit_matches or round_trip or rank or "
    "determinant or inverse or reflexivity or limit_consistency or antisymmetry or "
    "alternating or linearization or monotone or commutator or lcs_strictly"
)

_catalog = None


def catalog():
    global _catalog
    if _catalog is None:
        _catalog = builtin()
    return _catalog


def report(n, ok, detail, capsys=None):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


def test_criterion_1_identity_suite(capsys):
    start = time.perf_counter()
    bad = []
    for name in CLASSIFIED_ALGEBRAS:
        A = catalog().get(name)
        try:
            AlgebraStructure(A.name, A.dim, dict(A.constants), A.params)
        except ValueError:
            bad.append(f"{name}: invalid input")
            continue
        if check_tortkara(A) is not None:
            bad.append(f"{name}: {check_tortkara(A)}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < IDENTITY_SUITE_SECONDS
    report(1, ok, f"{len(CLASSIFIED_ALGEBRAS) - len(bad)}/{len(CLASSIFIED_ALGEBRAS)} algebras "
                  f"Tortkara in {elapsed:.1f}s (limit {IDENTITY_SUITE_SECONDS}s) {bad or ''}", capsys)


def test_criterion_2_malcev_separation(capsys):
    malcev = [n for n in ("g5", "M6e") if check_malcev(catalog().get(n)) is None]
    non = [n for n in T_NAMES if check_malcev(catalog().get(n)) is not None]
    ok = malcev == ["g5", "M6e"] and non == T_NAMES
    report(2, ok, f"Malcev: {malcev}; non-Malcev T algebras: {len(non)}/20", capsys)


def test_criterion_3_metabelian_uniqueness(capsys):
    fails = [n for n in T_NAMES if check_metabelian(catalog().get(n)) is not None]
    report(3, fails == ["T19"], f"non-metabelian among T00..T19: {fails}", capsys)


def test_criterion_4_rigidity_fingerprint(capsys):
    dims = {n: derivation_dimension(A) for n, A in catalog().algebras.items() if A.dim == 6}
    rigid = {n: dims[n] for n in RIGID}
    others = {n: d for n, d in dims.items() if n not in RIGID}
    ok = all(d == 7 for d in rigid.values()) and all(d >= 8 for d in others.values())
    report(4, ok, f"dim Der {rigid}; min over the other {len(others)} = {min(others.values())}",
           capsys)


def test_criterion_5_table_verification(capsys):
    start = time.perf_counter()
    reports = verify_all(catalog())
    elapsed = time.perf_counter() - start
    by_id = {r.certificate: r for r in reports}
    failures = [f"{r.certificate}: {'; '.join(map(str, r.discrepancies))}"
                for r in reports if not r.verified]
    alpha_ok = all(by_id[c].assumed_nonzero == ["alpha + 1"] for c in ("T19->T09", "T19->T18"))
    eps_ok = by_id["T19->M6e"].verified and "eps" in catalog().get("M6e").params
    ok = len(reports) == 19 and not failures and alpha_ok and eps_ok and elapsed < TABLE_SECONDS
    report(5, ok, f"{sum(r.verified for r in reports)}/{len(reports)} verified in {elapsed:.1f}s "
                  f"(limit {TABLE_SECONDS}s); alpha rows exclude {{alpha + 1}}: {alpha_ok}; "
                  f"eps row over Q(eps): {eps_ok} {failures or ''}", capsys)


def test_criterion_6_dim_der_monotone(capsys):
    bad = []
    for c in catalog().certificates:
        s, t = derivation_dimension(catalog().get(c.source)), derivation_dimension(catalog().get(c.target))
        if c.source != c.target and not s < t:
            bad.append(f"{c.id}: {s} !< {t}")
    report(6, not bad, f"{len(catalog().certificates) - len(bad)}/{len(catalog().certificates)} "
                       f"proper certificates strictly increase dim Der {bad or ''}", capsys)


def _admissible_point(cert, rng):
    syms = set(cert.family.params) | catalog().get(cert.source).params | catalog().get(cert.target).params
    while True:
        vals = {s: oracles.random_rational(rng, -20, 20, 9) for s in sorted(syms)}
        if all(evaluate(substitute(a, vals), {}) for a in cert.family.assumed_nonzero):
            return vals


def test_criterion_7_oracle_cross_checks(capsys):
    rng = random.Random(SEED)
    problems = []
    # (a) un-linearized identity on random rational tuples
    for name in oracles.PRODUCTS:
        S = oracles.tensor(name, values=oracles.random_params(name, rng))
        for _ in range(RANDOM_TUPLES):
            a, b, c = (oracles.random_vector(rng) for _ in range(3))
            if any(oracles.tortkara_residual(S, a, b, c)):
                problems.append(f"7a {name}")
                break
    # (b) transformed constants near t = 0
    worst = Fraction(0)
    for cert in catalog().certificates:
        vals = _admissible_point(cert, rng)
        got = numeric_constants(cert, catalog(), T_SAMPLE, vals)
        target = catalog().get(cert.target)
        bound = {k: substitute(v, vals) for k, v in cert.bindings.items()}
        want = {}
        for key, c in target.constants.items():
            c = substitute(c, bound) if bound else c
            want[key] = evaluate(c, vals) if c.symbols else c.constant_value()
        for key in set(got) | set(want):
            diff = abs(got.get(key, 0) - want.get(key, 0))
            worst = max(worst, diff)
            if diff > CONSTANT_TOLERANCE:
                problems.append(f"7b {cert.id} {key}")
    # (c) numeric derivation dimension at random points
    for name in ("M6e", "T09", "T18"):
        generic = derivation_dimension(catalog().get(name))
        for _ in range(PARAM_POINTS):
            S = oracles.tensor(name, values=oracles.random_params(name, rng))
            if oracles.derivation_dim_numeric(S) != generic:
                problems.append(f"7c {name}")
    report(7, not problems, f"(a) {len(oracles.PRODUCTS)} algebras x {RANDOM_TUPLES} tuples; "
                            f"(b) max |c(t0) - c| = {float(worst):.2e} <= {float(CONSTANT_TOLERANCE)} "
                            f"at t0 = {T_SAMPLE}; (c) {PARAM_POINTS} points each for M6e, T09, T18 "
                            f"{problems or ''}", capsys)


def test_criterion_8_t09_invariants(capsys):
    T09 = catalog().get("T09")
    swapped = T09.specialize({"alpha": parse_expression("-alpha - 1")}, name="T09'")
    pairs = {
        "dim Der": (derivation_dimension(T09), derivation_dimension(swapped)),
        "lcs": (lcs_dimensions(T09), lcs_dimensions(swapped)),
        "ann": (annihilator_dimension(T09), annihilator_dimension(swapped)),
    }
    ok = all(a == b for a, b in pairs.values()) and swapped.params == {"alpha"}
    report(8, ok, "T09(alpha) vs T09(-alpha-1): " + ", ".join(f"{k} {a}" for k, (a, _) in pairs.items()),
           capsys)


def test_criterion_9_property_suites(capsys):
    root = Path(__file__).parent.parent
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *PROPERTY_TESTS,
         "-k", PROPERTY_SELECTION],
        cwd=root, capture_output=True, text=True,
    )
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    report(9, proc.returncode == 0, f"property suites: {tail}", capsys)


if __name__ == "__main__":
    failed = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn(None)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)

