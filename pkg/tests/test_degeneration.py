import random
from fractions import Fraction

import pytest

import oracles
from degencheck.algebra import AlgebraStructure
from degencheck.arith import ONE, evaluate, substitute
from degencheck.degeneration import (
    BasisFamily,
    DegenerationCertificate,
    ExcludedParameter,
    SingularFamily,
    VerificationReport,
    classify_determinant,
    expected_constants,
    numeric_constants,
    transformed_constants,
    verify_all,
    verify_certificate,
)
from degencheck.expr import parse_expression as P
from degencheck.linalg import Matrix


@pytest.fixture(scope="module")
def reports(catalog):
    return verify_all(catalog)


def test_identity_family_leaves_constants(catalog):
    A = catalog.get("T18")
    assert transformed_constants(A, BasisFamily.identity(6)) == dict(A.constants)


def test_t19_with_scaled_e6(catalog):
    A = catalog.get("T19")
    F = BasisFamily.diagonal([1, 1, 1, 1, 1, P("1/t")])
    c = transformed_constants(A, F)
    assert c[(1, 5, 6)] == P("t") and c[(3, 4, 6)] == P("t")
    others = {k: v for k, v in A.constants.items() if k[2] != 6}
    assert {k: v for k, v in c.items() if k[2] != 6} == others


@pytest.mark.parametrize("name", ["g5", "T05", "T09"])
def test_uniform_scaling(catalog, name):
    A = catalog.get(name)
    c = transformed_constants(A, BasisFamily.diagonal([P("t")] * 6))
    assert c == {k: v * P("t") for k, v in A.constants.items()}


def test_transformed_constants_match_oracle_at_a_point(catalog):
    """c(t0) from the library against an independent Fraction computation."""
    cert = catalog.certificate("T19->g5")
    t0 = Fraction(1, 3)
    F = [[evaluate(x, {"t": t0}) for x in cert.family.entries.row(i)] for i in range(6)]
    S = oracles.tensor("T19")
    got = numeric_constants(cert, catalog, t0)
    for i in range(6):
        for j in range(i + 1, 6):
            want = oracles.frac_solve_left(F, oracles.mul(S, F[i], F[j]))
            for k in range(6):
                assert got.get((i + 1, j + 1, k + 1), 0) == want[k]


def test_singular_family(catalog):
    F = BasisFamily(Matrix.diagonal([1, 1, 1, 1, 1, 0]))
    with pytest.raises(SingularFamily):
        transformed_constants(catalog.get("T00"), F)
    with pytest.raises(SingularFamily):
        classify_determinant(P("0"))


def test_classify_determinant():
    assert classify_determinant(P("-3*t^5/(alpha + 1)")) == "MonomialInT"
    assert classify_determinant(P("t + t^2")) == "NonMonomialNonzero"


def test_table_examples(catalog, reports):
    by_id = {r.certificate: r for r in reports}
    assert by_id["T19->T00"].verified
    r = by_id["T19->T09"]
    assert r.verified and "alpha + 1" in r.assumed_nonzero


def test_full_table(reports):
    assert len(reports) == 19
    assert all(r.verified for r in reports)
    assert all(r.det_class == "MonomialInT" for r in reports)
    assert all(r.dim_der_strict for r in reports)


def test_table_order(catalog, reports):
    assert [r.certificate for r in reports] == [c.id for c in catalog.certificates]


def test_empty_list(catalog):
    assert verify_all(catalog, []) == []


def test_parallel_matches_serial(catalog, reports):
    par = verify_all(catalog, workers=3)
    assert [r.to_dict() for r in par] == [r.to_dict() for r in reports]


@pytest.mark.parametrize("name", list(oracles.PRODUCTS))
def test_reflexivity(catalog, name):
    cert = DegenerationCertificate(name, name, BasisFamily.identity(6))
    r = verify_certificate(cert, catalog, dim_der=False)
    assert r.verified and not r.proper and r.dim_der_strict is None


def test_mutation_yields_exactly_one_failure(catalog):
    cat = catalog.copy()
    T00 = cat.get("T00")
    consts = dict(T00.constants)
    consts[(1, 2, 3)] = consts[(1, 2, 3)] + ONE
    cat.algebras["T00"] = AlgebraStructure("T00", 6, consts)
    out = verify_all(cat, dim_der=False)
    failed = [r for r in out if not r.verified]
    assert [r.certificate for r in failed] == ["T19->T00"]
    (d,) = failed[0].discrepancies
    assert (d.i, d.j, d.k) == (1, 2, 3) and d.computed == "1" and d.expected == "2"


def test_pole_is_reported_as_failure(catalog):
    F = BasisFamily.diagonal([1, 1, 1, 1, 1, P("t")])
    r = verify_certificate(DegenerationCertificate("T19", "T00", F), catalog, dim_der=False)
    assert not r.verified
    assert any("pole" in d.computed for d in r.discrepancies)


def test_excluded_binding(catalog):
    cert = catalog.certificate("T19->T18")
    with pytest.raises(ExcludedParameter, match="alpha"):
        verify_certificate(cert, catalog, assignment={"alpha": Fraction(-1)})
    assert verify_certificate(cert, catalog, assignment={"alpha": Fraction(3)}).verified


def test_report_round_trip(reports):
    for r in reports:
        assert VerificationReport.from_dict(r.to_dict()) == r


def _admissible(cert, catalog, rng):
    names = {cert.source, cert.target}
    syms = set(cert.family.params)
    for n in names:
        syms |= catalog.get(n).params
    while True:
        vals = {s: oracles.random_rational(rng, -20, 20, 9) for s in sorted(syms)}
        if set(vals.values()) & {0, 1, -1, Fraction(-1, 2)}:
            continue
        if all(evaluate(substitute(a, vals), {}) for a in cert.family.assumed_nonzero):
            return vals


@pytest.mark.parametrize("t0", [Fraction(1, 10**3), Fraction(1, 10**4)])
def test_limit_consistency(catalog, t0):
    rng = random.Random(int(1 / t0))
    for cert in catalog.certificates:
        vals = _admissible(cert, catalog, rng)
        got = numeric_constants(cert, catalog, t0, vals)
        target = catalog.get(cert.target).specialize(vals) if vals else catalog.get(cert.target)
        bound = {k: substitute(v, vals) for k, v in cert.bindings.items()}
        want = {k: evaluate(substitute(v, bound), {}) if bound else evaluate(v, {})
                for k, v in target.constants.items()}
        for key in set(got) | set(want):
            assert abs(got.get(key, 0) - want.get(key, 0)) <= 10 * t0, (cert.id, key, vals)


def test_expected_constants_apply_bindings(catalog):
    cert = catalog.certificate("T19->T18")
    exp = expected_constants(cert, catalog.get("T18"))
    assert exp[(1, 5, 6)] == P("alpha + 1")
