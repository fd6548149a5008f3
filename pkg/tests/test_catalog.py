from pathlib import Path

import pytest
import sympy as sp

import oracles
from degencheck.algebra import AlgebraStructure, check_malcev, check_metabelian, check_tortkara
from degencheck.catalog import (
    CLASSIFIED_ALGEBRAS,
    Catalog,
    DuplicateProduct,
    IndexOrderError,
    MissingBasisRow,
    NotFound,
    ParseError,
    TSymbolForbidden,
    UnknownAlgebra,
    builtin,
    parse_algebra,
    parse_algebras,
    parse_certificate,
    serialize_algebra,
    serialize_certificate,
)
from degencheck.expr import parse_expression as P

GOLDEN = Path(__file__).parent / "golden"


def _strip_comments(text):
    return "\n".join(line for line in text.splitlines() if not line.startswith("#")).strip()


def test_builtin_contents(catalog):
    assert len(catalog.algebras) == 23
    assert set(CLASSIFIED_ALGEBRAS) | {"abelian6"} == set(catalog.algebras)
    assert len(CLASSIFIED_ALGEBRAS) == 22
    assert len(catalog.certificates) == 19
    assert catalog.get("T09").params == {"alpha"} == catalog.get("T18").params
    assert catalog.get("M6e").params == {"eps"}


def test_builtin_is_a_fresh_copy():
    a = builtin()
    a.certificates.clear()
    assert len(builtin().certificates) == 19


def test_lookup(catalog):
    T17 = catalog.get("T17")
    assert T17.products() == {
        (1, 2): {3: P("1")}, (1, 3): {4: P("1")}, (1, 4): {5: P("1")},
        (2, 3): {5: P("1")}, (2, 5): {6: P("1")},
    }
    with pytest.raises(NotFound):
        catalog.get("T99")
    with pytest.raises(NotFound):
        catalog.certificate("T99->T00")


@pytest.mark.parametrize("name", list(oracles.PRODUCTS))
def test_matches_independent_transcription(catalog, name):
    A = catalog.get(name)
    want = {(i, j, k): sp.sympify(c) for (i, j), out in oracles.PRODUCTS[name].items()
            for k, c in out.items()}
    got = {key: sp.sympify(str(c)) for key, c in A.constants.items()}
    assert set(got) == set(want)
    assert all(sp.simplify(got[key] - want[key]) == 0 for key in want)


def test_golden_algebras(catalog):
    text = "\n".join(serialize_algebra(a) for a in catalog.algebras.values())
    assert text.strip() == _strip_comments((GOLDEN / "algebras.txt").read_text())


def test_golden_certificates(catalog):
    text = "\n".join(serialize_certificate(c) for c in catalog.certificates)
    assert text.strip() == _strip_comments((GOLDEN / "certificates.txt").read_text())


def test_parse_examples():
    A = parse_algebra("algebra T00 dim 6 / e1*e2=e3 / e1*e3=e4 / e2*e4=e5")
    assert A == builtin().get("T00")
    B = parse_algebra("algebra A dim 2")
    assert B.dim == 2 and not B.constants
    with pytest.raises(IndexOrderError):
        parse_algebra("algebra B dim 3 / e2*e1=e3")


def test_slash_inside_expression_is_division():
    A = parse_algebra("algebra X dim 3 params alpha / e1*e2 = alpha/2*e3")
    assert A.constant(1, 2, 3) == P("alpha/2")


@pytest.mark.parametrize("text, exc", [
    ("algebra X dim 3\ne1*e2 = e3\ne1*e2 = e3", DuplicateProduct),
    ("algebra X dim 3\ne1*e2 = t*e3", TSymbolForbidden),
    ("algebra X dim 3 params t", TSymbolForbidden),
    ("algebra X dim 3\ne1*e4 = e3", ParseError),
    ("algebra X dim 3\ne1*e2 = alpha*e3", ParseError),
    ("algebra X dim 3\ne1*e2 = e3 +", ParseError),
    ("algebra X\n", ParseError),
    ("e1*e2 = e3", ParseError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_algebra(text)


def test_parse_error_location():
    with pytest.raises(ParseError) as err:
        parse_algebra("algebra X dim 3\n\ne1*e2 = e3 + *e1")
    assert err.value.line == 3
    assert err.value.column == 14


def test_algebra_round_trip(catalog):
    for A in catalog.algebras.values():
        assert parse_algebra(serialize_algebra(A)) == A
    text = "\n".join(serialize_algebra(a) for a in catalog.algebras.values())
    assert parse_algebras(text) == list(catalog.algebras.values())


def test_certificate_round_trip(catalog):
    for c in catalog.certificates:
        again = parse_certificate(serialize_certificate(c), catalog)
        assert again == c
        assert serialize_certificate(again) == serialize_certificate(c)


T19_T00 = """degeneration T19 -> T00
E1 = e1
E2 = e2
E3 = e3
E4 = e4
E5 = e5
E6 = t^-1*e6
"""


def test_transcribed_row_equals_builtin(catalog):
    assert parse_certificate(T19_T00, catalog) == catalog.certificate("T19->T00")


def test_certificate_errors(catalog):
    five_rows = T19_T00.replace("E6 = t^-1*e6\n", "")
    with pytest.raises(MissingBasisRow):
        parse_certificate(five_rows, catalog)
    with pytest.raises(UnknownAlgebra):
        parse_certificate(T19_T00.replace("T00", "T99"), catalog)
    with pytest.raises(ParseError):
        parse_certificate(T19_T00.replace("E3 = e3", "E3 = e3 + 1"), catalog)
    with pytest.raises(ParseError):
        parse_certificate(T19_T00 + "E6 = e6\n", catalog)


def test_certificate_bindings_and_exclusions(catalog):
    text = T19_T00.replace("T19 -> T00", "T19 -> T09 (alpha = 2*beta) where beta != 0")
    c = parse_certificate(text, catalog)
    assert c.bindings == {"alpha": P("2*beta")}
    assert c.family.assumed_nonzero == (P("beta"),)
    assert parse_certificate(serialize_certificate(c), catalog) == c


def test_one_line_certificate(catalog):
    one = " / ".join(T19_T00.strip().splitlines())
    assert parse_certificate(one, catalog) == catalog.certificate("T19->T00")


def test_load_text_mixed(catalog):
    cat = catalog.copy()
    cat.load_text("algebra Z dim 6 / e1*e2 = e3\n" + T19_T00.replace("T00", "Z"))
    assert "Z" in cat and cat.certificates[-1].id == "T19->Z"


def test_catalog_rejects_duplicate_names(catalog):
    cat = Catalog()
    cat.add(AlgebraStructure.abelian(2))
    with pytest.raises(ValueError):
        cat.add(AlgebraStructure.abelian(2))


def test_identity_classification(catalog):
    T = [f"T{i:02d}" for i in range(20)]
    assert all(check_tortkara(catalog.get(n)) is None for n in T)
    assert check_malcev(catalog.get("g5")) is None and check_malcev(catalog.get("M6e")) is None
    assert all(check_malcev(catalog.get(n)) is not None for n in T)
    assert [n for n in T if check_metabelian(catalog.get(n)) is not None] == ["T19"]
