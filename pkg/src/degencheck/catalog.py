"""Built-in algebras and certificates; text formats for both.

Algebra format::

    algebra T09 dim 6 params alpha
    e1*e2 = e3
    e1*e5 = (alpha + 1)*e6

Certificate format::

    degeneration T19 -> T09 where alpha + 1 != 0
    E1 = t*e1
    E2 = e2 + t^-1*e3 + alpha/((alpha + 1)*t^2)*e4
    ...

Statements are separated by newlines or by ``/``; a ``/`` only separates
statements when the next statement starts right after it (a header or an
``e<i>*e<j> =`` / ``E<i> =`` line), so division inside expressions is safe.
``#`` starts a comment.  The target of a certificate may carry parameter
bindings, ``T09(alpha = 2*beta)``; by default parameters bind by name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterator

from .algebra import AlgebraStructure, InvalidStructure
from .arith import T, RationalFunction, sort_symbols
from .degeneration import BasisFamily, DegenerationCertificate
from .expr import ParseError, format_combination, parse_combination, parse_expression
from .linalg import Matrix


class NotFound(KeyError):
    def __str__(self):
        return f"unknown algebra or certificate {self.args[0]!r}"


class UnknownAlgebra(ParseError):
    pass


class IndexOrderError(ParseError):
    pass


class DuplicateProduct(ParseError):
    pass


class TSymbolForbidden(ParseError):
    pass


class MissingBasisRow(ParseError):
    pass


_SPLIT = re.compile(r"/(?=\s*(?:e\d+\s*\*\s*e\d+\s*=|E\d+\s*=|algebra\b|degeneration\b))")
_ALG_HEADER = re.compile(
    r"algebra\s+(?P<name>[A-Za-z0-9_]+)\s+dim\s+(?P<dim>\d+)"
    r"(?:\s+params\s+(?P<params>[A-Za-z_][A-Za-z0-9_]*(?:\s*,\s*[A-Za-z_][A-Za-z0-9_]*)*))?\s*$"
)
_PRODUCT = re.compile(r"e(?P<i>\d+)\s*\*\s*e(?P<j>\d+)\s*=(?P<rhs>.*)$")
_CERT_HEADER = re.compile(
    r"degeneration\s+(?P<src>[A-Za-z0-9_]+)\s*->\s*(?P<tgt>[A-Za-z0-9_]+)"
    r"(?:\s*\((?P<bind>[^)]*(?:\([^)]*\)[^)]*)*)\))?"
    r"(?:\s+where\s+(?P<where>.*))?\s*$"
)
_ROW = re.compile(r"E(?P<i>\d+)(?:\^t)?\s*=(?P<rhs>.*)$")


@dataclass(frozen=True)
class _Stmt:
    text: str
    line: int
    col: int


def _statements(text: str) -> Iterator[_Stmt]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        start = 0
        for m in list(_SPLIT.finditer(body)) + [None]:
            end = m.start() if m else len(body)
            chunk = body[start:end]
            stripped = chunk.strip()
            if stripped:
                col = start + (len(chunk) - len(chunk.lstrip())) + 1
                yield _Stmt(stripped, lineno, col)
            if m:
                start = m.end()


def _rhs_col(stmt: _Stmt, m: re.Match) -> int:
    return stmt.col + m.start("rhs")


# -- algebras -----------------------------------------------------------------

def _parse_algebra_block(stmts: list[_Stmt]) -> AlgebraStructure:
    head = stmts[0]
    m = _ALG_HEADER.match(head.text)
    if not m:
        raise ParseError("expected 'algebra <name> dim <n> [params <sym,...>]'", head.line, head.col, head.text)
    name = m.group("name")
    dim = int(m.group("dim"))
    if dim < 1:
        raise ParseError("dimension must be positive", head.line, head.col, head.text)
    params = set()
    if m.group("params"):
        params = {p.strip() for p in m.group("params").split(",")}
    if T in params:
        raise TSymbolForbidden("t cannot be an algebra parameter", head.line, head.col, head.text)
    consts: dict = {}
    seen: set = set()
    for st in stmts[1:]:
        pm = _PRODUCT.match(st.text)
        if not pm:
            raise ParseError("expected 'e<i>*e<j> = <combination>'", st.line, st.col, st.text)
        i, j = int(pm.group("i")), int(pm.group("j"))
        if i >= j:
            raise IndexOrderError(f"product e{i}*e{j} must have i < j", st.line, st.col, st.text)
        if j > dim:
            raise ParseError(f"basis index {j} exceeds dimension {dim}", st.line, st.col, st.text)
        if (i, j) in seen:
            raise DuplicateProduct(f"product e{i}*e{j} given twice", st.line, st.col, st.text)
        seen.add((i, j))
        coords = parse_combination(pm.group("rhs"), dim, line=st.line, column=_rhs_col(st, pm))
        for k, c in coords.items():
            if c.mentions(T):
                raise TSymbolForbidden(f"structure constant of e{i}*e{j} mentions t",
                                       st.line, st.col, st.text)
            extra = set(c.symbols) - params
            if extra:
                raise ParseError(f"undeclared parameter(s) {', '.join(sorted(extra))}",
                                 st.line, st.col, st.text)
            consts[(i, j, k)] = c
    return AlgebraStructure(name, dim, consts, frozenset(params))


def _blocks(text: str, *keywords: str) -> list[list[_Stmt]]:
    blocks: list[list[_Stmt]] = []
    for st in _statements(text):
        if st.text.split(None, 1)[0] in keywords:
            blocks.append([st])
        elif st.text.split(None, 1)[0] in ("algebra", "degeneration"):
            raise ParseError(f"unexpected {st.text.split(None, 1)[0]!r} block", st.line, st.col, st.text)
        elif not blocks:
            raise ParseError(f"expected '{keywords[0]} ...' header", st.line, st.col, st.text)
        else:
            blocks[-1].append(st)
    return blocks


def parse_algebras(text: str) -> list[AlgebraStructure]:
    return [_parse_algebra_block(b) for b in _blocks(text, "algebra")]


def parse_algebra(text: str) -> AlgebraStructure:
    algs = parse_algebras(text)
    if len(algs) != 1:
        raise ParseError(f"expected exactly one algebra, found {len(algs)}")
    return algs[0]


def serialize_algebra(A: AlgebraStructure) -> str:
    head = f"algebra {A.name} dim {A.dim}"
    if A.params:
        head += " params " + ",".join(sort_symbols(A.params))
    lines = [head]
    for (i, j), out in sorted(A.products().items()):
        lines.append(f"e{i}*e{j} = {format_combination(out)}")
    return "\n".join(lines) + "\n"


# -- certificates -------------------------------------------------------------

def _parse_certificate_block(stmts: list[_Stmt], catalog) -> DegenerationCertificate:
    head = stmts[0]
    m = _CERT_HEADER.match(head.text)
    if not m:
        raise ParseError("expected 'degeneration <source> -> <target> [where <expr> != 0, ...]'",
                         head.line, head.col, head.text)
    src, tgt = m.group("src"), m.group("tgt")
    algebras = {}
    for name in (src, tgt):
        try:
            algebras[name] = catalog.get(name)
        except NotFound:
            raise UnknownAlgebra(f"unknown algebra {name!r}", head.line, head.col, head.text) from None
    n = algebras[src].dim
    if algebras[tgt].dim != n:
        raise ParseError("source and target dimensions differ", head.line, head.col, head.text)
    bindings = {}
    if m.group("bind"):
        col = head.col + m.start("bind")
        for part in m.group("bind").split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise ParseError("parameter binding must read 'sym = expr'", head.line, col, head.text)
            sym, expr = part.split("=", 1)
            bindings[sym.strip()] = parse_expression(expr, line=head.line, column=col)
    assumed = []
    if m.group("where"):
        col = head.col + m.start("where")
        for cond in m.group("where").split(","):
            if "!=" not in cond:
                raise ParseError("exclusion must read '<expr> != 0'", head.line, col, head.text)
            lhs, rhs = cond.split("!=", 1)
            if parse_expression(rhs, line=head.line, column=col):
                raise ParseError("exclusions are stated as '<expr> != 0'", head.line, col, head.text)
            assumed.append(parse_expression(lhs, line=head.line, column=col))
    rows: dict[int, dict] = {}
    for st in stmts[1:]:
        rm = _ROW.match(st.text)
        if not rm:
            raise ParseError("expected 'E<i> = <combination>'", st.line, st.col, st.text)
        i = int(rm.group("i"))
        if not 1 <= i <= n:
            raise ParseError(f"row E{i} out of range 1..{n}", st.line, st.col, st.text)
        if i in rows:
            raise ParseError(f"row E{i} given twice", st.line, st.col, st.text)
        rows[i] = parse_combination(rm.group("rhs"), n, line=st.line, column=_rhs_col(st, rm))
    missing = [i for i in range(1, n + 1) if i not in rows]
    if missing:
        raise MissingBasisRow(f"missing basis row(s) {', '.join(f'E{i}' for i in missing)}",
                              head.line, head.col, head.text)
    entries = Matrix.from_rows([[rows[i].get(k, RationalFunction(0)) for k in range(1, n + 1)]
                                for i in range(1, n + 1)])
    return DegenerationCertificate(src, tgt, BasisFamily(entries, tuple(assumed)), bindings)


def parse_certificates(text: str, catalog) -> list[DegenerationCertificate]:
    return [_parse_certificate_block(b, catalog) for b in _blocks(text, "degeneration")]


def parse_certificate(text: str, catalog) -> DegenerationCertificate:
    certs = parse_certificates(text, catalog)
    if len(certs) != 1:
        raise ParseError(f"expected exactly one certificate, found {len(certs)}")
    return certs[0]


def serialize_certificate(cert: DegenerationCertificate) -> str:
    head = f"degeneration {cert.source} -> {cert.target}"
    if cert.bindings:
        head += " (" + ", ".join(f"{k} = {v}" for k, v in sorted(cert.bindings.items())) + ")"
    if cert.family.assumed_nonzero:
        head += " where " + ", ".join(f"{e} != 0" for e in cert.family.assumed_nonzero)
    lines = [head]
    F = cert.family.entries
    for i in range(F.rows):
        coords = {k + 1: c for k, c in enumerate(F.row(i)) if c}
        lines.append(f"E{i + 1} = {format_combination(coords)}")
    return "\n".join(lines) + "\n"


# -- catalog ------------------------------------------------------------------

@dataclass
class Catalog:
    algebras: dict[str, AlgebraStructure] = field(default_factory=dict)
    certificates: list[DegenerationCertificate] = field(default_factory=list)

    def get(self, name: str) -> AlgebraStructure:
        try:
            return self.algebras[name]
        except KeyError:
            raise NotFound(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.algebras

    def add(self, algebra: AlgebraStructure):
        if algebra.name in self.algebras:
            raise InvalidStructure(f"algebra {algebra.name!r} already in catalog")
        self.algebras[algebra.name] = algebra

    def certificate(self, cid: str) -> DegenerationCertificate:
        key = cid.replace(" ", "")
        for c in self.certificates:
            if c.id == key:
                return c
        raise NotFound(cid)

    def load_algebras(self, text: str):
        for a in parse_algebras(text):
            self.add(a)

    def load_certificates(self, text: str):
        self.certificates.extend(parse_certificates(text, self))

    def load_text(self, text: str):
        """Load a file holding algebra and/or degeneration blocks."""
        blocks = _blocks(text, "algebra", "degeneration")
        for b in blocks:
            if b[0].text.startswith("algebra"):
                self.add(_parse_algebra_block(b))
        for b in blocks:
            if b[0].text.startswith("degeneration"):
                self.certificates.append(_parse_certificate_block(b, self))

    def copy(self) -> "Catalog":
        return Catalog(dict(self.algebras), list(self.certificates))


CLASSIFIED_ALGEBRAS = ("g5", "M6e") + tuple(f"T{i:02d}" for i in range(20))
RIGID = ("T10", "T17", "T19")


def _data(name: str) -> str:
    return resources.files("degencheck").joinpath("data", name).read_text(encoding="utf-8")


_BUILTIN: Catalog | None = None


def builtin() -> Catalog:
    """Built-in algebras and degeneration certificates (a fresh copy each call)."""
    global _BUILTIN
    if _BUILTIN is None:
        cat = Catalog()
        cat.load_algebras(_data("algebras.txt"))
        cat.load_certificates(_data("table.txt"))
        _BUILTIN = cat
    return _BUILTIN.copy()


__all__ = [
    "Catalog", "NotFound", "UnknownAlgebra", "IndexOrderError", "DuplicateProduct",
    "TSymbolForbidden", "MissingBasisRow", "ParseError", "builtin", "parse_algebra",
    "parse_algebras", "parse_certificate", "parse_certificates", "serialize_algebra",
    "serialize_certificate", "CLASSIFIED_ALGEBRAS", "RIGID",
]
