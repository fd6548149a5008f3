"""Checking degeneration certificates A -> B.

A certificate gives a parametrized basis E_i^t = sum_j a_i^j(t) e_j of A.
The structure constants of A in that basis are rational functions of t;
when each one tends to the corresponding constant of B as t -> 0, B lies
in the orbit closure of A.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

from .algebra import AlgebraStructure, _mul, _sparse
from .arith import T, ZERO, PoleError, Polynomial, RationalFunction, cofactors, as_rf, limit_t0, substitute
from .derivations import derivation_dimension
from .linalg import Matrix, determinant, inverse


class SingularFamily(ValueError):
    pass


class ExcludedParameter(ValueError):
    """A parameter binding makes an assumed-nonzero expression vanish."""


@dataclass(frozen=True)
class BasisFamily:
    """Row i of ``entries`` holds the e-coordinates of E_i^t."""

    entries: Matrix
    assumed_nonzero: tuple[RationalFunction, ...] = ()

    @property
    def dim(self) -> int:
        return self.entries.rows

    @classmethod
    def identity(cls, n: int) -> "BasisFamily":
        return cls(Matrix.identity(n))

    @classmethod
    def diagonal(cls, values) -> "BasisFamily":
        return cls(Matrix.diagonal([as_rf(v) for v in values]))

    @property
    def params(self) -> frozenset:
        syms = set()
        for x in self.entries.entries:
            syms.update(x.symbols)
        for x in self.assumed_nonzero:
            syms.update(x.symbols)
        syms.discard(T)
        return frozenset(syms)

    def specialize(self, assignment: Mapping) -> "BasisFamily":
        for expr in self.assumed_nonzero:
            if not substitute(expr, assignment):
                raise ExcludedParameter(
                    f"binding {_fmt(assignment)} violates the exclusion {expr} != 0")
        return BasisFamily(self.entries.map(lambda x: substitute(x, assignment)),
                           tuple(e for e in (substitute(x, assignment) for x in self.assumed_nonzero)
                                 if not e.is_constant()))


@dataclass(frozen=True)
class DegenerationCertificate:
    source: str
    target: str
    family: BasisFamily
    bindings: Mapping[str, RationalFunction] = field(default_factory=dict)

    @property
    def id(self) -> str:
        return f"{self.source}->{self.target}"

    @property
    def dim(self) -> int:
        return self.family.dim


@dataclass(frozen=True)
class Discrepancy:
    i: int
    j: int
    k: int
    computed: str
    expected: str

    def __str__(self):
        return f"c[{self.i},{self.j}]^{self.k}: limit {self.computed}, expected {self.expected}"


@dataclass
class VerificationReport:
    certificate: str
    source: str
    target: str
    status: str
    determinant: str
    det_class: str
    assumed_nonzero: list[str]
    discrepancies: list[Discrepancy]
    dim_der_source: int | None = None
    dim_der_target: int | None = None
    proper: bool = True

    @property
    def verified(self) -> bool:
        return self.status == "Verified"

    @property
    def dim_der_strict(self) -> bool | None:
        if not self.proper or self.dim_der_source is None:
            return None
        return self.dim_der_source < self.dim_der_target

    def to_dict(self) -> dict:
        return {
            "certificate": self.certificate,
            "source": self.source,
            "target": self.target,
            "status": self.status,
            "determinant": self.determinant,
            "det_class": self.det_class,
            "assumed_nonzero": list(self.assumed_nonzero),
            "discrepancies": [vars(d) for d in self.discrepancies],
            "dim_der": {
                "source": self.dim_der_source,
                "target": self.dim_der_target,
                "strict": self.dim_der_strict,
            },
            "proper": self.proper,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "VerificationReport":
        return cls(
            certificate=d["certificate"],
            source=d["source"],
            target=d["target"],
            status=d["status"],
            determinant=d["determinant"],
            det_class=d["det_class"],
            assumed_nonzero=list(d["assumed_nonzero"]),
            discrepancies=[Discrepancy(**x) for x in d["discrepancies"]],
            dim_der_source=d["dim_der"]["source"],
            dim_der_target=d["dim_der"]["target"],
            proper=d["proper"],
        )

    def summary(self) -> str:
        line = f"{self.certificate}: {self.status} (det {self.determinant}, {self.det_class}"
        if self.assumed_nonzero:
            line += "; assuming " + ", ".join(f"{e} != 0" for e in self.assumed_nonzero)
        line += ")"
        if self.dim_der_strict is not None:
            rel = "<" if self.dim_der_strict else "NOT <"
            line += f" dim Der {self.dim_der_source} {rel} {self.dim_der_target}"
        return line


def _fmt(assignment) -> str:
    return ", ".join(f"{k}={v}" for k, v in assignment.items())


def transformed_constants(A: AlgebraStructure, F: BasisFamily) -> dict[tuple[int, int, int], RationalFunction]:
    """Structure constants of A in the basis given by F, keyed (i, j, k) with i < j."""
    n = A.dim
    if F.dim != n:
        raise ValueError(f"family of size {F.dim} for a {n}-dimensional algebra")
    try:
        Finv = inverse(F.entries)
    except ValueError:
        raise SingularFamily("the basis family has zero determinant") from None
    rows = [_sparse(F.entries.row(i)) for i in range(n)]
    inv_rows = [_sparse(Finv.row(m)) for m in range(n)]
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = _mul(A.table, rows[i], rows[j])
            # coordinates c with c^T F = v^T, i.e. c = v^T F^{-1}
            coords: dict[int, RationalFunction] = {}
            for m, vm in v.items():
                for k, x in inv_rows[m].items():
                    coords[k] = coords.get(k, ZERO) + vm * x
            for k, c in coords.items():
                if c:
                    out[(i + 1, j + 1, k + 1)] = c
    return out


def classify_determinant(det: RationalFunction) -> str:
    """MonomialInT if det = (t-free unit) * t^k, else NonMonomialNonzero."""
    if not det:
        raise SingularFamily("the basis family has zero determinant")
    stripped = RationalFunction(
        det.num.shift_down(T, det.num.min_degree_in(T)),
        det.den.shift_down(T, det.den.min_degree_in(T)),
    )
    return "NonMonomialNonzero" if stripped.mentions(T) else "MonomialInT"


def _t_free_part(p: Polynomial) -> Polynomial:
    if T in p.symbols:
        p = p.shift_down(T, p.min_degree_in(T))
    return p


def _note_assumption(assumed: list[RationalFunction], p: Polynomial):
    """Record p != 0, after dividing out the factors already recorded."""
    p = _t_free_part(p)
    if T in p.symbols:
        return
    for q in assumed:
        while not p.is_constant():
            g, p2, _ = cofactors(p, q.num)
            if g.is_constant():
                break
            p = p2
    if not p.is_constant():
        assumed.append(RationalFunction(p.primitive()))


def expected_constants(cert: DegenerationCertificate, target: AlgebraStructure) -> dict:
    consts = dict(target.constants)
    if cert.bindings:
        consts = {key: substitute(c, cert.bindings) for key, c in consts.items()}
    return {key: c for key, c in consts.items() if c}


def verify_certificate(cert: DegenerationCertificate, catalog, *, dim_der: bool = True,
                       assignment: Mapping | None = None) -> VerificationReport:
    """Check one certificate against the algebras in ``catalog``.

    With ``assignment`` the parameters are first fixed to rational values;
    values that violate the certificate's exclusions raise ExcludedParameter.
    """
    source = catalog.get(cert.source)
    target = catalog.get(cert.target)
    if not (source.dim == target.dim == cert.dim):
        raise ValueError(f"{cert.id}: dimension mismatch")
    family = cert.family
    if assignment:
        family = family.specialize(assignment)
        source = source.specialize(assignment)
        target = target.specialize(assignment)
        cert = DegenerationCertificate(cert.source, cert.target, family,
                                       {k: substitute(v, assignment) for k, v in cert.bindings.items()})

    det = determinant(family.entries)
    det_class = classify_determinant(det)
    assumed: list[RationalFunction] = []
    for a in family.assumed_nonzero:
        _note_assumption(assumed, a.num)
    _note_assumption(assumed, det.num)
    _note_assumption(assumed, det.den)

    computed = transformed_constants(source, family)
    expected = expected_constants(cert, target)
    discrepancies = []
    n = source.dim
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                c = computed.get((i, j, k), ZERO)
                e = expected.get((i, j, k), ZERO)
                _note_assumption(assumed, c.den)
                try:
                    lim = limit_t0(c)
                except PoleError as err:
                    discrepancies.append(Discrepancy(i, j, k, f"pole (t-order {err.order}): {c}", str(e)))
                    continue
                if lim != e:
                    discrepancies.append(Discrepancy(i, j, k, str(lim), str(e)))

    proper = cert.source != cert.target
    report = VerificationReport(
        certificate=cert.id,
        source=cert.source,
        target=cert.target,
        status="Failed" if discrepancies else "Verified",
        determinant=str(det),
        det_class=det_class,
        assumed_nonzero=[str(a) for a in assumed],
        discrepancies=discrepancies,
        proper=proper,
    )
    if dim_der:
        report.dim_der_source = derivation_dimension(source)
        report.dim_der_target = derivation_dimension(target)
    return report


def _verify_one(args):
    cert, catalog, dim_der = args
    return verify_certificate(cert, catalog, dim_der=dim_der)


def verify_all(catalog, certificates=None, *, workers: int | None = None,
               dim_der: bool = True) -> list[VerificationReport]:
    """Verify certificates (default: the catalog's) in their listed order."""
    certs = list(catalog.certificates if certificates is None else certificates)
    if workers is None:
        workers = int(os.environ.get("DEGENCHECK_THREADS", "1") or 1)
    if workers <= 1 or len(certs) <= 1:
        return [verify_certificate(c, catalog, dim_der=dim_der) for c in certs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_one, [(c, catalog, dim_der) for c in certs]))


def numeric_constants(cert: DegenerationCertificate, catalog, t0, assignment: Mapping | None = None) -> dict:
    """Transformed constants evaluated exactly at t = t0 (and parameter values)."""
    from fractions import Fraction

    assignment = dict(assignment or {})
    family = cert.family.specialize(assignment) if assignment else cert.family
    family = BasisFamily(family.entries.map(lambda x: substitute(x, {T: Fraction(t0)})))
    source = catalog.get(cert.source)
    if assignment:
        source = source.specialize(assignment)
    return {key: c.constant_value() for key, c in transformed_constants(source, family).items()}
