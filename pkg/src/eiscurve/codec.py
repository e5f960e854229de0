"""Canonical JSON encoding for every value the CLI reads or writes.

Rationals are always strings (``"num/den"`` in lowest terms, ``"0"``), never
floats.  ``dumps`` sorts keys so identical values give identical bytes.
Decoders raise :class:`DecodeError` naming the offending path.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .btree import MatrixRep, StableSet
from .dirichlet import BernoulliValue, DirichletCharacter
from .errors import DecodeError
from .modforms import EigenReport, EigenSystem, HeckeDescriptor, QExpansion
from .numkernel import CyclotomicNumber, TruncatedSeries, euler_phi, rational_from_str, rational_to_str
from .selmer import INF, GaloisCharacter, LocalCondition, SelmerProblem, SelmerResult, parse_place


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DecodeError("$", f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _need(d, key: str, path: str):
    if not isinstance(d, dict):
        raise DecodeError(path, "expected an object")
    if key not in d:
        raise DecodeError(f"{path}.{key}", "missing field")
    return d[key]


def _int(x, path: str, minimum: int | None = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DecodeError(path, f"expected an integer, got {x!r}")
    if minimum is not None and x < minimum:
        raise DecodeError(path, f"must be >= {minimum}")
    return x


def _list(x, path: str) -> list:
    if not isinstance(x, list):
        raise DecodeError(path, "expected an array")
    return x


# -- scalars ---------------------------------------------------------------


def decode_rational(x, path: str = "$") -> Fraction:
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    try:
        return rational_from_str(x)
    except ValueError as exc:
        raise DecodeError(path, str(exc)) from None


def encode_cyclotomic(c) -> dict:
    if isinstance(c, CyclotomicNumber):
        return c.to_json()
    return {"order": 1, "coeffs": [rational_to_str(c)]}


def decode_cyclotomic(d, path: str = "$") -> CyclotomicNumber:
    order = _int(_need(d, "order", path), f"{path}.order", 1)
    coeffs = _list(_need(d, "coeffs", path), f"{path}.coeffs")
    if len(coeffs) != euler_phi(order):
        raise DecodeError(f"{path}.coeffs", f"order {order} needs {euler_phi(order)} coefficients, got {len(coeffs)}")
    return CyclotomicNumber(order, [decode_rational(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)])


def encode_scalar(c):
    """Rational scalars as strings, cyclotomic ones as objects."""
    if isinstance(c, CyclotomicNumber):
        return rational_to_str(c.coeffs[0]) if c.is_rational() else c.to_json()
    return rational_to_str(c)


def decode_scalar(x, path: str = "$"):
    if isinstance(x, dict):
        c = decode_cyclotomic(x, path)
        return c.coeffs[0] if c.is_rational() else c
    return decode_rational(x, path)


# -- characters ------------------------------------------------------------


def encode_character(chi: DirichletCharacter) -> dict:
    return chi.to_json()


def decode_character(d, path: str = "$") -> DirichletCharacter:
    modulus = _int(_need(d, "modulus", path), f"{path}.modulus", 1)
    exps = [_int(e, f"{path}.exponents[{i}]") for i, e in enumerate(_list(_need(d, "exponents", path), f"{path}.exponents"))]
    try:
        chi = DirichletCharacter(modulus, tuple(exps))
    except ValueError as exc:
        raise DecodeError(f"{path}.exponents", str(exc)) from None
    if "order" in d and _int(d["order"], f"{path}.order") != chi.order:
        raise DecodeError(f"{path}.order", f"stated order {d['order']} but the exponents give {chi.order}")
    return chi


def encode_bernoulli(b: BernoulliValue) -> dict:
    return {"k": b.k, "character": encode_character(b.character), "value": encode_cyclotomic(b.value)}


# -- q-expansions ----------------------------------------------------------


def encode_qexpansion(f: QExpansion) -> dict:
    return {
        "weight": f.weight,
        "chi": encode_character(f.chi),
        "psi": encode_character(f.psi),
        "level_hint": f.level_hint,
        "prec": f.prec,
        "coeffs": [encode_cyclotomic(c) for c in f.coeffs.coeffs],
    }


def decode_qexpansion(d, path: str = "$") -> QExpansion:
    weight = _int(_need(d, "weight", path), f"{path}.weight")
    chi = decode_character(_need(d, "chi", path), f"{path}.chi")
    psi = decode_character(_need(d, "psi", path), f"{path}.psi")
    level = _int(_need(d, "level_hint", path), f"{path}.level_hint", 1)
    prec = _int(_need(d, "prec", path), f"{path}.prec", 2)
    raw = _list(_need(d, "coeffs", path), f"{path}.coeffs")
    if len(raw) != prec:
        raise DecodeError(f"{path}.coeffs", f"prec is {prec} but {len(raw)} coefficients given")
    coeffs = [decode_cyclotomic(c, f"{path}.coeffs[{i}]") for i, c in enumerate(raw)]
    if all(c.order == 1 for c in coeffs):
        series = TruncatedSeries(tuple(c.coeffs[0] for c in coeffs), "rational")
    else:
        series = TruncatedSeries(tuple(coeffs), "cyclotomic")
    try:
        return QExpansion(series, weight, chi, psi, level)
    except ValueError as exc:
        raise DecodeError(path, str(exc)) from None


# -- Hecke data --------------------------------------------------------------


def decode_eigensystem(d, path: str = "$") -> EigenSystem:
    ops = _list(_need(d, "operators", path), f"{path}.operators")
    entries = []
    for i, item in enumerate(ops):
        p = f"{path}.operators[{i}]"
        text = _need(item, "op", p)
        if not isinstance(text, str):
            raise DecodeError(f"{p}.op", "expected a string like 'T:7'")
        kw = {}
        if "weight" in item:
            kw["weight"] = _int(item["weight"], f"{p}.weight")
        if "nebentypus" in item:
            kw["nebentypus"] = decode_character(item["nebentypus"], f"{p}.nebentypus")
        if "level" in item:
            kw["level"] = _int(item["level"], f"{p}.level", 1)
        try:
            op = HeckeDescriptor.parse(text, **kw)
        except ValueError as exc:
            raise DecodeError(f"{p}.op", str(exc)) from None
        entries.append((op, decode_scalar(_need(item, "eigenvalue", p), f"{p}.eigenvalue")))
    bound = d.get("prime_bound")
    try:
        return EigenSystem(tuple(entries), None if bound is None else _int(bound, f"{path}.prime_bound"))
    except ValueError as exc:
        raise DecodeError(f"{path}.operators", str(exc)) from None


def encode_eigensystem(sys: EigenSystem) -> dict:
    out = {"operators": [{"op": op.label(), "eigenvalue": encode_scalar(ev)} for op, ev in sys.entries]}
    if sys.prime_bound is not None:
        out["prime_bound"] = sys.prime_bound
    return out


def encode_eigen_report(r: EigenReport) -> dict:
    return {
        "passed": r.passed,
        "results": [
            {
                "op": x.descriptor.label(),
                "expected": encode_scalar(x.expected),
                "found": None if x.found is None else encode_scalar(x.found),
                "passed": x.passed,
            }
            for x in r.results
        ],
    }


# -- Selmer ------------------------------------------------------------------


def _encode_place(v):
    return v if v == INF else int(v)


def encode_selmer_problem(P: SelmerProblem) -> dict:
    eta = P.character
    return {
        "p": eta.p,
        "chi": encode_character(eta.dirichlet_part),
        "j": eta.j,
        "sigma": [_encode_place(v) for v in P.sigma],
        "conditions": {str(v): c.value for v, c in P.conditions.items()},
    }


def decode_selmer_problem(d, path: str = "$") -> SelmerProblem:
    p = _int(_need(d, "p", path), f"{path}.p")
    chi = decode_character(_need(d, "chi", path), f"{path}.chi")
    j = _int(_need(d, "j", path), f"{path}.j")
    sigma = []
    for i, v in enumerate(_list(_need(d, "sigma", path), f"{path}.sigma")):
        try:
            sigma.append(parse_place(v))
        except ValueError as exc:
            raise DecodeError(f"{path}.sigma[{i}]", str(exc)) from None
    raw = _need(d, "conditions", path)
    if not isinstance(raw, dict):
        raise DecodeError(f"{path}.conditions", "expected an object")
    conds = {}
    for k, v in raw.items():
        try:
            conds[parse_place(k)] = LocalCondition.parse(v) if isinstance(v, str) else LocalCondition(v)
        except ValueError as exc:
            raise DecodeError(f"{path}.conditions.{k}", str(exc)) from None
    try:
        eta = GaloisCharacter(chi, j, p)
    except ValueError as exc:
        raise DecodeError(path, str(exc)) from None
    try:
        return SelmerProblem(eta, tuple(sigma), conds)
    except ValueError as exc:
        raise DecodeError(f"{path}.sigma", str(exc)) from None


def encode_selmer_result(r: SelmerResult) -> dict:
    return {
        "dimension": r.dimension,
        "symbolic": r.symbolic(),
        "dual_term": {"status": r.dual_term.status, "value": r.dual_term.value, "reason": r.dual_term.reason},
        "ledger": [{"label": e.label, "value": e.value, "justification": e.justification} for e in r.ledger],
        "notes": list(r.notes),
    }


# -- tree ----------------------------------------------------------------------


def encode_matrix_rep(rep: MatrixRep) -> dict:
    return {
        "p": rep.p,
        "generators": [[[rational_to_str(x) for x in row] for row in g] for g in rep.generators],
        "labels": list(rep.labels),
    }


def decode_matrix_rep(d, path: str = "$") -> MatrixRep:
    p = _int(_need(d, "p", path), f"{path}.p", 2)
    gens = []
    for i, g in enumerate(_list(_need(d, "generators", path), f"{path}.generators")):
        gp = f"{path}.generators[{i}]"
        rows = _list(g, gp)
        if len(rows) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in rows):
            raise DecodeError(gp, "expected a 2x2 matrix")
        gens.append([[decode_rational(x, f"{gp}[{a}][{b}]") for b, x in enumerate(r)] for a, r in enumerate(rows)])
    labels = d.get("labels", [])
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise DecodeError(f"{path}.labels", "expected an array of strings")
    try:
        return MatrixRep.of(p, gens, labels)
    except ValueError as exc:
        raise DecodeError(path, str(exc)) from None


def encode_stable_set(ss: StableSet) -> dict:
    return {
        "vertices": [{"a": v.a, "b": rational_to_str(v.b), "radius": r} for v, r in zip(ss.vertices, ss.radii)],
        "geometry": ss.geometry.value,
        "endpoints": [v.label() for v in ss.endpoints],
        "length": ss.length,
        "unbounded": ss.unbounded,
    }
