"""``eiscurve`` command-line front end.

Exit status: 0 on success, 2 on argument or input-format errors, 1 on
domain errors.  Error lines look like ``error[parity]: ...`` on stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from . import codec
from .btree import parse_vertex, reducibility_index_check, reduction_at, residual_characters, stable_set
from .dirichlet import characters_mod, gen_bernoulli, gen_bernoulli_oracle
from .errors import EiscurveError
from .modforms import (
    HeckeDescriptor,
    e2_series,
    eigencheck,
    eigensystem_verify,
    eisenstein_series,
    hecke_apply,
    refine,
)
from .selmer import selmer_dimension


class ArgumentError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so ``main`` owns every exit status."""

    def error(self, message):
        raise ArgumentError(f"{self.prog}: {message}")


# -- io helpers --------------------------------------------------------------


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ArgumentError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str | None):
    return codec.loads(_read(path))


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    out = getattr(args, "output", None)
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _character(modulus: int, index: int):
    chars = characters_mod(modulus)
    if not 0 <= index < len(chars):
        raise ArgumentError(f"--char-index must be in [0, {len(chars)}) for modulus {modulus}")
    return chars[index]


def _value_text(v) -> str:
    enc = codec.encode_scalar(v)
    return enc if isinstance(enc, str) else codec.dumps(enc)


# -- subcommands -------------------------------------------------------------


def cmd_characters(args):
    chars = characters_mod(args.modulus)
    if args.json:
        rows = [
            {"index": i, "character": c.to_json(), "conductor": c.conductor, "parity": c.parity()}
            for i, c in enumerate(chars)
        ]
        return _emit(args, codec.dumps(rows))
    lines = [
        f"{i}: exponents={list(c.exponents)} order={c.order} conductor={c.conductor} parity={c.parity():+d}"
        for i, c in enumerate(chars)
    ]
    _emit(args, "\n".join(lines))


def cmd_bernoulli(args):
    psi = _character(args.modulus, args.char_index)
    if not psi.is_primitive():
        raise ArgumentError(f"character {args.char_index} mod {args.modulus} is not primitive (conductor {psi.conductor})")
    fn = gen_bernoulli_oracle if args.oracle else gen_bernoulli
    b = fn(args.k, psi)
    if args.json:
        return _emit(args, codec.dumps(codec.encode_bernoulli(b)))
    _emit(args, _value_text(b.value))


def cmd_eisenstein(args):
    if args.e2:
        f = e2_series(args.prec)
    else:
        chi = _character(args.chi_modulus, args.chi_index)
        psi = _character(args.psi_modulus, args.psi_index)
        f = eisenstein_series(args.k, chi, psi, args.prec)
    _emit(args, codec.dumps(codec.encode_qexpansion(f)))


def cmd_refine(args):
    f = codec.decode_qexpansion(_load(args.input))
    _emit(args, codec.dumps(codec.encode_qexpansion(refine(f, args.prime, args.mode))))


def _op(text: str) -> HeckeDescriptor:
    try:
        return HeckeDescriptor.parse(text)
    except ValueError as exc:
        raise ArgumentError(f"--op: {exc}") from None


def cmd_hecke(args):
    op = _op(args.op)
    f = codec.decode_qexpansion(_load(args.input))
    _emit(args, codec.dumps(codec.encode_qexpansion(hecke_apply(op, f))))


def cmd_eigencheck(args):
    op = _op(args.op)
    f = codec.decode_qexpansion(_load(args.input))
    lam = eigencheck(op, f)
    if args.json:
        return _emit(args, codec.dumps({"op": op.label(), "eigenvalue": None if lam is None else codec.encode_scalar(lam)}))
    _emit(args, f"eigenvalue: {'none' if lam is None else _value_text(lam)}")


def cmd_eigensystem(args):
    system = codec.decode_eigensystem(_load(args.spec))
    f = codec.decode_qexpansion(_load(args.input))
    report = eigensystem_verify(f, system)
    if args.json:
        return _emit(args, codec.dumps(codec.encode_eigen_report(report)))
    lines = []
    for r in report.results:
        found = "none" if r.found is None else _value_text(r.found)
        lines.append(f"{r.descriptor.label()}: expected {_value_text(r.expected)} found {found} {'pass' if r.passed else 'FAIL'}")
    lines.append(f"overall: {'pass' if report.passed else 'FAIL'}")
    _emit(args, "\n".join(lines))


def cmd_selmer(args):
    problem = codec.decode_selmer_problem(_load(args.problem))
    res = selmer_dimension(problem, assume_dual=args.assume_dual)
    if args.json:
        return _emit(args, codec.dumps(codec.encode_selmer_result(res)))
    ledger = ",".join("?" if v is None else str(v) for v in res.term_values())
    lines = [f"dimension: {res.symbolic()}", f"ledger: {ledger}", f"dual term: {res.dual_term.status} ({res.dual_term.reason})"]
    for e in res.ledger:
        lines.append(f"  {'?' if e.value is None else e.value:>3}  {e.label}  [{e.justification}]")
    lines.extend(f"note: {n}" for n in res.notes)
    _emit(args, "\n".join(lines))


def cmd_stable_set(args):
    rep = codec.decode_matrix_rep(_load(args.rep))
    ss = stable_set(rep, args.cap)
    if args.json:
        return _emit(args, codec.dumps(codec.encode_stable_set(ss)))
    lines = [
        f"geometry: {ss.geometry.value}",
        f"length: {ss.length}",
        f"unbounded: {'yes' if ss.unbounded else 'no'}",
        f"endpoints: {' '.join(v.label() for v in ss.endpoints) or '-'}",
        "vertices:",
    ]
    lines.extend(f"  {v.label()}  r={r}" for v, r in zip(ss.vertices, ss.radii))
    _emit(args, "\n".join(lines))


def cmd_classify(args):
    rep = codec.decode_matrix_rep(_load(args.rep))
    try:
        v = parse_vertex(args.vertex, rep.p)
    except ValueError as exc:
        raise ArgumentError(f"--vertex: {exc}") from None
    red, cls = reduction_at(v, rep)
    chars = residual_characters(v, rep)
    if args.json:
        out = {
            "vertex": v.label(),
            "class": cls.value,
            "reduction": [[list(row) for row in m] for m in red],
            "residual_characters": None if chars is None else [list(c) for c in chars],
        }
        return _emit(args, codec.dumps(out))
    lines = [f"vertex: {v.label()}", f"class: {cls.value}"]
    for lab, m in zip(rep.labels, red):
        lines.append(f"  {lab} mod {rep.p}: {[list(r) for r in m]}")
    _emit(args, "\n".join(lines))


def _psi_map(text: str, flag: str) -> dict[str, int]:
    """``"M1=1,M2=4"`` -> ``{"M1": 1, "M2": 4}``."""
    out = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        lab, sep, val = part.partition("=")
        try:
            out[lab.strip()] = int(val)
        except ValueError:
            raise ArgumentError(f"{flag}: expected LABEL=INT pairs, got {part!r}") from None
        if not sep:
            raise ArgumentError(f"{flag}: expected LABEL=INT pairs, got {part!r}")
    return out


def cmd_index_check(args):
    rep = codec.decode_matrix_rep(_load(args.rep))
    psi1, psi2 = _psi_map(args.psi1, "--psi1"), _psi_map(args.psi2, "--psi2")
    ok = reducibility_index_check(rep, psi1, psi2, args.n, args.words)
    if args.json:
        return _emit(args, codec.dumps({"n": args.n, "words": args.words, "holds": ok}))
    _emit(args, f"trace congruence mod {rep.p}^{args.n} over words of length <= {args.words}: {'holds' if ok else 'fails'}")


# -- parser --------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    kw = dict(allow_abbrev=False)
    parser = _Parser(prog="eiscurve", description="Exact Eisenstein, Selmer and lattice computations.", **kw)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help: str, io: bool = False, json: bool = True):
        p = sub.add_parser(name, help=help, description=help, **kw)
        if io:
            p.add_argument("--input", default=None, help="QExpansion JSON file (default: stdin)")
        p.add_argument("--output", default=None, help="write here instead of stdout")
        if json:
            p.add_argument("--json", action="store_true", help="structured JSON output")
        p.set_defaults(fn=fn)
        return p

    p = add("characters", cmd_characters, "List the Dirichlet characters mod N in index order.")
    p.add_argument("--modulus", type=_positive, required=True)

    p = add("bernoulli", cmd_bernoulli, "Generalized Bernoulli number B_{k,psi}.")
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--modulus", type=_positive, required=True)
    p.add_argument("--char-index", type=_nonneg, required=True)
    p.add_argument("--oracle", action="store_true", help="use the generating-function evaluation")

    p = add("eisenstein", cmd_eisenstein, "Eisenstein series E_{k,chi,psi} as QExpansion JSON.", json=False)
    p.add_argument("--k", type=_positive)
    p.add_argument("--chi-modulus", type=_positive, default=1)
    p.add_argument("--chi-index", type=_nonneg, default=0)
    p.add_argument("--psi-modulus", type=_positive, default=1)
    p.add_argument("--psi-index", type=_nonneg, default=0)
    p.add_argument("--prec", type=_positive, required=True)
    p.add_argument("--e2", action="store_true", help="the weight 2 series -1/24 + sum sigma_1(n) q^n")

    p = add("refine", cmd_refine, "Ordinary or critical p-refinement of a q-expansion.", io=True, json=False)
    p.add_argument("--mode", choices=("ord", "crit"), required=True)
    p.add_argument("--prime", type=_positive, required=True)

    p = add("hecke", cmd_hecke, "Apply T:l, U:m or V:t to a q-expansion.", io=True, json=False)
    p.add_argument("--op", required=True, help="T:7, U:5 or V:3")

    p = add("eigencheck", cmd_eigencheck, "Eigenvalue of one Hecke operator, or none.", io=True)
    p.add_argument("--op", required=True, help="T:7, U:5 or V:3")

    p = add("eigensystem", cmd_eigensystem, "Check a list of (operator, eigenvalue) pairs.", io=True)
    p.add_argument("--spec", required=True, help="eigen-system JSON file")

    p = add("selmer", cmd_selmer, "Selmer dimension with its term ledger.")
    p.add_argument("--problem", required=True, help="Selmer problem JSON file ('-' for stdin)")
    p.add_argument("--assume-dual", type=_nonneg, default=None, help="value to use for an unknown dual term")

    bt = sub.add_parser("btree", help="Bruhat-Tits tree computations.", description="Bruhat-Tits tree computations.", **kw)
    btsub = bt.add_subparsers(dest="btree_command", required=True, parser_class=_Parser)

    def add_bt(name: str, fn: Callable, help: str):
        p = btsub.add_parser(name, help=help, description=help, **kw)
        p.add_argument("--rep", required=True, help="MatrixRep JSON file ('-' for stdin)")
        p.add_argument("--output", default=None, help="write here instead of stdout")
        p.add_argument("--json", action="store_true", help="structured JSON output")
        p.set_defaults(fn=fn)
        return p

    p = add_bt("stable-set", cmd_stable_set, "Vertices whose lattice is stable, grown from the standard vertex.")
    p.add_argument("--cap", type=_nonneg, default=6, help="radius cap (default 6)")
    p = add_bt("classify", cmd_classify, "Reduction type of the representation at one vertex.")
    p.add_argument("--vertex", required=True, help='normal form "a,b"; write --vertex=-1,0 when a is negative')
    p = add_bt("index-check", cmd_index_check, "Trace congruence tr = psi1 + psi2 mod p^n over short words.")
    p.add_argument("--psi1", required=True, help="values on generators, e.g. M1=1,M2=1")
    p.add_argument("--psi2", required=True, help="values on generators, e.g. M1=1,M2=1")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--words", type=_positive, default=6, help="maximum word length (default 6)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "eisenstein" and not args.e2 and args.k is None:
            raise ArgumentError("eisenstein: --k is required unless --e2 is given")
        args.fn(args)
    except EiscurveError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        code = getattr(exc, "code", "argument")
        print(f"error[{code}]: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
