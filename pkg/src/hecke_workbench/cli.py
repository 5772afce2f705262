"""
Command-line front end.

Data are given as ``key=value`` tokens::

    hecke-workbench characters type=A1 params=1,1 psi=full
    hecke-workbench verify type=C2 params=1,1,1 check=assoc --seed 3
    hecke-workbench tables --format json

Exit codes: 0 on success, 1 on a failed check or golden mismatch, 2 on a
usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .checks import CHECKS, run_check
from .gln import newton_witness_check, datum_from_json, newton_witness_sweep
from .hecke import PSI_CHOICES, AlgebraDatum, make_datum
from .laurent import ModC, is_prime
from .modules import (
    HCharacter, character_module, enumerate_characters_generic, enumerate_characters_mod_p,
    extends_to_extended, is_discrete,
)
from .root_data import parse_cartan
from .tables import character_is_discrete, discrete_nonspecial_census, reproduce_tables

__all__ = ["DatumSpec", "SpecError", "parse_datum_spec", "main"]

_KEYS = ("type", "params", "lattice", "psi", "check")


class SpecError(ValueError):
    """A malformed command-line field; ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass
class DatumSpec:
    type: str
    params: tuple[int, ...] | None = None
    lattice: str = "sc"
    psi: str | None = None
    check: str | None = None

    def build(self) -> AlgebraDatum:
        try:
            cartan = parse_cartan(self.type)
        except ValueError as exc:
            raise SpecError("type", str(exc)) from exc
        try:
            return make_datum(cartan, self.params, self.lattice, self.psi)
        except ValueError as exc:
            msg = str(exc)
            field = next((k for k in ("params", "psi", "lattice") if k in msg), "params")
            raise SpecError(field, msg) from exc


def parse_datum_spec(tokens) -> DatumSpec:
    fields: dict = {}
    for tok in tokens:
        if "=" not in tok:
            raise SpecError(tok, "expected key=value")
        key, value = tok.split("=", 1)
        if key not in _KEYS:
            raise SpecError(key, f"unknown field; expected one of {', '.join(_KEYS)}")
        fields[key] = value
    if "type" not in fields:
        raise SpecError("type", "missing")
    spec = DatumSpec(fields["type"], check=fields.get("check"))
    if "params" in fields:
        try:
            spec.params = tuple(int(x) for x in fields["params"].split(","))
        except ValueError:
            raise SpecError("params", f"not a comma-separated list of integers: {fields['params']!r}")
        if any(x <= 0 for x in spec.params):
            raise SpecError("params", "values must be positive")
    lattice = fields.get("lattice", "sc")
    if lattice not in ("sc", "ad"):
        raise SpecError("lattice", f"expected sc or ad, got {lattice!r}")
    spec.lattice = lattice
    psi = fields.get("psi")
    if psi is not None and psi not in PSI_CHOICES:
        raise SpecError("psi", f"expected one of {', '.join(PSI_CHOICES)}, got {psi!r}")
    spec.psi = psi
    return spec


# output -------------------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(rows: list[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump(rows, out, indent=2, default=str)
        out.write("\n")
        return
    if not rows:
        return
    cols = list(rows[0])
    out.write("\t".join(cols) + "\n")
    for row in rows:
        out.write("\t".join(_cell(row[c]) for c in cols) + "\n")


# commands -----------------------------------------------------------------------


def cmd_characters(args) -> int:
    datum = parse_datum_spec(args.datum).build()
    rows = []
    if args.mod_p is not None:
        for chi in enumerate_characters_mod_p(datum, args.mod_p):
            rows.append({"values": chi.label(), "trivial": chi.is_trivial,
                         "special": chi.is_special, "extends": extends_to_extended(chi, datum)})
    else:
        for chi in enumerate_characters_generic(datum):
            rows.append({"values": chi.label(), "trivial": chi.is_trivial,
                         "special": chi.is_special, "discrete": character_is_discrete(chi),
                         "extends": extends_to_extended(chi, datum)})
    emit(rows, args.format)
    return 0


def cmd_census(args) -> int:
    datum = parse_datum_spec(args.datum).build()
    report = discrete_nonspecial_census(datum, reduction_prime=args.mod_p)
    rows = []
    for chi, row in zip(enumerate_characters_generic(datum), report.rows):
        d = row.as_dict()
        if args.q0 is not None:
            sc = make_datum(datum.cartan, datum.dyn.component_params(), "sc")
            mod = character_module(HCharacter(sc, chi.ring, chi.values))
            d["discrete_numeric"] = is_discrete(mod, args.q0, args.tol, method="numeric")
        rows.append(d)
    emit(rows, args.format)
    if args.format == "tsv":
        print(f"# {datum.describe()}: discrete non-special character exists: {report.verdict}")
    return 0


def cmd_tables(args) -> int:
    results = reproduce_tables(args.max_rank)
    emit([r.as_dict() for r in results], args.format)
    failed = [r for r in results if not r.passed]
    if args.format == "tsv":
        print(f"# {len(results) - len(failed)}/{len(results)} rows PASS")
    return 1 if failed else 0


def cmd_verify(args) -> int:
    spec = parse_datum_spec(args.datum)
    if spec.check is None:
        raise SpecError("check", f"missing; known checks: {', '.join(CHECKS)}")
    if spec.check not in CHECKS:
        raise SpecError("check", f"unknown check {spec.check!r}; known: {', '.join(CHECKS)}")
    datum = spec.build()
    kwargs = {"seed": args.seed}
    if args.mod_c is not None:
        kwargs["target"] = ModC(args.mod_c, args.q_res)
    result = run_check(spec.check, datum, **kwargs)
    status = "PASS" if result.passed else "FAIL"
    if args.format == "json":
        emit([{"check": result.name, "datum": datum.describe(), "status": status,
               "detail": result.detail}], "json")
    else:
        print(f"{status}\t{result.name}\t{datum.describe()}\t{result.detail}")
    return 0 if result.passed else 1


def cmd_gln_newton(args) -> int:
    if args.sweep:
        rows, bad = [], 0
        for datum, rep in newton_witness_sweep(p=args.sweep_p):
            integral = rep.verdict != "not integral"
            if integral and not rep.paths_agree:
                bad += 1
            rows.append({
                "d": datum.d, "val_q": str(datum.val_q),
                "f": ",".join(str(pr.f) for pr in datum.pairs),
                "zeta_val": ",".join(str(pr.zeta_val) for pr in datum.pairs),
                "sign": ",".join(str(_sign(pr.zeta_exact)) for pr in datum.pairs),
                "verdict": rep.verdict,
                "unit_js": ",".join(map(str, rep.unit_js)) or "-",
                "identity_js": ",".join(map(str, rep.identity_js)) or "-",
                "agree": rep.paths_agree if integral else None,
            })
        emit(rows, args.format)
        if args.format == "tsv":
            print(f"# {bad} disagreements on integral instances")
        return 1 if bad else 0
    if args.instance is None:
        raise SpecError("instance", "give a JSON instance file or --sweep")
    try:
        with open(args.instance) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError("instance", str(exc)) from exc
    if not isinstance(obj, dict):
        raise SpecError("instance", "top level must be a JSON object")
    try:
        datum = datum_from_json(obj)
        report = newton_witness_check(datum)
    except ValueError as exc:
        raise SpecError("instance", str(exc)) from exc
    json.dump(report.to_json(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _sign(x) -> int:
    return 1 if x.terms[0][1] > 0 else -1


# argument parsing ------------------------------------------------------------------


def _positive_prime(text: str) -> int:
    p = int(text)
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _q0_list(text: str) -> list[Fraction]:
    try:
        vals = [Fraction(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad q0 list {text!r}")
    if any(v <= 1 for v in vals):
        raise argparse.ArgumentTypeError("q0 values must exceed 1")
    return vals


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies suppress their defaults so flags given before the
    # subcommand survive
    def default(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default=default("tsv"))
    common.add_argument("--seed", type=int, default=default(0))
    common.add_argument("--mod-p", type=_positive_prime, default=default(None), metavar="P")
    common.add_argument("--mod-c", type=_positive_prime, default=default(None), metavar="C")
    common.add_argument("--q-res", type=int, default=default(1), metavar="R",
                        help="residue of q^(1/2) modulo C")
    common.add_argument("--q0", type=_q0_list, default=default(None), metavar="LIST")
    common.add_argument("--tol", type=float, default=default(1e-6))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="hecke-workbench", parents=[_common_flags(False)],
                                     description="Exact computations in affine Hecke algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("characters", parents=[common], help="list the characters of H")
    p.add_argument("datum", nargs="+", metavar="key=value")
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("census", parents=[common], help="discreteness census of characters")
    p.add_argument("datum", nargs="+", metavar="key=value")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("tables", parents=[common], help="reproduce the classification tables")
    p.add_argument("--max-rank", type=int, default=7)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", parents=[common], help="run a named identity check",
                       epilog="checks: " + ", ".join(CHECKS))
    p.add_argument("datum", nargs="+", metavar="key=value")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gln-newton", parents=[common], help="central scalars for GL_n")
    p.add_argument("instance", nargs="?", help="JSON instance file")
    p.add_argument("--sweep", action="store_true", help="exhaustive n=2 sweep")
    p.add_argument("--sweep-p", type=_positive_prime, default=3)
    p.set_defaults(func=cmd_gln_newton)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
