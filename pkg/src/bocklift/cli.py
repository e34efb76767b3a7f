"""``bocklift`` command line.

Exit status: 0 for success or an affirmative verdict, 1 for a negative
verdict or certified obstruction, 2 for usage and input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import catalog
from .bockstein import (
    PhaseVector,
    bockstein_defect,
    is_cycle,
    lift_once,
    lift_to_level,
    logical_rotation_program,
)
from .chain_lift import relift_analysis, residual_matrix, solve_chain_lift
from .codefile import load_code
from .css_model import (
    DEFAULT_CAP,
    divisibility_report,
    homology_structure,
    logical_bases,
    max_commutativity_level,
    validate,
)
from .errors import (
    BockliftError,
    ChainLiftUnsolvable,
    CommutativityViolation,
    HypothesisViolated,
    IllDefinedHomology,
    NotLogical,
    Obstructed,
    ParseError,
)
from .phase_oracle import compare_formal_physical, logical_action

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


@dataclass
class Report:
    command: list
    result: dict
    status: int
    as_json: bool = field(default=False, compare=False)

    def to_dict(self) -> dict:
        return {"command": list(self.command), "result": self.result, "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        doc = json.loads(text)
        return cls(doc["command"], doc["result"], doc["status"])

    def to_text(self) -> str:
        lines = [f"bocklift {' '.join(self.command)}"]
        lines.extend(_text_lines(self.result, 0))
        lines.append(f"exit status: {self.status}")
        return "\n".join(lines) + "\n"


def _text_lines(value, depth):
    pad = "  " * depth
    out = []
    for key in sorted(value):
        item = value[key]
        if isinstance(item, dict):
            out.append(f"{pad}{key}:")
            out.extend(_text_lines(item, depth + 1))
        elif isinstance(item, list) and item and isinstance(item[0], dict):
            out.append(f"{pad}{key}:")
            for entry in item:
                out.append(f"{pad}  -")
                out.extend(_text_lines(entry, depth + 2))
        else:
            out.append(f"{pad}{key}: {_short(item)}")
    return out


def _short(item):
    if isinstance(item, list):
        return "[" + ", ".join(_short(x) for x in item) + "]"
    if item is None:
        return "-"
    if isinstance(item, bool):
        return "yes" if item else "no"
    return str(item)


def _label(bits) -> str:
    return "".join(str(b) for b in bits)


def parse_theta(text: str, n: int, level: int) -> PhaseVector:
    if text == "ones":
        return PhaseVector.ones(n, level)
    if text == "zeros":
        return PhaseVector.zeros(n, level)
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"cannot parse theta {text!r}", field="theta") from None
    if len(values) != n:
        raise ParseError(f"theta has {len(values)} entries, code has n={n}", field="theta")
    mod = 1 << level
    if any(not 0 <= v < mod for v in values):
        raise ParseError(f"theta entries must lie in [0, {mod}) at level {level}", field="theta")
    return PhaseVector(values, level)


def _thetas(args, code):
    """The single --theta, or every binary theta of weight <= w in a stable order."""
    if args.all_thetas_up_to is None:
        if args.theta is None:
            raise BockliftError("--theta or --all-thetas-up-to is required")
        return [parse_theta(args.theta, code.n, args.level)], False
    out = []
    for weight in range(args.all_thetas_up_to + 1):
        for support in combinations(range(code.n), weight):
            vec = np.zeros(code.n, dtype=np.int64)
            vec[list(support)] = 1
            out.append(PhaseVector(vec, args.level))
    return out, True


# --------------------------------------------------------------------------
# subcommands; each returns (result dict, status)


def cmd_validate(args):
    code = load_code(args.code, check=False)
    try:
        rep = validate(code)
    except CommutativityViolation as exc:
        return {"name": code.name, "valid": False, "entry": list(exc.entry), "value": exc.value}, NEGATIVE
    return {
        "name": code.name,
        "valid": True,
        "n": rep.n,
        "m_x": rep.m_x,
        "m_z": rep.m_z,
        "rank_x": rep.rank_x,
        "rank_z": rep.rank_z,
        "k": rep.k,
        "x_independent": rep.x_independent,
    }, OK


def cmd_commutativity(args):
    code = load_code(args.code)
    level = max_commutativity_level(code, args.cap)
    result = {"name": code.name, "cap": args.cap, "level": level}
    status = OK
    if args.level is not None:
        result["required"] = args.level
        status = OK if level >= args.level else NEGATIVE
    return result, status


def cmd_divisibility(args):
    code = load_code(args.code)
    rep = divisibility_report(code, args.cap)
    return {
        "name": code.name,
        "weights": list(rep.weights),
        "valuations": list(rep.valuations),
        "d": rep.d,
        "ones_defects": {str(nu): list(r) for nu, r in rep.ones_defects.items()},
        "ones_trivial_below_d": rep.trivial_below_d,
    }, OK


def cmd_homology(args):
    code = load_code(args.code)
    try:
        inv = homology_structure(code, args.level)
    except IllDefinedHomology as exc:
        return {"name": code.name, "level": args.level, "well_defined": False, "error": str(exc)}, NEGATIVE
    return {
        "name": code.name,
        "level": args.level,
        "well_defined": True,
        "invariants": inv,
        "group": " + ".join(f"Z{1 << e}" for e in inv) or "0",
    }, OK


def cmd_bases(args):
    code = load_code(args.code)
    basis = logical_bases(code)
    return {
        "name": code.name,
        "k": basis.k,
        "gammas": [g.tolist() for g in basis.gammas],
        "thetas": [t.tolist() for t in basis.thetas],
        "pairing": (basis.pairing_matrix() % 2).tolist(),
    }, OK


def _bockstein_entry(code, theta):
    entry = {"theta": theta.tolist(), "level": theta.level}
    if not is_cycle(code, theta):
        entry["cycle"] = False
        return entry, INPUT_ERROR
    rep = bockstein_defect(code, theta)
    entry.update(
        cycle=True,
        defect=rep.defect.tolist(),
        trivial=rep.trivial,
        well_defined=rep.well_defined,
        witness=rep.witness.tolist() if rep.witness is not None else None,
    )
    return entry, OK if rep.trivial else NEGATIVE


def _lift_entry(code, theta, target):
    entry = {"theta": theta.tolist(), "level": theta.level}
    if not is_cycle(code, theta):
        entry["cycle"] = False
        return entry, INPUT_ERROR
    entry["cycle"] = True
    try:
        if target is None:
            res = lift_once(code, theta)
            entry.update(
                obstructed=False,
                theta_hat=res.theta_hat.tolist(),
                omega=res.omega.tolist(),
                s=res.s.tolist(),
                well_defined=res.well_defined,
            )
        else:
            seq = lift_to_level(code, theta, target)
            entry.update(
                obstructed=False,
                target=target,
                sequence=[{"level": t.level, "theta_hat": t.tolist()} for t in seq],
            )
    except Obstructed as exc:
        entry.update(obstructed=True, obstruction_level=exc.level, defect=list(exc.defect))
        return entry, NEGATIVE
    return entry, OK


def _oracle_entry(code, theta):
    entry = {"theta": theta.tolist(), "level": theta.level}
    try:
        table = logical_action(code, theta)
    except NotLogical as exc:
        entry.update(logical=False, offending_coset=list(exc.offending))
        return entry, NEGATIVE
    entry.update(logical=True, table={_label(k): v for k, v in table.entries.items()})
    return entry, OK


def _compare_entry(code, theta):
    rep = compare_formal_physical(code, theta)
    entry = {
        "theta": theta.tolist(),
        "level": theta.level,
        "formal_cycle": rep.formal_cycle,
        "physical_logical": rep.physical_logical,
        "agree": rep.agree,
        "witness": list(rep.witness) if rep.witness is not None else None,
    }
    return entry, OK if rep.agree else NEGATIVE


def _per_theta(handler):
    def run(args):
        code = load_code(args.code)
        thetas, batch = _thetas(args, code)
        if not batch:
            entry, status = handler(args, code, thetas[0])
            if status == INPUT_ERROR:
                raise BockliftError(f"theta is not a cycle at level {args.level}")
            return {"name": code.name, **entry}, status
        entries = [handler(args, code, t)[0] for t in thetas]
        return {"name": code.name, "max_weight": args.all_thetas_up_to, "entries": entries}, OK

    return run


cmd_bockstein = _per_theta(lambda args, code, t: _bockstein_entry(code, t))
cmd_lift = _per_theta(lambda args, code, t: _lift_entry(code, t, args.target))
cmd_oracle = _per_theta(lambda args, code, t: _oracle_entry(code, t))
cmd_compare = _per_theta(lambda args, code, t: _compare_entry(code, t))


def cmd_lift_chain(args):
    code = load_code(args.code)
    m = args.level
    result = {"name": code.name, "level": m, "residual": residual_matrix(code, m).tolist()}
    try:
        lift = solve_chain_lift(code, m)
    except ChainLiftUnsolvable:
        result["solvable"] = False
        return result, NEGATIVE
    result.update(
        solvable=True,
        hx_hat=lift.hx_hat.tolist(),
        hz_hat=lift.hz_hat.tolist(),
        a=lift.a.tolist(),
        b=lift.b.tolist(),
        solution_dimension=lift.solution_dimension,
    )
    if args.theta is not None:
        theta_level = args.theta_level or m + 1
        theta = parse_theta(args.theta, code.n, theta_level)
        rep = relift_analysis(code, m, theta)
        result["relift"] = {
            "theta": theta.tolist(),
            "level": theta_level,
            "original": _complex_dict(rep.original),
            "lifted": _complex_dict(rep.lifted),
            "identical": rep.identical,
        }
    return result, OK


def _complex_dict(rep):
    return {
        "cycle": rep.is_cycle,
        "defect": list(rep.defect) if rep.defect is not None else None,
        "trivial": rep.trivial,
        "well_defined": rep.well_defined,
        "lift": list(rep.lift) if rep.lift is not None else None,
    }


def cmd_rotation(args):
    code = load_code(args.code)
    m = args.level
    result = {"name": code.name, "logical_index": args.logical_index, "level": m}
    try:
        theta = logical_rotation_program(code, args.logical_index, m)
    except HypothesisViolated as exc:
        result.update(implementable=False, failures=exc.failures)
        return result, NEGATIVE
    gammas = logical_bases(code).gammas
    result.update(
        implementable=True,
        theta_hat=theta.tolist(),
        theta_level=theta.level,
        pairings=[int(np.dot(theta.array, g.array) % theta.modulus) for g in gammas],
    )
    return result, OK


def cmd_catalog(args):
    if args.action == "list":
        return {"names": list(catalog.NAMES)}, OK
    if not args.name:
        raise BockliftError("catalog show needs a code name")
    return catalog.catalog_entry(args.name), OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bocklift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, *, theta=False, level=None, cap=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--code", required=True, help="file path or catalog:<name>")
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        if theta:
            p.add_argument("--theta", help="comma-separated integers, 'ones' or 'zeros'")
            p.add_argument("--all-thetas-up-to", type=int, metavar="W",
                           help="sweep every binary theta of weight <= W")
        if level is not None:
            p.add_argument("--level", type=int, default=level, metavar="M")
        if cap:
            p.add_argument("--cap", type=int, default=DEFAULT_CAP, metavar="K")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check shapes and mod-2 commutativity")
    p = add("commutativity", cmd_commutativity, "largest m with H_X H_Z^T = 0 mod 2^m", cap=True)
    p.add_argument("--level", type=int, metavar="M", help="exit 1 unless the level is at least M")
    add("divisibility", cmd_divisibility, "X-row weights and their 2-adic valuation", cap=True)
    add("homology", cmd_homology, "invariant factors of H_1(C; Z_2^m)", level=1)
    add("bases", cmd_bases, "dual logical bases over Z_2")
    add("bockstein", cmd_bockstein, "Bockstein defect of a cycle", theta=True, level=1)
    p = add("lift", cmd_lift, "lift a cycle to the next level(s)", theta=True, level=1)
    p.add_argument("--target", type=int, metavar="M", help="iterate lifts from level 1 to M")
    p = add("lift-chain", cmd_lift_chain, "lift the parity-check matrices one level", level=1)
    p.add_argument("--theta", help="also compare this phase vector on both complexes")
    p.add_argument("--theta-level", type=int, metavar="M", help="level of --theta (default level+1)")
    p = add("rotation", cmd_rotation, "transversal pi/2^m rotation of a logical Z", level=1)
    p.add_argument("--logical-index", type=int, default=0, metavar="A")
    add("oracle", cmd_oracle, "brute-force logical action table", theta=True, level=1)
    add("compare", cmd_compare, "cycle condition versus brute-force logicality", theta=True, level=1)

    p = sub.add_parser("catalog", help="embedded fixtures")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return parser


def dispatch(argv) -> Report:
    argv = list(argv)
    args = build_parser().parse_args(argv)
    try:
        result, status = args.func(args)
    except BockliftError as exc:
        result, status = {"error": str(exc)}, INPUT_ERROR
    except (KeyError, ValueError, IndexError) as exc:
        result, status = {"error": str(exc)}, INPUT_ERROR
    return Report(argv, result, status, as_json=args.json)


def main(argv=None) -> int:
    report = dispatch(sys.argv[1:] if argv is None else argv)
    if report.as_json:
        sys.stdout.write(report.to_json())
    elif report.status == INPUT_ERROR:
        sys.stderr.write(f"bocklift: error: {report.result['error']}\n")
    else:
        sys.stdout.write(report.to_text())
    return report.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
