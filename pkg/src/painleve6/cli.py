"""Command line interface: ``painleve6 <subcommand> [options]``.

Every subcommand writes one JSON report (to --output, or standard output when
no path is given) and prints a one-line summary to standard error.  Exit
status: 0 success, 1 a verification failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bundled
from .braid import (
    FiniteGroup,
    canonical_triple,
    count_generating_triples,
    enumerate_orbits,
    hall_count,
    triple_signature,
)
from .fuchsian import (
    FuchsianSystem3,
    SpectralData3,
    build_2x2,
    build_full,
    build_simple,
    extract_y,
    extract_y_2x2,
    klein_family,
    scalar_from_json,
    scalar_to_json,
    system_from_json,
)
from .monodromy import MonodromySettings, group_closure, is_pseudo_reflection, monodromy_rep
from .pvi import SolutionCurve, ThetaVector, residual_exact
from .schlesinger import FlowSettings, FlowState, flow, jet_from_state, verify_isomonodromy
from .weyl import (
    apply_word_to_solution,
    apply_word_to_theta,
    f4_canonical_form,
    parse_word,
    reduce_to_alcove,
    word_to_json,
)


class InputError(ValueError):
    pass


def _read_json(path: str | None, default: str | None = None) -> dict:
    if path is None:
        if default is None:
            raise InputError("--input is required")
        return bundled.load(default)
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _number(text: str):
    """A rational such as '2/7', else a Python complex literal such as '0.9+0.1j'."""
    try:
        return Fraction(text.strip())
    except ValueError:
        pass
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError as exc:
        raise InputError(f"cannot parse number {text!r}") from exc


def _numbers(text: str) -> list:
    return [_number(v) for v in text.split(",") if v.strip()]


def _theta(text: str) -> ThetaVector:
    vals = _numbers(text)
    if len(vals) != 4:
        raise InputError("theta needs four comma separated values")
    return ThetaVector.of(vals)


def _indices(text: str | None, default=(2, 3)) -> tuple[int, int]:
    if text is None:
        return default
    try:
        j, k = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError("--indices expects j,k") from exc
    return j, k


def _c(v) -> list:
    c = complex(v)
    return [c.real, c.imag]


def _system_arg(args):
    if args.klein_s is not None:
        return klein_family(_number(args.klein_s))
    return system_from_json(_read_json(args.input))


def _group_arg(args) -> tuple[FiniteGroup, tuple | None]:
    """A group plus, for monodromy-sourced groups, the generating triple."""
    if args.group:
        return FiniteGroup.from_json(bundled.load(f"group_{args.group}.json")), None
    if args.klein_s is not None:
        rep = monodromy_rep(klein_family(_number(args.klein_s)).numeric(),
                            MonodromySettings(tol=args.tol, max_order=args.max_order))
        gt = group_closure(rep.matrices[:3], args.tol, args.max_order)
        if not gt.finite:
            raise RuntimeError("monodromy group exceeds --max-order")
        return FiniteGroup.from_group_table(gt, "monodromy"), gt.generators
    return FiniteGroup.from_json(_read_json(args.input)), None


# --- subcommands --------------------------------------------------------------------

def cmd_verify(args) -> tuple[int, dict, str]:
    curve = SolutionCurve.from_json(_read_json(args.input, "klein_curve.json"))
    if args.theta:
        curve = curve.with_theta(_theta(args.theta))
    res = residual_exact(curve)
    report = {"theta": curve.theta.to_json(), "residual": "zero" if res.is_zero() else "nonzero"}
    if not res.is_zero():
        report["residual_function"] = res.to_json()
    return (0 if res.is_zero() else 1), report, f"residual: {report['residual']}"


def cmd_okamoto(args) -> tuple[int, dict, str]:
    if not args.generator_word:
        raise InputError("--generator-word is required")
    word = parse_word(args.generator_word)
    if args.theta:
        theta = apply_word_to_theta(word, _theta(args.theta))
        return 0, {"word": word_to_json(word), "theta": theta.to_json()}, f"theta -> {theta}"
    curve = SolutionCurve.from_json(_read_json(args.input, "klein_curve.json"))
    out = apply_word_to_solution(word, curve)
    zero = residual_exact(out).is_zero()
    report = {"word": word_to_json(word), "curve": out.to_json(),
              "residual": "zero" if zero else "nonzero"}
    return (0 if zero else 1), report, f"theta -> {out.theta}, residual {report['residual']}"


def cmd_reduce_theta(args) -> tuple[int, dict, str]:
    if args.theta:
        theta = _theta(args.theta)
    else:
        theta = ThetaVector.of(_read_json(args.input)["theta"])
    red = reduce_to_alcove(theta)
    canon, cword = f4_canonical_form(theta)
    report = {"theta": theta.to_json(), "alcove_point": red.theta.to_json(),
              "word": word_to_json(red.word), "f4_canonical": canon.to_json(),
              "f4_word": word_to_json(cword)}
    return 0, report, f"{theta} -> {red.theta} via {','.join(word_to_json(red.word)) or 'identity'}"


def _build_from_params(data: dict, kind: str):
    try:
        x, y, t = (scalar_from_json(data[k]) for k in ("x", "y", "t"))
        if kind == "2x2":
            return build_2x2(x, y, t, ThetaVector.of(scalar_from_json(v) for v in data["theta"]))
        spec = SpectralData3.of([scalar_from_json(v) for v in data["lambda"]],
                                [scalar_from_json(v) for v in data["mu"]])
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from exc
    return (build_simple if kind == "simple" else build_full)(x, y, t, spec)


def cmd_build(args) -> tuple[int, dict, str]:
    if args.klein_s is not None:
        system = klein_family(_number(args.klein_s))
    else:
        system = _build_from_params(_read_json(args.input), args.kind)
    report = {"system": system.to_json()}
    j, k = _indices(args.indices)
    if isinstance(system, FuchsianSystem3):
        report["check"] = system.check(args.tol)
    try:
        y = extract_y(system, j, k) if isinstance(system, FuchsianSystem3) else extract_y_2x2(system)
        report["y"] = scalar_to_json(y)
    except ArithmeticError as exc:
        report["y"] = f"unavailable: {exc}"
    report["invariants"] = {key: scalar_to_json(v) for key, v in system.invariants().items()}
    check = report.get("check", {})
    ok = all(check.get(k, True) for k in ("rank_one", "traces", "sum_eigenvalues"))
    return (0 if ok else 1), report, f"built rank {report['system']['rank']} system, y = {report['y']}"


def cmd_monodromy(args) -> tuple[int, dict, str]:
    system = _system_arg(args)
    settings = MonodromySettings(tol=args.tol, max_order=args.max_order)
    rep = monodromy_rep(system, settings)
    gt = group_closure(rep.matrices[:3], args.tol, args.max_order)
    report = rep.to_json()
    report["pseudo_reflections"] = [is_pseudo_reflection(m, args.tol) for m in rep.matrices[:3]]
    report["group_order"] = gt.order
    ok = rep.defect < args.tol
    return (0 if ok else 1), report, f"group order {gt.order}, defect {rep.defect:.3e}"


def cmd_flow(args) -> tuple[int, dict, str]:
    if args.t_target is None:
        raise InputError("--t-target is required")
    system = _system_arg(args).numeric() if args.klein_s is not None else _system_arg(args)
    start = FlowState(system)
    end = flow(start, complex(_number(args.t_target)), FlowSettings())
    drift = max(float(np.max(np.abs(np.sort_complex(np.linalg.eigvals(a)) - np.sort_complex(np.linalg.eigvals(b)))))
                for a, b in zip(start.residues, end.residues))
    report = {"t": _c(end.t), "eigenvalue_drift": drift,
              "system": end.system.to_json()}
    j, k = _indices(args.indices)
    try:
        jet = jet_from_state(end, j, k)
        report["y"] = _c(jet.y)
        report["yprime"] = _c(jet.yp)
    except ArithmeticError as exc:
        report["y"] = f"unavailable: {exc}"
    ok = drift < args.tol
    if args.check_monodromy:
        iso = verify_isomonodromy([start, end], MonodromySettings(tol=args.tol))
        report["isomonodromy_deviation"] = iso.max_deviation
        ok = ok and iso.max_deviation < max(args.tol, 1e-6)
    return (0 if ok else 1), report, f"flowed to t = {complex(end.t):.6g}, drift {drift:.2e}"


def cmd_orbit(args) -> tuple[int, dict, str]:
    group, triple = _group_arg(args)
    signature = tuple(int(v) for v in args.signature.split(",")) if args.signature else None
    if signature is None and triple is not None:
        signature = triple_signature(group, triple)
    orbits = enumerate_orbits(group, signature)
    stats = Counter((o.branches, o.genus) for o in orbits)
    report = {"order": group.order, "orbits": [o.to_json() for o in orbits],
              "statistics": [{"branches": b, "genus": g, "count": n} for (b, g), n in sorted(stats.items())]}
    if triple is not None:
        can = canonical_triple(group, triple)
        hit = next(o for o in orbits if can in o.triples)
        report["monodromy_orbit"] = hit.to_json()
    largest = max((o.branches for o in orbits), default=0)
    return 0, report, f"{len(orbits)} orbits, largest {largest} branches"


def cmd_hall(args) -> tuple[int, dict, str]:
    group, _ = _group_arg(args)
    classes = count_generating_triples(group)
    ordered = count_generating_triples(group, ordered=True)
    mobius = hall_count(group)
    centre = sum(1 for _ in group.center())
    ok = ordered == mobius and classes * (group.order // centre) == ordered
    report = {"order": group.order, "count": classes, "ordered_triples": ordered,
              "mobius_ordered_triples": mobius, "consistent": ok}
    return (0 if ok else 1), report, f"{classes} generating triples up to conjugation"


COMMANDS = {
    "verify": cmd_verify,
    "okamoto": cmd_okamoto,
    "reduce-theta": cmd_reduce_theta,
    "build": cmd_build,
    "monodromy": cmd_monodromy,
    "flow": cmd_flow,
    "orbit": cmd_orbit,
    "hall": cmd_hall,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file")
    common.add_argument("--output", help="report path (default: standard output)")
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--max-order", type=int, default=10000)
    parser = argparse.ArgumentParser(prog="painleve6", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", parents=[common], help="exact PVI residual of a solution curve")
    p.add_argument("--theta", help="override theta, e.g. 2/7,2/7,2/7,5/7")
    p = sub.add_parser("okamoto", parents=[common], help="apply a symmetry word to a curve or theta")
    p.add_argument("--generator-word", help="e.g. R5 or R1,R2,X3")
    p.add_argument("--theta")
    p = sub.add_parser("reduce-theta", parents=[common], help="alcove and F4 canonical forms")
    p.add_argument("--theta")
    p = sub.add_parser("build", parents=[common], help="build a Fuchsian system from (x, y, t)")
    p.add_argument("--kind", choices=("simple", "full", "2x2"), default="full")
    p.add_argument("--indices", help="entry j,k used to extract y (rank 3)")
    p.add_argument("--klein-s", help="build the Klein family at this s instead")
    p = sub.add_parser("monodromy", parents=[common], help="monodromy and generated group")
    p.add_argument("--klein-s")
    p = sub.add_parser("flow", parents=[common], help="Schlesinger flow to a new t")
    p.add_argument("--t-target")
    p.add_argument("--klein-s")
    p.add_argument("--indices")
    p.add_argument("--check-monodromy", action="store_true")
    for name, text in (("orbit", "braid orbits of generating triples"),
                       ("hall", "count generating triples")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--group", choices=bundled.GROUP_KINDS)
        p.add_argument("--klein-s", help="use the monodromy group of the Klein family at s")
        if name == "orbit":
            p.add_argument("--signature", help="class indices of M1..M4")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        status, report, summary = COMMANDS[args.command](args)
    except (InputError, ValueError, KeyError, TypeError, ArithmeticError) as exc:
        print(f"painleve6 {args.command}: invalid input: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"painleve6 {args.command}: failed: {exc}", file=sys.stderr)
        return 1
    report = {"command": args.command, "status": status, **report}
    text = bundled.dumps(report)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
