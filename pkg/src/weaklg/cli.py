"""Command line surface.

One subcommand per library operation.  Exit codes: 0 for success or a
passing check, 1 for a failing check (series mismatch, unequal identity,
volume mismatch, no annihilator at the given bounds), 2 for usage or input
errors.  With --format json the output is a single JSON document with
sorted keys, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import expr as ex
from .annihilator import find_annihilator, find_minimal_annihilator
from .constructors import (
    ConstrainedModel,
    eliminate,
    grassmannian_hyperplane_system,
    grassmannian_polynomial,
    grassmannian_variables,
    hori_vafa_ci,
    hori_vafa_variables,
    toric_polynomial,
    weighted_hypersurface_system,
)
from .corpus import CORPUS_VARIABLES, CorpusError, get_entry, load_corpus, verify_entry
from .laurent import LaurentPolynomial
from .polytopes import (
    Polytope,
    contains_origin_interior,
    dual_polytope,
    ehrhart_counts,
    newton_polytope,
    normalized_volume,
    semiweak_check,
)
from .series import constant_term_series


def _emit(args: argparse.Namespace, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"{what} must be a comma-separated integer list, got {text!r}") from None


def _input_polynomial(args: argparse.Namespace) -> tuple[LaurentPolynomial, tuple[str, ...]]:
    """Resolve --entry/--poly to a Laurent polynomial and variable names."""
    if getattr(args, "entry", None) is not None and getattr(args, "poly", None):
        raise ValueError("give either --entry or --poly, not both")
    if getattr(args, "entry", None) is not None:
        entry = get_entry(args.entry, args.corpus)
        return entry.laurent(), CORPUS_VARIABLES
    if getattr(args, "poly", None):
        e = ex.parse(args.poly)
        names = tuple(ex.variables(e)) or ("x",)
        return ex.to_laurent(e, names), names
    raise ValueError("one of --entry or --poly is required")


def _polytope_payload(p: Polytope) -> dict:
    payload = p.to_json_dict()
    payload["origin_interior"] = contains_origin_interior(p)
    if p.is_full_dimensional:
        vol = normalized_volume(p)
        payload["normalized_volume"] = str(vol.numerator) if vol.denominator == 1 else str(vol)
    return payload


def _selected_polytope(args: argparse.Namespace) -> Polytope:
    f, _ = _input_polynomial(args)
    p = newton_polytope(f)
    if getattr(args, "dual", False):
        p = dual_polytope(p)
    return p


# --- subcommand handlers ---------------------------------------------------

def _cmd_list(args: argparse.Namespace) -> int:
    entries = load_corpus(args.corpus)
    payload = {
        "entries": [
            {
                "id": e.id,
                "fano_index": e.fano_index,
                "degree": e.degree,
                "description": e.description,
                "polynomial": e.polynomial,
                "checks": sorted(
                    name
                    for name, present in (
                        ("reference", e.reference), ("ci", e.ci),
                        ("weighted", e.weighted), ("alternates", e.alternates),
                    )
                    if present
                ),
            }
            for e in entries
        ]
    }
    lines = [f"{'id':>2}  {'idx':>3}  {'deg':>3}  description"]
    for e in entries:
        lines.append(f"{e.id:>2}  {e.fano_index:>3}  {e.degree:>3}  {e.description}")
    _emit(args, payload, lines)
    return 0


def _cmd_series(args: argparse.Namespace) -> int:
    f, _ = _input_polynomial(args)
    s = constant_term_series(f, args.terms)
    payload = {"terms": args.terms, "series": s.to_json()}
    lines = [f"phi({i}) = {c}" for i, c in enumerate(s.coeffs)]
    _emit(args, payload, lines)
    return 0


def _report_lines(report) -> list[str]:
    def mark(ok: bool) -> str:
        return "ok" if ok else "MISMATCH"

    lines = [f"entry {report.entry_id}: shift {report.shift}"]
    lines.append("  series " + ", ".join(str(c) for c in report.series[: min(8, len(report.series))])
                 + (", ..." if len(report.series) > 8 else ""))
    if report.reference is not None:
        lines.append(f"  reference: {mark(report.reference.matched)}"
                     + ("" if report.reference.matched else
                        f" at t^{report.reference.first_mismatch}: {report.reference.left} != {report.reference.right}"))
    if report.ci is not None:
        lines.append(f"  closed form: {mark(report.ci.matched)}"
                     + ("" if report.ci.matched else
                        f" at t^{report.ci.first_mismatch}: {report.ci.left} != {report.ci.right}"))
    for i, alt in enumerate(report.alternates):
        lines.append(f"  alternate {i}: {mark(alt.matched)}"
                     + ("" if alt.matched else
                        f" at t^{alt.first_mismatch}: {alt.left} != {alt.right}"))
    lines.append(f"  origin interior: {report.origin_interior}")
    sw = report.semiweak
    detail = f"dual volume {sw.dual_volume} vs degree {sw.expected}" if sw.dual_volume is not None else (sw.reason or "")
    lines.append(f"  semiweak: {'yes' if sw.ok else 'no'} ({detail})")
    lines.append(f"  passed: {report.passed}")
    return lines


def _cmd_verify(args: argparse.Namespace) -> int:
    entry = get_entry(args.entry, args.corpus)
    report = verify_entry(entry, args.terms)
    _emit(args, report.to_json_dict(), _report_lines(report))
    return 0 if report.passed else 1


def _cmd_verify_all(args: argparse.Namespace) -> int:
    reports = [verify_entry(e, args.terms) for e in load_corpus(args.corpus)]
    all_passed = all(r.passed for r in reports)
    payload = {"passed": all_passed, "reports": [r.to_json_dict() for r in reports]}
    lines = []
    for r in reports:
        lines.extend(_report_lines(r))
    lines.append(f"overall: {'pass' if all_passed else 'FAIL'}")
    _emit(args, payload, lines)
    return 0 if all_passed else 1


def _cmd_polytope(args: argparse.Namespace) -> int:
    p = _selected_polytope(args)
    payload = _polytope_payload(p)
    lines = [f"dim {p.dim}, {len(p.vertices)} vertices, {len(p.facets)} facets"]
    lines += ["vertex " + " ".join(str(c) for c in v) for v in p.vertices]
    if "normalized_volume" in payload:
        lines.append(f"origin interior: {payload['origin_interior']}")
        lines.append(f"normalized volume: {payload['normalized_volume']}")
    else:
        lines.append("not full-dimensional")
    _emit(args, payload, lines)
    return 0


def _cmd_semiweak(args: argparse.Namespace) -> int:
    if args.entry is not None:
        entry = get_entry(args.entry, args.corpus)
        f = entry.laurent()
        target = args.target if args.target is not None else entry.degree
    else:
        if args.target is None:
            raise ValueError("--target is required with --poly")
        f, _ = _input_polynomial(args)
        target = args.target
    report = semiweak_check(f, target)
    payload = report.to_json_dict()
    if report.ok:
        lines = [f"semiweak: yes (dual volume {report.dual_volume} == degree {target})"]
    elif report.dual_volume is not None:
        lines = [f"semiweak: no (dual volume {report.dual_volume} != degree {target})"]
    else:
        lines = [f"semiweak: no ({report.reason})"]
    _emit(args, payload, lines)
    return 0 if report.ok else 1


def _cmd_ehrhart(args: argparse.Namespace) -> int:
    p = _selected_polytope(args)
    result = ehrhart_counts(p, args.kmax)
    payload = {
        "counts": [str(c) for c in result.counts],
        "polynomial": [str(c) for c in result.polynomial],
    }
    lines = [f"L({k}) = {c}" for k, c in enumerate(result.counts)]
    lines.append("polynomial coefficients (ascending): " + ", ".join(str(c) for c in result.polynomial))
    _emit(args, payload, lines)
    return 0


def _cmd_pfop(args: argparse.Namespace) -> int:
    f, _ = _input_polynomial(args)
    s = constant_term_series(f, args.terms)
    if (args.order is None) != (args.degree is None):
        raise ValueError("--order and --degree must be given together")
    if args.order is not None:
        basis = find_annihilator(s, args.order, args.degree)
        payload = {
            "order": args.order,
            "degree": args.degree,
            "operators": [op.to_json_dict() for op in basis],
        }
        lines = [op.pretty() for op in basis] or ["no annihilator at these bounds"]
        _emit(args, payload, lines)
        return 0 if basis else 1
    found = find_minimal_annihilator(s)
    if found is None:
        _emit(args, {"operators": []}, ["no annihilator found in the sweep"])
        return 1
    order, degree, basis = found
    payload = {
        "order": order,
        "degree": degree,
        "operators": [op.to_json_dict() for op in basis],
    }
    lines = [f"minimal bounds: order {order}, degree {degree}"] + [op.pretty() for op in basis]
    _emit(args, payload, lines)
    return 0


def _parse_rays(text: str) -> list[tuple[int, ...]]:
    rays = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            rays.append(_parse_int_list(chunk, "each ray"))
    if not rays:
        raise ValueError("--rays must list at least one ray, e.g. '1,0;0,1;-1,-1'")
    return rays


def _emit_polynomial(args: argparse.Namespace, f: LaurentPolynomial, names: tuple[str, ...]) -> int:
    text = f.render(names)
    _emit(args, {"polynomial": text, "variables": list(names)}, [text])
    return 0


def _cmd_construct_toric(args: argparse.Namespace) -> int:
    f = toric_polynomial(_parse_rays(args.rays))
    return _emit_polynomial(args, f, f.default_names())


def _cmd_construct_ci(args: argparse.Namespace) -> int:
    degrees = _parse_int_list(args.degrees, "--degrees")
    f = hori_vafa_ci(args.n, degrees)
    return _emit_polynomial(args, f, hori_vafa_variables(args.n, degrees))


def _cmd_construct_grassmannian(args: argparse.Namespace) -> int:
    f = grassmannian_polynomial(args.k, args.n)
    return _emit_polynomial(args, f, grassmannian_variables(args.k, args.n))


def _emit_model(args: argparse.Namespace, model: ConstrainedModel) -> int:
    payload = model.to_json_dict()
    lines = ["variables: " + ", ".join(model.variables)]
    lines += [f"constraint {i}: {c} = 1" for i, c in enumerate(payload["constraints"])]
    lines.append("potential: " + payload["potential"])
    _emit(args, payload, lines)
    return 0


def _cmd_construct_grass_ci(args: argparse.Namespace) -> int:
    return _emit_model(args, grassmannian_hyperplane_system(args.k, args.n, args.sections))


def _cmd_construct_weighted(args: argparse.Namespace) -> int:
    weights = _parse_int_list(args.weights, "--weights")
    partition = _parse_int_list(args.partition, "--partition")
    return _emit_model(args, weighted_hypersurface_system(weights, args.d, partition))


def _parse_plan(text: str) -> list[tuple[int, str]]:
    plan = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        left, sep, right = chunk.partition(":")
        if not sep or not right.strip():
            raise ValueError(f"plan step {chunk!r} must look like INDEX:VARIABLE")
        try:
            index = int(left)
        except ValueError:
            raise ValueError(f"plan step {chunk!r} must start with a constraint index") from None
        plan.append((index, right.strip()))
    if not plan:
        raise ValueError("--plan must list at least one step, e.g. '0:X11;4:X42'")
    return plan


def _parse_subs(text: str) -> dict[str, ex.Expr]:
    bindings: dict[str, ex.Expr] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, value = chunk.partition("=")
        name = name.strip()
        if not sep or not name.isidentifier():
            raise ValueError(f"substitution {chunk!r} must look like NAME=EXPRESSION")
        bindings[name] = ex.parse(value)
    return bindings


def _cmd_eliminate(args: argparse.Namespace) -> int:
    model = ConstrainedModel.from_json_dict(json.loads(Path(args.model).read_text("utf-8")))
    result = eliminate(model, _parse_plan(args.plan))
    final = result.expression
    if args.subs:
        final = ex.substitute(final, _parse_subs(args.subs))
    payload = {
        "expression": ex.render(final),
        "bindings": {name: ex.render(value) for name, value in result.bindings.items()},
    }
    _emit(args, payload, [payload["expression"]])
    return 0


def _cmd_identity(args: argparse.Namespace) -> int:
    left = ex.parse(args.left)
    right = ex.parse(args.right)
    result = ex.random_equal(left, right, trials=args.trials, seed=args.seed)
    payload: dict = {"equal": result.equal, "trials": result.trials}
    if result.witness is not None:
        payload["witness"] = {k: str(v) for k, v in sorted(result.witness.items())}
    lines = [f"equal: {result.equal} ({result.trials} trials)"]
    if result.witness is not None:
        lines.append("witness: " + ", ".join(f"{k}={v}" for k, v in sorted(result.witness.items())))
    _emit(args, payload, lines)
    return 0 if result.equal else 1


# --- parser ----------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser, *, entry: bool = False, poly: bool = False,
                terms: bool = False, corpus: bool = False, dual: bool = False) -> None:
    if entry:
        sub.add_argument("--entry", type=int, help="corpus entry id (1..17)")
    if poly:
        sub.add_argument("--poly", help="Laurent polynomial text, e.g. 'x+y+z+1/(x*y*z)'")
    if terms:
        sub.add_argument("--terms", type=int, default=20, help="series truncation order (default 20)")
    if corpus:
        sub.add_argument("--corpus", help="path to a replacement corpus JSON file")
    if dual:
        sub.add_argument("--dual", action="store_true", help="use the dual of the Newton polytope")
    sub.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lg",
        description="Construct and verify Laurent-polynomial mirror candidates for Fano threefolds.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("list", help="list the bundled models")
    _add_common(p, corpus=True)
    p.set_defaults(func=_cmd_list)

    p = subs.add_parser("series", help="constant-term series of a polynomial")
    _add_common(p, entry=True, poly=True, terms=True, corpus=True)
    p.set_defaults(func=_cmd_series)

    p = subs.add_parser("verify", help="verify one corpus entry")
    _add_common(p, entry=True, terms=True, corpus=True)
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("verify-all", help="verify every corpus entry")
    _add_common(p, terms=True, corpus=True)
    p.set_defaults(func=_cmd_verify_all)

    p = subs.add_parser("polytope", help="Newton polytope data")
    _add_common(p, entry=True, poly=True, corpus=True, dual=True)
    p.set_defaults(func=_cmd_polytope)

    p = subs.add_parser("semiweak", help="dual-volume check against the anticanonical degree")
    _add_common(p, entry=True, poly=True, corpus=True)
    p.add_argument("--target", type=int, help="expected normalized dual volume (defaults to the entry degree)")
    p.set_defaults(func=_cmd_semiweak)

    p = subs.add_parser("ehrhart", help="lattice point counts of dilations")
    _add_common(p, entry=True, poly=True, corpus=True, dual=True)
    p.add_argument("--kmax", type=int, default=3, help="largest dilation factor (default 3)")
    p.set_defaults(func=_cmd_ehrhart)

    p = subs.add_parser("pfop", help="annihilating differential operator of the series")
    _add_common(p, entry=True, poly=True, terms=True, corpus=True)
    p.add_argument("--order", type=int, help="operator order bound (D-degree)")
    p.add_argument("--degree", type=int, help="operator t-degree bound")
    p.set_defaults(func=_cmd_pfop)

    construct = subs.add_parser("construct", help="build a model from a recipe")
    csubs = construct.add_subparsers(dest="recipe", required=True)

    p = csubs.add_parser("toric", help="one monomial per fan ray")
    p.add_argument("--rays", required=True, help="semicolon-separated integer vectors, e.g. '1,0,0;0,1,0;0,0,1;-1,-1,-1'")
    _add_common(p)
    p.set_defaults(func=_cmd_construct_toric)

    p = csubs.add_parser("ci", help="complete intersection in projective space")
    p.add_argument("--n", type=int, required=True, help="ambient projective dimension N")
    p.add_argument("--degrees", default="", help="comma-separated hypersurface degrees (may be empty)")
    _add_common(p)
    p.set_defaults(func=_cmd_construct_ci)

    p = csubs.add_parser("grassmannian", help="ladder polynomial of G(k, N)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_construct_grassmannian)

    p = csubs.add_parser("grass-ci", help="G(k, N) cut by hyperplane-class factors")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sections", type=int, required=True, help="number of leading factors pinned to 1")
    _add_common(p)
    p.set_defaults(func=_cmd_construct_grass_ci)

    p = csubs.add_parser("weighted", help="hypersurface in weighted projective space")
    p.add_argument("--weights", required=True, help="comma-separated positive weights")
    p.add_argument("--d", type=int, required=True, help="hypersurface degree")
    p.add_argument("--partition", required=True, help="trailing weights summing to d")
    _add_common(p)
    p.set_defaults(func=_cmd_construct_weighted)

    p = subs.add_parser("eliminate", help="solve constraints out of a model file")
    p.add_argument("--model", required=True, help="path to a model JSON file (as printed by construct --format json)")
    p.add_argument("--plan", required=True, help="semicolon-separated INDEX:VARIABLE steps, e.g. '0:X11;4:X42'")
    p.add_argument("--subs", help="semicolon-separated NAME=EXPRESSION substitutions applied afterwards")
    _add_common(p)
    p.set_defaults(func=_cmd_eliminate)

    p = subs.add_parser("identity", help="randomized equality test of two expressions")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=_cmd_identity)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ex.ParseError, ex.NotLaurentError, ex.IdentityTestError, CorpusError,
            ValueError, ZeroDivisionError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
