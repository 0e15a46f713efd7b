"""Command-line front end: construct, verify, induce, compare, report.

Exit codes are a stable contract:

    0   success / all requested checks passed
    1   a check failed
    2   admissibility violation (inadmissible parameters, integer lambda, n too small)
    64  parse error (bad rational literal, malformed file, bad usage)
    65  dimension or kind mismatch between artifacts

Artifacts are canonical JSON (sorted keys, sorted triplet lists, no
whitespace variance), so identical inputs always produce byte-identical
files.  Grid reports emit one JSON line per parameter point in sorted
order, regardless of worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .errors import (
    ConditionViolation,
    Degenerate,
    DimensionMismatch,
    ExactAlgebraError,
    IntegerLambda,
    NotClosed,
    ParseError,
    SizeTooSmall,
    ZeroLambdaI,
)
from .exactnum import Scalar, format_scalar, parse_scalar
from . import families
from . import jsonio
from . import symplectic as symp
from .algebra_core import check_jacobi, cotangent_filiform
from .families import FamilyParams, build_family_product, check_conditions
from .lsa import check_complete, check_left_hom, check_left_symmetric
from .symplectic import (
    FormFamilyParams,
    HomothetyCertificate,
    build_form_family,
    check_closed,
    induce_lsa,
    is_nondegenerate,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONDITION = 2
EXIT_PARSE = 64
EXIT_DIMENSION = 65

_CHECKS_BY_TARGET = {
    "algebra": ("check_jacobi",),
    "lsa": ("check_left_symmetric", "check_left_hom", "check_complete"),
    "form": ("check_closed", "is_nondegenerate"),
}


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through the exit-code contract."""

    def error(self, message):
        raise ParseError(message)


def _use_color(stream) -> bool:
    return stream.isatty() and not os.environ.get("NO_COLOR")


def _verdict_word(ok: bool, stream) -> str:
    word = "PASS" if ok else "FAIL"
    if _use_color(stream):
        code = "32" if ok else "31"
        return f"\x1b[{code}m{word}\x1b[0m"
    return word


def _witness_obj(w) -> dict:
    obj = {"indices": list(w.indices), "labels": list(w.labels)}
    if w.lhs is not None:
        obj["lhs"] = [format_scalar(x) for x in w.lhs]
    if w.rhs is not None:
        obj["rhs"] = [format_scalar(x) for x in w.rhs]
    if w.detail:
        obj["detail"] = w.detail
    return obj


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def _cmd_construct(args) -> int:
    if args.target == "algebra":
        if args.n is None:
            raise ParseError("construct algebra needs --n")
        algebra = cotangent_filiform(args.n)
        obj = jsonio.algebra_to_obj(algebra)
        obj["meta"] = {"family": "cotangent_filiform", "n": args.n}
    elif args.target == "lsa":
        if args.n is None or args.alpha is None or args.beta is None:
            raise ParseError("construct lsa needs --n, --alpha, and --beta")
        alpha = parse_scalar(args.alpha)
        beta = parse_scalar(args.beta)
        product = build_family_product(FamilyParams(args.n, alpha, beta))
        obj = jsonio.lsa_to_obj(product, meta={
            "family": "lsa", "n": args.n,
            "alpha": format_scalar(alpha), "beta": format_scalar(beta),
        })
    else:  # form
        if args.n is None or args.lam is None:
            raise ParseError("construct form needs --n and --lambda")
        lam = parse_scalar(args.lam)
        form = build_form_family(FormFamilyParams(args.n, lam))
        obj = jsonio.form_to_obj(form, meta={
            "family": "form", "n": args.n, "lambda": format_scalar(lam),
        })
    digest = jsonio.save_file(args.out, obj)
    print(f"{digest}  {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _run_check(name: str, payload) -> tuple[bool, dict]:
    """Run one named check; returns (passed, json fragment)."""
    if name == "check_jacobi":
        report = check_jacobi(payload)
    elif name == "check_left_symmetric":
        report = check_left_symmetric(payload)
    elif name == "check_left_hom":
        report = check_left_hom(payload)
    elif name == "check_complete":
        from .lsa import CompletenessVerdict
        from .errors import AxiomsNotVerified
        try:
            result = check_complete(payload)
        except AxiomsNotVerified:
            return False, {"verdict": "fail",
                           "detail": "skipped: product axioms do not hold"}
        ok = result.verdict is not CompletenessVerdict.NOT_COMPLETE
        fragment = {"verdict": "pass" if ok else "fail",
                    "completeness": result.verdict.value}
        if result.witness is not None:
            fragment["witness"] = {
                "point": [format_scalar(x) for x in result.witness.point],
                "power": result.witness.power,
                "trace": format_scalar(result.witness.trace_value),
            }
        return ok, fragment
    elif name == "check_closed":
        report = check_closed(payload)
    elif name == "is_nondegenerate":
        ok = is_nondegenerate(payload)
        return ok, {"verdict": "pass" if ok else "fail"}
    else:
        raise ParseError(f"unknown check {name!r}")
    fragment = {"verdict": "pass" if report.passed else "fail"}
    if report.witnesses:
        fragment["witnesses"] = [_witness_obj(w) for w in report.witnesses]
    return report.passed, fragment


def _load_target(path, target: str):
    obj = jsonio.load_file(path)
    kind = jsonio.detect_kind(obj)
    if kind != target:
        raise ParseError(f"{path} holds a {kind} artifact, not {target}")
    if target == "algebra":
        return jsonio.algebra_from_obj(obj), obj
    if target == "lsa":
        product, _meta = jsonio.lsa_from_obj(obj)
        return product, obj
    form, _meta = jsonio.form_from_obj(obj)
    return form, obj


def _cmd_verify(args) -> int:
    started = time.monotonic()
    payload, raw = _load_target(args.file, args.target)
    names = list(_CHECKS_BY_TARGET[args.target])
    if args.checks:
        requested = [s.strip() for s in args.checks.split(",") if s.strip()]
        for name in requested:
            if name not in _CHECKS_BY_TARGET[args.target]:
                raise ParseError(f"check {name!r} does not apply to {args.target}")
        names = requested
    results = {}
    all_ok = True
    for name in names:
        ok, fragment = _run_check(name, payload)
        results[name] = fragment
        all_ok = all_ok and ok
    report = {
        "command": "verify",
        "target": args.target,
        "inputs": [{"path": str(args.file), "sha256": jsonio.digest(raw)}],
        "verdicts": results,
        "version": __version__,
        "wall_time_s": round(time.monotonic() - started, 6),
    }
    if args.json:
        _print_json(report)
    else:
        for name in names:
            frag = results[name]
            line = f"{name}: {_verdict_word(frag['verdict'] == 'pass', sys.stdout)}"
            if "completeness" in frag:
                line += f" ({frag['completeness']})"
            print(line)
            for wit in frag.get("witnesses", [])[:4]:
                print(f"  witness {tuple(wit['labels'])}: {wit.get('detail', '')}")
        print("all checks passed" if all_ok else "some checks failed")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# induce
# ---------------------------------------------------------------------------

def _cmd_induce(args) -> int:
    obj = jsonio.load_file(args.file)
    if jsonio.detect_kind(obj) != "form":
        raise ParseError(f"{args.file} does not hold a form artifact")
    form, meta = jsonio.form_from_obj(obj)
    product = induce_lsa(form)
    out_meta = None
    if meta and meta.get("family") == "form" and "lambda" in meta:
        params = FormFamilyParams(int(meta["n"]), parse_scalar(meta["lambda"]))
        translated = symp.family_params_of(params)
        out_meta = {
            "family": "lsa",
            "n": params.n,
            "alpha": format_scalar(translated.alpha),
            "beta": format_scalar(translated.beta),
            "induced_from_lambda": format_scalar(params.lam),
        }
    digest = jsonio.save_file(args.out, jsonio.lsa_to_obj(product, meta=out_meta))
    print(f"{digest}  {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def _family_params_from_meta(meta, path) -> FamilyParams:
    if not meta or meta.get("family") != "lsa":
        raise ParseError(f"{path} carries no product-family metadata; "
                         "supply --certificate instead")
    return FamilyParams(int(meta["n"]), parse_scalar(meta["alpha"]),
                        parse_scalar(meta["beta"]))


def _form_params_from_meta(meta, path) -> FormFamilyParams:
    if not meta or meta.get("family") != "form":
        raise ParseError(f"{path} carries no form-family metadata; "
                         "supply --certificate instead")
    return FormFamilyParams(int(meta["n"]), parse_scalar(meta["lambda"]))


def _cmd_compare(args) -> int:
    started = time.monotonic()
    obj_a = jsonio.load_file(args.file_a)
    obj_b = jsonio.load_file(args.file_b)
    kind_a = jsonio.detect_kind(obj_a)
    kind_b = jsonio.detect_kind(obj_b)
    if kind_a != kind_b:
        raise DimensionMismatch(f"cannot compare a {kind_a} with a {kind_b}")
    if kind_a not in ("lsa", "form"):
        raise ParseError("compare works on lsa or form artifacts")
    report = {
        "command": "compare",
        "target": kind_a,
        "inputs": [
            {"path": str(args.file_a), "sha256": jsonio.digest(obj_a)},
            {"path": str(args.file_b), "sha256": jsonio.digest(obj_b)},
        ],
        "version": __version__,
    }

    if kind_a == "lsa":
        prod_a, meta_a = jsonio.lsa_from_obj(obj_a)
        prod_b, meta_b = jsonio.lsa_from_obj(obj_b)
        if prod_a.base.dim != prod_b.base.dim:
            raise DimensionMismatch("artifacts have different dimensions")
        if args.certificate:
            phi, _scale = jsonio.certificate_from_obj(jsonio.load_file(args.certificate))
            from .lsa import verify_lsa_isomorphism
            ver = verify_lsa_isomorphism(prod_a, prod_b, phi)
            report["certificate_verified"] = "pass" if ver.passed else "fail"
            if ver.witnesses:
                report["witnesses"] = [_witness_obj(w) for w in ver.witnesses]
            rc = EXIT_OK if ver.passed else EXIT_CHECK_FAILED
        else:
            pa = _family_params_from_meta(meta_a, args.file_a)
            pb = _family_params_from_meta(meta_b, args.file_b)
            verdict = families.family_equivalence(pa, pb)
            report["verdict"] = verdict.result.value
            if verdict.note:
                report["note"] = verdict.note
            if verdict.certificate is not None:
                cert_obj = jsonio.certificate_to_obj(verdict.certificate)
                report["certificate"] = cert_obj
                if args.out:
                    jsonio.save_file(args.out, cert_obj)
            rc = (EXIT_CONDITION
                  if verdict.result is families.EquivalenceResult.ASSUMPTIONS_VIOLATED
                  else EXIT_OK)
    else:
        form_a, meta_a = jsonio.form_from_obj(obj_a)
        form_b, meta_b = jsonio.form_from_obj(obj_b)
        if form_a.base.dim != form_b.base.dim:
            raise DimensionMismatch("artifacts have different dimensions")
        if args.certificate:
            phi, scale = jsonio.certificate_from_obj(jsonio.load_file(args.certificate))
            if scale is None:
                raise ParseError("a form certificate needs the scale entry \"c\"")
            ver = symp.verify_homothety(form_a, form_b, HomothetyCertificate(phi, scale))
            report["certificate_verified"] = "pass" if ver.passed else "fail"
            if ver.witnesses:
                report["witnesses"] = [_witness_obj(w) for w in ver.witnesses]
            rc = EXIT_OK if ver.passed else EXIT_CHECK_FAILED
        else:
            pa = _form_params_from_meta(meta_a, args.file_a)
            pb = _form_params_from_meta(meta_b, args.file_b)
            verdict = symp.form_equivalence(pa, pb)
            report["verdict"] = verdict.result.value
            if verdict.scale is not None:
                report["scale"] = format_scalar(verdict.scale)
            if verdict.note:
                report["note"] = verdict.note
            if verdict.certificate is not None:
                cert_obj = jsonio.certificate_to_obj(verdict.certificate, verdict.scale)
                report["certificate"] = cert_obj
                if args.out:
                    jsonio.save_file(args.out, cert_obj)
            rc = EXIT_OK
    report["wall_time_s"] = round(time.monotonic() - started, 6)
    if args.json:
        _print_json(report)
    else:
        if "verdict" in report:
            print(f"verdict: {report['verdict']}")
            if "scale" in report:
                print(f"scale: {report['scale']}")
            if "note" in report:
                print(f"note: {report['note']}")
            if "certificate" in report and args.out:
                print(f"certificate written to {args.out}")
        if "certificate_verified" in report:
            ok = report["certificate_verified"] == "pass"
            print(f"certificate: {_verdict_word(ok, sys.stdout)}")
    return rc


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def _parse_grid(spec: str) -> list[Scalar]:
    """Comma list of rationals; "a..b" spans an inclusive integer range."""
    values: list[Scalar] = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo_txt, hi_txt = part.split("..", 1)
            lo, hi = parse_scalar(lo_txt), parse_scalar(hi_txt)
            if lo.denominator != 1 or hi.denominator != 1:
                raise ParseError(f"range endpoints must be integers: {part!r}")
            values.extend(Fraction(v) for v in range(int(lo), int(hi) + 1))
        else:
            values.append(parse_scalar(part))
    return values


def _lsa_point_record(n: int, alpha: Scalar, beta: Scalar) -> dict:
    record = {
        "n": n,
        "alpha": format_scalar(alpha),
        "beta": format_scalar(beta),
        "in_set_A": families.in_set_A(n, alpha, beta),
    }
    cond = check_conditions(n, alpha, beta)
    record["conditions"] = "pass" if cond.ok else "fail"
    if not cond.ok:
        record.update(assumptions=None, axioms=None, complete=None)
        return record
    params = FamilyParams(n, alpha, beta)
    assumptions = families.check_classification_assumptions(params)
    record["assumptions"] = "pass" if assumptions.ok else "fail"
    product = build_family_product(params)
    axioms_ok = check_left_symmetric(product).passed and check_left_hom(product).passed
    record["axioms"] = "pass" if axioms_ok else "fail"
    record["complete"] = check_complete(product).verdict.value if axioms_ok else None
    return record


def _form_point_record(n: int, lam: Scalar) -> dict:
    record = {
        "n": n,
        "lambda": format_scalar(lam),
        "in_set_B": symp.in_set_B(n, lam),
    }
    try:
        params = FormFamilyParams(n, lam)
    except (IntegerLambda, ZeroLambdaI) as exc:
        record.update(conditions="fail", closed=None, nondegenerate=None,
                      family_match=None, note=str(exc))
        return record
    record["conditions"] = "pass"
    form = build_form_family(params)
    record["closed"] = "pass" if check_closed(form).passed else "fail"
    record["nondegenerate"] = "pass" if is_nondegenerate(form) else "fail"
    record["family_match"] = (
        "pass" if symp.check_family_correspondence(params).ok else "fail")
    return record


def _cmd_report(args) -> int:
    has_ab = args.alpha is not None or args.beta is not None
    has_lam = args.lam is not None
    if has_ab == has_lam:
        raise ParseError("report needs either --alpha and --beta, or --lambda")
    n = args.n
    lines: list[str] = []
    workers = max(1, args.workers)

    if has_ab:
        if args.alpha is None or args.beta is None:
            raise ParseError("report needs both --alpha and --beta")
        alphas = _parse_grid(args.alpha)
        betas = _parse_grid(args.beta)
        points = sorted({(a, b) for a in alphas for b in betas})
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda ab: _lsa_point_record(n, *ab), points))
        lines = [json.dumps(r, sort_keys=True) for r in records]
        if args.pairwise:
            for i in range(len(points)):
                for j in range(i + 1, len(points)):
                    pa = FamilyParams(n, *points[i])
                    pb = FamilyParams(n, *points[j])
                    try:
                        verdict = families.family_equivalence(pa, pb).result.value
                    except ConditionViolation:
                        verdict = None
                    lines.append(json.dumps({
                        "kind": "pair",
                        "left": {"alpha": format_scalar(points[i][0]),
                                 "beta": format_scalar(points[i][1])},
                        "right": {"alpha": format_scalar(points[j][0]),
                                  "beta": format_scalar(points[j][1])},
                        "verdict": verdict,
                    }, sort_keys=True))
    else:
        lams = sorted(set(_parse_grid(args.lam)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda v: _form_point_record(n, v), lams))
        lines = [json.dumps(r, sort_keys=True) for r in records]
        if args.pairwise:
            for i in range(len(lams)):
                for j in range(i + 1, len(lams)):
                    try:
                        verdict = symp.form_equivalence(
                            FormFamilyParams(n, lams[i]),
                            FormFamilyParams(n, lams[j])).result.value
                    except (IntegerLambda, ZeroLambdaI):
                        verdict = None
                    lines.append(json.dumps({
                        "kind": "pair",
                        "left": {"lambda": format_scalar(lams[i])},
                        "right": {"lambda": format_scalar(lams[j])},
                        "verdict": verdict,
                    }, sort_keys=True))

    text = "".join(line + "\n" for line in lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cotlsa", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build an artifact and write canonical JSON")
    con.add_argument("target", choices=("algebra", "lsa", "form"))
    con.add_argument("--n", type=int, required=True)
    con.add_argument("--alpha")
    con.add_argument("--beta")
    con.add_argument("--lambda", dest="lam")
    con.add_argument("-o", "--out", required=True)
    con.set_defaults(func=_cmd_construct)

    ver = sub.add_parser("verify", help="run checks against an artifact file")
    ver.add_argument("target", choices=("algebra", "lsa", "form"))
    ver.add_argument("file")
    ver.add_argument("--checks", help="comma list of check names to run")
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=_cmd_verify)

    ind = sub.add_parser("induce", help="induce the product of a symplectic form")
    ind.add_argument("file")
    ind.add_argument("-o", "--out", required=True)
    ind.set_defaults(func=_cmd_induce)

    cmp_ = sub.add_parser("compare", help="equivalence verdict or certificate check")
    cmp_.add_argument("file_a")
    cmp_.add_argument("file_b")
    cmp_.add_argument("--certificate", help="verify this certificate file instead")
    cmp_.add_argument("-o", "--out", help="write the emitted certificate here")
    cmp_.add_argument("--json", action="store_true")
    cmp_.set_defaults(func=_cmd_compare)

    rep = sub.add_parser("report", help="JSON-lines survey over a parameter grid")
    rep.add_argument("--n", type=int, required=True)
    rep.add_argument("--alpha", help="grid of rationals, e.g. 3/2,2,5/2 or 2..4")
    rep.add_argument("--beta", help="grid of rationals")
    rep.add_argument("--lambda", dest="lam", help="grid of rationals")
    rep.add_argument("--pairwise", action="store_true",
                     help="append pairwise equivalence records")
    rep.add_argument("--workers", type=int, default=1)
    rep.add_argument("-o", "--out")
    rep.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConditionViolation, IntegerLambda, ZeroLambdaI, SizeTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (Degenerate, NotClosed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except ExactAlgebraError as exc:  # residual package errors count as failures
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
