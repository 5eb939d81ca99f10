"""Command-line interface: ``qdisc <norm|fracderiv|carleson|operator|verify|families> ...``.

Exit codes: 0 on success (and on verified brackets), 1 when an asserted
bracket fails or output cannot be written, 2 on usage, parse or
admissibility errors.
"""

from __future__ import annotations

import os

_threads = os.environ.get("QDISC_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import argparse  # noqa: E402
import csv  # noqa: E402
import io  # noqa: E402
import json  # noqa: E402
import math  # noqa: E402
import sys  # noqa: E402
import tempfile  # noqa: E402

from . import calculus, spaces  # noqa: E402
from .density import ZeroDensity, derivative_density, power_weight  # noqa: E402
from .families import KINDS, FamilySpec, TruncationError, make_family  # noqa: E402
from .params import InadmissibleParams, SpaceParams, validate  # noqa: E402
from .quadrature import QuadConfig  # noqa: E402
from .series import FourierSeries, TaylorSeries  # noqa: E402
from .verify import EXPERIMENTS, ComparabilityReport, run_experiment  # noqa: E402


class UsageError(Exception):
    """Bad input: malformed JSON, unknown names or inadmissible parameters (exit 2)."""


# --- function specs -------------------------------------------------------------


def _load_doc(doc):
    if isinstance(doc, (dict, list)):
        return doc
    text = str(doc).strip()
    if text.startswith("@"):
        text = text[1:]
    if not text.startswith("{"):
        try:
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read function spec {text!r}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def _space_block(block) -> SpaceParams | None:
    if block is None:
        return None
    try:
        return SpaceParams.from_dict(block)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad params block: {exc}") from None


def parse_function_spec(doc, context: str | None = None):
    """Read a function document into (TaylorSeries or FourierSeries, SpaceParams or None).

    Accepted shapes: {"coeffs": [[re, im], ...]} (plus "nmin" for a boundary
    function), a FamilySpec {"kind", "params", "N"}, or either of those under
    "function" next to a "params" block {p, beta, b, nu}.  A coefficient
    document may carry the params block at top level; a FamilySpec may carry
    it under "space".
    """
    d = _load_doc(doc)
    if not isinstance(d, dict):
        raise UsageError("function spec must be a JSON object")
    space = d.get("space")
    if "function" in d:
        inner, space = d["function"], d.get("params", space)
    else:
        inner = d
        if "coeffs" in d and space is None:
            space = d.get("params")
    try:
        if "coeffs" in inner:
            if "nmin" in inner:
                fn = FourierSeries.from_json(inner)
            else:
                fn = TaylorSeries.from_json(inner)
        elif "kind" in inner:
            fn = make_family(FamilySpec.from_json(inner))
        else:
            raise UsageError("function spec needs 'coeffs' or 'kind'")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, TruncationError):
            raise
        raise UsageError(f"bad function spec: {exc}") from None
    params = _space_block(space)
    if params is not None and context is not None:
        verdict = validate(params, context)
        if not verdict.ok:
            raise InadmissibleParams(context, list(verdict.violated))
    return fn, params


def series_to_json(s) -> dict:
    return s.to_json()


# --- output ---------------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, float):
        return "nan" if math.isnan(x) else repr(x)
    return str(x)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def render(report, fmt: str = "json") -> str:
    """Deterministic text for a report, NormResult, series or plain dict."""
    if fmt not in ("json", "csv"):
        raise UsageError(f"unknown format {fmt!r}")
    if isinstance(report, ComparabilityReport):
        if fmt == "csv":
            return _csv_text(ComparabilityReport.CSV_COLUMNS, report.csv_rows())
        doc = report.to_json()
    elif isinstance(report, spaces.NormResult):
        if fmt == "csv":
            header, rows = report.table_rows()
            return _csv_text(header, rows)
        doc = report.to_json()
    elif isinstance(report, (TaylorSeries, FourierSeries)):
        if fmt == "csv":
            freqs = range(report.coeffs.size) if isinstance(report, TaylorSeries) else report.frequencies
            rows = [(int(k), float(c.real), float(c.imag)) for k, c in zip(freqs, report.coeffs)]
            return _csv_text(["k", "re", "im"], rows)
        doc = report.to_json()
    else:
        if fmt == "csv":
            items = sorted(report.items())
            return _csv_text([k for k, _ in items], [[v for _, v in items]])
        doc = report
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_report(report, fmt: str = "json", path: str | None = None, stream=None) -> None:
    """Write the rendered report to ``path`` atomically, or to ``stream`` (default stdout)."""
    text = render(report, fmt)
    if path is None or path == "-":
        (stream or sys.stdout).write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qdisc-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- argument parsing -------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = QuadConfig()
    p.add_argument("--levels", type=int, default=d.levels, help="radial cells per graded shell")
    p.add_argument("--angles", type=int, default=d.angles, help="angular cells across the smallest dyadic arc")
    p.add_argument("--grade", type=float, default=d.grade, help="geometric grading ratio in (0,1)")
    p.add_argument("--eps-min", type=float, default=d.eps_min, help="smallest graded depth 1-r")
    p.add_argument(
        "--refine",
        type=int,
        nargs="?",
        const=d.refine_factor,
        default=None,
        metavar="FACTOR",
        help="also compute on the refined mesh and report refinement deltas",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for random polynomial families")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def _space_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--nu", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qdisc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="{norm,fracderiv,carleson,operator,verify,families}")

    p = sub.add_parser("norm", parents=[common], help="compute a norm, seminorm or Carleson-type constant")
    p.add_argument("--op", required=True, choices=sorted(spaces.NORM_OPS))
    p.add_argument("--fn", required=True, help="function spec: JSON text, a path, or @path")
    p.add_argument("--lam", type=float, default=None, help="Morrey exponent (default p-2beta+2)")
    _space_args(p)

    p = sub.add_parser("fracderiv", parents=[common], help="fractional nu-derivative of a series")
    p.add_argument("--fn", required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--b", type=float, default=2.0)
    p.add_argument("--at", default=None, help="also evaluate the integral form at this point, e.g. 0.3+0.1j")

    p = sub.add_parser("carleson", parents=[common], help="box and Moebius Carleson constants of a density")
    p.add_argument("--s", type=float, required=True, help="Carleson exponent")
    p.add_argument("--form", choices=("box", "mobius"), default="box")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--density", help="'power:a' for (1-|z|^2)^a, or 'zero'")
    g.add_argument("--fn", help="function spec; the density is |f'|^2 (1-|z|^2)^exponent")
    p.add_argument("--exponent", type=float, default=0.0)

    p = sub.add_parser("operator", parents=[common], help="apply T_g, I_g or M_g")
    p.add_argument("--kind", required=True, choices=("Tg", "Ig", "Mg"))
    p.add_argument("--f", required=True, dest="f_spec")
    p.add_argument("--g", required=True, dest="g_spec")
    p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("verify", parents=[common], help="run an experiment (or 'all')")
    p.add_argument("experiment", choices=sorted(EXPERIMENTS) + ["all"])
    _space_args(p)

    p = sub.add_parser("families", parents=[common], help="materialize a family member, or list kinds")
    p.add_argument("--spec", default=None, help="FamilySpec JSON")
    return parser


def _cfg(args) -> QuadConfig:
    kw = dict(levels=args.levels, angles=args.angles, grade=args.grade, eps_min=args.eps_min)
    if args.refine is not None:
        kw["refine_factor"] = args.refine
    try:
        return QuadConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _space(args, doc_params: SpaceParams | None, default: SpaceParams | None = None) -> SpaceParams | None:
    base = doc_params or default
    vals = {}
    for k in ("p", "beta", "b", "nu"):
        v = getattr(args, k, None)
        if v is None and base is not None:
            v = getattr(base, k)
        if v is not None:
            vals[k] = v
    if "p" not in vals or "beta" not in vals:
        return None
    try:
        return SpaceParams.from_dict(vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


_NORM_CONTEXT = {
    "q-circle": "circleTheorems",
    "q-circle-difference": "circleTheorems",
    "poisson-carleson": "circleTheorems",
}


def _cmd_norm(args, out) -> int:
    fn, doc_params = parse_function_spec(args.fn)
    params = _space(args, doc_params)
    op = args.op
    if params is None and op not in ("hardy2",):
        raise UsageError("norm needs --p and --beta (or a params block)")
    if op in _NORM_CONTEXT:
        validate(params, _NORM_CONTEXT[op]).require()
    cfg, refine = _cfg(args), args.refine is not None
    analytic_only = op in ("q-disc-box", "q-disc-mobius", "morrey-carleson", "growth", "hardy2")
    if analytic_only and not isinstance(fn, TaylorSeries):
        raise UsageError(f"{op} needs an analytic (Taylor) function")
    if op == "hardy2":
        out({"op": op, "value": spaces.hardy2_norm(fn)})
        return 0
    if op == "q-disc-box":
        res = spaces.q_disc_box_seminorm(fn, params, cfg, refine=refine)
    elif op == "q-disc-mobius":
        res = spaces.q_disc_mobius_norm(fn, params, cfg, refine=refine)
    elif op == "q-circle":
        res = spaces.q_circle_seminorm(fn, params, cfg, refine=refine)
    elif op == "q-circle-difference":
        res = spaces.q_circle_difference_form(fn, params, cfg, refine=refine)
    elif op == "poisson-carleson":
        res = spaces.poisson_carleson_constant(fn, params, cfg, refine=refine)
    elif op == "bmo-beta":
        res = spaces.bmo_beta_seminorm(fn, params.beta, cfg)
    elif op == "morrey":
        res = spaces.morrey_norm(fn, args.lam if args.lam is not None else params.morrey_lambda, cfg)
    elif op == "morrey-carleson":
        res = spaces.morrey_carleson_constant(fn, args.lam if args.lam is not None else params.morrey_lambda, cfg, refine=refine)
    elif op == "growth":
        res = spaces.growth_seminorm(fn, params.beta, cfg, refine=refine)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown op {op}")
    out(res)
    return 0


def _cmd_fracderiv(args, out) -> int:
    fn, _ = parse_function_spec(args.fn)
    if not isinstance(fn, TaylorSeries):
        raise UsageError("fracderiv needs an analytic (Taylor) function")
    try:
        fp = calculus.FracDerivParams(args.nu, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = calculus.frac_derivative(fn, fp)
    if args.at is None:
        out(result)
        return 0
    try:
        z = complex(args.at.replace(" ", ""))
    except ValueError:
        raise UsageError(f"cannot parse point {args.at!r}") from None
    integral = calculus.frac_derivative_integral(fn, fp, z, cfg=_cfg(args), refine=args.refine is not None)
    coeff = complex(result(z))
    iv = complex(integral.value)
    out(
        {
            "coeffs": result.to_json()["coeffs"],
            "z": [z.real, z.imag],
            "coefficientForm": [coeff.real, coeff.imag],
            "integralForm": [iv.real, iv.imag],
            "refinementDelta": None if math.isnan(integral.refinement_delta) else integral.refinement_delta,
        }
    )
    return 0


def _cmd_carleson(args, out) -> int:
    cfg, refine = _cfg(args), args.refine is not None
    if args.density is not None:
        spec = args.density.strip()
        if spec == "zero":
            w = ZeroDensity()
        elif spec.startswith("power:"):
            try:
                w = power_weight(float(spec.split(":", 1)[1]))
            except ValueError:
                raise UsageError(f"bad density {spec!r}") from None
        else:
            raise UsageError(f"unknown density {spec!r}; use 'power:a' or 'zero'")
    else:
        fn, _ = parse_function_spec(args.fn)
        if not isinstance(fn, TaylorSeries):
            raise UsageError("carleson --fn needs an analytic (Taylor) function")
        w = derivative_density(fn, args.exponent)
    if not args.s > 0:
        raise UsageError("--s must be positive")
    if args.form == "box":
        res = spaces.carleson_box_constant(w, args.s, cfg, refine=refine)
    else:
        res = spaces.carleson_mobius_constant(w, args.s, cfg, refine=refine)
    out(res)
    return 0


def _cmd_operator(args, out) -> int:
    f, _ = parse_function_spec(args.f_spec)
    g, _ = parse_function_spec(args.g_spec)
    if not (isinstance(f, TaylorSeries) and isinstance(g, TaylorSeries)):
        raise UsageError("operators act on analytic (Taylor) functions")
    op = {"Tg": calculus.volterra_Tg, "Ig": calculus.op_Ig, "Mg": calculus.op_Mg}[args.kind]
    out(op(f, g, args.budget))
    return 0


def _cmd_verify(args, out) -> int:
    cfg, refine = _cfg(args), args.refine is not None
    params = _space(args, None)
    ids = list(EXPERIMENTS) if args.experiment == "all" else [args.experiment]
    ok = True
    reports = []
    for eid in ids:
        rep = run_experiment(eid, params=params, cfg=cfg, refine=refine)
        rep.params["seed"] = args.seed
        ok = ok and rep.passed
        reports.append(rep)
    if len(reports) == 1:
        out(reports[0])
    elif args.format == "csv":
        merged = ComparabilityReport("all", {"seed": args.seed})
        for rep in reports:
            for row in rep.rows:
                row.instance_id = f"{rep.experiment_id}:{row.instance_id}"
                merged.rows.append(row)
        out(merged)
    else:
        out({"passed": ok, "reports": [r.to_json() for r in reports]})
    return 0 if ok else 1


def _cmd_families(args, out) -> int:
    if args.spec is None:
        out({"kinds": list(KINDS)})
        return 0
    d = _load_doc(args.spec)
    if isinstance(d, dict) and d.get("kind") == "polynomial":
        d = dict(d, params=dict({"seed": args.seed}, **d.get("params", {})))
    fn, _ = parse_function_spec(d)
    out(fn)
    return 0


COMMANDS = {
    "norm": _cmd_norm,
    "fracderiv": _cmd_fracderiv,
    "carleson": _cmd_carleson,
    "operator": _cmd_operator,
    "verify": _cmd_verify,
    "families": _cmd_families,
}


def run_command(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(stderr)
        return 2

    def out(obj) -> None:
        write_report(obj, args.format, args.out, stdout)

    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, InadmissibleParams, TruncationError) as exc:
        stderr.write(f"qdisc {args.command}: {exc}\n")
        return 2
    except OSError as exc:
        stderr.write(f"qdisc {args.command}: cannot write output: {exc}\n")
        return 1


def main(argv=None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
