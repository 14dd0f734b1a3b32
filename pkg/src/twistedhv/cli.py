"""Command-line front end.

Every subcommand builds a :class:`CommandReport`. Exit status is 0 when every
verification in the command passed, 1 when one failed (the report carries the
witness) and 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import algebra, identities, involutions, modules, unitarity, virprime
from .parser import (
    ParseError,
    format_element,
    format_module_spec,
    parse_element,
    parse_involution,
    parse_module_spec,
    parse_scalar,
    parse_window,
)
from .scalar import NotUnitModulus, UnitPhase, format_scalar

__all__ = ["CommandReport", "UsageError", "run_command", "main", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class CommandReport:
    command: str
    inputs: dict
    result: dict
    exit_status: int
    text: str = ""
    fmt: str = "text"
    csv: str | None = field(default=None, repr=False)
    out: str | None = None

    @property
    def passed(self) -> bool:
        return self.exit_status == EXIT_OK

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "exit_status": self.exit_status,
        }

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
        if self.fmt == "csv":
            if self.csv is None:
                raise UsageError(f"--format csv is not available for {self.command}")
            return self.csv
        return self.text if self.text.endswith("\n") else self.text + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def exit(self, status=0, message=None):
        raise UsageError(message or f"exit {status}")


# options whose values may legitimately start with '-'
_VALUE_OPTIONS = {
    "--range", "--window", "--out", "--format", "--report", "--a", "--b", "--c",
    "--a2", "--b2", "--alpha", "--phase", "--theta", "--module", "--points",
}


def _merge_option_values(argv: list[str]) -> list[str]:
    """Rewrite ``--opt -1/3`` as ``--opt=-1/3`` so argparse keeps negative values."""
    out = []
    j = 0
    while j < len(argv):
        tok = argv[j]
        if tok in _VALUE_OPTIONS and j + 1 < len(argv) and argv[j + 1].startswith("-"):
            out.append(f"{tok}={argv[j + 1]}")
            j += 2
            continue
        out.append(tok)
        j += 1
    return out


def _common(p: argparse.ArgumentParser, range_default: int | None = None, window: bool = False):
    p.add_argument("--range", type=int, default=range_default)
    if window:
        p.add_argument("--window", default="-10..10")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")


def _build_parser() -> _Parser:
    root = _Parser(prog="twistedhv", description="Exact checks for the twisted Heisenberg-Virasoro algebra.")
    sub = root.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("bracket", help="bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")
    _common(p)

    p = sub.add_parser("jacobi", help="Jacobi identity on all basis triples")
    _common(p, 6)

    p = sub.add_parser("ideal-check", help="closure of a graded span under brackets")
    p.add_argument("span", nargs="+", help='items such as "I[*]" CI CLI CL L[3]')
    _common(p, 8)

    for name in ("involution-validate", "involution-axioms", "vir-prime"):
        p = sub.add_parser(name)
        p.add_argument("--theta", required=True, help='e.g. "type=plus alpha=2 phase=3/5+4/5i"')
        _common(p, {"involution-validate": None, "involution-axioms": 8, "vir-prime": 5}[name])

    p = sub.add_parser("module-act", help="act with an algebra element on a module vector")
    p.add_argument("--module", required=True, help="A[a=..,b=..,c=..], VirA[..], VirAalpha[..], VirB[..]")
    p.add_argument("x")
    p.add_argument("v")
    _common(p)

    p = sub.add_parser("rep-check", help="check the action is a representation")
    p.add_argument("--module", required=True)
    _common(p, 5)

    p = sub.add_parser("simplicity", help="simple or an explicit proper submodule")
    p.add_argument("--module", required=True)
    _common(p, 6)

    p = sub.add_parser("iso", help="isomorphism criterion for Vir modules A_{a,b}")
    for k in ("--a", "--b", "--a2", "--b2"):
        p.add_argument(k, required=True)
    _common(p)

    for name in ("unitary", "gram"):
        p = sub.add_parser(name)
        for k in ("--a", "--b", "--c"):
            p.add_argument(k, required=True)
        p.add_argument("--alpha", default="1")
        p.add_argument("--phase", default="1")
        _common(p, 3, window=True)

    p = sub.add_parser("scan", help="grid scan of both unitarity routes")
    for k in ("--a", "--b", "--c"):
        p.add_argument(k, required=True, help="comma-separated exact values")
    p.add_argument("--phase", default="1")
    p.add_argument("--alpha", default="1")
    _common(p, window=True)

    p = sub.add_parser("verify-identity")
    p.add_argument("identity", choices=("beta-recursion", "claim1", "claim2", "mu-constant"))
    p.add_argument("--report", choices=("json", "text"))
    p.add_argument("--points", type=int, default=8)
    p.add_argument("--a", default="0")
    p.add_argument("--b", default="1/2")
    p.add_argument("--c", default="1")
    _common(p)
    return root


def _status(ok: bool) -> int:
    return EXIT_OK if ok else EXIT_FAIL


def _vr_text(label: str, rep) -> str:
    line = f"{label}: {'pass' if rep.passed else 'FAIL'} ({rep.checked} checked, {rep.failures} failures)"
    if rep.witness:
        line += "\n  witness: " + json.dumps(rep.witness, sort_keys=True)
    return line


def _list(text: str) -> list:
    return [parse_scalar(t) for t in text.split(",") if t.strip()]


def _plus(alpha: str, phase: str) -> involutions.PlusType:
    a = parse_scalar(alpha)
    if a.im:
        raise UsageError("alpha must be real")
    return involutions.PlusType(a.re, UnitPhase(parse_scalar(phase)))


# -- command handlers ------------------------------------------------------------------


def _cmd_bracket(ns):
    x, y = parse_element(ns.x), parse_element(ns.y)
    if not isinstance(x, algebra.LieElement) or not isinstance(y, algebra.LieElement):
        raise UsageError("bracket takes algebra elements, not module vectors")
    r = format_element(algebra.bracket(x, y))
    return {"x": format_element(x), "y": format_element(y)}, {"bracket": r}, EXIT_OK, r


def _cmd_jacobi(ns):
    rep = algebra.check_jacobi(ns.range)
    return {"range": ns.range}, rep.to_dict(), _status(rep.passed), _vr_text("jacobi", rep)


def _cmd_ideal(ns):
    span = algebra.SpanPattern.of(*ns.span)
    rep = algebra.check_ideal(span, ns.range)
    return {"span": str(span), "range": ns.range}, rep.to_dict(), _status(rep.passed), _vr_text(str(span), rep)


def _cmd_inv_validate(ns):
    theta = parse_involution(ns.theta)
    try:
        involutions.validate_params(theta)
    except involutions.ConstraintViolation as exc:
        res = {"valid": False, "constraint": exc.constraint, "lhs": str(exc.lhs), "rhs": str(exc.rhs)}
        return {"theta": theta.describe()}, res, EXIT_FAIL, f"invalid: {exc}"
    return {"theta": theta.describe()}, {"valid": True}, EXIT_OK, "valid"


def _cmd_inv_axioms(ns):
    theta = involutions.validate_params(parse_involution(ns.theta))
    rep = involutions.check_axioms(theta, ns.range)
    text = "\n".join(
        _vr_text(n, getattr(rep, n)) for n in ("conjugate_linear", "anti_homomorphism", "involutive")
    )
    return {"theta": theta.describe(), "range": ns.range}, rep.to_dict(), _status(rep.passed), text


def _cmd_vir_prime(ns):
    theta = parse_involution(ns.theta)
    if not isinstance(theta, involutions.MinusType):
        raise UsageError("vir-prime needs a type=minus involution")
    inputs = {"theta": theta.describe(), "range": ns.range}
    try:
        vp = virprime.build_vir_prime(theta, ns.range)
    except virprime.InconsistentConstraint as exc:
        res = {"passed": False, "check": "x_n solvable", "n": exc.n, "rhs": format_scalar(exc.rhs)}
        return inputs, res, EXIT_FAIL, f"FAIL: {exc}"
    except virprime.ConsistencyFailure as exc:
        res = {"passed": False, "check": exc.check, "where": str(exc.where), "detail": exc.detail}
        return inputs, res, EXIT_FAIL, f"FAIL: {exc}"
    res = {
        "passed": True,
        "c_prime": format_element(vp.c_prime),
        "x": {str(n): format_scalar(v) for n, v in sorted(vp.x.items()) if abs(n) <= ns.range},
    }
    return inputs, res, EXIT_OK, f"pass: C' = {res['c_prime']}"


def _cmd_module_act(ns):
    spec = parse_module_spec(ns.module)
    x, v = parse_element(ns.x), parse_element(ns.v)
    if not isinstance(x, algebra.LieElement):
        raise UsageError("first argument must be an algebra element")
    if isinstance(v, algebra.LieElement):
        if v:
            raise UsageError("second argument must be a module vector v[k]")
        v = modules.ModuleVector()
    try:
        out = format_element(modules.act(spec, x, v))
    except modules.UnsupportedGenerator as exc:
        raise UsageError(str(exc)) from exc
    inputs = {"module": format_module_spec(spec), "x": format_element(x), "v": format_element(v)}
    return inputs, {"result": out}, EXIT_OK, out


def _cmd_rep_check(ns):
    spec = parse_module_spec(ns.module)
    rep = modules.action_is_representation(spec, ns.range)
    return ({"module": format_module_spec(spec), "range": ns.range}, rep.to_dict(),
            _status(rep.passed), _vr_text("representation", rep))


def _cmd_simplicity(ns):
    spec = parse_module_spec(ns.module)
    got = modules.detect_simplicity(spec, ns.range)
    inputs = {"module": format_module_spec(spec), "window": ns.range}
    if isinstance(got, modules.Simple):
        res = {"simple": True, "evidence": got.evidence}
        text = "simple"
    else:
        shape = ("all v_k except " + ",".join(map(str, sorted(got.excluded)))) if got.cofinite \
            else ("span of v_" + ",".join(map(str, sorted(got.basis_subset))))
        res = {"simple": False, "submodule": shape, "cofinite": got.cofinite,
               "basis_subset": sorted(got.basis_subset), "witness": got.witness}
        text = f"proper submodule: {shape}\n  {got.witness}"
    ok = True
    if isinstance(spec, modules.VirAab):
        pred = modules.simplicity_predicate_Aab(spec.a, spec.b)
        res["predicate"] = pred
        ok = pred == res["simple"]
        if not ok:
            text += f"\nFAIL: closed-form predicate says simple={pred}"
    return inputs, res, _status(ok), text


def _cmd_iso(ns):
    vals = [parse_scalar(getattr(ns, k)) for k in ("a", "b", "a2", "b2")]
    iso = modules.iso_predicate_Aab(*vals)
    inputs = dict(zip(("a", "b", "a2", "b2"), map(format_scalar, vals)))
    return inputs, {"isomorphic": iso}, EXIT_OK, f"isomorphic={str(iso).lower()}"


def _hv_inputs(ns):
    spec = modules.HVSeries(parse_scalar(ns.a), parse_scalar(ns.b), parse_scalar(ns.c))
    theta = _plus(ns.alpha, ns.phase)
    window = parse_window(ns.window)
    if window[1] - window[0] + 1 < 4:
        raise UsageError("window must contain at least 4 indices")
    inputs = {"module": format_module_spec(spec), "theta": theta.describe(), "window": list(window)}
    return spec, theta, window, inputs


def _cmd_unitary(ns):
    spec, theta, window, inputs = _hv_inputs(ns)
    v = unitarity.decide_unitary(spec, theta, window, ns.range)
    res = v.to_dict()
    res["unitary"] = v.predicate_result and v.gram_result
    text = (f"unitary={str(res['unitary']).lower()} predicate={str(v.predicate_result).lower()} "
            f"gram={str(v.gram_result).lower()} consistent={str(v.consistent).lower()}")
    return inputs, res, _status(v.consistent), text


def _cmd_gram(ns):
    spec, theta, window, inputs = _hv_inputs(ns)
    g = unitarity.solve_gram(spec, theta, window)
    res = g.to_dict()
    # an inconsistent system is an answer; only a broken replay is a failure
    ok = isinstance(g.status, unitarity.Inconsistent) or g.replay()
    if g.positive_definite:
        rep = unitarity.check_contravariance(spec, theta, g, ns.range)
        res["contravariance"] = rep.to_dict()
        ok = ok and rep.passed
    lines = [f"status: {res['status']}"]
    for key in ("witness_k", "reason", "witness_equation"):
        if key in res:
            lines.append(f"{key}: {res[key]}")
    lines += [f"g[{k}] = {v}" for k, v in res["entries"].items()]
    return inputs, res, _status(ok), "\n".join(lines)


def _cmd_scan(ns):
    window = parse_window(ns.window)
    grid = {k: _list(getattr(ns, k)) for k in ("a", "b", "c", "phase", "alpha")}
    for al in grid["alpha"]:
        if al.im or al.re <= 0:
            raise UsageError("alpha values must be positive rationals")
    rep = unitarity.scan(grid["a"], grid["b"], grid["c"], grid["phase"], window,
                         alphas=[al.re for al in grid["alpha"]])
    inputs = {k: [format_scalar(x) for x in v] for k, v in grid.items()}
    inputs["window"] = list(window)
    res = {"summary": rep.summary(), "points": rep.rows}
    s = rep.summary()
    text = f"points={s['points']} unitary={s['unitary']} inconsistent={s['inconsistent']}"
    return inputs, res, _status(rep.passed), text, rep.to_csv()


def _cmd_identity(ns):
    name = ns.identity
    if name == "beta-recursion":
        r = ns.range if ns.range is not None else 6
        rep = identities.verify_beta_recursion(r)
        inputs = {"identity": name, "range": r}
    elif name == "claim1":
        rep = identities.verify_claim1_linearity()
        inputs = {"identity": name}
    elif name == "claim2":
        rep = identities.verify_claim2_identity(ns.points)
        inputs = {"identity": name, "points": ns.points}
    else:
        r = ns.range if ns.range is not None else 10
        a, b, c = parse_scalar(ns.a), parse_scalar(ns.b), parse_scalar(ns.c)
        try:
            rep = identities.verify_mu_constant(a, b, c, r)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        inputs = {"identity": name, "a": format_scalar(a), "b": format_scalar(b),
                  "c": format_scalar(c), "range": r}
    text = f"{rep.name}: {rep.status} (grid {rep.grid_size}, degree bounds {rep.degree_bound})"
    if rep.first_failure:
        text += "\n  first failure: " + json.dumps(rep.first_failure, sort_keys=True)
    return inputs, rep.to_dict(), _status(rep.passed), text


_HANDLERS = {
    "bracket": _cmd_bracket,
    "jacobi": _cmd_jacobi,
    "ideal-check": _cmd_ideal,
    "involution-validate": _cmd_inv_validate,
    "involution-axioms": _cmd_inv_axioms,
    "vir-prime": _cmd_vir_prime,
    "module-act": _cmd_module_act,
    "rep-check": _cmd_rep_check,
    "simplicity": _cmd_simplicity,
    "iso": _cmd_iso,
    "unitary": _cmd_unitary,
    "gram": _cmd_gram,
    "scan": _cmd_scan,
    "verify-identity": _cmd_identity,
}


def run_command(argv: list[str]) -> CommandReport:
    """Parse ``argv`` and run one subcommand. Never raises for bad input."""
    argv = list(argv)
    try:
        ns = _build_parser().parse_args(_merge_option_values(argv))
        fmt = ns.format
        if getattr(ns, "report", None):
            fmt = ns.report
        if ns.range is not None and ns.range < 0:
            raise UsageError("--range must be >= 0")
        out = _HANDLERS[ns.command](ns)
        inputs, result, status, text = out[:4]
        csv_text = out[4] if len(out) > 4 else None
        if fmt == "csv" and csv_text is None:
            raise UsageError(f"--format csv is not available for {ns.command}")
        return CommandReport(ns.command, inputs, result, status, text, fmt, csv_text, ns.out)
    except (UsageError, ParseError, NotUnitModulus, involutions.ConstraintViolation, ValueError, TypeError) as exc:
        command = argv[0] if argv else ""
        status = EXIT_FAIL if isinstance(exc, involutions.ConstraintViolation) else EXIT_USAGE
        result = {"error": type(exc).__name__, "message": str(exc).strip()}
        if isinstance(exc, ParseError):
            result.update(offset=exc.offset, expected=sorted(exc.expected))
        if isinstance(exc, involutions.ConstraintViolation):
            result.update(constraint=exc.constraint)
        fmt = "json" if "--format=json" in argv or ("--format" in argv and "json" in argv) else "text"
        return CommandReport(command, {"argv": argv}, result, status, f"error: {result['message']}", fmt)


def main(argv: list[str] | None = None) -> int:
    rep = run_command(sys.argv[1:] if argv is None else argv)
    body = rep.render()
    if rep.out:
        with open(rep.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        stream = sys.stderr if rep.exit_status == EXIT_USAGE and rep.fmt == "text" else sys.stdout
        stream.write(body)
    return rep.exit_status


if __name__ == "__main__":
    raise SystemExit(main())
