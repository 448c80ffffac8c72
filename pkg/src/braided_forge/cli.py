"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check is false, 2 malformed input.
JSON output is key-sorted and contains nothing run-dependent, so repeated
runs on the same spec and seed are byte-identical.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .braided_space import BraidEquationFails, NotInvertible, ZeroParameter
from .dsl import (
    DSLSyntaxError,
    Env,
    MorTypeError,
    ShapeMismatch,
    UnknownName,
    builtin_formulas,
    canonical_signature,
    evaluate,
    load_mor,
    typecheck,
)
from .exactla import DivisionByZero, Matrix
from .graded import (
    Report,
    TruncatedGradedBialgebra,
    check_bialgebra_compat,
    check_graded_algebra_axioms,
    check_graded_coalgebra_axioms,
    check_strongly_graded,
    morphism_residuals,
    GradedMap,
)
from .hopf import (
    InvalidGroupTable,
    YDValidationError,
    bosonization_rank_report,
    check_hopf,
    check_hopf_bimodule,
    check_yd,
    relative_typeone,
    structure_env,
    typeone_smash_check,
    yd_to_bimodule,
)
from .specio import LoadedSpec, SpecError, load_spec
from .cotensor import build_cotensor_bialgebra
from .tensor import build_tensor_bialgebra
from .typeone import equivalence_probe, magnum_check, typeone_truncation

__all__ = ["RunConfig", "main", "cmd_check", "cmd_nichols", "cmd_verify", "cmd_bosonize", "cmd_eval"]

OK, MATH_FAILURE, INPUT_ERROR = 0, 1, 2

# exceptions that mean "the input is well formed but mathematically invalid"
_MATH_ERRORS = (ZeroParameter, NotInvertible, BraidEquationFails, YDValidationError, InvalidGroupTable)


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    spec: str | None = None
    max_degree: int = 4
    field: str | None = None
    format: str = "json"
    seed: int = 0
    mor: str | None = None
    let: str | None = None
    minus: str | None = None

    def __post_init__(self):
        if self.max_degree < 0:
            raise InputError("--max-degree must be non-negative")


def _report(rep: Report) -> dict:
    out = rep.to_json()
    out["passed"] = rep.passed
    return out


def _verdict(name: str, ok: bool, **detail) -> dict:
    return {"check": name, "passed": bool(ok), **detail}


def _all_passed(checks: dict) -> bool:
    return all(c["passed"] for c in checks.values())


def _error_check(exc: Exception) -> dict:
    detail = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, BraidEquationFails):
        detail["residual_entry"] = list(exc.position)
    if isinstance(exc, YDValidationError):
        detail["failures"] = exc.report.failures
    return detail


def _load(cfg: RunConfig) -> LoadedSpec:
    return load_spec(cfg.spec, cfg.field)


def _hopf_checks(spec: LoadedSpec) -> tuple[dict, object]:
    """Group / Hopf / YD / Hopf-bimodule validations for a YD spec."""
    checks = {}
    try:
        h = spec.hopf()
    except InvalidGroupTable as exc:
        checks["group_table"] = _verdict("group_table", False, **_error_check(exc))
        return checks, None
    checks["group_table"] = _verdict("group_table", True)
    checks["hopf"] = _report(check_hopf(h))
    v = spec.yd(h)
    rep = check_yd(v)
    checks["yetter_drinfeld"] = _report(rep)
    if not rep.passed:
        return checks, None
    checks["hopf_bimodule"] = _report(check_hopf_bimodule(yd_to_bimodule(v)))
    return checks, v


def cmd_check(cfg: RunConfig) -> tuple[int, dict]:
    spec = _load(cfg)
    out = {"command": "check", "name": spec.name, "kind": spec.kind, "field": spec.field.to_json()}
    checks = {}
    if spec.kind == "yd":
        hc, v = _hopf_checks(spec)
        checks.update(hc)
        if v is not None:
            try:
                spec.braiding()
                checks["braiding"] = _verdict("braiding", True)
            except _MATH_ERRORS as exc:
                checks["braiding"] = _verdict("braiding", False, **_error_check(exc))
    elif spec.kind == "braiding":
        try:
            b = spec.braiding()
            checks["braiding"] = _verdict("braiding", True, dim=b.dim)
        except _MATH_ERRORS as exc:
            checks["braiding"] = _verdict("braiding", False, **_error_check(exc))
    elif spec.kind == "bialgebra":
        B = spec.bialgebra()
        for rep in (check_graded_coalgebra_axioms(B), check_graded_algebra_axioms(B), check_bialgebra_compat(B)):
            checks[rep.check] = _report(rep)
    out["checks"] = checks
    out["passed"] = _all_passed(checks)
    return (OK if out["passed"] else MATH_FAILURE), out


def _braiding_or_fail(spec: LoadedSpec):
    if spec.kind not in ("braiding", "yd"):
        raise InputError(f"this command needs a braiding spec, got a {spec.kind} spec")
    return spec.braiding()


def cmd_nichols(cfg: RunConfig) -> tuple[int, dict]:
    spec = _load(cfg)
    b = _braiding_or_fail(spec)
    res = typeone_truncation(b, cfg.max_degree)
    out = {"command": "nichols", "name": spec.name, "max_degree": cfg.max_degree, **res.to_json()}
    if spec.kind == "yd":
        v = b.yd
        out["relative"] = relative_typeone(v.hopf, yd_to_bimodule(v), cfg.max_degree).to_json()
    return OK, out


def _bialgebra_checks(prefix: str, B: TruncatedGradedBialgebra, sides=()) -> dict:
    checks = {}
    for rep in (check_graded_coalgebra_axioms(B), check_graded_algebra_axioms(B), check_bialgebra_compat(B)):
        checks[f"{prefix}.{rep.check}"] = _report(rep)
    for side in sides:
        rep = check_strongly_graded(B, side)
        checks[f"{prefix}.{rep.check}"] = _report(rep)
    return checks


def _probe_check(name: str, B: TruncatedGradedBialgebra) -> dict:
    probe = equivalence_probe(B)
    return _verdict(name, probe["consistent"], verdicts=probe)


def cmd_verify(cfg: RunConfig) -> tuple[int, dict]:
    spec = _load(cfg)
    N = cfg.max_degree
    out = {"command": "verify", "name": spec.name, "kind": spec.kind, "max_degree": N}
    checks = {}
    if spec.kind == "bialgebra":
        B = spec.bialgebra()
        B = B.truncate(min(N, B.N))
        checks.update(_bialgebra_checks("B", B))
        mg = magnum_check(B)
        checks["B.magnum"] = _verdict("magnum", mg.type_one, **mg.to_json())
        checks["B.equivalence_probe"] = _probe_check("equivalence_probe", B)
    elif spec.kind in ("braiding", "yd"):
        if spec.kind == "yd":
            hc, _ = _hopf_checks(spec)
            checks.update(hc)
        b = spec.braiding()
        T = build_tensor_bialgebra(b, N)
        Tc = build_cotensor_bialgebra(b, N)
        res = typeone_truncation(b, N)
        img = res.bialgebra
        checks.update(_bialgebra_checks("T", T, ("algebra",)))
        checks.update(_bialgebra_checks("Tc", Tc, ("coalgebra",)))
        checks.update(_bialgebra_checks("typeone", img, ("algebra", "coalgebra")))
        bad = morphism_residuals(GradedMap(T, Tc, res.symmetrizers))
        checks["F.graded_bialgebra_morphism"] = _verdict(
            "graded_bialgebra_morphism", not bad, failures=[list(map(str, x)) for x in bad])
        mg = magnum_check(img)
        checks["typeone.magnum"] = _verdict("magnum", mg.type_one, **mg.to_json())
        for name, B in (("T", T), ("Tc", Tc), ("typeone", img)):
            checks[f"{name}.equivalence_probe"] = _probe_check("equivalence_probe", B)
        out["dims"] = res.dims
    else:
        raise InputError("verify needs a braiding or bialgebra spec")
    out["checks"] = checks
    out["passed"] = _all_passed(checks)
    return (OK if out["passed"] else MATH_FAILURE), out


def _strings(m: Matrix) -> list:
    return m.to_strings()


def cmd_bosonize(cfg: RunConfig) -> tuple[int, dict]:
    spec = _load(cfg)
    if spec.kind != "yd":
        raise InputError("bosonize needs a Yetter-Drinfeld spec (braiding kind 'yd')")
    b = spec.braiding()
    v = b.yd
    N = cfg.max_degree
    verdict = typeone_smash_check(v, N, cfg.seed)
    L = verdict.left
    top = min(2, N)
    consts = {
        "mult": {f"{a},{c}": _strings(L.mult[a, c]) for a in range(top + 1) for c in range(top + 1 - a)},
        "comult": {f"{a},{c}": _strings(L.comult[a, c]) for a in range(top + 1) for c in range(top + 1 - a)},
        "unit": _strings(L.unit),
        "counit": _strings(L.counit),
    }
    ranks = bosonization_rank_report(verdict.braided, L, v.hopf)
    out = {
        "command": "bosonize",
        "name": spec.name,
        "max_degree": N,
        "seed": cfg.seed,
        "verdict": verdict.to_json(),
        "rank_preservation": ranks,
        "structure_constants": consts,
    }
    out["passed"] = verdict.passed and ranks["passed"]
    return (OK if out["passed"] else MATH_FAILURE), out


def _env_from_spec(spec: LoadedSpec, sig) -> Env:
    f = spec.field
    if spec.kind == "environment":
        env = spec.data["environment"]
        objects = dict(env.get("objects", {}))
        gens = {k: spec.matrix(rows) for k, rows in env.get("generators", {}).items()}
        return Env(objects, gens, f)
    if spec.kind == "yd":
        b = spec.braiding()
        v = b.yd
        return structure_env(v.hopf, yd=v, bimodule=yd_to_bimodule(v))
    if spec.kind == "braiding":
        b = spec.braiding()
        sig.declare_gen("braid", ("V", "V"), ("V", "V"))
        return Env({"V": b.dim}, {"braid": b.c}, f)
    raise InputError("eval needs an environment, braiding or YD spec")


def cmd_eval(cfg: RunConfig) -> tuple[int, dict]:
    try:
        text = Path(cfg.mor).read_text("utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {cfg.mor}: {exc.strerror}") from None
    spec = _load(cfg)
    sig = canonical_signature()
    env = _env_from_spec(spec, sig)
    sig.lets.update(builtin_formulas())
    sig, lets = load_mor(text, sig)
    for name, dim in sig.objects.items():
        if dim is not None:
            env.objects.setdefault(name, dim)
    env.sig = sig
    target = cfg.let or (list(lets)[-1] if lets else None)
    if target is None:
        raise InputError("the .mor file defines no 'let' binding")
    if target not in sig.lets:
        raise UnknownName(target)
    expr = sig.lets[target]
    dom, cod = typecheck(expr, sig)
    value = evaluate(expr, env, sig)
    out = {"command": "eval", "name": target, "domain": list(dom), "codomain": list(cod)}
    if cfg.minus:
        if cfg.minus not in sig.lets:
            raise UnknownName(cfg.minus)
        other = sig.lets[cfg.minus]
        if typecheck(other, sig) != (dom, cod):
            raise MorTypeError(f"{cfg.minus} and {target} have different types", [cfg.minus])
        value = value - evaluate(other, env, sig)
        out["minus"] = cfg.minus
        out["is_zero"] = value.is_zero()
    out["shape"] = list(value.shape)
    out["rows"] = value.to_strings()
    return OK, out


COMMANDS = {
    "check": cmd_check,
    "nichols": cmd_nichols,
    "verify": cmd_verify,
    "bosonize": cmd_bosonize,
    "eval": cmd_eval,
}


def _text(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(value)}")
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or _flat_list(x) for x in v)


def _inline(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def render(out: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(out))
    return json.dumps(out, sort_keys=True, indent=2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", "-N", type=int, default=4, help="truncation degree (default 4)")
    common.add_argument("--field", default=None, help="override the input file's field, e.g. Q or GF(7)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")

    parser = argparse.ArgumentParser(
        prog="braided-forge",
        description="Exact computations with braided vector spaces, type-one bialgebras and bosonization.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("check", "validate a braiding, group, YD module or explicit bialgebra"),
        ("nichols", "degreewise dimensions of the type-one bialgebra"),
        ("verify", "run the full checker suite"),
        ("bosonize", "compare the bosonized type-one algebra with H[V (x) H]"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("spec", help="JSON spec file")
    p = sub.add_parser("eval", parents=[common], help="evaluate a binding of a .mor file")
    p.add_argument("mor", help=".mor file")
    p.add_argument("spec", help="JSON spec giving object dimensions and generator matrices")
    p.add_argument("--let", dest="let", default=None, help="binding to evaluate (default: the last one)")
    p.add_argument("--minus", default=None, help="subtract this binding and report whether the result is zero")
    return parser


def run(cfg: RunConfig) -> tuple[int, dict | None, str | None]:
    try:
        code, out = COMMANDS[cfg.command](cfg)
        return code, out, None
    except (SpecError, InputError, DSLSyntaxError, UnknownName, MorTypeError, ShapeMismatch, DivisionByZero) as exc:
        name = type(exc).__name__
        msg = str(exc)
        return INPUT_ERROR, None, msg if msg.startswith(name) else f"{name}: {msg}"
    except _MATH_ERRORS as exc:
        detail = _error_check(exc)
        return MATH_FAILURE, {"command": cfg.command, "passed": False, **detail}, f"{type(exc).__name__}: {exc}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command, spec=args.spec, max_degree=args.max_degree, field=args.field,
            format=args.format, seed=args.seed, mor=getattr(args, "mor", None),
            let=getattr(args, "let", None), minus=getattr(args, "minus", None))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    code, out, err = run(cfg)
    if err:
        print(f"error: {err}", file=sys.stderr)
    if out is not None:
        print(render(out, cfg.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
