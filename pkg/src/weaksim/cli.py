"""Command-line front end.

Every invocation prints one JSON envelope: a canonical ``report`` section
(command echo, input digests, results; byte-identical across runs on the
same inputs) plus a non-canonical ``timing`` section.  Exit codes: 0 for
success / true verdicts, 1 for false verdicts or absent morphisms, 2 for
input and usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Optional

from . import __version__
from .errors import NotSemimetric, WeaksimError
from .families import (
    FamilySpec,
    example_2_6,
    example_2_6_star,
    random_metric,
    random_ultrametric,
    segment_grid,
    snowflake_segment,
)
from .formats import (
    load_morphism,
    load_space,
    load_table,
    morphism_to_obj,
    save_morphism,
    save_space,
    space_to_obj,
    backend_to_obj,
)
from .morphisms import (
    compose,
    enumerate_weak_similarities,
    factorize,
    find_weak_similarity,
    verify,
)
from .spaces import distance_set, is_metric, is_ultrametric
from .transforms import (
    apply_function,
    check_generalized_subadditivity,
    hull,
    hull_eval,
    snowflake,
)


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return "sha256:" + h.hexdigest()


def _verdict_obj(verdict) -> dict:
    return {
        "ok": verdict.ok,
        "witness": list(verdict.witness) if verdict.witness else None,
    }


class _Ctx:
    """Collects the canonical report pieces while a subcommand runs."""

    def __init__(self, command: str, args_echo: dict):
        self.command = command
        self.args_echo = args_echo
        self.inputs: dict[str, str] = {}
        self.outputs: dict[str, str] = {}

    def read_input(self, path: str) -> str:
        self.inputs[path] = _digest(path)
        return path

    def wrote_output(self, path: str) -> None:
        self.outputs[path] = _digest(path)

    def envelope(self, result: dict, seconds: float) -> dict:
        report = {
            "command": self.command,
            "args": self.args_echo,
            "inputs": {k: self.inputs[k] for k in sorted(self.inputs)},
        }
        if self.outputs:
            report["outputs"] = {k: self.outputs[k] for k in sorted(self.outputs)}
        report["result"] = result
        return {"report": report, "timing": {"seconds": seconds}}


def _load_space(ctx: _Ctx, path: str, epsilon: Optional[float]):
    ctx.read_input(path)
    return load_space(path, epsilon=epsilon)


def _cmd_check(ctx: _Ctx, args) -> tuple[int, dict]:
    checks = []
    try:
        space = _load_space(ctx, args.infile, args.epsilon)
    except NotSemimetric as exc:
        checks.append(
            {
                "name": "semimetric",
                "ok": False,
                "witness": list(exc.witness),
                "reason": exc.reason,
            }
        )
        return 1, {"checks": checks}
    checks.append({"name": "semimetric", "ok": True, "witness": None})
    code = 0
    if args.metric:
        v = is_metric(space)
        checks.append({"name": "metric", **_verdict_obj(v)})
        code = code or (0 if v.ok else 1)
    if args.ultrametric:
        v = is_ultrametric(space)
        checks.append({"name": "ultrametric", **_verdict_obj(v)})
        code = code or (0 if v.ok else 1)
    return code, {"checks": checks}


def _cmd_dset(ctx: _Ctx, args) -> tuple[int, dict]:
    space = _load_space(ctx, args.infile, args.epsilon)
    dset = distance_set(space)
    fmt = space.backend.format
    return 0, {
        "backend": backend_to_obj(space.backend),
        "values": [fmt(v) for v in dset.values],
    }


def _cmd_morph_find(ctx: _Ctx, args) -> tuple[int, dict]:
    X = _load_space(ctx, args.x, args.epsilon)
    Y = _load_space(ctx, args.y, args.epsilon)
    ws = find_weak_similarity(X, Y)
    if ws is None:
        return 1, {"found": False, "reason": "not weakly equivalent"}
    verified = verify(X, Y, ws.as_map(), ws.scaling)
    obj = morphism_to_obj(ws, verified.ok)
    if args.out:
        save_morphism(args.out, ws, verified.ok)
        ctx.wrote_output(args.out)
    return 0, {"found": True, "morphism": obj}


def _cmd_morph_enum(ctx: _Ctx, args) -> tuple[int, dict]:
    X = _load_space(ctx, args.x, args.epsilon)
    Y = _load_space(ctx, args.y, args.epsilon)
    limit = None if args.limit == 0 else args.limit
    found = enumerate_weak_similarities(X, Y, limit=limit)
    morphisms = [
        morphism_to_obj(ws, verify(X, Y, ws.as_map(), ws.scaling).ok) for ws in found
    ]
    result = {
        "count": len(morphisms),
        "limit": limit,
        "morphisms": morphisms,
    }
    return (0 if morphisms else 1), result


def _cmd_morph_classify(ctx: _Ctx, args) -> tuple[int, dict]:
    code, result = _cmd_morph_find(ctx, args)
    if code != 0:
        return code, result
    return 0, {
        "found": True,
        "classification": result["morphism"]["classification"],
        "morphism": result["morphism"],
    }


def _cmd_morph_verify(ctx: _Ctx, args) -> tuple[int, dict]:
    X = _load_space(ctx, args.x, args.epsilon)
    Y = _load_space(ctx, args.y, args.epsilon)
    ctx.read_input(args.infile)
    ws = load_morphism(args.infile, X, Y)
    verdict = verify(X, Y, ws.as_map(), ws.scaling)
    return (0 if verdict.ok else 1), {"verified": _verdict_obj(verdict)}


def _cmd_morph_factorize(ctx: _Ctx, args) -> tuple[int, dict]:
    X = _load_space(ctx, args.x, args.epsilon)
    Y = _load_space(ctx, args.y, args.epsilon)
    path1, path2 = args.infiles
    ctx.read_input(path1)
    ctx.read_input(path2)
    phi1 = load_morphism(path1, X, Y)
    phi2 = load_morphism(path2, X, Y)
    factor = factorize(phi1, phi2)
    verified = verify(X, X, factor.as_map(), factor.scaling)
    reproduces = compose(factor, phi1).as_map() == phi2.as_map()
    obj = morphism_to_obj(factor, verified.ok)
    if args.out:
        save_morphism(args.out, factor, verified.ok)
        ctx.wrote_output(args.out)
    code = 0 if (verified.ok and reproduces) else 1
    return code, {"factor": obj, "reproduces": reproduces}


def _cmd_transform_apply(ctx: _Ctx, args) -> tuple[int, dict]:
    space = _load_space(ctx, args.infile, args.epsilon)
    ctx.read_input(args.table)
    table = load_table(args.table)
    out = apply_function(space, table)
    if args.out:
        save_space(args.out, out)
        ctx.wrote_output(args.out)
    return 0, {
        "backend": backend_to_obj(out.backend),
        "backend_changed": type(out.backend) is not type(space.backend),
        "space": space_to_obj(out),
    }


def _cmd_transform_snowflake(ctx: _Ctx, args) -> tuple[int, dict]:
    space = _load_space(ctx, args.infile, args.epsilon)
    out = snowflake(space, args.p)
    changed = type(out.backend) is not type(space.backend)
    if changed:
        print(
            "warning: result left the rational backend; distances are now "
            f"floats with epsilon {out.backend.epsilon!r}",
            file=sys.stderr,
        )
    if args.out:
        save_space(args.out, out)
        ctx.wrote_output(args.out)
    return 0, {
        "exponent": args.p,
        "backend": backend_to_obj(out.backend),
        "backend_changed": changed,
        "space": space_to_obj(out),
    }


def _cmd_subadditive_check(ctx: _Ctx, args) -> tuple[int, dict]:
    ctx.read_input(args.table)
    table = load_table(args.table)
    verdict = check_generalized_subadditivity(table)
    if verdict.ok:
        return 0, {"ok": True}
    return 1, {
        "ok": False,
        "x": str(verdict.x),
        "multiset": [str(v) for v in verdict.multiset],
        "lhs": str(verdict.lhs),
        "rhs": str(verdict.rhs),
    }


def _cmd_subadditive_hull_eval(ctx: _Ctx, args) -> tuple[int, dict]:
    ctx.read_input(args.table)
    table = load_table(args.table)
    h = hull(table)
    value = hull_eval(h, args.at)
    return 0, {"at": args.at, "value": str(value)}


def _family_metadata(name: str, args) -> dict:
    meta = {
        "name": name,
        "n": args.n,
        "truncation": "finite truncation of an infinite family",
    }
    if name in ("2_6", "2_6_star"):
        meta["sequences"] = {"r_k": "1/k", "p_k": "1 + 1/k"}
        meta["declared_limits"] = {"r": "0", "p": "1"}
    if name in ("random_metric", "random_ultrametric"):
        meta["seed"] = args.seed
        meta.pop("truncation")
    if name == "grid":
        meta["length"] = args.length
        meta.pop("truncation")
    if name == "snowflake":
        meta["exponent"] = args.p
    return meta


def _cmd_family_gen(ctx: _Ctx, args) -> tuple[int, dict]:
    name = args.name
    out = args.out
    result: dict = {"family": _family_metadata(name, args)}
    if name in ("2_6", "2_6_star"):
        spec = FamilySpec(name=name, n=args.n)
        builder = example_2_6 if name == "2_6" else example_2_6_star
        X, Y, ws = builder(spec)
        stem = out[: -len(".json")] if out.endswith(".json") else out
        paths = {
            "x": f"{stem}.x.json",
            "y": f"{stem}.y.json",
            "realization": f"{stem}.realization.json",
        }
        save_space(paths["x"], X)
        save_space(paths["y"], Y)
        verified = verify(X, Y, ws.as_map(), ws.scaling)
        save_morphism(paths["realization"], ws, verified.ok)
        for p in paths.values():
            ctx.wrote_output(p)
        result["files"] = paths
        result["realization_verified"] = verified.ok
        return 0, result
    if name == "grid":
        space = segment_grid(args.n, args.length)
    elif name == "snowflake":
        space = snowflake_segment(args.n, args.p)
    elif name == "random_metric":
        space = random_metric(args.n, args.seed)
    elif name == "random_ultrametric":
        space = random_ultrametric(args.n, args.seed)
    else:  # pragma: no cover - argparse choices guard this
        raise WeaksimError(f"unknown family {name!r}")
    save_space(out, space)
    ctx.wrote_output(out)
    result["files"] = {"space": out}
    return 0, result


def _text_lines(value, prefix="") -> list[str]:
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{prefix}{k}:")
                lines.extend(_text_lines(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {v}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{prefix}-")
                lines.extend(_text_lines(item, prefix + "  "))
            else:
                lines.append(f"{prefix}- {item}")
        return lines
    return [f"{prefix}{value}"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weaksim",
        description="Analyze finite semimetric spaces: axiom checks, "
        "weak-similarity search, distance transforms, example families.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--format", choices=["json", "text"], default="json")
        if out:
            sp.add_argument("--out", default=None, help="write the primary artifact here")
        sp.add_argument(
            "--epsilon",
            type=float,
            default=None,
            help="load CSV matrices float-backed with this tolerance",
        )

    check = sub.add_parser("check", help="validate a space file, optionally test axioms")
    check.add_argument("--in", dest="infile", required=True)
    check.add_argument("--metric", action="store_true")
    check.add_argument("--ultrametric", action="store_true")
    common(check, out=False)
    check.set_defaults(handler=_cmd_check, echo=("infile", "metric", "ultrametric"))

    dset = sub.add_parser("dset", help="print the sorted distance set")
    dset.add_argument("--in", dest="infile", required=True)
    common(dset, out=False)
    dset.set_defaults(handler=_cmd_dset, echo=("infile",))

    morph = sub.add_parser("morph", help="weak-similarity operations")
    morph_sub = morph.add_subparsers(dest="subcommand", required=True)

    mfind = morph_sub.add_parser("find", help="first weak similarity in canonical order")
    menum = morph_sub.add_parser("enum", help="enumerate weak similarities")
    mclassify = morph_sub.add_parser("classify", help="classify the first morphism found")
    mverify = morph_sub.add_parser("verify", help="verify a stored morphism")
    mfact = morph_sub.add_parser("factorize", help="factor one morphism through another")
    for sp in (mfind, menum, mclassify, mverify, mfact):
        sp.add_argument("--x", required=True, help="source space file")
        sp.add_argument("--y", required=True, help="target space file")
        common(sp)
    menum.add_argument("--limit", type=int, default=10_000, help="0 means unbounded")
    mverify.add_argument("--in", dest="infile", required=True, help="morphism report file")
    mfact.add_argument(
        "--in", dest="infiles", nargs=2, required=True, help="two morphism report files"
    )
    mfind.set_defaults(handler=_cmd_morph_find, echo=("x", "y"))
    menum.set_defaults(handler=_cmd_morph_enum, echo=("x", "y", "limit"))
    mclassify.set_defaults(handler=_cmd_morph_classify, echo=("x", "y"))
    mverify.set_defaults(handler=_cmd_morph_verify, echo=("x", "y", "infile"))
    mfact.set_defaults(handler=_cmd_morph_factorize, echo=("x", "y", "infiles"))

    transform = sub.add_parser("transform", help="distance transforms")
    transform_sub = transform.add_subparsers(dest="subcommand", required=True)
    tapply = transform_sub.add_parser("apply", help="apply a function table entrywise")
    tapply.add_argument("--in", dest="infile", required=True)
    tapply.add_argument("--f", dest="table", required=True, help="function table file")
    common(tapply)
    tapply.set_defaults(handler=_cmd_transform_apply, echo=("infile", "table"))
    tsnow = transform_sub.add_parser("snowflake", help="raise distances to a power")
    tsnow.add_argument("--in", dest="infile", required=True)
    tsnow.add_argument("--p", default="1/2", help="positive exponent, e.g. 1/2")
    common(tsnow)
    tsnow.set_defaults(handler=_cmd_transform_snowflake, echo=("infile", "p"))

    subadd = sub.add_parser("subadditive", help="generalized subadditivity tools")
    subadd_sub = subadd.add_subparsers(dest="subcommand", required=True)
    scheck = subadd_sub.add_parser("check", help="test generalized subadditivity")
    scheck.add_argument("--f", dest="table", required=True)
    common(scheck, out=False)
    scheck.set_defaults(handler=_cmd_subadditive_check, echo=("table",))
    shull = subadd_sub.add_parser("hull-eval", help="evaluate the subadditive extension")
    shull.add_argument("--f", dest="table", required=True)
    shull.add_argument("--at", required=True, help="evaluation point, e.g. 5/2")
    common(shull, out=False)
    shull.set_defaults(handler=_cmd_subadditive_hull_eval, echo=("table", "at"))

    family = sub.add_parser("family", help="example-family generators")
    family_sub = family.add_subparsers(dest="subcommand", required=True)
    fgen = family_sub.add_parser("gen", help="generate a family instance")
    fgen.add_argument(
        "--name",
        required=True,
        choices=["2_6", "2_6_star", "grid", "snowflake", "random_metric", "random_ultrametric"],
    )
    fgen.add_argument("--n", type=int, required=True)
    fgen.add_argument("--seed", type=int, default=0)
    fgen.add_argument("--p", default="1/2", help="snowflake exponent")
    fgen.add_argument("--length", default="1", help="grid length")
    fgen.add_argument("--format", choices=["json", "text"], default="json")
    fgen.add_argument("--out", required=True)
    fgen.set_defaults(
        handler=_cmd_family_gen, echo=("name", "n", "seed", "p", "length", "out")
    )

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    command = args.command
    if getattr(args, "subcommand", None):
        command = f"{args.command} {args.subcommand}"
    echo = {name: getattr(args, name) for name in args.echo}
    ctx = _Ctx(command, echo)

    start = time.perf_counter()
    try:
        code, result = args.handler(ctx, args)
    except WeaksimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    seconds = time.perf_counter() - start

    envelope = ctx.envelope(result, seconds)
    if args.format == "text":
        print("\n".join(_text_lines(envelope["report"])))
    else:
        print(json.dumps(envelope, indent=2))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
