"""Command-line interface: ``oscomp <subcommand> [options]``.

Exit codes: 0 success, 1 property violation (failed replay, hierarchy
violation, or a checked property that fails), 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import corpus
from .comparison import (
    Status,
    n_comparison,
    stable_dom_via_states,
    stably_dominated,
)
from .completion import Completion
from .errors import OscompError, ParseError
from .io import (
    instance_from_json,
    jsonable,
    load_json,
    load_model,
    model_to_json,
)
from .reductions import omega_oracle, omega_to_cfp_grouping, weak_omega_to_cfp
from .semigroup import leq, member
from .states import state_cone

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _value(text):
    """CLI values are JSON (``3``, ``[1,2]``, ``[[0,2]]``); bare words stay strings."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--model", help="model description file (JSON)")
    p.add_argument("--bound", type=int, help="search bound (element size)")
    p.add_argument("--kmax", type=int, help="largest k / partial-sum index to try")
    p.add_argument("--seed", type=int, default=0, help="seed for generated models and instances")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table", help="tab-separated summary")
    p.set_defaults(fmt="json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="oscomp", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", parents=[common], help="membership and factorization")
    p.add_argument("--value", type=_value, required=True)

    p = sub.add_parser("order", parents=[common], help="order test with witness")
    p.add_argument("--x", type=_value, required=True)
    p.add_argument("--y", type=_value, required=True)

    p = sub.add_parser("sdom", parents=[common], help="stable domination x <_s y")
    p.add_argument("--x", type=_value, required=True)
    p.add_argument("--y", type=_value, required=True)

    p = sub.add_parser("states", parents=[common], help="normalized state cone at y")
    p.add_argument("--y", type=_value, required=True)
    p.add_argument("--x", type=_value, help="also maximize the state value at x")

    p = sub.add_parser("ncomp", parents=[common], help="exhaustive n-comparison")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weak", action="store_true", help="restrict the y_j to full elements")

    p = sub.add_parser("cfp", parents=[common], help="(strong) CFP checker on one instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--strong", action="store_true")

    p = sub.add_parser("qcheck", parents=[common], help="property (Q) or (QQ) search")
    p.add_argument("--mode", choices=("Q", "QQ"), default="Q")

    p = sub.add_parser("reduce", parents=[common], help="certificate-producing reductions")
    p.add_argument("which", choices=("omega-cfp",))
    p.add_argument("--instance", required=True)
    p.add_argument("--weak", action="store_true", help="trim non-full y terms first")

    p = sub.add_parser("family", parents=[common], help="print a model description")
    p.add_argument("name", choices=("wn", "womega", "zplus", "random"))
    p.add_argument("--n", type=int, default=1, help="index for wn, n_max for womega")
    p.add_argument("--kind", default="numerical", choices=("numerical", "affine", "mixed"))
    p.add_argument("--generators", type=int, default=2)
    p.add_argument("--max-generator", type=int, default=10)
    p.add_argument("--dimension", type=int, default=2)

    p = sub.add_parser("report", parents=[common], help="batch property report")
    p.add_argument("--models", nargs="*", default=[], help="model files")
    p.add_argument("--family", action="append", default=[],
                   help="wn:A-B, wn:N, womega:N, zplus or random:SEED[:KIND] (repeatable)")
    p.add_argument("--checks", help="comma-separated subset of: " + ",".join(corpus.KNOWN_CHECKS))
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--instances", type=int, default=20, help="random CFP instances per model")
    p.add_argument("--threads", type=int, help="worker threads (default: OSCOMP_THREADS or 1)")
    p.add_argument("--timings", action="store_true", help="include wall-clock seconds per check")
    return parser


def _need_model(args):
    if not args.model:
        raise ParseError("--model is required for this subcommand", "--model")
    model = load_model(args.model)
    if args.bound is not None and args.bound > model.element_bound:
        model = model.with_bound(args.bound)
    return model


def _family_models(family: str):
    name, _, arg = family.partition(":")
    if name == "wn":
        lo, _, hi = arg.partition("-")
        try:
            lo_i = int(lo)
            hi_i = int(hi) if hi else lo_i
        except ValueError:
            raise ParseError(f"bad range {arg!r}", "--family") from None
        return [(f"W_{n}", corpus.family_wn(n)) for n in range(lo_i, hi_i + 1)]
    if name == "womega":
        try:
            n = int(arg)
        except ValueError:
            raise ParseError(f"bad n_max {arg!r}", "--family") from None
        return [(f"W_omega({n})", corpus.family_womega(n))]
    if name == "zplus":
        return [("Z+", corpus.z_plus())]
    if name == "random":
        seed, _, kind = arg.partition(":")
        try:
            seed_i = int(seed)
        except ValueError:
            raise ParseError(f"bad seed {seed!r}", "--family") from None
        params = corpus.RandomModelParams(kind=kind or "numerical")
        return [(f"random({seed_i}:{params.kind})", corpus.random_model(seed_i, params))]
    raise ParseError(f"unknown family {family!r}", "--family")


def _emit(args, payload, rows=None, model=None):
    if args.fmt == "table" and rows is not None:
        for row in rows:
            print("\t".join(str(c) for c in row))
    else:
        print(json.dumps(jsonable(payload, model), indent=2, sort_keys=True))


def _status_code(status) -> int:
    return EXIT_VIOLATION if status is Status.FAILS else EXIT_OK


def run(args) -> int:
    cmd = args.command
    if cmd == "family":
        if args.name == "wn":
            model = corpus.family_wn(args.n)
        elif args.name == "womega":
            model = corpus.family_womega(args.n)
        elif args.name == "zplus":
            model = corpus.z_plus()
        else:
            model = corpus.random_model(args.seed, corpus.RandomModelParams(
                kind=args.kind, generators=args.generators, max_generator=args.max_generator,
                dimension=args.dimension))
        print(json.dumps(model_to_json(model), indent=2, sort_keys=True))
        return EXIT_OK

    if cmd == "report":
        models = [(path, load_model(path)) for path in args.models]
        for family in args.family:
            models.extend(_family_models(family))
        checks = args.checks.split(",") if args.checks else None
        bounds = corpus.ReportBounds(bound=args.bound, n_max=args.n_max, cfp_instances=args.instances,
                                     cfp_k_max=args.kmax or 500, seed=args.seed)
        reports, status = corpus.run_report(models, checks, bounds, args.threads, args.timings)
        rows = [(r["model_id"], k, v["status"]) for r in reports for k, v in r["verdicts"].items()]
        _emit(args, reports, rows)
        return status

    model = _need_model(args)
    if cmd == "member":
        res = member(model, args.value)
        _emit(args, {"member": bool(res), "factorization": res.factorization},
              [(args.value, bool(res), res.factorization)])
        return EXIT_OK
    if cmd == "order":
        cert = leq(model, args.x, args.y)
        _emit(args, {"leq": cert is not None, "certificate": cert}, [(args.x, args.y, cert is not None)])
        return EXIT_OK
    if cmd == "sdom":
        x = model.check_member(model.normalize(args.x), "x")
        y = model.check_member(model.normalize(args.y), "y")
        cert = stably_dominated(model, x, y, args.kmax)
        payload = {"stably_dominated": cert is not None, "certificate": cert, "k_max": args.kmax}
        if cert is None and model.order_mode.value == "algebraic" and not model.is_zero(y):
            verdict = stable_dom_via_states(model, x, y)
            payload["state_criterion"] = verdict
        _emit(args, payload, [(args.x, args.y, cert.k if cert else None)])
        return EXIT_OK
    if cmd == "states":
        y = model.check_member(model.normalize(args.y), "y")
        cone = state_cone(model, y)
        payload = {
            "y": y, "empty": cone.empty, "complete": cone.complete, "vertices": cone.vertices,
            "ideal_generators": cone.ideal_generators,
        }
        if args.x is not None:
            x = model.check_member(model.normalize(args.x), "x")
            payload["state_criterion"] = stable_dom_via_states(model, x, y)
        _emit(args, payload, [(jsonable(v),) for v in cone.vertices])
        return EXIT_OK
    if cmd == "ncomp":
        if args.bound is None:
            raise ParseError("--bound is required for ncomp", "--bound")
        verdict = n_comparison(model, args.n, args.bound, args.weak, args.kmax)
        if verdict.status is Status.FAILS and not verdict.verify(model):  # pragma: no cover
            return EXIT_VIOLATION
        _emit(args, verdict, [(args.n, verdict.status.value, verdict.witness and verdict.witness.ys)])
        return _status_code(verdict.status)

    completion = Completion(model, args.bound)
    if cmd == "qcheck":
        verdict = completion.property_q_check(args.mode, args.bound)
        _emit(args, verdict, [(args.mode, verdict.status.value, verdict.witness)])
        return _status_code(verdict.status)

    instance = instance_from_json(completion, load_json(args.instance), args.instance)
    if cmd == "cfp":
        verdict = completion.check_cfp(instance, args.kmax or 500, args.strong, args.bound)
        ok = verdict.replay(completion, instance)
        _emit(args, verdict, [(verdict.status, verdict.k)], model)
        return EXIT_OK if ok else EXIT_VIOLATION
    if cmd == "reduce":
        oracle = omega_oracle(completion, args.kmax or 500)
        if args.weak:
            cert = weak_omega_to_cfp(completion, instance, oracle)
        else:
            cert = omega_to_cfp_grouping(completion, instance, oracle)
        ok = cert.replay(completion, instance)
        _emit(args, {"certificate": cert, "replayed": ok}, [(cert.n, cert.k, cert.trim, ok)], model)
        return EXIT_OK if ok else EXIT_VIOLATION
    raise ParseError(f"unknown command {cmd!r}")  # pragma: no cover


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return run(args)
    except ParseError as exc:
        print(f"oscomp: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OscompError as exc:
        print(f"oscomp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
