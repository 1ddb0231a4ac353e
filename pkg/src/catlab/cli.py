"""Command-line interface.

Exit codes: 0 true/success, 1 false/refuted, 2 invalid input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .adjunctions import has_right_adjoint, is_equivalence
from .asphericity import get_structure, is_aspheric, is_aspheric_functor, is_locally_aspheric
from .constructions import (
    add_final, comma_square, coslice, fiber, grothendieck, lift_category, pullback, slice,
)
from .core import BudgetExceeded, CatDiagram, CatlabError, FinCat, FinFunctor, opposite, product
from .fibrations import (
    is_cofibration, is_fibration, is_precofibration, is_prefibration, is_smooth, is_weakly_smooth,
)
from .kan import (
    OverCategoryObject, Theta, epsilon_component, eta_component, kappa, shriek, theta_prime, verify_cartint,
    verify_lemmeclef,
)

OK, FALSE, INVALID, BUDGET = 0, 1, 2, 3


class InputError(CatlabError):
    pass


def _load(path: str, kind: str | None = None):
    doc = io.read(path)
    if kind is not None and doc.kind != kind:
        raise InputError(f"{path}: expected a {kind} document, got {doc.kind}")
    return doc.payload


def _category(path: str) -> FinCat:
    return _load(path, "category")


def _functor(path: str) -> FinFunctor:
    return _load(path, "functor")


def _diagram(path: str) -> CatDiagram:
    return _load(path, "diagram")


def _emit(obj, args) -> int:
    text = io.serialize(obj)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def _verdict(value: bool, label: str) -> int:
    print(f"{label}: {'true' if value else 'false'}")
    return OK if value else FALSE


def _structure(args):
    return get_structure(args.structure)


# ---------------------------------------------------------------------------
# validate

def cmd_validate(args) -> int:
    doc = io.read(args.file)
    print(f"valid {doc.kind}")
    return OK


# ---------------------------------------------------------------------------
# construct

def cmd_construct(args) -> int:
    op = args.op
    a = args.inputs
    need = {"op": 1, "product": 2, "slice": 2, "coslice": 2, "fiber": 2, "pullback": 2, "grothendieck": 1,
            "add-final": 1, "comma-square": 2, "lift-category": 3}[op]
    if len(a) != need:
        raise InputError(f"construct {op} takes {need} argument(s)")
    if op == "op":
        out = opposite(_category(a[0]))
    elif op == "product":
        out = product(_category(a[0]), _category(a[1]))
    elif op == "slice":
        out = slice(_functor(a[0]), a[1]).category
    elif op == "coslice":
        out = coslice(_functor(a[0]), a[1]).category
    elif op == "fiber":
        out = fiber(_functor(a[0]), a[1]).category
    elif op == "pullback":
        out = pullback(_functor(a[0]), _functor(a[1]))
    elif op == "grothendieck":
        out = grothendieck(_diagram(a[0])).category
    elif op == "add-final":
        out = add_final(_category(a[0]))[0]
    elif op == "comma-square":
        out = comma_square(_functor(a[0]), _functor(a[1])).comma
    else:
        out = lift_category(_functor(a[0]), a[1], a[2])
    return _emit(out, args)


# ---------------------------------------------------------------------------
# check

_CAT_CHECKS = {
    "final-object": lambda C, S: C.has_final_object(),
    "aspheric": lambda C, S: is_aspheric(S, C),
}

_FUNCTOR_CHECKS = {
    "aspheric-functor": lambda u, S: is_aspheric_functor(S, u),
    "locally-aspheric": lambda u, S: is_locally_aspheric(S, u),
    "right-adjoint": lambda u, S: has_right_adjoint(u),
    "equivalence": lambda u, S: is_equivalence(u),
    "prefibration": lambda u, S: is_prefibration(u),
    "fibration": lambda u, S: is_fibration(u),
    "precofibration": lambda u, S: is_precofibration(u),
    "cofibration": lambda u, S: is_cofibration(u),
    "weakly-smooth": lambda u, S: is_weakly_smooth(S, u),
}


def cmd_check(args) -> int:
    S = _structure(args)
    if args.property in _CAT_CHECKS:
        return _verdict(_CAT_CHECKS[args.property](_category(args.file), S), args.property)
    u = _functor(args.file)
    if args.property in _FUNCTOR_CHECKS:
        return _verdict(_FUNCTOR_CHECKS[args.property](u, S), args.property)
    verdict = is_smooth(S, u, (args.max_objects, args.max_morphisms))
    print(f"smooth: {verdict.status.lower()}")
    if verdict.status == "Evidence":
        print(f"no counterexample among {verdict.instances} base changes within "
              f"({args.max_objects},{args.max_morphisms}); smoothness not decided")
        return BUDGET
    return OK if verdict.status == "Proved" else FALSE


# ---------------------------------------------------------------------------
# kan

def cmd_kan(args) -> int:
    op, a = args.op, args.inputs
    need = {"theta": 1, "theta-prime": 1, "shriek": 2, "kappa": 3, "epsilon": 3, "eta": 2,
            "verify-lemmeclef": None, "verify-cartint": 2}[op]
    if need is not None and len(a) != need:
        raise InputError(f"kan {op} takes {need} argument(s)")
    if op == "theta":
        return _emit(Theta(_functor(a[0])).diagram, args)
    if op == "theta-prime":
        F = _diagram(a[0])
        return _emit(theta_prime(F.index, F).structure, args)
    if op == "shriek":
        return _emit(shriek(_functor(a[0]), _diagram(a[1])), args)
    if op == "kappa":
        sq = _load(a[0], "square")
        return _emit(kappa(sq, _diagram(a[1]), a[2]), args)
    if op == "epsilon":
        return _emit(epsilon_component(_functor(a[0]), _diagram(a[1]), a[2]), args)
    if op == "eta":
        v = _functor(a[1])
        return _emit(eta_component(_functor(a[0]), OverCategoryObject(v.source, v)), args)
    if op == "verify-cartint":
        return _verdict(verify_cartint(_functor(a[0]), _diagram(a[1])), "cartint")
    # verify-lemmeclef F G u_0 ... u_n (components in index object order)
    if len(a) < 2:
        raise InputError("kan verify-lemmeclef takes two diagrams and one component per index object")
    F, G = _diagram(a[0]), _diagram(a[1])
    comps = [_functor(p) for p in a[2:]]
    if len(comps) != F.index.n_objects:
        raise InputError(f"expected {F.index.n_objects} components, got {len(comps)}")
    rep = verify_lemmeclef(F.index, F, G, comps)
    for key in ("factorization", "retraction", "adjunction", "hypothesis", "conclusion"):
        print(f"{key}: {str(getattr(rep, key)).lower()}")
    if rep.adjunction_problem:
        print(f"adjunction problem: {rep.adjunction_problem}")
    return OK if rep.passed else FALSE


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    from .suites import run_suite
    options = {}
    if args.values:
        options["values"] = tuple(args.values)
    bounds = None
    if args.max_objects is not None or args.max_morphisms is not None:
        bounds = (args.max_objects if args.max_objects is not None else 3,
                  args.max_morphisms if args.max_morphisms is not None else 6)
    try:
        report = run_suite(args.suite, bounds, seed=args.seed, samples=args.samples,
                           time_budget=args.time_budget, **options)
    except CatlabError as exc:
        if args.report:
            with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
                json.dump({"name": args.suite, "error": str(exc), "passed": False}, fh, indent=2)
                fh.write("\n")
        raise
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.to_json())
    print(report.line())
    for f in report.failures[:10]:
        print(f"  instance {f['index']}: {'; '.join(f['messages'])}")
    if report.failures:
        return FALSE
    return OK if report.complete else BUDGET


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catlab", description="Finite categories, asphericity and smoothness.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="parse and validate a document")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("construct", help="build a derived category or square")
    c.add_argument("op", choices=["op", "product", "slice", "coslice", "fiber", "pullback", "grothendieck",
                                  "add-final", "comma-square", "lift-category"])
    c.add_argument("inputs", nargs="+", help="document paths, then object or morphism ids")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("check", help="decide a property of a category or functor")
    k.add_argument("property", choices=list(_CAT_CHECKS) + list(_FUNCTOR_CHECKS) + ["smooth"])
    k.add_argument("file")
    k.add_argument("--structure", default="minimal", choices=["minimal", "nonempty"])
    k.add_argument("--max-objects", type=int, default=2)
    k.add_argument("--max-morphisms", type=int, default=4)
    k.set_defaults(func=cmd_check)

    n = sub.add_parser("kan", help="Kan-extension machinery")
    n.add_argument("op", choices=["theta", "theta-prime", "shriek", "kappa", "epsilon", "eta",
                                  "verify-lemmeclef", "verify-cartint"])
    n.add_argument("inputs", nargs="+")
    n.add_argument("-o", "--output")
    n.set_defaults(func=cmd_kan)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", required=True)
    s.add_argument("--max-objects", type=int)
    s.add_argument("--max-morphisms", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--values", type=int, nargs=2, metavar=("OBJECTS", "MORPHISMS"),
                   help="bounds on diagram values for the Kan suites")
    s.add_argument("--time-budget", type=float)
    s.add_argument("--report")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except (CatlabError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        for v in getattr(exc, "violations", [])[:20]:
            print(f"  {v}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
