"""Command-line entry point: ``multikleisli VERB [options] FILES``.

Exit codes: 0 all checks pass, 1 law violations, 2 input errors,
3 an enumeration hit its ceiling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from typing import Any, Dict, List, Optional, Sequence

from .builtins import BUILTIN_THEORIES, builtin_theory
from .compare import DoctrineMap, adjunction_check, pullback_theory, pushforward_theory, triangle_identities
from .doctrine import CARTESIAN, PLANAR, SYMMETRIC, doctrine_leq
from .envelope import EnvelopeError, check_envelope, free_algebra_envelope
from .fincat import Violation, validate_category
from .profunctor import check_inverse, check_profunctor, compose_prof, elements_factorization
from .schemas import (
    SchemaError,
    counts_matrix,
    dump_envelope,
    dump_prof,
    dump_theory,
    dumps,
    load_document,
)
from .theory import (
    CeilingExceeded,
    builtin_algebras,
    builtin_op,
    ceiling_from_env,
    check_theory,
    clone_of_algebra,
    enumerate_models,
    induced_monad_on_set,
    truncate_theory,
)
from .theory.multicategory import Multicategory

DEFAULT_K = 3


class InputError(Exception):
    """Anything wrong with the command line or the input files (exit 2)."""


# ---------------------------------------------------------------------
# input


def resolve_path(path: str) -> str:
    """Existing paths win; otherwise fall back to shipped data by basename."""
    if os.path.exists(path):
        return path
    data = resources.files("multikleisli") / "data" / os.path.basename(path)
    if data.is_file():
        return str(data)
    raise InputError(f"{path}: no such file")


def read_json(path: str) -> Any:
    real = resolve_path(path)
    try:
        with open(real, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: invalid JSON: {e.msg}") from None
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def load(path: str, expect: Optional[str] = None):
    try:
        kind, value = load_document(read_json(path))
    except SchemaError as e:
        raise InputError(f"{path}: {e}") from None
    if expect is not None and kind != expect:
        raise InputError(f"{path}: expected a {expect} document, got {kind}")
    return kind, value


def load_theory_arg(arg: str, K: Optional[int]) -> Multicategory:
    """A theory/v1 file, or ``builtin:NAME`` for a shipped construction."""
    if arg.startswith("builtin:"):
        name = arg[len("builtin:"):]
        if name not in BUILTIN_THEORIES:
            raise InputError(f"unknown builtin theory {name!r}; known: {', '.join(sorted(BUILTIN_THEORIES))}")
        return builtin_theory(name, DEFAULT_K if K is None else K)
    _, m = load(arg, "theory/v1")
    if K is not None:
        try:
            m = truncate_theory(m, K)
        except ValueError as e:
            raise InputError(f"{arg}: {e}") from None
    return m


# ---------------------------------------------------------------------
# output


class Report:
    def __init__(self, verb: str):
        self.data: Dict[str, Any] = {"verb": verb}
        self.violations: List[Violation] = []
        self.lines: List[str] = []

    def add(self, key: str, value: Any, text: Optional[str] = None):
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def fail(self, vs: Sequence[Violation]):
        self.violations.extend(vs)

    @property
    def ok(self) -> bool:
        return not self.violations

    def emit(self, as_json: bool, out) -> None:
        self.data["ok"] = self.ok
        self.data["violations"] = [str(v) for v in self.violations]
        if as_json:
            out.write(dumps(self.data))
            return
        for line in self.lines:
            out.write(line + "\n")
        shown = self.violations[:20]
        for v in shown:
            out.write(f"violation {v}\n")
        if len(self.violations) > len(shown):
            out.write(f"... {len(self.violations) - len(shown)} more violations\n")
        out.write(("ok" if self.ok else f"FAILED ({len(self.violations)} violations)") + "\n")


def _counts_text(counts: Dict[int, int]) -> str:
    return ", ".join(f"{n}:{c}" for n, c in sorted(counts.items()))


# ---------------------------------------------------------------------
# verbs


def cmd_validate(args, out) -> int:
    kind, value = load(args.file)
    r = Report("validate")
    r.add("schema", kind, f"{args.file}: {kind}")
    if kind == "fincat/v1":
        partial = bool(read_json(args.file).get("partial", False))
        r.fail(validate_category(value, partial=partial))
        r.add("objects", len(value.objects), f"objects: {len(value.objects)}")
        r.add("morphisms", value.num_morphisms(), f"morphisms: {value.num_morphisms()}")
    elif kind in ("prof/v1", "graded/v1"):
        r.fail(check_profunctor(value))
        r.add("elements", value.count(), f"elements: {value.count()}")
    else:
        r.fail(check_profunctor(value.carrier))
        r.add("arity_counts", _str_keys(value.arity_counts()), f"arity counts: {_counts_text(value.arity_counts())}")
    r.emit(args.json, out)
    return 0 if r.ok else 1


def cmd_compose(args, out) -> int:
    _, n = load(args.outer, "prof/v1")
    _, m = load(args.inner, "prof/v1")
    if n.source != m.target:
        raise InputError("the outer profunctor's source must equal the inner profunctor's target")
    comp = compose_prof(n, m)
    if args.counts:
        A, C = comp.source, comp.target
        if args.json:
            out.write(dumps({"counts": {f"{c}|{a}": len(comp.elements(c, a)) for c in C.objects for a in A.objects}}))
        else:
            out.write("".join(" ".join(str(len(comp.elements(c, a))) for a in A.objects) + "\n" for c in C.objects))
        return 0
    out.write(dumps(dump_prof(comp)))
    return 0


def cmd_laws(args, out) -> int:
    m = load_theory_arg(args.theory, args.K)
    r = Report("laws")
    r.add("theory", m.name or "", f"theory {m.name or ''} ({m.doctrine}, K={m.bound})")
    r.add("doctrine", m.doctrine)
    r.add("bound", m.bound)
    r.add("arity_counts", _str_keys(m.arity_counts()), f"arity counts: {_counts_text(m.arity_counts())}")
    r.fail(check_theory(m))
    r.emit(args.json, out)
    return 0 if r.ok else 1


def cmd_envelope(args, out) -> int:
    m = load_theory_arg(args.theory, args.K)
    try:
        e = free_algebra_envelope(m)
    except EnvelopeError as err:
        r = Report("envelope")
        r.fail([Violation("envelope-input", (m.name or "",), str(err))])
        r.emit(args.json, out)
        return 1
    if args.counts:
        if len(m.sorts.objects) != 1:
            raise InputError("--counts needs a single-sorted theory")
        matrix = counts_matrix(e)
        if args.json:
            out.write(dumps({"counts": matrix, "rows": "source length", "columns": "target length"}))
        else:
            out.write("".join(" ".join(str(c) for c in row) + "\n" for row in matrix))
        return 0
    if args.check:
        vs = check_envelope(e)
        if vs:
            r = Report("envelope")
            r.fail(vs)
            r.emit(args.json, out)
            return 1
    doc = dump_envelope(e)
    if m.doctrine == CARTESIAN:
        doc["partial"] = True
    out.write(dumps(doc))
    return 0


def cmd_models(args, out) -> int:
    m = load_theory_arg(args.theory, args.K)
    algebras = builtin_algebras(m.doctrine)
    if args.algebra not in algebras:
        raise InputError(f"unknown {m.doctrine} algebra {args.algebra!r}; known: {', '.join(sorted(algebras))}")
    x = algebras[args.algebra]
    models = enumerate_models(m, x, ceiling=args.ceiling)
    r = Report("models")
    r.add("algebra", args.algebra)
    r.add("count", len(models), f"models of {m.name or 'theory'} in {args.algebra}: {len(models)}")
    r.emit(args.json, out)
    return 0


def cmd_monad_eval(args, out) -> int:
    m = load_theory_arg(args.theory, args.K)
    if len(m.sorts.objects) != 1 or m.sorts.num_morphisms() != 1:
        raise InputError("monad-eval needs a one-sorted theory over the terminal category")
    X = list(range(args.set_size))
    T = induced_monad_on_set(m, X)
    r = Report("monad-eval")
    r.add("set_size", args.set_size)
    r.add("size", len(T.TX), f"|T(X)| = {len(T.TX)} for |X| = {args.set_size}")
    r.fail(T.check_laws())
    r.emit(args.json, out)
    return 0 if r.ok else 1


def _pushforward(args, out, target: str) -> int:
    m = load_theory_arg(args.theory, args.K)
    if m.doctrine == target or not doctrine_leq(m.doctrine, target):
        raise InputError(f"cannot push a {m.doctrine} theory forward to {target}")
    km = pushforward_theory(DoctrineMap(m.doctrine, target), m)
    return _emit_theory(args, out, km)


def cmd_symmetrize(args, out) -> int:
    return _pushforward(args, out, SYMMETRIC)


def cmd_cartesianize(args, out) -> int:
    return _pushforward(args, out, CARTESIAN)


def cmd_forget(args, out) -> int:
    n = load_theory_arg(args.theory, args.K)
    if n.doctrine == args.to or not doctrine_leq(args.to, n.doctrine):
        raise InputError(f"cannot forget a {n.doctrine} theory to {args.to}")
    return _emit_theory(args, out, pullback_theory(DoctrineMap(args.to, n.doctrine), n))


def _emit_theory(args, out, m: Multicategory) -> int:
    if args.counts:
        if args.json:
            out.write(dumps({"arity_counts": _str_keys(m.arity_counts())}))
        else:
            out.write(_counts_text(m.arity_counts()) + "\n")
        return 0
    out.write(dumps(dump_theory(m)))
    return 0


def cmd_adjoint_check(args, out) -> int:
    m = load_theory_arg(args.left, args.K)
    n = load_theory_arg(args.right, args.K)
    if m.doctrine == n.doctrine or not doctrine_leq(m.doctrine, n.doctrine):
        raise InputError(f"need a theory over a smaller doctrine first, got {m.doctrine} and {n.doctrine}")
    k = DoctrineMap(m.doctrine, n.doctrine)
    rep = adjunction_check(k, m, n, ceiling=args.ceiling)
    r = Report("adjoint-check")
    r.add("doctrine_map", str(k), f"doctrine map {k}")
    r.add("left_count", rep.left_count, f"maps k_*M -> N: {rep.left_count}")
    r.add("right_count", rep.right_count, f"maps M -> k^*N: {rep.right_count}")
    r.add("pairing", [list(p) for p in rep.pairing])
    r.fail(rep.violations)
    if rep.left_count != rep.right_count:
        r.fail([Violation("adjunction-count", (rep.left_count, rep.right_count))])
    if args.triangles:
        r.fail(triangle_identities(k, m, n))
    r.emit(args.json, out)
    return 0 if r.ok else 1


def cmd_clone(args, out) -> int:
    if not args.op:
        raise InputError("clone needs at least one --op")
    ops = {}
    for name in args.op:
        try:
            ops[name] = builtin_op(name, args.carrier)
        except ValueError as e:
            raise InputError(str(e)) from None
    K = DEFAULT_K if args.K is None else args.K
    m = clone_of_algebra(args.carrier, ops, K, name="+".join(args.op))
    if args.emit:
        out.write(dumps(dump_theory(m)))
        return 0
    counts = m.arity_counts()
    r = Report("clone")
    r.add("carrier", args.carrier)
    r.add("operations", list(args.op))
    r.add("arity_counts", _str_keys(counts), "arity counts: " + ", ".join(str(counts[n]) for n in range(1, K + 1)) + f" (n = 1..{K})")
    r.emit(args.json, out)
    return 0


def cmd_factorize(args, out) -> int:
    _, p = load(args.file, "prof/v1")
    E, pf, qf, qp, iso, inv = elements_factorization(p)
    r = Report("factorize")
    r.add("elements_objects", len(E.objects), f"category of elements: {len(E.objects)} objects, {E.num_morphisms()} morphisms")
    r.add("elements_morphisms", E.num_morphisms())
    r.fail(validate_category(E))
    r.fail(check_inverse(iso, inv))
    r.emit(args.json, out)
    return 0 if r.ok else 1


def _str_keys(d: Dict) -> Dict[str, Any]:
    return {str(k): v for k, v in d.items()}


# ---------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-K", type=int, default=None, help=f"word-length bound (files default to their own bound, builtins to {DEFAULT_K})")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--counts", action="store_true", help="emit only cardinalities")

    p = argparse.ArgumentParser(prog="multikleisli", description="Finite-scale checks for theories over planar, symmetric and cartesian doctrines.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("validate", parents=[common], help="parse a document and check its structure")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("compose", parents=[common], help="compose two profunctors: OUTER after INNER")
    s.add_argument("outer")
    s.add_argument("inner")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("laws", parents=[common], help="check the theory laws")
    s.add_argument("theory")
    s.set_defaults(func=cmd_laws)

    s = sub.add_parser("envelope", parents=[common], help="free strict algebra on a theory")
    s.add_argument("theory")
    s.add_argument("--check", action="store_true", help="run the envelope checks before emitting")
    s.set_defaults(func=cmd_envelope)

    s = sub.add_parser("models", parents=[common], help="count models in a builtin algebra")
    s.add_argument("theory")
    s.add_argument("--algebra", required=True)
    s.set_defaults(func=cmd_models)

    s = sub.add_parser("monad-eval", parents=[common], help="induced monad on a finite set")
    s.add_argument("theory")
    s.add_argument("--set-size", type=int, default=2)
    s.set_defaults(func=cmd_monad_eval)

    for verb, fn, text in (
        ("symmetrize", cmd_symmetrize, "push a planar theory to the symmetric doctrine"),
        ("cartesianize", cmd_cartesianize, "push a theory to the cartesian doctrine"),
    ):
        s = sub.add_parser(verb, parents=[common], help=text)
        s.add_argument("theory")
        s.set_defaults(func=fn)

    s = sub.add_parser("forget", parents=[common], help="restrict a theory to a smaller doctrine")
    s.add_argument("theory")
    s.add_argument("--to", choices=[PLANAR, SYMMETRIC], required=True)
    s.set_defaults(func=cmd_forget)

    s = sub.add_parser("adjoint-check", parents=[common], help="compare maps k_*M -> N with maps M -> k^*N")
    s.add_argument("left", help="theory M over the smaller doctrine")
    s.add_argument("right", help="theory N over the larger doctrine")
    s.add_argument("--triangles", action="store_true", help="also check the triangle identities")
    s.set_defaults(func=cmd_adjoint_check)

    s = sub.add_parser("clone", parents=[common], help="clone generated by named operations")
    s.add_argument("--carrier", type=int, required=True)
    s.add_argument("--op", action="append", default=[])
    s.add_argument("--emit", action="store_true", help="emit the clone as theory/v1")
    s.set_defaults(func=cmd_clone)

    s = sub.add_parser("factorize", parents=[common], help="category of elements of a profunctor")
    s.add_argument("file")
    s.set_defaults(func=cmd_factorize)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        args.ceiling = ceiling_from_env()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.K is not None and args.K < 0:
        print("error: -K must be non-negative", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CeilingExceeded as e:
        print(f"refused: {e} (raise MULTIKLEISLI_CEILING to allow more)", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
