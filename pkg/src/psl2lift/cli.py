"""Command-line interface: ``psl2lift <command> [options]``.

Every command writes a JSON document (``"schema": 1``) to stdout or ``--out``
and a one-line summary to stderr.  Exit codes: 0 success, 2 bad input,
3 precision exhausted, 4 verification failure.
"""

import argparse
import ast
import json
import os
import random
import sys
import time

from . import bt_tree, gallery, lifting
from .errors import InputError, LiftError, PrecisionExhausted, VerificationFailure
from .local_field import make_field, with_i
from .sl2 import Mat2, ProjMat, classify, matrix_from_json, order, proj_order

EXIT_OK, EXIT_INPUT, EXIT_PRECISION, EXIT_VERIFY = 0, 2, 3, 4
ENV_PREFIX = "PSL2LIFT_"


# -- parsing matrices ----------------------------------------------------------

class _ExprEval(ast.NodeVisitor):
    """Evaluate +, -, *, /, ** over integers and the names u, t, i."""

    def __init__(self, F, i):
        self.F, self.i = F, i

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return self.F(node.value)
        raise InputError(f"unsupported constant {node.value!r}")

    def visit_Name(self, node):
        if node.id in ("u", "t"):
            return self.F.uniformizer()
        if node.id == "i":
            if self.i is None:
                raise InputError("'i' is not available over this field")
            return self.i
        raise InputError(f"unknown name {node.id!r}")

    def visit_UnaryOp(self, node):
        x = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -x
        if isinstance(node.op, ast.UAdd):
            return x
        raise InputError("unsupported unary operator")

    def visit_BinOp(self, node):
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)) \
                    and not (isinstance(node.right, ast.UnaryOp) and isinstance(node.right.operand, ast.Constant)):
                raise InputError("exponents must be integer literals")
            return self.visit(node.left) ** int(ast.literal_eval(node.right))
        x, y = self.visit(node.left), self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return x + y
        if isinstance(node.op, ast.Sub):
            return x - y
        if isinstance(node.op, ast.Mult):
            return x * y
        if isinstance(node.op, ast.Div):
            return x / y
        raise InputError("unsupported operator")

    def generic_visit(self, node):
        raise InputError(f"unsupported syntax: {type(node).__name__}")


def parse_element(text, F, i=None):
    if isinstance(text, bool):
        raise InputError("booleans are not field elements")
    if isinstance(text, int):
        return F(text)
    if isinstance(text, dict):
        return F.element_from_json(text)
    if not isinstance(text, str):
        raise InputError(f"cannot read a field element from {text!r}")
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"bad expression {text!r}: {exc.msg}") from None
    return _ExprEval(F, i).visit(tree)


def _uses_i(entries):
    for x in entries:
        if isinstance(x, dict) and "im" in x:
            return True
        if isinstance(x, str):
            try:
                tree = ast.parse(x.strip(), mode="eval")
            except SyntaxError:
                continue
            if any(isinstance(n, ast.Name) and n.id == "i" for n in ast.walk(tree)):
                return True
    return False


def _require_sl2(m):
    if not m.det().equals(1):
        raise InputError("matrix does not have determinant 1")
    return m


def parse_matrix(text, K):
    """A matrix from JSON: either an exported matrix or [[a, b], [c, d]] of expressions."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = text
    if isinstance(obj, dict):
        return _require_sl2(matrix_from_json(obj, None if "field" in obj else K))
    if isinstance(obj, str):
        # bare 'a, b; c, d'
        rows = [r.split(",") for r in obj.split(";")]
        obj = rows
    try:
        (a, b), (c, d) = obj
    except (TypeError, ValueError):
        raise InputError("matrix must be [[a, b], [c, d]]") from None
    F, i = K, None
    if _uses_i([a, b, c, d]):
        F, i = with_i(K)
    m = Mat2(F, *(parse_element(x, F, i) for x in (a, b, c, d)))
    return _require_sl2(m)


# -- helpers -------------------------------------------------------------------

def _env(name, default, cast=int):
    v = os.environ.get(ENV_PREFIX + name.upper())
    return cast(v) if v is not None else default


def _field(args):
    char = args.char
    if char is None:
        char = 0
    return make_field(args.p, args.N, args.r, char)


def _emit(args, doc, summary=None):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if summary:
        print(summary, file=sys.stderr)


def _mat_json(m):
    return [e.to_json() for e in m.entries]


# -- commands ------------------------------------------------------------------

def cmd_classify(args):
    K = _field(args)
    g = parse_matrix(args.matrix, K)
    c = classify(g)
    bfs = bt_tree.translation_length_bfs(g, args.depth)
    doc = {"schema": 1, **c.to_json(), "bfs_length": bfs, "depth": args.depth}
    if bfs != bt_tree.GREATER_THAN_DEPTH and bfs != c.translation_length:
        raise VerificationFailure(f"trace gives {c.translation_length}, tree search gives {bfs}")
    _emit(args, doc, f"{c.kind}, translation length {c.translation_length}")


def cmd_fixset(args):
    K = _field(args)
    g = parse_matrix(args.matrix, K)
    desc = bt_tree.fixed_set(g, args.depth, cap=args.cap)
    base = g.field.base
    doc = desc.to_json(base)
    verts = bt_tree.ball(bt_tree.STANDARD, args.depth, base, args.cap)
    doc["verified"] = bt_tree.verify_descriptor(desc, verts)
    _emit(args, doc, f"{desc.kind}, {len(desc.fixed)} fixed vertices within radius {args.depth}")


def cmd_lift(args):
    K = _field(args)
    gens = [parse_matrix(m, K) for m in args.matrix]
    if len(gens) == 1 and not args.group:
        m = lifting.lift_element(ProjMat(gens[0]), args.bound)
        doc = {"schema": 1, "lift": _mat_json(m)}
        _emit(args, doc, "lifted one element")
        return
    table = lifting.enumerate_finite_group([ProjMat(g) for g in gens], args.cap)
    lifted = lifting.lift_finite_subgroup(table)
    doc = {"schema": 1, "classification": table.classification.to_json(),
           "lifts": [_mat_json(m) for m in lifted.lifts]}
    _emit(args, doc, f"lifted a group of order {len(table)}")


def cmd_lift_gog(args):
    with open(args.input) as fh:
        obj = json.load(fh)
    gog = lifting.gog_from_json(obj)
    rep = lifting.lift_graph_of_groups(gog, strict=not args.no_strict, cap=args.cap)
    _emit(args, rep.to_json(), f"verdict {rep.verdict}")


def cmd_gallery(args):
    K = _field(args)
    if args.action == "dense":
        if args.b is None:
            raise InputError("gallery dense needs --b")
        lam = parse_element(args.lam, K) if args.lam is not None else None
        d = gallery.build_dense(K, lam, parse_element(args.b, K))
        doc = d.to_json()
        if args.verify_no_lift:
            doc["no_lift"] = lifting.verify_no_lift(d.as_tuple()).to_json()
        _emit(args, doc, "dense quadruple built")
        return
    if args.action == "scan":
        return _scan(args, K)
    q = gallery.build_family(args.family, K)
    doc = q.to_json()
    if args.verify_no_lift:
        rep = lifting.verify_no_lift(q.as_tuple())
        doc["no_lift"] = rep.to_json()
        if rep.verdict != "NoLift":
            raise VerificationFailure(f"{args.family}: relator lifts")
        _emit(args, doc, f"{args.family}: {rep.minus_identity}/16 sign lifts give -I")
    else:
        _emit(args, doc, f"{args.family}: relations verified")


def _scan(args, K):
    if getattr(args, "quad", None):
        with open(args.quad) as fh:
            obj = json.load(fh)
        mats = obj["matrices"] if "matrices" in obj else obj
        quad = tuple(parse_matrix(json.dumps(mats[k]), K) for k in "ABCD")
    else:
        quad = gallery.build_family(args.family, K).as_tuple()
    rep = gallery.trace_scan(quad, args.max_len, jobs=args.jobs, cap=args.cap_words)
    _emit(args, rep.to_json(include_words=args.words),
          f"{len(rep.entries)} words, all traces in {{0, +-2}}: {rep.all_in_zero_pm2}")


def cmd_scan(args):
    return _scan(args, _field(args))


def cmd_tree_ball(args):
    K = _field(args)
    verts = bt_tree.ball(bt_tree.STANDARD, args.depth, K, args.cap)
    highlight = frozenset()
    if args.matrix:
        g = parse_matrix(args.matrix, K)
        highlight = frozenset(bt_tree.fixed_vertices(g, verts))
    text = bt_tree.ball_to_dot(verts, K, highlight)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{len(verts)} vertices, {len(highlight)} highlighted", file=sys.stderr)


def cmd_selftest(args):
    K = _field(args)
    rng = random.Random(args.seed)
    checks = {}

    def run(name, fn):
        t0 = time.perf_counter()
        try:
            fn()
            checks[name] = {"ok": True}
        except LiftError as exc:
            checks[name] = {"ok": False, "error": f"{type(exc).__name__}: {exc}"}
        checks[name]["seconds"] = round(time.perf_counter() - t0, 3)

    def families():
        for fam in gallery.FAMILIES:
            q = gallery.build_family(fam, K)
            if lifting.verify_no_lift(q.as_tuple()).verdict != "NoLift":
                raise VerificationFailure(f"{fam} lifts")

    def dense():
        for _ in range(10):
            try:
                gallery.build_dense(K, K.random_element(rng, -2, 2), K.random_element(rng, -2, 2))
            except InputError:
                pass

    def lift_unique():
        for c in range(2, K.q):
            g = ProjMat(Mat2.diag(K, K.teichmuller(c)))
            n = proj_order(g)
            if n is None or n % 2 == 0:
                continue
            m = lifting.lift_element(g)
            if not ProjMat(m).equals(g) or order(m) != n:
                raise VerificationFailure("lift is not an order-preserving preimage")

    def geometry():
        for _ in range(10):
            g = Mat2.diag(K, K.u_power(rng.randint(-3, 3)))
            if g.is_central():
                continue
            c = classify(g)
            bfs = bt_tree.translation_length_bfs(g, 8)
            if bfs != bt_tree.GREATER_THAN_DEPTH and bfs != c.translation_length:
                raise VerificationFailure("classify and tree search disagree")

    def squares():
        for a in range(1, K.p ** 3):
            if a % K.p == 0:
                continue
            if K.is_square(K(a)):
                s = K.sqrt(K(a))
                if not (s * s).equals(a):
                    raise VerificationFailure(f"sqrt({a})^2 != {a}")

    if K.p != 2:
        run("families", families)
        run("dense", dense)
    run("lift_uniqueness", lift_unique)
    run("geometry", geometry)
    run("squares", squares)
    ok = all(c["ok"] for c in checks.values())
    _emit(args, {"schema": 1, "field": K.header(), "checks": checks, "ok": ok},
          f"selftest {'passed' if ok else 'FAILED'} ({len(checks)} checks)")
    if not ok:
        raise VerificationFailure("selftest failed")


# -- argument parsing ------------------------------------------------------------

def _add_field_args(p):
    p.add_argument("--p", type=int, default=_env("p", 5), help="residue characteristic")
    p.add_argument("--r", type=int, default=_env("r", 1), help="residue degree (Laurent series only)")
    p.add_argument("--char", type=int, default=_env("char", None),
                   help="0 for Q_p, p for F_{p^r}((t))")
    p.add_argument("--N", type=int, default=_env("N", 32), help="digits of precision")
    p.add_argument("--depth", type=int, default=_env("depth", 6), help="tree search radius")
    p.add_argument("--cap", type=int, default=_env("cap", bt_tree.DEFAULT_CAP), help="size cap")
    p.add_argument("--seed", type=int, default=_env("seed", 0), help="RNG seed")
    p.add_argument("--out", default=os.environ.get(ENV_PREFIX + "OUT"), help="output path")
    p.add_argument("--jobs", type=int, default=_env("jobs", 1), help="worker processes")


def build_parser():
    parser = argparse.ArgumentParser(prog="psl2lift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="elliptic/hyperbolic type and translation length")
    _add_field_args(p)
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fixset", help="fixed-point set descriptor of an elliptic element")
    _add_field_args(p)
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_fixset)

    p = sub.add_parser("lift", help="lift an element or a finite group to SL2")
    _add_field_args(p)
    p.add_argument("--matrix", action="append", required=True, help="repeat for several generators")
    p.add_argument("--group", action="store_true", help="lift the generated group")
    p.add_argument("--bound", type=int, default=None, help="order search bound")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("lift-gog", help="lift a graph of groups given as JSON")
    _add_field_args(p)
    p.add_argument("--input", required=True)
    p.add_argument("--no-strict", action="store_true", help="report relator failures instead of failing")
    p.set_defaults(func=cmd_lift_gog)

    for name, func in (("gallery", cmd_gallery), ("scan", cmd_scan)):
        p = sub.add_parser(name, help="quadruple families and trace scans" if name == "gallery"
                           else "trace scan of a quadruple")
        _add_field_args(p)
        if name == "gallery":
            p.add_argument("action", nargs="?", default="build", choices=("build", "scan", "dense"))
            p.add_argument("--lambda", dest="lam", default=None)
            p.add_argument("--b", default=None)
            p.add_argument("--verify-no-lift", action="store_true")
        else:
            p.add_argument("--quad", default=None, help="JSON file with matrices A, B, C, D")
        p.add_argument("--family", default="F1", choices=gallery.FAMILIES)
        p.add_argument("--max-len", type=int, default=_env("max_len", 6))
        p.add_argument("--cap-words", type=int, default=gallery.DEFAULT_SCAN_CAP)
        p.add_argument("--words", action="store_true", help="include every word in the report")
        p.set_defaults(func=func)

    p = sub.add_parser("tree-ball", help="DOT dump of a ball around the standard vertex")
    _add_field_args(p)
    p.add_argument("--matrix", default=None, help="highlight the vertices this matrix fixes")
    p.set_defaults(func=cmd_tree_ball)

    p = sub.add_parser("selftest", help="quick consistency checks for one field")
    _add_field_args(p)
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
