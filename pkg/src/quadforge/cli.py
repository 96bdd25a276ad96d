"""Command line front end: ``quadforge <subcommand> [--json] ...``.

Exit status is 0 on success, 2 on usage errors (argparse) and 1 on domain or
convergence errors, which are reported on stderr as a single line
``error: <ErrorType>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

import numpy as np

from . import classgroup, crypto, forms, geometry, intarith, numlin, orthogroup
from .errors import QuadForgeError
from .forms import BinaryForm


def _num(v: float) -> str:
    return f"{v:.12g}"


def _vec_plain(v) -> str:
    return " ".join(_num(float(t)) for t in v)


def _mat_plain(A) -> str:
    return "\n".join(_vec_plain(row) for row in np.atleast_2d(A))


def _floats(A):
    return np.asarray(A, dtype=float).tolist()


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _matrix(path):
    return numlin.parse_matrix(_read_text(path))


def _vector(text):
    """Vector from a file path, ``-`` for stdin, or an inline ``"1,2,3"``."""
    if text == "-" or os.path.exists(text):
        return numlin.parse_vector(_read_text(text))
    return numlin.parse_vector(text)


def _int_matrix(path):
    rows = []
    for line in _read_text(path).splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([int(v) for v in line.replace(",", " ").split()])
    return rows


def _form_json(f) -> list[int]:
    return [int(f[0]), int(f[1]), int(f[2])]


# --- exact subcommands -------------------------------------------------------

def cmd_reduce(args):
    q = BinaryForm.parse(args.form)
    r, M = forms.reduce(q)
    return f"{r}\n{M}", {"form": _form_json(q), "reduced": _form_json(r), "transform": M.tolist()}


def cmd_compose(args):
    F = classgroup.parse_class(args.left, args.delta)
    G = classgroup.parse_class(args.right, args.delta)
    H = classgroup.compose(F, G)
    return f"{H.form}", {"delta": H.delta, "left": _form_json(F.form), "right": _form_json(G.form),
                         "result": _form_json(H.form)}


def cmd_classgroup(args):
    reduced = forms.enumerate_reduced(args.delta)
    h = len(reduced)
    rows = [(f, classgroup.order_of(classgroup.ClassElement(f, args.delta), h)) for f in reduced]
    plain = "\n".join(f"{f} {k}" for f, k in rows)
    return plain, {"delta": args.delta, "class_number": h,
                   "classes": [{"form": _form_json(f), "order": k} for f, k in rows]}


def cmd_classno(args):
    if args.method == "formula":
        h = classgroup.class_number_formula(args.delta)
    else:
        h = classgroup.class_number_enum(args.delta)
    return str(h), {"delta": args.delta, "method": args.method, "class_number": h}


def cmd_genus(args):
    g = classgroup.genus_numbers(args.delta)
    return f"g+={g.g_plus} g={g.g_geom} m={g.m}", {"delta": args.delta, "g_plus": g.g_plus,
                                                    "g_geom": g.g_geom, "m": g.m}


def cmd_ambiguous(args):
    amb = classgroup.count_ambiguous(args.delta)
    classical = classgroup.classical_class_count(args.delta)
    return f"ambiguous={amb} classical={classical}", {"delta": args.delta, "ambiguous": amb,
                                                      "classical_classes": classical}


def _solution_json(s):
    return {"x": s.x, "y": s.y, "value": s.value, "t": s.t, "u": s.u}


def cmd_norm_solve(args):
    sols = orthogroup.solve_norm_pm1(args.delta, args.bound)
    plain = "\n".join(f"t={s.t} u={s.u} x={s.x} y={s.y} norm={s.value:+d}" for s in sols)
    return plain, {"delta": args.delta, "bound": args.bound, "solutions": [_solution_json(s) for s in sols]}


def cmd_automorph(args):
    q = BinaryForm.parse(args.form)
    delta = forms.discriminant(q)
    sols = [s for s in orthogroup.solve_norm_pm1(delta, args.bound) if s.value == 1]
    mats = [(s, orthogroup.automorph_from_solution(q, s)) for s in sols]
    plain = "\n".join(f"t={s.t} u={s.u} {M}" for s, M in mats)
    return plain, {"form": _form_json(q), "delta": delta,
                   "automorphs": [{"solution": _solution_json(s), "matrix": M.tolist()} for s, M in mats]}


def cmd_dh_demo(args):
    gen = crypto.parse_public(args.generator, args.delta) if args.generator else None
    params = crypto.setup(args.delta, gen)
    ka = crypto.keygen(params, args.secret_a)
    kb = crypto.keygen(params, args.secret_b)
    sa = crypto.dh_shared(params, args.secret_a, kb.public_value)
    sb = crypto.dh_shared(params, args.secret_b, ka.public_value)
    plain = "\n".join([
        f"generator {params.generator}",
        f"public_a {ka.public_value}",
        f"public_b {kb.public_value}",
        f"shared {sa}",
    ])
    if sa != sb:
        raise QuadForgeError("shared secrets disagree")
    return plain, {"delta": args.delta, "generator": list(crypto.compress(params.generator)),
                   "public_a": list(crypto.compress(ka.public_value)),
                   "public_b": list(crypto.compress(kb.public_value)),
                   "shared": list(crypto.compress(sa))}


def cmd_detadj(args):
    A = _int_matrix(args.matrix)
    det, adj = intarith.int_det_adj(A)
    plain = f"{det}\n" + "\n".join(" ".join(str(v) for v in row) for row in adj)
    return plain, {"det": det, "adjugate": adj}


def cmd_jacobi(args):
    v = intarith.jacobi(args.delta, args.n)
    return str(v), {"delta": args.delta, "n": args.n, "symbol": v}


def cmd_crt(args):
    v = intarith.crt_pair(args.a, args.p, args.b, args.q)
    return str(v), {"a": args.a, "p": args.p, "b": args.b, "q": args.q, "c": v}


# --- numeric subcommands -----------------------------------------------------

def cmd_lsf(args):
    x, res = numlin.least_squares(_matrix(args.matrix), _vector(args.rhs))
    return f"{_vec_plain(x)}\nresidual {_num(res)}", {"x": _floats(x), "residual": res}


def cmd_sor(args):
    A = _matrix(args.matrix)
    x0 = _vector(args.x0) if args.x0 else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        x, k = numlin.sor_solve(A, _vector(args.rhs), args.omega, x0, args.tol, args.maxiter)
    return f"{_vec_plain(x)}\nsweeps {k}", {"x": _floats(x), "sweeps": k}


def cmd_qr(args):
    Q, R = numlin.householder_qr(_matrix(args.matrix))
    return f"Q\n{_mat_plain(Q)}\nR\n{_mat_plain(R)}", {"Q": _floats(Q), "R": _floats(R)}


def cmd_signature(args):
    s = numlin.signature(_matrix(args.matrix))
    return f"{s.r} {s.s} {s.zeros}", {"r": s.r, "s": s.s, "zeros": s.zeros}


def cmd_posdef(args):
    v = numlin.is_positive_definite_minors(_matrix(args.matrix))
    return str(v).lower(), {"positive_definite": v}


def cmd_eigen(args):
    w = numlin.symmetric_eigen(_matrix(args.matrix))
    return _vec_plain(w), {"eigenvalues": _floats(w)}


def cmd_pinv(args):
    P = numlin.pseudoinverse(_matrix(args.matrix))
    return _mat_plain(P), {"pseudoinverse": _floats(P)}


def cmd_specnorm(args):
    v = numlin.spectral_norm(_matrix(args.matrix))
    return _num(v), {"spectral_norm": v}


def cmd_critpoint(args):
    k = numlin.classify_critical_point(_matrix(args.matrix))
    return k.value, {"kind": k.value}


def cmd_fixpoint(args):
    x0 = _vector(args.x0) if args.x0 else None
    r = numlin.fixed_point_affine(_matrix(args.matrix), _vector(args.rhs), x0, args.tol, args.maxiter)
    plain = (f"{_vec_plain(r.x)}\niterations {r.iterations}\n"
             f"apriori {_num(r.apriori)}\naposteriori {_num(r.aposteriori)}")
    return plain, {"x": _floats(r.x), "iterations": r.iterations, "apriori": r.apriori,
                   "aposteriori": r.aposteriori, "kappa": r.kappa, "norm": r.norm}


# --- geometry ----------------------------------------------------------------

def _points(args):
    return geometry.Vec2.parse(args.a), geometry.Vec2.parse(args.b), geometry.Vec2.parse(args.c)


def cmd_sector(args):
    a, b, c = _points(args)
    delta = geometry.sector_coefficient(a, b, c)
    out = {
        "delta": delta,
        "f": geometry.f_kernel(delta),
        "triangle_area": geometry.triangle_area(a, b),
        "sector_area": geometry.sector_area(a, b, c),
        "angle": geometry.angle(a, b, c),
    }
    return "\n".join(f"{k} {_num(v)}" for k, v in out.items()), out


def cmd_angle(args):
    v = geometry.angle(*_points(args))
    return _num(v), {"angle": v}


def cmd_conic_fit(args):
    C = geometry.conic_through(*_points(args))
    det, kind = geometry.conic_classify(C)
    return _mat_plain(C.M), {"M": _floats(C.M), "det": det, "kind": kind.value}


def cmd_conic_classify(args):
    det, kind = geometry.conic_classify(geometry.Conic(_matrix(args.matrix)))
    return f"{_num(det)} {kind.value}", {"det": det, "kind": kind.value}


# --- JSON output schemas -------------------------------------------------------

_INT = {"type": "integer"}
_NUM = {"type": "number"}
_VEC = {"type": "array", "items": _NUM}
_MAT = {"type": "array", "items": _VEC}
_FORM = {"type": "array", "items": _INT, "minItems": 3, "maxItems": 3}
_PAIR = {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}
_IMAT = {"type": "array", "items": {"type": "array", "items": _INT}}
_SOL = {"type": "object", "required": ["x", "y", "value", "t", "u"],
        "properties": {k: _INT for k in ("x", "y", "value", "t", "u")}}


def _obj(**props):
    return {"type": "object", "required": list(props), "properties": props, "additionalProperties": False}


JSON_SCHEMAS = {
    "reduce": _obj(form=_FORM, reduced=_FORM, transform=_IMAT),
    "compose": _obj(delta=_INT, left=_FORM, right=_FORM, result=_FORM),
    "classgroup": _obj(delta=_INT, class_number=_INT, classes={"type": "array", "items": _obj(form=_FORM, order=_INT)}),
    "classno": _obj(delta=_INT, method={"enum": ["enum", "formula"]}, class_number=_INT),
    "genus": _obj(delta=_INT, g_plus=_INT, g_geom=_INT, m=_INT),
    "ambiguous": _obj(delta=_INT, ambiguous=_INT, classical_classes=_INT),
    "norm-solve": _obj(delta=_INT, bound=_INT, solutions={"type": "array", "items": _SOL}),
    "automorph": _obj(form=_FORM, delta=_INT,
                      automorphs={"type": "array", "items": _obj(solution=_SOL, matrix=_IMAT)}),
    "dh-demo": _obj(delta=_INT, generator=_PAIR, public_a=_PAIR, public_b=_PAIR, shared=_PAIR),
    "detadj": _obj(det=_INT, adjugate=_IMAT),
    "jacobi": _obj(delta=_INT, n=_INT, symbol={"enum": [-1, 0, 1]}),
    "crt": _obj(a=_INT, p=_INT, b=_INT, q=_INT, c=_INT),
    "lsf": _obj(x=_VEC, residual=_NUM),
    "sor": _obj(x=_VEC, sweeps=_INT),
    "qr": _obj(Q=_MAT, R=_MAT),
    "signature": _obj(r=_INT, s=_INT, zeros=_INT),
    "posdef": _obj(positive_definite={"type": "boolean"}),
    "eigen": _obj(eigenvalues=_VEC),
    "pinv": _obj(pseudoinverse=_MAT),
    "specnorm": _obj(spectral_norm=_NUM),
    "critpoint": _obj(kind={"enum": ["isolated_min", "isolated_max", "saddle", "indeterminate"]}),
    "fixpoint": _obj(x=_VEC, iterations=_INT, apriori=_NUM, aposteriori=_NUM, kappa=_NUM,
                     norm={"enum": ["inf", "2"]}),
    "sector": _obj(delta=_NUM, f=_NUM, triangle_area=_NUM, sector_area=_NUM, angle=_NUM),
    "angle": _obj(angle=_NUM),
    "conic-fit": _obj(M=_MAT, det=_NUM, kind={"enum": ["ellipse", "parallel_lines", "hyperbola_branches"]}),
    "conic-classify": _obj(det=_NUM, kind={"enum": ["ellipse", "parallel_lines", "hyperbola_branches"]}),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.add_argument("--json", action="store_true", help="emit JSON instead of plain text")
        p.set_defaults(func=func)
        return p

    p = add("reduce", cmd_reduce, "reduce a positive definite primitive form")
    p.add_argument("--form", required=True, help='form "[a,b,c]"')

    p = add("compose", cmd_compose, "compose two classes of the same discriminant")
    p.add_argument("left", help='"[a,b,c]" or "a,b" (with --delta)')
    p.add_argument("right")
    p.add_argument("--delta", type=int)

    p = add("classgroup", cmd_classgroup, "list reduced forms of a discriminant with their orders")
    p.add_argument("--delta", type=int, required=True)

    p = add("classno", cmd_classno, "class number by enumeration or by the character sum")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--method", choices=["enum", "formula"], default="enum")

    p = add("genus", cmd_genus, "genus numbers g+ and g of a positive discriminant")
    p.add_argument("--delta", type=int, required=True)

    p = add("ambiguous", cmd_ambiguous, "count classes of order <= 2 and GL2 classes")
    p.add_argument("--delta", type=int, required=True)

    p = add("norm-solve", cmd_norm_solve, "solve t^2 - delta u^2 = +-4 for |u| <= bound")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--bound", type=int, default=1000)

    p = add("automorph", cmd_automorph, "proper automorphs of a form from norm +1 units")
    p.add_argument("--form", required=True)
    p.add_argument("--bound", type=int, default=1000)

    p = add("dh-demo", cmd_dh_demo, "class group Diffie-Hellman with two given secrets")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--generator", help='"alpha,beta"; default: class of maximal order')
    p.add_argument("--secret-a", type=int, required=True)
    p.add_argument("--secret-b", type=int, required=True)

    p = add("detadj", cmd_detadj, "exact determinant and adjugate of an integer matrix file")
    p.add_argument("--matrix", required=True, help="file path or - for stdin")

    p = add("jacobi", cmd_jacobi, "symbol (delta/n)")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("crt", cmd_crt, "solve c = a mod p, c = b mod q")
    for name in ("a", "p", "b", "q"):
        p.add_argument(f"--{name}", type=int, required=True)

    def matrix_cmd(name, func, help_):
        p = add(name, func, help_)
        p.add_argument("--matrix", required=True, help="file path or - for stdin")
        return p

    p = matrix_cmd("lsf", cmd_lsf, "least squares fit by Householder QR")
    p.add_argument("--rhs", required=True, help='file path or inline "b1,b2,..."')

    p = matrix_cmd("sor", cmd_sor, "solve an SPD system by successive over-relaxation")
    p.add_argument("--rhs", required=True)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--x0")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--maxiter", type=int, default=10_000)

    matrix_cmd("qr", cmd_qr, "Householder QR decomposition")
    matrix_cmd("signature", cmd_signature, "inertia (r, s, zeros) of a symmetric matrix")
    matrix_cmd("posdef", cmd_posdef, "positive definiteness by leading minors")
    matrix_cmd("eigen", cmd_eigen, "eigenvalues of a symmetric matrix")
    matrix_cmd("pinv", cmd_pinv, "Moore-Penrose pseudoinverse")
    matrix_cmd("specnorm", cmd_specnorm, "spectral norm")
    matrix_cmd("critpoint", cmd_critpoint, "classify a stationary point from its Hessian")

    p = matrix_cmd("fixpoint", cmd_fixpoint, "iterate x <- A x + b to its fixed point")
    p.add_argument("--rhs", required=True)
    p.add_argument("--x0")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--maxiter", type=int, default=10_000)

    for name, func, help_ in (
        ("sector", cmd_sector, "sector coefficient, kernel, areas and angle"),
        ("angle", cmd_angle, "generalised angle between a and b w.r.t. c"),
        ("conic-fit", cmd_conic_fit, "central conic through three points"),
    ):
        p = add(name, func, help_)
        for pt in ("a", "b", "c"):
            p.add_argument(f"--{pt}", required=True, help='point "x,y"')

    matrix_cmd("conic-classify", cmd_conic_classify, "classify x M x^t = 1 by det(M)")
    return parser


def dispatch(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        plain, data = args.func(args)
    except (QuadForgeError, ValueError, ArithmeticError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {type(exc).__name__}: {msg}", file=stderr)
        return 1
    if args.json:
        print(json.dumps(data, sort_keys=True), file=stdout)
    else:
        print(plain, file=stdout)
    return 0


def main(argv: list[str] | None = None) -> None:
    try:
        code = dispatch(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
    sys.exit(code)
