"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 for
malformed input (the message names the offending field).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .eigen import Unbounded, eigen_grid
from .exceptions import FockModelError, NotCyclicError, ValidationError
from .fock import build_L, hs_bound, model_basis_check, spectral_decompose
from .gns import convolve
from .io import MachineWriter, pair, read_tuple, rep_to_records, tuple_to_dict
from .jordan import distribution_moments, distribution_rep, format_rep, joint_spectral_decompose
from .kernel import DEFAULT_DIRECTIONS, DEFAULT_RADII, Ball, certify_growth, eval_F, point_set
from .models import AtomicMeasure, atomic_tuple, jordan_block_tuple, varopoulos_kaijser
from .reproductions import EXAMPLES
from .tuples import CyclicTuple, moments, validate

SUBSCRIPTS = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")


# -- argument helpers --------------------------------------------------------

def parse_complex(text: str, field: str = "value") -> complex:
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ValidationError(f"cannot read {text!r} as a complex number", field=field) from None


def parse_point(text: str, field: str = "point") -> np.ndarray:
    return np.array([parse_complex(x, field) for x in text.split(",")])


def _model_params(spec: str) -> tuple[str, dict]:
    name, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValidationError(f"model parameter {item!r} needs key=value", field="model")
        params[key.strip()] = val.strip()
    return name.strip(), params


def build_model(spec: str, args=None) -> CyclicTuple:
    """Builtin tuples: ``zero``, ``scalar``, ``jordan``, ``vk`` and ``atomic``.

    Parameters come from ``name:key=value,...`` or the matching flags.
    """
    name, params = _model_params(spec)

    def get(key, default):
        flag = getattr(args, key, None) if args is not None else None
        if flag is not None:
            return flag
        return params.get(key, default)

    if name == "zero":
        return CyclicTuple([[[0.0]]], [1.0])
    if name == "scalar":
        return CyclicTuple([[[parse_complex(str(get("a", "0")), "a")]]], [1.0])
    if name == "jordan":
        try:
            m = int(get("m", 2))
        except ValueError:
            raise ValidationError("m must be an integer", field="m") from None
        return jordan_block_tuple(m, parse_complex(str(get("lam", params.get("lambda", "0"))), "lambda"))
    if name in ("vk", "varopoulos-kaijser"):
        return varopoulos_kaijser().tuple
    if name == "atomic":
        atoms = get("atoms", None)
        if atoms is None:
            raise ValidationError("atomic model needs --atoms", field="atoms")
        pts = [parse_point(a, "atoms") for a in str(atoms).split(";")]
        weights = get("weights", None)
        w = [float(x) for x in str(weights).split(";")] if weights is not None else [1.0] * len(pts)
        return atomic_tuple(AtomicMeasure(np.array(pts), w))
    raise ValidationError(f"unknown model {name!r}", field="model")


def load_tuple(args) -> CyclicTuple:
    if args.input and args.model:
        raise ValidationError("give either --input or --model, not both", field="input")
    if args.input:
        t = read_tuple(args.input)
    elif args.model:
        t = build_model(args.model, args)
    else:
        raise ValidationError("a tuple is required: use --input FILE or --model NAME", field="input")
    validate(t, check_cyclic=False, raise_on_error=True)
    return t


def fmt(x, digits: int = 10) -> str:
    if isinstance(x, Unbounded):
        return "unbounded"
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        if x.imag == 0:
            return f"{x.real:.{digits}g}"
        return f"{x.real:.{digits}g}{x.imag:+.{digits}g}i"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.{digits}g}"
    return str(x)


def point_str(p) -> str:
    return ",".join(fmt(x, 6) for x in np.atleast_1d(p))


class Out:
    """Dispatches report lines to human text or machine records."""

    def __init__(self, args, command: str):
        self.machine = args.format == "machine"
        self.stream = sys.stdout
        self.writer = MachineWriter(self.stream, command) if self.machine else None

    def line(self, text: str = ""):
        if not self.machine:
            print(text, file=self.stream)

    def record(self, kind: str, **fields):
        if self.machine:
            self.writer.record(kind, **fields)

    def verdict(self, ok: bool):
        self.record("result", passed=ok)
        self.line("PASS" if ok else "FAIL")
        return 0 if ok else 1


# -- subcommands -------------------------------------------------------------

def cmd_moments(args) -> int:
    t = load_tuple(args)
    d = args.degree if args.degree is not None else 2 * t.m
    mt = moments(t, d)
    out = Out(args, "moments")
    out.record("header", n=t.n, d=d)
    shown = 0
    for i, a in enumerate(mt.basis):
        for j, b in enumerate(mt.basis):
            v = mt.values[i, j]
            out.record("moment", alpha=list(a), beta=list(b), value=pair(v))
            if v != 0:
                out.line(f"m({list(a)}, {list(b)}) = {fmt(v)}")
                shown += 1
    omitted = len(mt.basis) ** 2 - shown
    if omitted:
        out.line(f"({omitted} zero entries omitted)")
    psd = mt.is_psd()
    out.record("checks", hermitian_defect=mt.hermitian_defect(), min_eigenvalue=mt.min_eigenvalue(), psd=psd)
    out.line(f"Hermitian defect {fmt(mt.hermitian_defect(), 3)}, smallest eigenvalue {fmt(mt.min_eigenvalue(), 3)}")
    return out.verdict(psd)


def cmd_fock(args) -> int:
    t = load_tuple(args)
    d = args.degree if args.degree is not None else 2 * t.m
    tol = args.tol if args.tol is not None else 1e-8
    out = Out(args, "fock")
    L = build_L(moments(t, d))
    dec = spectral_decompose(L)
    hs, bound = L.hs_norm_squared(), hs_bound(t)
    out.record("operator", degree=d, hs_norm_squared=hs, hs_bound=bound)
    out.line(f"degree {d}: ||L||_HS^2 = {fmt(hs)} (bound {fmt(bound)})")
    for lam, f in zip(dec.eigenvalues, dec.polynomials):
        out.record("eigenpair", eigenvalue=lam,
                   coeffs=[{"alpha": list(a), "coeff": pair(c)} for a, c in sorted(f.items())])
        out.line(f"lambda = {fmt(lam)}  f = {f!r}")
    try:
        rep = model_basis_check(t, dec, tol)
    except NotCyclicError as exc:
        out.record("model_check", error=str(exc))
        out.line(f"model check: {exc}")
        return out.verdict(False)
    out.record("model_check", rank=rep.rank, gram_residual=rep.gram_residual,
               intertwining_residual=rep.intertwining_residual, tol=tol)
    out.line(f"rank {rep.rank}; Gram residual {fmt(rep.gram_residual, 3)}; "
             f"intertwining residual {fmt(rep.intertwining_residual, 3)} (tol {fmt(tol, 3)})")
    return out.verdict(rep.passed and hs <= bound)


def cmd_kernel_eval(args) -> int:
    t = load_tuple(args)
    z = parse_point(args.z, "z") if args.z else np.zeros(t.n)
    w = parse_point(args.w, "w") if args.w else z
    for name, p in (("z", z), ("w", w)):
        if p.shape != (t.n,):
            raise ValidationError(f"{name} needs {t.n} coordinates", field=name)
    f, g = eval_F(t, z, w), eval_F(t, w, z)
    defect = abs(f - np.conj(g))
    out = Out(args, "kernel-eval")
    out.record("kernel", z=[pair(x) for x in z], w=[pair(x) for x in w], value=pair(f), symmetry_defect=defect)
    out.line(f"F({point_str(z)}; {point_str(w)}) = {fmt(f, 17)}")
    out.line(f"|F(z,w) - conj F(w,z)| = {fmt(defect, 3)}")
    return out.verdict(defect <= 1e-12 * max(abs(f), 1.0))


def _support(args, t: CyclicTuple):
    if args.support:
        pts = [parse_point(s, "support") for s in args.support]
        if any(p.shape != (t.n,) for p in pts):
            raise ValidationError(f"support points need {t.n} coordinates", field="support")
        if args.ball_radius is not None:
            return Ball(tuple(pts[0]), args.ball_radius)
        return point_set(*pts)
    return point_set(*joint_spectral_decompose(t, seed=args.seed).eigenvalues)


def _radii(args):
    if not args.radii:
        return DEFAULT_RADII
    try:
        return tuple(float(x) for x in args.radii.split(","))
    except ValueError:
        raise ValidationError("radii must be comma-separated numbers", field="radii") from None


def cmd_certify(args) -> int:
    t = load_tuple(args)
    K = _support(args, t)
    directions = args.directions or DEFAULT_DIRECTIONS
    try:
        cert = certify_growth(t, K, _radii(args), directions, args.seed)
    except ValueError as exc:
        raise ValidationError(str(exc), field="radii") from None
    out = Out(args, "certify")
    out.record("certificate", **cert.as_record())
    out.line(f"N_hat = {fmt(cert.N_hat, 6)}  logC_hat = {fmt(cert.logC_hat, 6)}  "
             f"residual_max = {fmt(cert.residual_max, 3)}")
    out.line(f"certified log C = {fmt(cert.certified_log_C, 6)} on {cert.samples['count']} samples "
             "(a numerical statement about the sample, not a proof)")
    ok = bool(np.isfinite(cert.N_hat) and np.isfinite(cert.residual_max))
    if args.expect_order is not None:
        ok = ok and abs(cert.N_hat - args.expect_order) <= 0.15
    return out.verdict(ok)


def _delta(point, n) -> str:
    s = point_str(point)
    return s.translate(SUBSCRIPTS) if n == 1 and all(c in "0123456789-" for c in s) else s


def cmd_classify(args) -> int:
    t = load_tuple(args)
    tol = args.tol if args.tol is not None else 1e-8
    dec = joint_spectral_decompose(t, tol, args.seed)
    out = Out(args, "classify")
    for b in dec.blocks:
        out.record("block", eigenvalue=[pair(x) for x in b.eigenvalue], dim=b.dim, nilpotency=list(b.nilpotency))
    out.record("classification", label=dec.classification, self_adjoint_defect=dec.self_adjoint_defect,
               cross_defect=dec.cross_defect, completeness_defect=dec.completeness_defect)
    where = "; ".join(point_str(p) for p in dec.eigenvalues)
    if dec.is_jordan:
        rep = distribution_rep(t, dec)
        text = format_rep(rep)
        if t.n == 1:
            for term in rep.terms:
                s = point_str(term.point)
                text = text.replace(f"δ_{s}", "δ" + _delta(term.point, 1))
        out.record("distribution", text=text)
        out.line(f"Jordan at {where}; Λ = {text}")
    else:
        out.line(f"NotJordan (spectrum {where}; projection self-adjoint defect {fmt(dec.self_adjoint_defect, 3)})")
    out.line(f"diagnostics: ||P_k P_l|| {fmt(dec.cross_defect, 3)}, ||sum P_k - I|| {fmt(dec.completeness_defect, 3)}")
    return out.verdict(dec.cross_defect <= 1e-8 and dec.completeness_defect <= 1e-8)


def cmd_distribution(args) -> int:
    t = load_tuple(args)
    tol = args.tol if args.tol is not None else 1e-9
    dec = joint_spectral_decompose(t, seed=args.seed)
    out = Out(args, "distribution")
    if not dec.is_jordan:
        out.record("error", message="not a Jordan tuple", self_adjoint_defect=dec.self_adjoint_defect)
        out.line(f"not a Jordan tuple (self-adjoint defect {fmt(dec.self_adjoint_defect, 3)}); "
                 "the moment functional is not a distribution")
        return out.verdict(False)
    rep = distribution_rep(t, dec)
    d = args.degree if args.degree is not None else max(rep.order + 1, 2)
    out.record("distribution", terms=rep_to_records(rep))
    out.line(f"Λ = {format_rep(rep)}")
    mt, dm = moments(t, d), distribution_moments(rep, d)
    worst = 0.0
    out.line(f"{'alpha':>10} {'beta':>10} {'moment':>24} {'distribution':>24}")
    for i, a in enumerate(mt.basis):
        for j, b in enumerate(mt.basis):
            err = abs(mt.values[i, j] - dm.values[i, j])
            worst = max(worst, err)
            out.record("check", alpha=list(a), beta=list(b), moment=pair(mt.values[i, j]),
                       distribution=pair(dm.values[i, j]), error=err)
            out.line(f"{str(list(a)):>10} {str(list(b)):>10} {fmt(mt.values[i, j]):>24} {fmt(dm.values[i, j]):>24}")
    scale = max(1.0, float(np.abs(mt.values).max()))
    out.line(f"max error {fmt(worst, 3)} (tol {fmt(tol, 3)} relative to {fmt(scale, 3)})")
    return out.verdict(worst <= tol * scale)


def cmd_convolve(args) -> int:
    t = load_tuple(args)
    if args.with_input:
        s = read_tuple(args.with_input)
    elif args.with_model:
        s = build_model(args.with_model)
    else:
        raise ValidationError("second tuple is required: use --with FILE or --with-model NAME", field="with")
    if s.n != t.n:
        raise ValidationError(f"tuples have {t.n} and {s.n} variables", field="with")
    d = args.degree if args.degree is not None else 6
    tol = args.tol if args.tol is not None else 1e-8
    res = convolve(t, s, d, tol=tol)
    out = Out(args, "convolve")
    out.record("convolution", degree=d, dim=res.gns.dim, nullity=res.gns.nullity, residual=res.gns.residual,
               norms=res.norms, bounds=res.bounds, norm_bound_ok=res.norm_bound_ok)
    out.line(f"degree {d}: quotient dimension {res.gns.dim} (nullity {res.gns.nullity}), "
             f"invariance residual {fmt(res.gns.residual, 3)}")
    for i, (a, b) in enumerate(zip(res.norms, res.bounds)):
        out.line(f"||R_{i + 1}|| = {fmt(a)} <= {fmt(b)} = ||T_{i + 1}|| + ||S_{i + 1}||")
    return out.verdict(res.norm_bound_ok)


def _grid(text: str) -> list:
    try:
        re_part, im_part = text.split(",")
        r0, r1, nr = re_part.split(":")
        i0, i1, ni = im_part.split(":")
        xs = np.linspace(float(r0), float(r1), int(nr))
        ys = np.linspace(float(i0), float(i1), int(ni))
    except ValueError:
        raise ValidationError("grid must look like re0:re1:count,im0:im1:count", field="grid") from None
    return [np.array([complex(x, y)]) for y in ys for x in xs]


def cmd_eigen(args) -> int:
    t = load_tuple(args)
    if args.grid:
        if t.n != 1:
            raise ValidationError("grids are for one-variable tuples", field="grid")
        points = _grid(args.grid)
    elif args.lam is not None:
        points = [parse_point(args.lam, "lambda")]
    else:
        raise ValidationError("give --lambda or --grid", field="lambda")
    if any(p.shape != (t.n,) for p in points):
        raise ValidationError(f"lambda needs {t.n} coordinates", field="lambda")
    d = args.degree if args.degree is not None else max(t.m - 1, 1)
    tol = args.tol if args.tol is not None else 1e-9
    reports = eigen_grid(t, points, d, tol)
    out = Out(args, "eigen")
    out.line(f"{'lambda':>20} {'eigen':>6} {'distance':>14} {'c':>14}  psd")
    ok = True
    for r in reports:
        ok = ok and r.consistent
        const = None if isinstance(r.constant, Unbounded) else r.constant
        out.record("eigen", **{"lambda": [pair(x) for x in r.lam]}, direct=r.direct_verdict,
                   distance=r.distance, c=const if const is not None else "unbounded",
                   psd=r.psd_verdict, psd_min_eigenvalue=r.psd_min_eigenvalue, degree=r.degree)
        out.line(f"{point_str(r.lam):>20} {str(r.direct_verdict):>6} {fmt(r.distance, 6):>14} "
                 f"{fmt(r.constant, 6):>14}  {r.psd_label}")
    return out.verdict(ok)


def cmd_example(args) -> int:
    names = list(EXAMPLES) if args.name == "all" else [args.name]
    if any(n not in EXAMPLES for n in names):
        raise ValidationError(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLES)}", field="name")
    out = Out(args, "example")
    ok = True
    for name in names:
        res = EXAMPLES[name]()
        ok = ok and res.passed
        out.line(res.name)
        for c in res.checks:
            out.record("check", example=res.name, label=c.label, value=c.value, target=c.target, ok=c.ok)
            out.line(f"  {c.label:<40} {fmt(c.value, 12):>20}  [{c.target}]  {'PASS' if c.ok else 'FAIL'}")
    return out.verdict(ok)


def cmd_model(args) -> int:
    args.model = args.builder
    t = build_model(args.builder, args)
    doc = tuple_to_dict(t)
    if args.format == "machine":
        out = Out(args, "model")
        out.record("tuple", **doc)
    else:
        print(json.dumps(doc))
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="tuple file in the JSON schema")
    common.add_argument("--model", help="builtin tuple: zero, scalar, jordan, vk, atomic (name:key=value,...)")
    common.add_argument("--m", type=int, help="Jordan block size")
    common.add_argument("--lambda", dest="lam", help="eigenvalue or point, e.g. 0+0i or 1,2i")
    common.add_argument("--a", help="scalar model value")
    common.add_argument("--atoms", help="atoms separated by ';', coordinates by ','")
    common.add_argument("--weights", help="weights separated by ';'")
    common.add_argument("--degree", type=int, help="truncation degree")
    common.add_argument("--tol", type=float, help="check tolerance (command specific default)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--radii", help="comma-separated sampling radii")
    common.add_argument("--directions", type=int, help="sample directions per radius")
    common.add_argument("--format", choices=("human", "machine"), default="human")

    parser = argparse.ArgumentParser(prog="fockmodel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("moments", parents=[common], help="moment table").set_defaults(func=cmd_moments)
    sub.add_parser("fock", parents=[common], help="Fock operator, eigenpolynomials and model check") \
        .set_defaults(func=cmd_fock)
    p = sub.add_parser("kernel-eval", parents=[common], help="evaluate F(z, w)")
    p.add_argument("--z")
    p.add_argument("--w")
    p.set_defaults(func=cmd_kernel_eval)
    p = sub.add_parser("certify", parents=[common], help="growth certificate")
    p.add_argument("--support", action="append", help="support point (repeatable); default: joint spectrum")
    p.add_argument("--ball-radius", type=float, help="use the ball around the first support point")
    p.add_argument("--expect-order", type=float, help="fail unless N_hat is within 0.15")
    p.set_defaults(func=cmd_certify)
    sub.add_parser("classify", parents=[common], help="Jordan classification").set_defaults(func=cmd_classify)
    sub.add_parser("distribution", parents=[common], help="distribution form with verification") \
        .set_defaults(func=cmd_distribution)
    p = sub.add_parser("convolve", parents=[common], help="convolution of two tuples")
    p.add_argument("--with", dest="with_input", help="second tuple file")
    p.add_argument("--with-model", help="second tuple as a builtin model name")
    p.set_defaults(func=cmd_convolve)
    p = sub.add_parser("eigen", parents=[common], help="joint eigenvalue criteria")
    p.add_argument("--grid", help="re0:re1:count,im0:im1:count")
    p.set_defaults(func=cmd_eigen)
    p = sub.add_parser("example", parents=[common], help="run a worked example")
    p.add_argument("name", help=f"one of: {', '.join(EXAMPLES)}, all")
    p.set_defaults(func=cmd_example)
    p = sub.add_parser("model", parents=[common], help="print a builtin tuple as JSON")
    p.add_argument("builder")
    p.set_defaults(func=cmd_model)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.degree is not None and args.degree < 1:
        print("error [degree]: degree must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error [{exc.field or 'input'}]: {exc}", file=sys.stderr)
        return 2
    except FockModelError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
