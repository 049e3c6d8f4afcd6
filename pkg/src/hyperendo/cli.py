"""Command-line front end; every command prints one JSON document.

Exit codes: 0 success, 1 failed check or domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import List, Optional

from .endo import (
    Endomorphism,
    apply_endo_poly,
    endo_evaluate,
    endo_evaluate_pointwise,
    endo_evaluate_traced,
    endo_from_json,
    endo_to_json,
)
from .errors import ExtensionTooLarge, HyperEndoError
from .families import FamilyParams, family_from_json, family_to_json, make_family
from .field import FieldDesc, desc_from_json, desc_to_json, elem_to_json
from .glv import glv_basis, glv_bench
from .jacobian import (
    HyperellipticCurve,
    MumfordDivisor,
    curve_to_json,
    divisor_from_json,
    divisor_to_json,
    jac_add,
    jac_neg,
    jac_scalar_mul,
    random_divisor,
    scalar_mul_counted,
)
from .order import eta_eigenvalues, jacobian_order, match_eigenvalue
from .poly import Polynomial

# worked example over F_5[xi]/(xi^37 + 4 xi^2 + 3 xi + 3)
EX_MODULUS = [3, 3, 4] + [0] * 34 + [1]
EX_T = [3, 2, 1, 3, 1, 3]
EX_N = 1058791184067701689674637025340531565456011790341311
EX_M = 336894053941004885519266617028956898972619907667301
EX_COFACTOR = 5


class UsageError(Exception):
    pass


@dataclass
class CurveBundle:
    field: FieldDesc
    curve: HyperellipticCurve
    endo: Endomorphism
    params: Optional[FamilyParams]
    subgroup_order: Optional[int] = None
    eigenvalue: Optional[int] = None

    def to_json(self) -> dict:
        out = {
            "field": desc_to_json(self.field),
            "curve": curve_to_json(self.curve),
            "endo": endo_to_json(self.endo),
            "family": None if self.params is None else family_to_json(self.field, self.params),
        }
        if self.subgroup_order is not None:
            out["subgroup_order"] = str(self.subgroup_order)
        if self.eigenvalue is not None:
            out["eigenvalue"] = str(self.eigenvalue)
        return out


# ---------------------------------------------------------------------------
# input plumbing


def _load(arg: str, flag: str) -> dict:
    text = arg.strip()
    try:
        if text.startswith("{"):
            return json.loads(text)
        with open(arg, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {arg!r} ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON ({exc.msg})") from None


def _opt_int(obj: dict, key: str) -> Optional[int]:
    v = obj.get(key)
    return None if v is None else int(v)


def _bundle(args) -> CurveBundle:
    if getattr(args, "curve", None):
        obj = _load(args.curve, "--curve")
        if obj.get("family"):
            return _bundle_from_family(obj["family"], obj, args)
        endo = endo_from_json(obj["endo"])
        return CurveBundle(endo.curve.desc, endo.curve, endo, None,
                           _opt_int(obj, "subgroup_order"), _opt_int(obj, "eigenvalue"))
    if getattr(args, "params", None):
        obj = _load(args.params, "--params")
        return _bundle_from_family(obj, obj, args)
    raise UsageError("one of --params or --curve is required")


def _bundle_from_family(fam: dict, extra: dict, args) -> CurveBundle:
    fam = dict(fam)
    if getattr(args, "field", None):
        fam["field"] = _load(args.field, "--field")
    if "field" not in fam:
        raise UsageError("--field: no field given in params or on the command line")
    if "family" not in fam:
        raise UsageError("--params: missing 'family'")
    desc, params = family_from_json(fam)
    curve, endo = make_family(desc, params)
    return CurveBundle(desc, curve, endo, params, _opt_int(extra, "subgroup_order"), _opt_int(extra, "eigenvalue"))


def _point(args, curve: HyperellipticCurve) -> MumfordDivisor:
    if not getattr(args, "point", None):
        raise UsageError("--point is required")
    return divisor_from_json(curve, _load(args.point, "--point"))


def _largest_prime_factor(n: int) -> int:
    # orders here come from point counting, so trial division is enough
    best, d = 1, 2
    while d * d <= n:
        while n % d == 0:
            best, n = d, n // d
        d += 1 if d == 2 else 2
    return max(best, n)


def _subgroup(b: CurveBundle, seed: int):
    """(ell, Q) with Q of prime order ell, using the bundle's data or counting."""
    rng = random.Random(seed)
    if b.subgroup_order is not None:
        ell = b.subgroup_order
        order = None
    else:
        order, _ = jacobian_order(b.curve)
        ell = _largest_prime_factor(order)
    for _ in range(64):
        P = random_divisor(b.curve, rng)
        Q = P if order is None else jac_scalar_mul(P, order // ell)
        if not Q.is_identity() and jac_scalar_mul(Q, ell).is_identity():
            return ell, Q
    raise HyperEndoError(f"no point of order {ell} found")


# ---------------------------------------------------------------------------
# commands


def cmd_family(args) -> dict:
    return _bundle(args).to_json()


def cmd_verify(args) -> dict:
    b = _bundle(args)
    curve, eta = b.curve, b.endo
    rng = random.Random(args.seed)
    tally = {k: 0 for k in ("min_poly", "group_law", "homomorphism", "oracle_agree", "oracle_compared")}
    errors: dict = {}
    stats: dict = {}
    for _ in range(args.trials):
        P, Q, R = (random_divisor(curve, rng) for _ in range(3))
        O = curve.identity()
        if ((P + Q) + R == P + (Q + R) and P + Q == Q + P and P + O == P and (P + jac_neg(P)).is_identity()):
            tally["group_law"] += 1
        try:
            if apply_endo_poly(eta, eta.min_poly, P, stats).is_identity():
                tally["min_poly"] += 1
            if endo_evaluate(eta, P + Q, stats) == endo_evaluate(eta, P, stats) + endo_evaluate(eta, Q, stats):
                tally["homomorphism"] += 1
        except HyperEndoError as exc:
            errors[exc.kind] = errors.get(exc.kind, 0) + 1
            continue
        try:
            slow = endo_evaluate_pointwise(eta, P, max_ext_degree=4)
        except ExtensionTooLarge:
            continue
        except HyperEndoError as exc:
            errors[exc.kind] = errors.get(exc.kind, 0) + 1
            continue
        tally["oracle_compared"] += 1
        tally["oracle_agree"] += slow == endo_evaluate(eta, P)
    n = args.trials
    ok = (tally["min_poly"] == n and tally["group_law"] == n and tally["homomorphism"] == n
          and tally["oracle_agree"] == tally["oracle_compared"])
    return {
        "trials": n,
        "seed": args.seed,
        "min_poly": [str(c) for c in eta.min_poly],
        "passed": tally,
        "errors": dict(sorted(errors.items())),
        "routes": dict(sorted(stats.items())),
        "ok": ok,
    }


def cmd_eval(args) -> dict:
    b = _bundle(args)
    P = _point(args, b.curve)
    image, info = endo_evaluate_traced(b.endo, P)
    return {"input": divisor_to_json(P), "image": divisor_to_json(image), "path": info.path}


def cmd_order(args) -> dict:
    b = _bundle(args)
    order, L = jacobian_order(b.curve)
    return {"order": str(order), "l_poly": L.to_json()}


def cmd_eigen(args) -> dict:
    b = _bundle(args)
    if getattr(args, "point", None):
        Q = _point(args, b.curve)
        if b.subgroup_order is None:
            raise UsageError("--point needs a subgroup_order in the bundle")
        ell = b.subgroup_order
    else:
        ell, Q = _subgroup(b, args.seed)
    cands = eta_eigenvalues(b.endo.min_poly, ell)
    m = match_eigenvalue(b.endo, Q, cands)
    return {
        "subgroup_order": str(ell),
        "candidates": [str(c) for c in cands],
        "eigenvalue": str(m),
        "point": divisor_to_json(Q),
    }


def _example_bundle():
    F = FieldDesc(5, EX_MODULUS)
    t = F(EX_T)
    params = FamilyParams("artin_schreier", 5, t)
    curve, eta = make_family(F, params)
    return CurveBundle(F, curve, eta, params, EX_N, EX_M)


def _example_point(b: CurveBundle):
    t = b.params.t
    y = t.sqrt()
    P = MumfordDivisor(b.curve, Polynomial.x(b.field), Polynomial.constant(b.field, y))
    return y, P, jac_scalar_mul(P, EX_COFACTOR)


def cmd_bench(args) -> dict:
    if args.params or args.curve:
        b = _bundle(args)
        ell, Q = _subgroup(b, args.seed)
        m = b.eigenvalue
        if m is None:
            m = match_eigenvalue(b.endo, Q, eta_eigenvalues(b.endo.min_poly, ell))
    else:
        b = _example_bundle()
        _, _, Q = _example_point(b)
        ell, m = EX_N, EX_M
    dim = len(b.endo.min_poly) - 1
    basis = glv_basis(ell, m, dim, b.endo.min_poly)
    report = glv_bench(b.endo, basis, Q, args.trials, seed=args.seed, timing=not args.no_timing)
    report["eigenvalue"] = str(m)
    report["subgroup_order"] = str(ell)
    return report


def cmd_example(args) -> dict:
    b = _example_bundle()
    n, m = EX_N, EX_M
    y, P, Q = _example_point(b)
    m_root = (m * m + m - 1) % n == 0
    nQ, dbl, add = scalar_mul_counted(Q, n)
    image, info = endo_evaluate_traced(b.endo, Q)
    eta_ok = image == jac_scalar_mul(Q, m)
    cands = eta_eigenvalues(b.endo.min_poly, n)
    return {
        "field": desc_to_json(b.field),
        "t": elem_to_json(b.params.t),
        "curve": curve_to_json(b.curve),
        "y": elem_to_json(y),
        "P": divisor_to_json(P),
        "Q": divisor_to_json(Q),
        "n": str(n),
        "m": str(m),
        "eigenvalue_candidates": [str(c) for c in cands],
        "eta_Q": divisor_to_json(image),
        "eta_path": info.path,
        "checks": {
            "m_squared_plus_m_minus_1_mod_n": m_root,
            "nQ_is_identity": nQ.is_identity(),
            "eta_Q_equals_mQ": eta_ok,
        },
        "ok": m_root and nQ.is_identity() and eta_ok,
    }


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperendo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, point=False, trials=None):
        p.add_argument("--params", help="family parameters (file or inline JSON)")
        p.add_argument("--field", help="field descriptor (file or inline JSON); overrides the params field")
        p.add_argument("--curve", help="curve bundle as emitted by 'family'")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write JSON here instead of stdout")
        if point:
            p.add_argument("--point", help="divisor JSON {\"a\": ..., \"b\": ...}")
        if trials is not None:
            p.add_argument("--trials", type=_positive, default=trials)

    common(sub.add_parser("family", help="build a curve bundle"))
    common(sub.add_parser("verify", help="property checks on a bundle"), trials=200)
    common(sub.add_parser("eval", help="apply eta to a divisor"), point=True)
    common(sub.add_parser("order", help="Jacobian order by point counting"))
    common(sub.add_parser("eigen", help="eigenvalue of eta on a prime-order subgroup"), point=True)
    bench = sub.add_parser("bench", help="GLV versus plain scalar multiplication")
    common(bench, trials=10)
    bench.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")
    common(sub.add_parser("example-5-37", help="reproduce the F_5^37 worked example"))
    return parser


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


COMMANDS = {
    "family": cmd_family,
    "verify": cmd_verify,
    "eval": cmd_eval,
    "order": cmd_order,
    "eigen": cmd_eigen,
    "bench": cmd_bench,
    "example-5-37": cmd_example,
}


def _emit(obj: dict, out: Optional[str]):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except (HyperEndoError, KeyError, TypeError, ValueError) as exc:
        kind = exc.kind if isinstance(exc, HyperEndoError) else type(exc).__name__
        _emit({"error": {"kind": kind, "detail": str(exc)}}, args.out)
        return 1
    _emit(result, args.out)
    if result.get("ok") is False or result.get("mismatches"):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
