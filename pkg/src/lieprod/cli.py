"""Command-line front end: ``python -m lieprod <command> ...``.

Exit status: 0 success, 1 a check failed, 2 bad usage or malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import catalog
from .derivations import cnla_check, derivation_space
from .exactlin import Subspace, format_rational, parse_rational
from .genprod import (
    AlgebraStats,
    corollary_bound,
    corollary_n,
    epsilon_min_n,
    power,
    power_stats,
    product_by_generators,
)
from .liecore import NotNilpotentError, invariants, validate
from .salgebra import factor_algebra, prop3_check, relations_check, s_algebra_certificate
from .verify import format_table, run_checks


class CheckFailed(Exception):
    pass


def _vec_json(vec: dict) -> dict:
    return {str(k + 1): format_rational(v) for k, v in sorted(vec.items())}


def _vec_text(vec: dict) -> str:
    terms = []
    for k, v in sorted(vec.items()):
        c = "" if v == 1 else "-" if v == -1 else format_rational(v) + " "
        terms.append(f"{c}X{k + 1}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _subspace_json(s: Subspace) -> dict:
    return {"dim": s.dim, "basis": [_vec_json(v) for v in s.basis]}


def _emit(args, data: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(data, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _stats_json(st) -> dict:
    return {
        "dim": st.dim,
        "center_dim": st.center_dim,
        "derived_dim": st.derived_dim,
        "generators": st.generators,
    }


# -- commands ---------------------------------------------------------------


def cmd_validate(args):
    g = catalog.resolve(args.alg)
    bad = validate(g)
    data = {
        "dim": g.dim,
        "jacobi_ok": not bad,
        "violations": [
            {"triple": list(v.triple), "value": {str(k): format_rational(c) for k, c in sorted(v.value.items())}} for v in bad[:20]
        ],
        "violation_count": len(bad),
    }
    text = f"dim {g.dim}: Jacobi " + ("ok" if not bad else f"FAILS on {len(bad)} triples")
    for rec in data["violations"]:
        text += f"\n  {tuple(rec['triple'])}: {rec['value']}"
    _emit(args, data, text)
    if bad:
        raise CheckFailed


def cmd_info(args):
    g = catalog.resolve(args.alg)
    inv = invariants(g)
    data = {
        "dim": g.dim,
        "labels": list(g.labels),
        "lower_central_dims": inv.series_dims,
        "nilindex": inv.nilindex,
        "center": _subspace_json(inv.center),
        "center_dim": inv.center.dim,
        "derived_dim": inv.derived.dim,
        "generator_indices": inv.generator_indices,
        "transporter": _subspace_json(inv.transporter),
        "transporter_dim": inv.transporter.dim,
    }
    text = "\n".join([
        f"dim {g.dim}",
        f"lower central series dims {inv.series_dims}",
        f"nilindex {inv.nilindex}",
        f"center dim {inv.center.dim}: " + ", ".join(_vec_text(v) for v in inv.center.basis),
        f"derived algebra dim {inv.derived.dim}",
        f"generators {['X%d' % i for i in inv.generator_indices]}",
        f"transporter dim {inv.transporter.dim}",
    ])
    _emit(args, data, text)


def _matrix_json(m) -> list:
    # columns D(X_l) as sparse vectors, 1-based
    return [_vec_json(col) for col in m.columns()]


def cmd_der(args):
    g = catalog.resolve(args.alg)
    der = derivation_space(g)
    data = {
        "algebra_dim": g.dim,
        "der_dim": der.dim,
        "basis": [_matrix_json(d) for d in der.basis],
    }
    lines = [f"dim Der = {der.dim} (algebra dim {g.dim})"]
    if not args.quiet:
        for k, d in enumerate(der.basis):
            images = ", ".join(
                f"X{l + 1} -> {_vec_text(col)}" for l, col in enumerate(d.columns()) if col
            )
            lines.append(f"  D{k + 1}: {images}")
    _emit(args, data, "\n".join(lines))


def cmd_cnla(args):
    g = catalog.resolve(args.alg)
    rep = cnla_check(g)
    text = "\n".join([
        f"characteristically nilpotent: {rep.is_cnla}",
        f"dim Der {rep.der_dim}",
        f"orbit dims {rep.orbit_dims}",
        f"Der lower central dims {rep.der_lcs_dims}",
        f"max nilpotency exponent {rep.max_derivation_nilpotency_exponent}",
    ])
    _emit(args, rep.to_json(), text)
    if not rep.is_cnla:
        raise CheckFailed


def cmd_salg(args):
    g = catalog.resolve(args.alg)
    cert = s_algebra_certificate(g)
    lines = [f"verdict {cert.verdict} (route {cert.route})",
             f"transporter inside C1: {cert.transporter_in_derived}"]
    if cert.transporter_witnesses:
        lines.append(f"transporter vectors outside C1: {['X%d' % i for i in cert.transporter_witnesses]}")
    for x, w in sorted(cert.per_generator.items()):
        lines.append(f"  X{x}: {w.to_json()}")
    _emit(args, cert.to_json(), "\n".join(lines))
    if not cert.certified:
        raise CheckFailed


def cmd_product(args):
    g1 = catalog.resolve(args.alg1)
    g2 = catalog.resolve(args.alg2)
    p, dec = product_by_generators(g1, g2)
    inv = invariants(p)
    if args.out:
        catalog.save_product(p, dec, args.out)
    data = {
        "dim": p.dim,
        "center_dim": inv.center.dim,
        "nilindex": inv.nilindex,
        "derived_dim": inv.derived.dim,
        "generators": len(inv.generator_indices),
        "decomposition": dec.to_json(),
        "out": args.out,
    }
    text = (
        f"product dim {p.dim}, center dim {inv.center.dim}, nilindex {inv.nilindex}, "
        f"derived dim {inv.derived.dim}, generators {len(inv.generator_indices)}"
    )
    if args.out:
        text += f"\nwritten to {args.out}"
    _emit(args, data, text)


def cmd_power(args):
    g = catalog.resolve(args.alg)
    h, _ = power(g, args.n)
    inv = invariants(h)
    if args.out:
        catalog.save(h, args.out)
    data = {"n": args.n, "dim": h.dim, "center_dim": inv.center.dim,
            "derived_dim": inv.derived.dim, "nilindex": inv.nilindex}
    _emit(args, data, f"power n={args.n}: dim {h.dim}, center dim {inv.center.dim}, "
                      f"derived dim {inv.derived.dim}, nilindex {inv.nilindex}")


def cmd_stats(args):
    g = catalog.resolve(args.alg)
    s = AlgebraStats.of(g)
    st = power_stats(s.dim, s.center_dim, s.derived_dim, s.generators, args.n)
    data = {"n": args.n, "algebra": _stats_json(s), **st.to_json()}
    text = (
        f"n={args.n}: dim {format_rational(st.dim)}, dim Z {format_rational(st.dimZ)}, "
        f"codim Z {format_rational(st.codimZ)}, non-central derived {format_rational(st.noncentral_derived)}, "
        f"codim Z / dim Z = {format_rational(st.ratio)}"
    )
    _emit(args, data, text)


def cmd_epsilon(args):
    g = catalog.resolve(args.alg)
    try:
        eps = parse_rational(args.eps)
    except ValueError as exc:
        raise UsageError(f"--eps: {exc}") from None
    if eps <= 0:
        raise UsageError("--eps must be positive")
    s = AlgebraStats.of(g)
    n = epsilon_min_n(s, eps, args.mode)
    data = {"epsilon": format_rational(eps), "mode": args.mode, "n": n}
    text = f"n = {n}"
    if args.mode == "derived":
        big_n = math.ceil(1 / eps)
        data["N"] = big_n
        data["bound"] = format_rational(corollary_bound(s, big_n))
        data["bound_n"] = corollary_n(s, big_n)
        text += f" (sufficient bound {data['bound_n']} for N = {big_n})"
    _emit(args, data, text)


def cmd_prop3(args):
    p, dec = catalog.load_product(args.file)
    rep = prop3_check(p, dec)
    fails = rep.failures()
    text = f"prop3: {'pass' if rep.passed else 'FAIL'} ({len(rep.results)} checks, {len(fails)} failures)"
    for k, name in fails[:20]:
        text += f"\n  derivation {k}: {name}"
    _emit(args, rep.to_json(), text)
    if not rep.passed:
        raise CheckFailed


def cmd_relations(args):
    p, dec = catalog.load_product(args.file)
    certs = [s_algebra_certificate(factor_algebra(p, dec, i)) for i in (1, 2)]
    if not all(c.certified for c in certs):
        data = {"passed": False, "refused": True, "factor_verdicts": [c.verdict for c in certs]}
        _emit(args, data, f"relations: refused, factor certificates {[c.verdict for c in certs]}")
        raise CheckFailed
    rep = relations_check(p, dec, certs, samples=args.samples, seed=args.seed)
    fails = rep.failures()
    lines = [f"relations: {'pass' if rep.passed else 'FAIL'} ({len(rep.results)} checks, {len(fails)} failures)",
             f"guard triggered: {rep.guard_triggered}",
             f"power bound exponent: {rep.power_bound_exponent}"]
    for k, v in rep.observations.items():
        lines.append(f"observed: {k}: {v}")
    for label, name in fails[:20]:
        lines.append(f"  {label}: {name}")
    _emit(args, rep.to_json(), "\n".join(lines))
    if not rep.passed:
        raise CheckFailed


def cmd_verify_paper(args):
    results = run_checks(extended=args.extended)
    data = {
        "passed": all(r.passed for r in results),
        "checks": [{"key": r.key, "claim": r.claim, "passed": r.passed, "detail": r.detail} for r in results],
    }
    _emit(args, data, format_table(results))
    if not data["passed"]:
        raise CheckFailed


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="lieprod", description="Exact products by generators of nilpotent Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help, *alg):
        sp = sub.add_parser(name, parents=[common], help=help)
        for a in alg:
            sp.add_argument(a, help="catalog name or structure-constant JSON file")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check antisymmetry and Jacobi", "alg")
    add("info", cmd_info, "lower central series, center, generators, transporter", "alg")
    sp = add("der", cmd_der, "derivation algebra", "alg")
    sp.add_argument("--quiet", action="store_true", help="dimension only in text output")
    add("cnla", cmd_cnla, "characteristic nilpotency", "alg")
    add("salg", cmd_salg, "S-algebra certificate", "alg")
    sp = add("product", cmd_product, "product by generators", "alg1", "alg2")
    sp.add_argument("--out", help="write the product with its decomposition")
    sp = add("power", cmd_power, "n-th power by generators", "alg")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--out", help="write the power as structure constants")
    sp = add("stats", cmd_stats, "closed-form dimensions of the n-th power", "alg")
    sp.add_argument("-n", type=int, required=True)
    sp = add("epsilon", cmd_epsilon, "smallest power with ratio below epsilon", "alg")
    sp.add_argument("--eps", required=True, help="rational p/q")
    sp.add_argument("--mode", choices=("center", "derived"), default="center")
    sp = sub.add_parser("prop3", parents=[common], help="derivation block checks on a product file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_prop3)
    sp = sub.add_parser("relations", parents=[common], help="S-algebra block relations on a product file")
    sp.add_argument("file")
    sp.add_argument("--samples", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_relations)
    sp = sub.add_parser("verify-paper", parents=[common], help="run the reproduction checks")
    sp.add_argument("--extended", action="store_true", help="include the large derivation solve")
    sp.set_defaults(func=cmd_verify_paper)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for attr in ("n",):
        if getattr(args, attr, 1) is not None and getattr(args, attr, 1) < 1:
            print(f"lieprod: error: -{attr} must be >= 1", file=sys.stderr)
            return 2
    try:
        args.func(args)
    except CheckFailed:
        return 1
    except (catalog.FormatError, KeyError, UsageError, NotNilpotentError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"lieprod {args.command}: error: {msg}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())
