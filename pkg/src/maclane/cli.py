"""Command-line surface: eval, polygon, kp check, defect, scenario, selftest.

JSON outputs are canonical (sorted keys, two-space indent) so repeated runs
are byte-identical.  Computation errors exit 1 with a JSON payload on stderr;
usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import sampling
from .defect import defect_formula
from .keypoly import key_check
from .limits import less_on_basis, test_basis
from .newton import (NewtonPolygon, lower_hull, polygon, polygon_add,
                     principal, render_ascii, render_svg)
from .polyval import Poly
from .scenarios import (ALIASES, SchemaError, available, canonical_json,
                        get_scenario, load, load_chain, run as run_scenario)


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _load_chain_arg(path: str, window: int = 3):
    field, built = load_chain(path, window)
    return field, built.valuation


def cmd_eval(args) -> int:
    field, chain = _load_chain_arg(args.chain)
    poly = Poly.parse(field, args.poly)
    value = chain.evaluate(poly)
    if args.format == "json":
        print(_dump({"poly": str(poly), "value": value.to_json()}))
    else:
        print(value)
    return 0


def cmd_polygon(args) -> int:
    field, chain = _load_chain_arg(args.chain)
    poly = Poly.parse(field, args.poly)
    phi = Poly.parse(field, args.phi) if args.phi else chain.top_phi
    N = polygon(chain, phi, poly)
    if args.principal:
        N = principal(N, chain.evaluate(phi))
    if args.format == "svg":
        out = render_svg(N)
    elif args.format == "json":
        out = _dump(N.to_json())
    else:
        out = render_ascii(N)
    if args.out:
        import os
        os.makedirs(args.out, exist_ok=True)
        ext = "svg" if args.format == "svg" else (
            "json" if args.format == "json" else "txt")
        path = os.path.join(args.out, f"polygon.{ext}")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out if out.endswith("\n") else out + "\n")
        print(path)
    else:
        print(out, end="" if out.endswith("\n") else "\n")
    return 0


def cmd_kp(args) -> int:
    field, chain = _load_chain_arg(args.chain)
    poly = Poly.parse(field, args.poly)
    report = key_check(chain, poly)
    body = {
        "poly": str(poly),
        "minimal": report["minimal"],
        "screen": report["screen"],
    }
    if report["minimal"]:
        body["degmu"] = chain.deg_mu(poly)
        body["S"] = list(chain.s_set(poly))
    print(_dump(body))
    return 0


def cmd_defect(args) -> int:
    if args.scenario:
        sc = get_scenario(args.scenario, p=args.p, horizon=args.horizon)
        result = run_scenario(sc)
        report = result.reports[0]
        chain_line = result.report["chains"][0]
    elif args.chain:
        field, chain = _load_chain_arg(args.chain)
        report = defect_formula(chain, allow_mid_chain=args.allow_mid_chain)
        chain_line = str(chain)
    else:
        print("defect: need --chain or --scenario", file=sys.stderr)
        return 2
    if args.format == "json":
        print(_dump(report.to_json()))
        return 0
    print(f"chain: {chain_line}")
    print(f"{'step':<6}{'kind':<10}{'deg':<8}{'t-deg':<7}"
          f"{'e(prev)':<9}{'f':<4}{'d':<4}stabilized")
    for i, s in enumerate(report.steps, start=1):
        stab = "-" if s.stabilization_index is None else f"@{s.stabilization_index}"
        print(f"{i:<6}{s.kind:<10}{s.deg_before}->{s.deg_after:<5}"
              f"{s.tangent_degree:<7}{s.e_before:<9}{s.f:<4}{s.d:<4}{stab}")
    print(f"totals: d = {report.d_total}, e = {report.e_total}, "
          f"f = {report.f_total}, efd = {report.efd}")
    return 0


def cmd_scenario(args) -> int:
    if args.action == "list":
        for name, alias, desc in available():
            alias_txt = f" (alias {alias})" if alias else ""
            print(f"{name}{alias_txt}\n    {desc}")
        return 0
    name = args.name
    if name is None:
        print("scenario run: missing scenario name or path", file=sys.stderr)
        return 2
    if name.endswith(".json"):
        sc = load(name)
    else:
        sc = get_scenario(name, p=args.p, horizon=args.horizon)
    result = run_scenario(sc, out_dir=args.out)
    print(result.chain_text)
    for check in result.checks:
        mark = "pass" if check.ok else "FAIL"
        print(f"[{mark}] {check.name}: {check.detail}")
    for note in result.assumptions:
        print(f"[assume] {note}")
    if args.out:
        print(f"report written to {args.out}")
    return 0 if result.ok else 1


def _selftest_checks(seed: int):
    rng = random.Random(seed)
    yield from _selftest_axioms(rng)
    yield from _selftest_newton(rng)
    yield from _selftest_minimality(rng)
    yield from _selftest_scenarios()


def _selftest_axioms(rng, pairs: int = 60):
    for label, field, chain in sampling.all_fixtures():
        ok = True
        detail = ""
        for _ in range(pairs):
            f = sampling.random_poly(field, rng, 4)
            g = sampling.random_poly(field, rng, 4)
            prod = chain.evaluate(f * g)
            expect = chain.evaluate(f) + chain.evaluate(g)
            if prod != expect:
                ok, detail = False, f"mult fails at f={f}, g={g}"
                break
            s = chain.evaluate(f + g)
            lo = min(chain.evaluate(f), chain.evaluate(g))
            if not (s.is_infinite or s >= lo):
                ok, detail = False, f"ultrametric fails at f={f}, g={g}"
                break
        yield f"valuation-axioms[{label}]", ok, detail


def _selftest_newton(rng, pairs: int = 40):
    for label, field, chain in sampling.all_fixtures():
        phi = chain.top_phi
        cutoff = chain.gamma
        ok = True
        detail = ""
        for _ in range(pairs):
            g = sampling.random_poly(field, rng, 3 * max(phi.degree, 1))
            h = sampling.random_poly(field, rng, 3 * max(phi.degree, 1))
            lhs = principal(polygon(chain, phi, g * h), cutoff)
            rhs = polygon_add(principal(polygon(chain, phi, g), cutoff),
                              principal(polygon(chain, phi, h), cutoff))
            if lhs.vertices != rhs.vertices:
                ok, detail = False, f"additivity fails at g={g}, h={h}"
                break
            if principal(polygon(chain, phi, g), cutoff).length != \
                    min(chain.s_set(g)):
                ok, detail = False, f"length identity fails at g={g}"
                break
        yield f"newton-additivity[{label}]", ok, detail


def _selftest_minimality(rng, count: int = 40):
    from .keypoly import is_minimal
    for label, field, chain in sampling.all_fixtures():
        ok = True
        detail = ""
        for _ in range(count):
            f = sampling.random_poly(field, rng, 4)
            lhs = is_minimal(chain, f) if not f.is_constant else None
            if lhs is None:
                continue
            rhs = f.degree == chain.deg_mu(f) * chain.deg
            if lhs != rhs:
                ok, detail = False, f"minimality mismatch at f={f}"
                break
        yield f"minimality[{label}]", ok, detail


def _selftest_scenarios():
    specs = [("9.2c1", {"p": 2, "horizon": 4}),
             ("9.2c2", {"p": 3, "horizon": 4}),
             ("9.3", {"p": 5, "horizon": 6})]
    for name, params in specs:
        result = run_scenario(get_scenario(name, **params))
        detail = "; ".join(f"{c.name}: {'ok' if c.ok else 'FAIL'}"
                           for c in result.checks)
        yield f"scenario[{name}]", result.ok, detail


def cmd_selftest(args) -> int:
    seed = args.seed if args.seed is not None else sampling.seed_from_env()
    failures = 0
    for name, ok, detail in _selftest_checks(seed):
        mark = "pass" if ok else "FAIL"
        suffix = f" ({detail})" if detail and not ok else ""
        print(f"[{mark}] {name}{suffix}")
        failures += 0 if ok else 1
    print(f"selftest: {'ok' if failures == 0 else f'{failures} failure(s)'} "
          f"(seed {seed})")
    return 0 if failures == 0 else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maclane",
        description="Augmentation chains, Newton polygons and defects over "
                    "computable valued fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a chain on a polynomial")
    p_eval.add_argument("--chain", required=True)
    p_eval.add_argument("--poly", required=True)
    p_eval.add_argument("--format", choices=["text", "json"], default="text")
    p_eval.set_defaults(func=cmd_eval)

    p_poly = sub.add_parser("polygon", help="Newton polygon of an expansion")
    p_poly.add_argument("--chain", required=True)
    p_poly.add_argument("--poly", required=True)
    p_poly.add_argument("--phi", default=None,
                        help="expansion pivot (default: the chain's top key)")
    p_poly.add_argument("--principal", action="store_true",
                        help="keep only sides below minus the pivot value")
    p_poly.add_argument("--format", choices=["text", "json", "svg"],
                        default="text")
    p_poly.add_argument("--out", default=None)
    p_poly.set_defaults(func=cmd_polygon)

    p_kp = sub.add_parser("kp", help="key-polynomial predicates")
    kp_sub = p_kp.add_subparsers(dest="action", required=True)
    p_kp_check = kp_sub.add_parser("check", help="screen a candidate key")
    p_kp_check.add_argument("--chain", required=True)
    p_kp_check.add_argument("--poly", required=True)
    p_kp_check.set_defaults(func=cmd_kp)

    p_def = sub.add_parser("defect", help="defect formula over a chain")
    p_def.add_argument("--chain", default=None)
    p_def.add_argument("--scenario", default=None)
    p_def.add_argument("--p", type=int, default=None)
    p_def.add_argument("--horizon", type=int, default=None)
    p_def.add_argument("--allow-mid-chain", action="store_true")
    p_def.add_argument("--format", choices=["text", "json"], default="text")
    p_def.set_defaults(func=cmd_defect)

    p_sc = sub.add_parser("scenario", help="run or list scenario bundles")
    sc_sub = p_sc.add_subparsers(dest="action", required=True)
    p_sc_run = sc_sub.add_parser("run", help="build, probe, check, report")
    p_sc_run.add_argument("name", help="catalog name, alias, or a .json path")
    p_sc_run.add_argument("--out", default=None)
    p_sc_run.add_argument("--p", type=int, default=None)
    p_sc_run.add_argument("--horizon", type=int, default=None)
    p_sc_run.set_defaults(func=cmd_scenario)
    p_sc_list = sc_sub.add_parser("list", help="available scenarios")
    p_sc_list.set_defaults(func=cmd_scenario, name=None)

    p_self = sub.add_parser("selftest", help="run the invariant suite headlessly")
    p_self.add_argument("--seed", type=int, default=None)
    p_self.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(json.dumps({"error": "schema", "detail": str(exc)}),
              file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
