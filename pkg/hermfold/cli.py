import argparse
import logging
import math
import sys
from fractions import Fraction

import numpy as np
import pandas as pd

from hermfold import results_store
from hermfold.acceptance import run_acceptance
from hermfold.config import DEFAULT_DISTANCE_BUDGET, DEFAULT_ENUMERATION_BUDGET, OUTPUT_FORMATS, TABLE1_ROWS, RunConfig
from hermfold.decode_verify import list_size_profile, quantum_list_profile, run_trials, product_bound_check
from hermfold.folding import (
    chains_report,
    default_automorphism,
    fold_dual_commutes,
    fold_hermitian,
    make_automorphism,
    orbit_chains,
)
from hermfold.hermitian_curve import curve_create, points_report
from hermfold.linear_code import (
    dual_matches_formula,
    duality_degrees,
    evaluation_code,
    export_matrix,
    herm_dual_degree,
    min_distance,
    write_matrix,
)
from hermfold.quantum_params import alphabet_size, ea_params, fqhc_construct, table1, table1_frame, table1_records

log = logging.getLogger(__name__)


class VerificationFailed(Exception):
    """A check ran to completion and did not hold."""


def build_parser():
    parser = argparse.ArgumentParser(prog="hermfold", description="Folded quantum Hermitian codes at desk scale.")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="text", help="human tables or one record per line")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    parser.add_argument("--store", metavar="URL", help="persist table1/verify-all results to this database")
    parser.add_argument("--distance-budget", type=int, default=DEFAULT_DISTANCE_BUDGET)
    parser.add_argument("--enumeration-budget", type=int, default=DEFAULT_ENUMERATION_BUDGET)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("points", help="affine points of the Hermitian curve")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("code", help="one-point code C(D, rP_inf)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--export-matrix", metavar="PATH")

    p = sub.add_parser("dual-check", help="dual(C(D, rP_inf)) against C(D, alpha P_inf)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, help="single degree instead of the whole sweep")

    p = sub.add_parser("fold", help="fold a one-point code along sigma-orbit chains")
    _folding_args(p, single=True)

    p = sub.add_parser("fqhc", help="folded quantum Hermitian code parameters")
    _folding_args(p)
    p.add_argument("--exact-distance-budget", type=int, help="override --distance-budget for set-difference weights")

    p = sub.add_parser("table1", help="reproduce the folded Hermitian parameter table")
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--level", choices=("matrix", "formula"), help="default: matrix below q=16")

    p = sub.add_parser("ea", help="entanglement-assisted parameters of two folded codes")
    _folding_args(p)

    p = sub.add_parser("listdecode", help="maximum list size of a folded code")
    _folding_args(p, single=True)
    radius = p.add_mutually_exclusive_group(required=True)
    radius.add_argument("--radius", type=int, nargs="+")
    radius.add_argument("--tau", type=Fraction, help="relative radius, converted to floor(tau*N)")
    p.add_argument("--mode", choices=("exhaustive", "coset", "sampled"), default="exhaustive")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("qdecode", help="quantum list decoding of a folded CSS code")
    _folding_args(p)
    p.add_argument("--radius", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--all-syndromes", action="store_true")
    mode.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--weight", type=int, help="planted error weight, default the radius")

    p = sub.add_parser("verify-all", help="run every acceptance check")
    p.add_argument("--extended", action="store_true", help="include the q=16 full-rank confirmation")
    return parser


def _automorphism_param(value):
    """`auto` defers to the default automorphism."""
    return None if value == "auto" else int(value)


def _folding_args(p, single=False):
    p.add_argument("--q", type=int, required=True)
    if single:
        p.add_argument("--r", type=int, required=True)
    else:
        p.add_argument("--r1", type=int, required=True)
        p.add_argument("--r2", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument(
        "--delta", type=_automorphism_param, help="sigma parameter or 'auto'; default picks the first valid automorphism"
    )
    p.add_argument("--mu", type=_automorphism_param, help="sigma parameter or 'auto'")


def _sigma(curve, args):
    if args.delta is None and args.mu is None:
        return default_automorphism(curve, args.m)
    if args.delta is None or args.mu is None:
        raise ValueError("--delta and --mu must be given together")
    return make_automorphism(curve, args.delta, args.mu)


def _chains(args):
    curve = curve_create(args.q)
    sigma = _sigma(curve, args)
    return curve, sigma, orbit_chains(sigma, curve, args.m)


def cmd_points(args, config):
    print(points_report(curve_create(args.q)))


def cmd_code(args, config):
    code = evaluation_code(curve_create(args.q), args.r)
    if args.export_matrix:
        write_matrix(code, args.export_matrix)
    if config.output_format == "records":
        print(export_matrix(code), end="")
        return
    distance = min_distance(code, config.distance_budget)
    print(f"{code.label} over {code.field}: [{code.n}, {code.k}, {distance}] ({distance.method})")


def cmd_dual_check(args, config):
    curve = curve_create(args.q)
    degrees = [args.r] if args.r is not None else duality_degrees(args.q)
    failed = []
    for r in degrees:
        ok = dual_matches_formula(curve, r)
        print(f"r={r} alpha={herm_dual_degree(args.q, r)} {'pass' if ok else 'FAIL'}")
        if not ok:
            failed.append(r)
    if failed:
        raise VerificationFailed(f"duality fails for r in {failed}")


def cmd_fold(args, config):
    curve, sigma, chains = _chains(args)
    fc = fold_hermitian(curve, args.r, chains)
    if config.output_format == "records":
        k = Fraction(fc.dimension)
        d = fc.designed_distance
        print(f"{fc.N} {k.numerator} {k.denominator} {d if d is not None else '?'}")
        print(chains_report(chains))
        return
    print(f"{sigma}, m={chains.m}: {chains.N} chains")
    print(chains_report(chains))
    print(f"{fc.code.label} folded: {fc}")
    ok = fold_dual_commutes(fc)
    print(f"fold commutes with dual: {ok}")
    if not ok:
        raise VerificationFailed("folded dual differs from the fold of the dual")


def cmd_fqhc(args, config):
    curve = curve_create(args.q)
    sigma = _sigma(curve, args)
    budget = args.exact_distance_budget or config.distance_budget
    css, params = fqhc_construct(args.q, args.r1, args.r2, args.m, sigma=sigma, budget=budget)
    if config.output_format == "records":
        k = Fraction(css.k)
        print(f"{args.q} {args.m} {css.N} {k.numerator} {k.denominator} {css.folded_bound.value}")
    else:
        print(f"{sigma}: {params}")
        print(f"  alphabet size q^(2m) = {alphabet_size(args.q, args.m)}")
        print(f"  C1 = {css.c1.code.label} folded {css.c1}, C2 = {css.c2.code.label} folded {css.c2}")
        print(f"  min-distance bound: ≥{css.folded_bound.value} ({css.folded_bound.provenance})")
        print(f"  unfolded distance: {css.unfolded_distance} ({css.unfolded_distance.provenance})")
        print(f"  folded distance: {css.distance} ({css.distance.provenance})")
        for name, ok in css.checks.items():
            print(f"  {name}: {'pass' if ok else 'FAIL'}")
    if not all(css.checks.values()):
        raise VerificationFailed("construction checks failed")


def cmd_table1(args, config):
    rows = [(q, m) for q, m in TABLE1_ROWS if args.q in (None, q) and args.m in (None, m)]
    if not rows:
        raise ValueError(f"unknown table row q={args.q}, m={args.m}")
    frame = table1_frame(
        [table1(q, m, level=args.level or ("formula" if q == 16 else "matrix"), budget=config.distance_budget) for q, m in rows]
    )
    if config.store_url:
        results_store.save_table1_rows(frame, config.store_url)
    if config.output_format == "records":
        print(table1_records(frame))
    else:
        print(frame[["q", "m", "alphabet", "classical", "quantum", "level", "matches_published"]].to_string(index=False))
    if not frame["matches_published"].all():
        raise VerificationFailed("table rows differ from the published values")


def cmd_ea(args, config):
    curve, sigma, chains = _chains(args)
    c1 = fold_hermitian(curve, args.r1, chains)
    c2 = c1 if args.r2 == args.r1 else fold_hermitian(curve, args.r2, chains)
    params = ea_params(c1, c2, config.distance_budget)
    print(f"{params} (case: {params.case}, d_EA {params.distance.provenance})")


def cmd_listdecode(args, config):
    curve, sigma, chains = _chains(args)
    fc = fold_hermitian(curve, args.r, chains)
    radii = args.radius if args.radius is not None else [math.floor(args.tau * fc.N)]
    budget = config.distance_budget if args.mode == "exhaustive" else config.enumeration_budget
    profile = list_size_profile(fc, radii, mode=args.mode, trials=args.trials, seed=config.seed, budget=budget)
    if config.output_format == "records":
        for _, row in profile.iterrows():
            print(f"{row['radius']} {row['max_list_size']} {row['mode']}")
    else:
        profile["L"] = np.where(profile["certified"], "L", "lower bound on L")
        print(f"{fc.code.label} folded by {sigma}: {fc}")
        print(profile.to_string(index=False))


def cmd_qdecode(args, config):
    curve = curve_create(args.q)
    sigma = _sigma(curve, args)
    css, _ = fqhc_construct(args.q, args.r1, args.r2, args.m, sigma=sigma, budget=config.distance_budget)
    if args.all_syndromes:
        result = product_bound_check(css, args.radius, config.enumeration_budget)
        pairs = quantum_list_profile(css, args.radius, config.enumeration_budget)
        print(
            f"{css}: {len(pairs)} reachable syndrome pairs, largest quantum list {result['quantum_max']} "
            f"<= L1*L2 = {result['L1']}*{result['L2']}"
        )
        if not result["holds"]:
            raise VerificationFailed("quantum list exceeds the classical product bound")
        return
    weight = args.radius if args.weight is None else args.weight
    trials = run_trials(css, [weight], args.trials, seed=config.seed, radius=args.radius, budget=config.enumeration_budget)
    if config.output_format == "records":
        for _, row in trials.iterrows():
            print(f"{row['seed']} {row['weight']} {row['list_size']} {int(row['recovered'])}")
    else:
        print(trials.to_string(index=False))


def cmd_verify_all(args, config):
    frame = run_acceptance(extended=args.extended)
    if config.store_url:
        results_store.save_check_results(frame, config.store_url)
    if config.output_format == "records":
        for _, row in frame.iterrows():
            print(f"{row['name'].replace(' ', '_')} {int(row['passed'])} {row['seconds']}")
    else:
        with pd.option_context("display.max_colwidth", 120):
            print(frame.to_string(index=False))
    if not frame["passed"].all():
        raise VerificationFailed(f"{int((~frame['passed']).sum())} checks failed")


COMMANDS = {
    "points": cmd_points,
    "code": cmd_code,
    "dual-check": cmd_dual_check,
    "fold": cmd_fold,
    "fqhc": cmd_fqhc,
    "table1": cmd_table1,
    "ea": cmd_ea,
    "listdecode": cmd_listdecode,
    "qdecode": cmd_qdecode,
    "verify-all": cmd_verify_all,
}


def run(argv=None):
    """Parse arguments, run one subcommand and return the exit code.

    Returns:
        0 on success, 1 when a verification fails, 2 on usage errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    try:
        config = RunConfig(
            subcommand=args.subcommand,
            distance_budget=args.distance_budget,
            enumeration_budget=args.enumeration_budget,
            output_format=args.format,
            seed=getattr(args, "seed", 0),
            store_url=args.store,
        ).validate()
        log.debug("running %s with %s", config.subcommand, config)
        COMMANDS[args.subcommand](args, config)
    except VerificationFailed as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
