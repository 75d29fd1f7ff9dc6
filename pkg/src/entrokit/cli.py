"""Command-line interface.

One executable, one subcommand per pipeline.  File inputs are JSON; small
inputs can be given inline ("1,1,0,-1" for polynomials, "0,1;1,1" for
matrices, "a,b" for node sets).  Reports echo the inputs and carry the
result payload; --json emits the machine form (identical numbers, exact
values never degraded to floats).  Exit codes: 0 success, 2 invalid input,
3 numerical non-certification or blown budget.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .adjoint import adjoint_entropy_at, dichotomy_probe
from .errors import CertificationError, BudgetExceeded, EntrokitError, InputError
from .growth import family_from_spec, growth_exponent, growth_rate, growth_table
from .linalg import Lattice, RatMatrix, matrix_from_json
from .linear_entropy import LinearFlow, algebraic_entropy, topological_entropy, \
    trajectory_oracle
from .mahler import mahler_measure
from .polynomials import poly_from_json
from .search import SearchSpec, espectrum_sample, lehmer_search
from .set_maps import SymbolicSelfMap, covariant_entropy, contravariant_entropy, \
    cotrajectory_profile, validate
from .shifts import GeneralizedShiftSpec, adjoint_entropy_of_shift, \
    shift_algebraic_entropy, shift_bruteforce_oracle, shift_topological_entropy
from .values import EntropyValue


def _default_tol() -> float:
    return float(os.environ.get("ENTROKIT_TOL", "1e-12"))


def _load_json_or_inline(arg: str):
    path = Path(arg)
    if path.suffix == ".json" or path.exists():
        return json.loads(path.read_text())
    return None


def parse_poly(arg: str):
    obj = _load_json_or_inline(arg)
    if obj is not None:
        return poly_from_json(obj)
    return poly_from_json([c.strip() for c in arg.split(",")])


def parse_matrix(arg: str) -> RatMatrix:
    obj = _load_json_or_inline(arg)
    if obj is not None:
        return matrix_from_json(obj)
    rows = [[c.strip() for c in row.split(",")] for row in arg.split(";")]
    return RatMatrix([[Fraction(c) for c in row] for row in rows])


def parse_lattice(arg: str) -> Lattice:
    obj = _load_json_or_inline(arg)
    if obj is not None:
        cols = obj["columns"] if isinstance(obj, dict) else obj
    else:
        cols = [[c.strip() for c in col.split(",")] for col in arg.split(";")]
    return Lattice.from_columns([[int(str(x)) for x in col] for col in cols])


def parse_map(arg: str) -> SymbolicSelfMap:
    obj = _load_json_or_inline(arg)
    if obj is None:
        raise InputError("self-maps are JSON files (see the map schema)")
    return SymbolicSelfMap.from_json(obj)


def parse_nodes(arg: str):
    obj = _load_json_or_inline(arg)
    if obj is not None:
        return list(obj["nodes"] if isinstance(obj, dict) else obj)
    return [c.strip() for c in arg.split(",")]


def parse_vectors(arg: str):
    obj = _load_json_or_inline(arg)
    if obj is not None:
        vecs = obj["vectors"] if isinstance(obj, dict) else obj
        return [tuple(int(str(x)) for x in v) for v in vecs]
    return [tuple(int(c) for c in vec.split(",")) for vec in arg.split(";")]


def _count_json(x):
    return "infinity" if x == math.inf else int(x)


# ----------------------------------------------------------------------
# subcommand handlers: each returns (result_payload, human_lines)

def _cmd_mahler(args):
    value = mahler_measure(parse_poly(args.poly), args.tol)
    return {"value": value.to_json()}, [f"mahler measure: {value}"]


def _cmd_yuzvinski(args):
    matrix = parse_matrix(args.matrix)
    domain = args.domain
    if domain in ("zn", "qn", "rn"):
        flow = LinearFlow(domain, matrix)
        value = algebraic_entropy(flow, args.tol)
        label = "algebraic entropy"
    else:
        value = topological_entropy(LinearFlow("tn_dual", matrix), args.tol)
        label = "topological entropy (dual toral map)"
    return {"domain": domain, "value": value.to_json()}, [f"{label}: {value}"]


def _cmd_topological(args):
    matrix = parse_matrix(args.matrix)
    domain = "tn_dual" if args.domain == "tn" else args.domain
    value = topological_entropy(LinearFlow(domain, matrix), args.tol)
    return {"domain": args.domain, "value": value.to_json()}, \
        [f"topological entropy: {value}"]


def _cmd_padic(args):
    flow = LinearFlow.padic_scalar(args.p, Fraction(args.xi))
    value = algebraic_entropy(flow)
    return {"p": args.p, "xi": args.xi, "value": value.to_json()}, \
        [f"algebraic entropy of x -> ({args.xi})*x on Q_{args.p}: {value}"]


def _cmd_set_entropy(args):
    m = parse_map(args.map)
    problems = validate(m)
    if problems:
        raise InputError("; ".join(problems))
    h = covariant_entropy(m)
    h_star = contravariant_entropy(m)
    payload = {"h": _count_json(h), "h_star": _count_json(h_star)}
    return payload, [f"covariant entropy h = {h}",
                     f"contravariant entropy h* = {h_star}"]


def _cmd_cotrajectory(args):
    m = parse_map(args.map)
    profile = cotrajectory_profile(m, parse_nodes(args.set), args.horizon,
                                   budget=args.budget)
    payload = {
        "reduced_sizes": list(profile.reduced_sizes),
        "naive_sizes": list(profile.naive_sizes),
        "limit": _count_json(profile.limit),
    }
    return payload, [
        f"reduced cotrajectory sizes: {list(profile.reduced_sizes)}",
        f"naive cotrajectory sizes:   {list(profile.naive_sizes)}",
        f"exact limit h*(map, E) = {profile.limit}",
    ]


def _cmd_shift(args):
    m = parse_map(args.map)
    variant = "direct_sum" if args.variant == "sum" else "product"
    spec = GeneralizedShiftSpec(m, args.order, variant)
    if variant == "product":
        value = shift_topological_entropy(spec)
        label = "topological entropy of the product shift"
    else:
        value = shift_algebraic_entropy(spec)
        label = "algebraic entropy of the direct-sum shift"
    payload = {"variant": args.variant, "order": args.order, "value": value.to_json()}
    lines = [f"{label}: {value}"]
    if args.oracle:
        points = parse_nodes(args.oracle)
        report = shift_bruteforce_oracle(spec, points, args.horizon)
        payload["oracle_sizes"] = [str(s) for s in report.sizes]
        payload["oracle_ranks"] = list(report.ranks)
        adj = adjoint_entropy_of_shift(spec, points)
        payload["coordinate_adjoint"] = adj.to_json()
        lines.append(f"oracle subgroup sizes: {list(report.sizes)}")
        lines.append(f"coordinate-subgroup adjoint entropy: {adj}")
    return payload, lines


def _cmd_adjoint(args):
    report = adjoint_entropy_at(parse_matrix(args.matrix),
                                parse_lattice(args.lattice), args.horizon)
    payload = {
        "indices": [str(i) for i in report.indices],
        "alphas": [str(a) for a in report.alphas],
        "stationary_at": report.stationary_at,
        "certificate": report.certificate,
        "value": report.value.to_json(),
    }
    return payload, [
        f"cotrajectory indices: {list(report.indices)}",
        f"stationary at step {report.stationary_at} "
        f"(containment certificate: {report.certificate})",
        f"adjoint entropy: {report.value}",
    ]


def _cmd_adjoint_probe(args):
    probe = dichotomy_probe(parse_matrix(args.matrix), args.max_index,
                            budget=args.budget)
    payload = {
        "outcome": probe.outcome,
        "lattices_probed": probe.lattices_probed,
        "max_stabilization": probe.max_stabilization,
    }
    return payload, [
        f"probed {probe.lattices_probed} lattices of index <= {args.max_index}: "
        f"{probe.outcome} (worst stabilization step {probe.max_stabilization})",
    ]


def _cmd_growth(args):
    if args.gens != "standard":
        raise InputError("generating sets are chosen through the family spec "
                         "(e.g. free:2:standard+ab); --gens only takes 'standard'")
    family = family_from_spec(args.family)
    table = growth_table(family, args.horizon, budget=args.budget)
    payload = {"family": family.describe(), "gamma": list(table.gamma)}
    lines = [f"family: {family.describe()}",
             f"ball sizes gamma(0..{args.horizon}): {list(table.gamma)}"]
    if args.horizon >= 4:
        rate = growth_rate(table)
        payload["rate_estimate"] = rate.estimate
        payload["rate_fekete_min"] = rate.fekete_min
        lines.append(f"growth rate estimate: {rate.estimate:.6f} "
                     f"(Fekete upper bound {rate.fekete_min:.6f})")
    if args.horizon >= 8:
        exponent = growth_exponent(table)
        payload["exponent_estimate"] = \
            "infinity" if exponent == math.inf else exponent
        lines.append(f"growth exponent estimate: {exponent}")
    return payload, lines


def _cmd_lehmer(args):
    spec = SearchSpec(max_degree=args.max_degree, max_height=args.height,
                      monic_only=not args.non_monic, top=args.top,
                      budget=args.budget)
    result = lehmer_search(spec, workers=args.threads)
    payload = {
        "scanned": result.scanned_count,
        "zero_measures": result.zero_count,
        "quarantined": [list(c) for c in result.quarantined],
        "leaderboard": [
            {"measure": e.measure, "error": e.error, "coeffs": list(e.coeffs),
             "value": e.value.to_json()} for e in result.leaderboard],
    }
    lines = [f"scanned {result.scanned_count} symmetry classes, "
             f"{result.zero_count} with exactly zero measure"]
    for rank, e in enumerate(result.leaderboard, 1):
        lines.append(f"  #{rank}: m = {e.measure:.9f} (+/- {e.error:.2g})  "
                     f"coeffs {list(e.coeffs)}")
    return payload, lines


def _cmd_espectrum(args):
    report = espectrum_sample(args.dim, args.bound)
    minimal = report.minimal_positive
    payload = {
        "dimension": report.dimension,
        "entry_bound": report.entry_bound,
        "scanned": report.scanned,
        "distinct_values": sorted({round(v, 12) for v, _ in report.values}),
        "minimal_positive": minimal.to_json() if minimal else None,
    }
    lines = [f"scanned {report.scanned} matrices",
             f"distinct entropy values: {payload['distinct_values']}",
             f"minimal positive value: {minimal if minimal else 'none'}"]
    return payload, lines


def _cmd_oracle(args):
    profile = trajectory_oracle(parse_matrix(args.matrix),
                                parse_vectors(args.set), args.horizon,
                                budget=args.budget)
    payload = {
        "sizes": list(profile.sizes),
        "estimate": profile.estimate,
        "fekete_upper_bound": profile.fekete_upper,
    }
    return payload, [
        f"sumset sizes: {list(profile.sizes)}",
        f"entropy estimate (last-step quotient): {profile.estimate:.6f}",
        f"Fekete upper bound: {profile.fekete_upper:.6f}",
    ]


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrokit",
        description="dynamical entropies: Mahler measures, linear and "
                    "symbolic systems, lattice cotrajectories, group growth")
    parser.add_argument("--json", action="store_true",
                        help="emit the machine-readable report")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true",
                       help="emit the machine-readable report")
        p.add_argument("--tol", type=float, default=_default_tol(),
                       help="root certification tolerance")
        p.add_argument("--budget", type=int, default=5_000_000,
                       help="element budget for enumerations")
        return p

    p = add("mahler", _cmd_mahler, help="Mahler measure of a polynomial")
    p.add_argument("--poly", required=True)

    p = add("yuzvinski", _cmd_yuzvinski,
            help="entropy of a linear endomorphism via its characteristic polynomial")
    p.add_argument("--matrix", required=True)
    p.add_argument("--domain", choices=["zn", "qn", "rn", "tn"], default="zn")

    p = add("topological", _cmd_topological,
            help="topological entropy on R^n or the dual toral map")
    p.add_argument("--matrix", required=True)
    p.add_argument("--domain", choices=["rn", "tn"], default="tn")

    p = add("padic", _cmd_padic, help="entropy of a p-adic scalar map")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--xi", required=True)

    p = add("set-entropy", _cmd_set_entropy,
            help="covariant and contravariant set-theoretic entropies")
    p.add_argument("--map", required=True)

    p = add("cotrajectory", _cmd_cotrajectory,
            help="backward cotrajectory profile of a node set")
    p.add_argument("--map", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--horizon", type=int, default=12)

    p = add("shift", _cmd_shift, help="entropies of a generalized shift")
    p.add_argument("--map", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--variant", choices=["sum", "prod"], required=True)
    p.add_argument("--oracle", help="node set for the GF(p) subgroup oracle")
    p.add_argument("--horizon", type=int, default=8)

    p = add("adjoint", _cmd_adjoint,
            help="adjoint entropy of an integer matrix at a lattice")
    p.add_argument("--matrix", required=True)
    p.add_argument("--lattice", required=True)
    p.add_argument("--horizon", type=int, default=64)

    p = add("adjoint-probe", _cmd_adjoint_probe,
            help="probe all lattices up to an index bound")
    p.add_argument("--matrix", required=True)
    p.add_argument("--max-index", type=int, required=True)

    p = add("growth", _cmd_growth, help="growth function of a group family")
    p.add_argument("--family", required=True,
                   help="abelian:D | free:K[:standard+ab] | heisenberg | product:...")
    p.add_argument("--gens", default="standard",
                   help="generating set (families define their standard set)")
    p.add_argument("--horizon", type=int, default=10)

    p = add("lehmer", _cmd_lehmer, help="search for small positive Mahler measures")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--height", type=int, default=1)
    p.add_argument("--top", type=int, default=5)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--non-monic", action="store_true")

    p = add("espectrum", _cmd_espectrum,
            help="entropy values over a box of integer matrices")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)

    p = add("oracle", _cmd_oracle, aliases=["trajectory"],
            help="exact sumset trajectory oracle on Z^n")
    p.add_argument("--matrix", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--horizon", type=int, default=12)

    return parser


def _echo_inputs(args) -> dict:
    skip = {"handler", "subcommand", "json"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def dispatch(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        payload, lines = args.handler(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CertificationError, BudgetExceeded) as exc:
        print(f"not certified: {exc}", file=sys.stderr)
        return 3
    except EntrokitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {
        "subcommand": args.subcommand,
        "inputs": _echo_inputs(args),
        "result": payload,
        "timing_ms": round(1000 * (time.perf_counter() - started), 3),
    }
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
