import argparse
import sys
from collections import Counter
from fractions import Fraction

import numpy as np
import pandas as pd
from loguru import logger

from vecconf.arrangement.algebra.exactnum import rat
from vecconf.arrangement.domain import ParameterError, RelationReport, VecconfError
from vecconf.arrangement.faces import (
    dependency_patterns,
    dissection_patterns,
    f_matrix_of_patterns,
    f_polynomial,
    farkas_complement_oracle,
    fstar_matrix_of_patterns,
    matrix_to_dict,
    patterns_to_strings,
)
from vecconf.arrangement.gmatrix import (
    check_closed_form,
    check_contraction_deletion,
    check_g_polynomial_skew,
    check_gale_antisymmetry,
    check_skew,
    g_of_pair,
)
from vecconf.arrangement.motion import g_along, generic_path, motion_trace_json
from vecconf.arrangement.relations import (
    check_antipodal,
    check_dehn_sommerville,
    check_fstar_duality,
    check_pointed_duality,
    check_polytope_dehn_sommerville,
    check_totals,
    make_report,
)
from vecconf.arrangement.span import f_affine_span_rank, fstar_affine_span_rank, g_span_rank
from vecconf.arrangement.vectors import (
    VectorConfig,
    gen_cocyclic,
    gen_cyclic,
    gen_random,
    is_pointed,
    load_config,
    to_json,
)
from vecconf.config import PathConfig
from vecconf.utils import TemplateUtils, dumps_json, matrix_to_csv, write_text

SINGLE_RELATIONS = {
    "ds": check_dehn_sommerville,
    "antipodal": check_antipodal,
    "totals": check_totals,
    "duality": check_fstar_duality,
    "pointed-duality": check_pointed_duality,
    "polytope-ds": check_polytope_dehn_sommerville,
}
PAIR_RELATIONS = {
    "skew": check_skew,
    "contraction": lambda V, W: check_contraction_deletion(V, W, "contract"),
    "deletion": lambda V, W: check_contraction_deletion(V, W, "delete"),
    "gale-antisymmetry": check_gale_antisymmetry,
    "g-polynomial": check_g_polynomial_skew,
}
SIZE_RELATIONS = ("closed-form", "span-dim")
RELATIONS = (*SINGLE_RELATIONS, *PAIR_RELATIONS, *SIZE_RELATIONS)


def _params(text: str) -> list[Fraction]:
    try:
        return [rat(p.strip()) for p in text.split(",")]
    except ParameterError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _table(matrix: np.ndarray, row_label: str, col_label: str) -> str:
    df = pd.DataFrame(np.asarray(matrix, dtype=np.int64))
    df.index.name, df.columns.name = row_label, col_label
    return df.to_string()


def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "random":
        V = gen_random(args.n, args.r, args.seed, pointed=args.pointed)
    elif args.kind == "cyclic":
        V = gen_cyclic(args.n, args.r, args.params)
    else:
        V = gen_cocyclic(args.n, args.r, args.params)
    write_text(to_json(V), args.output)
    return 0


def cmd_faces(args: argparse.Namespace) -> int:
    V = load_config(args.config)
    patterns = dissection_patterns(V)
    f = f_matrix_of_patterns(patterns, V.n, V.d)
    if args.format == "csv":
        text = matrix_to_csv(f, row_label="s")
    elif args.format == "text":
        text = TemplateUtils(PathConfig.TEMPLATE_DIR / "faces.md").render(
            n=V.n, r=V.r, d=V.d, source=args.config,
            total=len(patterns),
            pointed=is_pointed(V),
            polynomial=f_polynomial(f).to_text(),
            rows=_table(f, "s", "t"),
        )
    else:
        data = matrix_to_dict(f, d=V.d, n=V.n)
        if args.patterns:
            data["patterns"] = patterns_to_strings(patterns)
        text = dumps_json(data)
    write_text(text, args.output)
    return 0


def cmd_fstar(args: argparse.Namespace) -> int:
    V = load_config(args.config)
    routes = {"gale": dependency_patterns, "farkas": farkas_complement_oracle}
    chosen = ["gale", "farkas"] if args.oracle == "both" else [args.oracle]
    found = {name: routes[name](V) for name in chosen}
    patterns = found[chosen[0]]
    status = 0
    if args.oracle == "both" and found["gale"] != found["farkas"]:
        logger.error(f"{args.config}: Gale-dual and Farkas dependency patterns disagree")
        status = 1
    fstar = fstar_matrix_of_patterns(patterns, V.n)
    if args.format == "csv":
        text = matrix_to_csv(fstar, row_label="s")
    else:
        data = matrix_to_dict(fstar, n=V.n, r=V.r)
        if args.patterns:
            data["patterns"] = patterns_to_strings(patterns)
        text = dumps_json(data)
    write_text(text, args.output)
    return status


def cmd_g(args: argparse.Namespace) -> int:
    V, W = load_config(args.source), load_config(args.target)
    status = 0
    if args.via == "motion":
        g = g_along(generic_path(V, W, args.perturb_seed))
    else:
        g = g_of_pair(V, W)
        if args.via == "both":
            moved = g_along(generic_path(V, W, args.perturb_seed))
            if moved != g:
                logger.error(f"motion g {moved.small().tolist()} differs from algebraic g {g.small().tolist()}")
                status = 1
    if args.format == "text":
        small = g.small()
        text = TemplateUtils(PathConfig.TEMPLATE_DIR / "gmatrix.md").render(
            n=g.n, r=g.r, source=args.source, target=args.target, via=args.via,
            j_max=small.shape[0] - 1, k_max=small.shape[1] - 1,
            small=_table(small, "j", "k"),
        )
    elif args.full:
        text = dumps_json(g.to_dict())
    else:
        text = dumps_json({"r": g.r, "n": g.n, "small": g.small().tolist()})
    write_text(text, args.output)
    return status


def cmd_motion(args: argparse.Namespace) -> int:
    V, W = load_config(args.source), load_config(args.target)
    path = generic_path(V, W, args.perturb_seed)
    if args.trace:
        text = motion_trace_json(path)
    else:
        types = Counter(f"{j},{k}" for j, k in (e.type for e in path.events))
        text = dumps_json({"mutations": len(path.events), "types": dict(types), "perturbed": path.end != W})
    write_text(text, args.output)
    return 0


def _span_report(args: argparse.Namespace):
    mode = "pointed" if args.pointed else "general"
    if args.target == "fstar":
        return fstar_affine_span_rank(args.n, args.r, args.samples, args.seed)
    if args.target == "f":
        return f_affine_span_rank(args.n, args.r, mode, args.samples, args.seed)
    return g_span_rank(args.n, args.r, mode, args.samples, args.seed)


def _verify_one(relation: str, configs: list[VectorConfig], args: argparse.Namespace) -> list[RelationReport]:
    if relation in SINGLE_RELATIONS:
        if not configs:
            raise ParameterError(f"relation {relation} needs at least one configuration")
        return [SINGLE_RELATIONS[relation](V) for V in configs]
    if relation in PAIR_RELATIONS:
        if len(configs) != 2:
            raise ParameterError(f"relation {relation} needs exactly two configurations, got {len(configs)}")
        return [PAIR_RELATIONS[relation](*configs)]
    if args.n is None or args.r is None:
        raise ParameterError(f"relation {relation} needs --n and --r")
    if relation == "closed-form":
        return [check_closed_form(args.n, args.r)]
    mode = "pointed" if args.pointed else "general"
    reports = [span(args.n, args.r, mode, args.samples, args.seed) for span in (g_span_rank, f_affine_span_rank)]
    witness = None
    for report in reports:
        if not report.structure_holds:
            witness = "a sampled g-matrix violates the skew-symmetries"
        elif not report.reached:
            witness = (f"{report.target}-span rank {report.achieved_rank} of {report.theoretical_dim} "
                       f"from {report.samples_used} samples")
        if witness:
            break
    return [make_report("span-dim", witness)]


def cmd_verify(args: argparse.Namespace) -> int:
    configs = [load_config(path) for path in args.configs]
    reports = [report for relation in args.relation for report in _verify_one(relation, configs, args)]
    write_text(dumps_json([r.to_dict() for r in reports]), args.output)
    failed = [r.name for r in reports if not r.holds]
    if failed:
        logger.error(f"{len(failed)} of {len(reports)} reports failed: {', '.join(failed)}")
        return 1
    logger.info(f"all {len(reports)} reports hold")
    return 0


def cmd_span(args: argparse.Namespace) -> int:
    write_text(dumps_json(_span_report(args).to_dict()), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vecconf", description="Face counts and g-matrices of vector configurations")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-o", "--output", default=None, help="output file, stdout when omitted")
        p.set_defaults(handler=handler)
        return p

    p = command("gen", cmd_gen, "generate a configuration")
    p.add_argument("--kind", choices=("cyclic", "cocyclic", "random"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--pointed", action="store_true", help="random kind only: lift integer points")
    p.add_argument("--params", type=_params, default=None, help="comma-separated moment-curve parameters")

    p = command("faces", cmd_faces, "f-matrix of a configuration")
    p.add_argument("config")
    p.add_argument("--patterns", action="store_true", help="include the dissection patterns (json only)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p = command("fstar", cmd_fstar, "f*-matrix of a configuration")
    p.add_argument("config")
    p.add_argument("--oracle", choices=("gale", "farkas", "both"), default="gale")
    p.add_argument("--patterns", action="store_true", help="include the dependency patterns (json only)")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = command("g", cmd_g, "g-matrix of a pair")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--via", choices=("algebraic", "motion", "both"), default="algebraic")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--full", action="store_true", help="json: the full matrix instead of the small one")
    p.add_argument("--perturb-seed", type=int, default=None)

    p = command("motion", cmd_motion, "mutations along a straight-line motion")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--trace", action="store_true", help="print every event instead of a summary")
    p.add_argument("--perturb-seed", type=int, default=None)

    p = command("verify", cmd_verify, "check relations, exit 1 if any fails")
    p.add_argument("configs", nargs="*")
    p.add_argument("--relation", choices=RELATIONS, action="append", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--pointed", action="store_true")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = command("span", cmd_span, "rank of the sampled g-, f- or f*-span")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--pointed", action="store_true")
    p.add_argument("--target", choices=("g", "f", "fstar"), default="g")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    return parser


def run(argv: list[str] | None = None) -> int:
    """Exit code: 0 success, 1 a relation or cross-check failed, 2 usage or input error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    if args.command == "gen" and args.pointed and args.kind != "random":
        logger.error("--pointed only applies to --kind random")
        return 2
    try:
        return args.handler(args)
    except (VecconfError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        return 2


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
