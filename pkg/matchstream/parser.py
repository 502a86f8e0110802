import argparse
from fractions import Fraction
from pathlib import Path

from matchstream._utils.filesystem import write_text_output
from matchstream._utils.logger import cli_logger
from matchstream._utils.shellart import bold_blue, bold_green, bold_white, bold_yellow
from matchstream.algorithms.multipass import MultipassConfig
from matchstream.algorithms.wgt_aug_paths import WapParams
from matchstream.commands.gen import GENERATORS, GeneratorSpec, generate_graph
from matchstream.commands.layered_dump import layered_for_pair_index, write_layered
from matchstream.commands.report import build_csv
from matchstream.commands.runners import (
    Report,
    render_report,
    run_multipass_report,
    run_oracle,
    run_random_arrival,
    run_unweighted,
)
from matchstream.config import Config
from matchstream.constants import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_EPS,
    DEFAULT_ITERS,
    DEFAULT_PAIR_CAP,
    DEFAULT_STALL_LIMIT,
    DEFAULT_UNWEIGHTED_BETA,
)
from matchstream.graph import Matching, WeightedGraph, read_graph_file
from matchstream.validation import (
    read_matching_file,
    validate_graph_path,
    validate_open_unit_interval,
    validate_output_path,
)

#
# Shared args
#


def add_graph_arg_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--graph",
        dest="graph",
        action="store",
        type=Path,
        required=True,
        help="Path to a graph file (header `n m`, then one `u v w` line per edge).",
    )


def add_graph_file_arg_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "graph",
        action="store",
        type=Path,
        help="Path to a graph file (header `n m`, then one `u v w` line per edge).",
    )


def add_seed_arg_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed",
        dest="seed",
        action="store",
        type=int,
        help="Unsigned 64-bit seed for every random choice (Defaults to 0).",
    )


def add_output_arg_to_parser(parser: argparse.ArgumentParser, help_msg: str) -> None:
    parser.add_argument(
        "--output", dest="output", action="store", type=Path, help=help_msg
    )


def add_json_arg_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--json",
        dest="json",
        action="store_true",
        help="Print the run report as a JSON document.",
    )


def add_verbose_arg_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--verbose",
        dest="verbose",
        action="store_true",
        help="Log per-phase progress from every algorithm.",
    )


def add_threads_arg_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--threads",
        dest="threads",
        action="store",
        type=int,
        help="Worker thread cap (Defaults to $MATCHSTREAM_THREADS, then the cpu count).",
    )


def add_memory_args_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--strict-memory",
        dest="strict_memory",
        action="store_true",
        help="Abort as soon as the stored edge count exceeds the memory budget.",
    )
    parser.add_argument(
        "--mem-c",
        dest="mem_c",
        action="store",
        type=float,
        help="Constant c of the memory budget c * n * log2(n)^k (Defaults to 8).",
    )
    parser.add_argument(
        "--mem-logk",
        dest="mem_logk",
        action="store",
        type=int,
        help="Exponent k of the memory budget c * n * log2(n)^k (Defaults to 2).",
    )


def add_oracle_budget_args_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--oracle-max-vertices",
        dest="oracle_max_vertices",
        action="store",
        type=int,
        help="Largest vertex count the exact oracle accepts (Defaults to 20).",
    )
    parser.add_argument(
        "--oracle-max-edges",
        dest="oracle_max_edges",
        action="store",
        type=int,
        help="Largest edge count the exact oracle accepts (Defaults to 64).",
    )


def add_with_oracle_arg_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--with-oracle",
        dest="with_oracle",
        action="store_true",
        help="Also solve the instance exactly and report the approximation ratio.",
    )


def add_run_args_to_parser(parser: argparse.ArgumentParser) -> None:
    add_graph_arg_to_parser(parser)
    add_seed_arg_to_parser(parser)
    add_json_arg_to_parser(parser)
    add_output_arg_to_parser(parser, "Write the JSON run report to this path.")
    add_memory_args_to_parser(parser)
    add_threads_arg_to_parser(parser)
    add_verbose_arg_to_parser(parser)


def load_graph(args: argparse.Namespace) -> WeightedGraph:
    validate_graph_path(args.graph)
    return read_graph_file(args.graph)


def emit_report(args: argparse.Namespace, report: Report, matching: Matching) -> None:
    document = render_report(report)
    if args.output:
        validate_output_path(args.output)
        write_text_output(args.output, document)
    if args.json:
        cli_logger.info(document.rstrip("\n"))
        return
    cli_logger.info(
        f"{bold_white(report['algorithm'])} on n={report['n']}, m={report['m']}: "
        f"matching of {bold_green(str(len(matching)))} edges "
        f"with weight {bold_green(str(matching.weight))}."
    )
    for key, value in report.items():
        if key in ("schema", "algorithm", "n", "m"):
            continue
        cli_logger.info(f"  {key}: {value}")
    if args.output:
        cli_logger.info(f"Run report written to {bold_blue(str(args.output))}.")


parser = argparse.ArgumentParser(description="matchstream")
matchstream_parser = parser.add_subparsers(help="CLI commands", dest="command")


#
# matchstream gen
#


def gen_cmd(args: argparse.Namespace) -> None:
    spec = GeneratorSpec(args.family, args.n, args.m, args.weight_max, Config(args).seed)
    graph = generate_graph(spec)
    if args.output:
        validate_output_path(args.output)
        write_text_output(args.output, graph.to_text())
        cli_logger.info(
            f"{bold_white(spec.family)} graph with n={graph.n}, m={graph.m} "
            f"written to {bold_blue(str(args.output))}."
        )
    else:
        cli_logger.info(graph.to_text().rstrip("\n"))


gen_parser = matchstream_parser.add_parser("gen", help="Generate a weighted graph file.")
gen_parser.add_argument(
    "--family",
    dest="family",
    action="store",
    choices=sorted(GENERATORS),
    required=True,
    help="Graph family to generate.",
)
gen_parser.add_argument(
    "--n", dest="n", action="store", type=int, required=True, help="Number of vertices."
)
gen_parser.add_argument(
    "--m",
    dest="m",
    action="store",
    type=int,
    default=0,
    help="Number of edges (random families only).",
)
gen_parser.add_argument(
    "--weight-max",
    dest="weight_max",
    action="store",
    type=int,
    help="Largest generated weight (Defaults to min(100, n^4)).",
)
add_seed_arg_to_parser(gen_parser)
add_output_arg_to_parser(gen_parser, "Write the graph file to this path.")
add_verbose_arg_to_parser(gen_parser)
gen_parser.set_defaults(func=gen_cmd)


#
# matchstream oracle
#


def oracle_cmd(args: argparse.Namespace) -> None:
    config = Config(args)
    graph = load_graph(args)
    matching, report = run_oracle(graph, config.oracle_budget)
    if args.json:
        emit_report(args, report, matching)
        return
    if args.output:
        validate_output_path(args.output)
        write_text_output(args.output, render_report(report))
    cli_logger.info(f"weight={matching.weight}")
    for edge in matching.edges:
        cli_logger.info(f"{edge.u} {edge.v} {edge.w}")


oracle_parser = matchstream_parser.add_parser(
    "oracle", help="Solve a small instance exactly by exhaustive search."
)
add_graph_file_arg_to_parser(oracle_parser)
add_json_arg_to_parser(oracle_parser)
add_output_arg_to_parser(oracle_parser, "Write the JSON run report to this path.")
add_oracle_budget_args_to_parser(oracle_parser)
add_verbose_arg_to_parser(oracle_parser)
oracle_parser.set_defaults(func=oracle_cmd)


#
# matchstream run-unweighted
#


def run_unweighted_cmd(args: argparse.Namespace) -> None:
    config = Config(args)
    graph = load_graph(args)
    validate_open_unit_interval("--p", args.p)
    matching, report = run_unweighted(graph, config, args.p, args.beta)
    emit_report(args, report, matching)


run_unweighted_parser = matchstream_parser.add_parser(
    "run-unweighted",
    help="One-pass unweighted matching over a random-order stream.",
)
add_run_args_to_parser(run_unweighted_parser)
run_unweighted_parser.add_argument(
    "--p",
    dest="p",
    action="store",
    type=Fraction,
    required=True,
    help="Fraction of the stream used to build the initial greedy matching.",
)
run_unweighted_parser.add_argument(
    "--beta",
    dest="beta",
    action="store",
    type=Fraction,
    default=DEFAULT_UNWEIGHTED_BETA,
    help="Parameter of the 3-augmenting path search (Defaults to 1/2).",
)
run_unweighted_parser.set_defaults(func=run_unweighted_cmd)


#
# matchstream run-random-arrival
#


def run_random_arrival_cmd(args: argparse.Namespace) -> None:
    config = Config(args)
    graph = load_graph(args)
    wap = WapParams.build(args.alpha, args.beta, args.small_class_threshold)
    matching, report = run_random_arrival(graph, config, args.p, wap, args.with_oracle)
    emit_report(args, report, matching)


run_random_arrival_parser = matchstream_parser.add_parser(
    "run-random-arrival",
    help="One-pass weighted matching over a random-order stream.",
)
add_run_args_to_parser(run_random_arrival_parser)
add_with_oracle_arg_to_parser(run_random_arrival_parser)
add_oracle_budget_args_to_parser(run_random_arrival_parser)
run_random_arrival_parser.add_argument(
    "--p",
    dest="p",
    action="store",
    type=Fraction,
    help="Fraction of the stream read in phase 1 (Defaults to 100/log2(n), within [1/m, 1/2]).",
)
run_random_arrival_parser.add_argument(
    "--alpha",
    dest="alpha",
    action="store",
    type=Fraction,
    default=DEFAULT_ALPHA,
    help="Filter slack of the 3-augmentation search (Defaults to 1/50).",
)
run_random_arrival_parser.add_argument(
    "--beta",
    dest="beta",
    action="store",
    type=Fraction,
    default=DEFAULT_BETA,
    help="Parameter of the per-class 3-augmenting path search (Defaults to 1/16000).",
)
run_random_arrival_parser.add_argument(
    "--small-class-threshold",
    dest="small_class_threshold",
    action="store",
    type=int,
    help="Classes with fewer marked edges are solved offline (Defaults to ceil(100/beta)).",
)
run_random_arrival_parser.set_defaults(func=run_random_arrival_cmd)


#
# matchstream run-multipass
#


def multipass_config_from_args(args: argparse.Namespace, seed: int) -> MultipassConfig:
    return MultipassConfig.build(
        eps=args.eps,
        g=args.g,
        k_max=args.k_max,
        iters=args.iters if "iters" in args else DEFAULT_ITERS,
        pair_cap=args.pair_cap,
        seed=seed,
        strict_constants=args.strict_constants,
        stall_limit=args.stall_limit if "stall_limit" in args else DEFAULT_STALL_LIMIT,
    )


def add_multipass_args_to_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--eps",
        dest="eps",
        action="store",
        type=Fraction,
        default=DEFAULT_EPS,
        help="Target loss eps (Defaults to 2/5).",
    )
    parser.add_argument(
        "--g",
        dest="g",
        action="store",
        type=Fraction,
        help="Threshold granularity (Defaults to 1/8; eps^12 with --paper-faithful).",
    )
    parser.add_argument(
        "--kmax",
        dest="k_max",
        action="store",
        type=int,
        help="Longest threshold sequence, i.e. the layer count (Defaults to 9).",
    )
    parser.add_argument(
        "--pair-cap",
        dest="pair_cap",
        action="store",
        type=int,
        default=DEFAULT_PAIR_CAP,
        help="Refuse to enumerate more threshold pairs than this.",
    )
    parser.add_argument(
        "--paper-faithful",
        "--strict-constants",
        dest="strict_constants",
        action="store_true",
        help="Use g = eps^12 and the full layer bound; needs eps < 1/16.",
    )


def run_multipass_cmd(args: argparse.Namespace) -> None:
    config = Config(args)
    graph = load_graph(args)
    cfg = multipass_config_from_args(args, config.seed)
    matching, report = run_multipass_report(graph, config, cfg, args.with_oracle)
    emit_report(args, report, matching)


run_multipass_parser = matchstream_parser.add_parser(
    "run-multipass",
    help="Multi-pass (1 - eps) weighted matching through layered graphs.",
)
add_run_args_to_parser(run_multipass_parser)
add_with_oracle_arg_to_parser(run_multipass_parser)
add_oracle_budget_args_to_parser(run_multipass_parser)
add_multipass_args_to_parser(run_multipass_parser)
run_multipass_parser.add_argument(
    "--iters",
    dest="iters",
    action="store",
    type=int,
    default=DEFAULT_ITERS,
    help="Largest number of improvement iterations (Defaults to 50).",
)
run_multipass_parser.add_argument(
    "--stall-limit",
    dest="stall_limit",
    action="store",
    type=int,
    default=DEFAULT_STALL_LIMIT,
    help="Stop after this many consecutive iterations without gain (Defaults to 1).",
)
run_multipass_parser.set_defaults(func=run_multipass_cmd)


#
# matchstream layered-dump
#


def layered_dump_cmd(args: argparse.Namespace) -> None:
    config = Config(args)
    graph = load_graph(args)
    matching = read_matching_file(args.matching, graph)
    cfg = multipass_config_from_args(args, config.seed)
    layered = layered_for_pair_index(graph, matching, args.pair_index, args.W, cfg)
    validate_output_path(args.output)
    sidecar = write_layered(layered, args.output)
    if layered.edge_count == 0:
        cli_logger.info(bold_yellow("No edge survives the thresholds of this pair at this W."))
    cli_logger.info(
        f"Layered graph with {bold_green(str(layered.k + 1))} layers, "
        f"{len(layered.nodes)} vertices and {layered.edge_count} edges "
        f"written to {bold_blue(str(args.output))} (origin map: {sidecar})."
    )


layered_dump_parser = matchstream_parser.add_parser(
    "layered-dump", help="Write the layered graph of one threshold pair."
)
add_graph_arg_to_parser(layered_dump_parser)
layered_dump_parser.add_argument(
    "--matching",
    dest="matching",
    action="store",
    type=Path,
    required=True,
    help="Path to the current matching, in the graph file format.",
)
layered_dump_parser.add_argument(
    "--pair-index",
    dest="pair_index",
    action="store",
    type=int,
    required=True,
    help="Index of the threshold pair in enumeration order.",
)
layered_dump_parser.add_argument(
    "--W", dest="W", action="store", type=Fraction, required=True, help="Weight scale W."
)
layered_dump_parser.add_argument(
    "--output",
    dest="output",
    action="store",
    type=Path,
    required=True,
    help="Path for the layered graph; the origin map goes next to it with an .origin suffix.",
)
add_seed_arg_to_parser(layered_dump_parser)
add_multipass_args_to_parser(layered_dump_parser)
add_verbose_arg_to_parser(layered_dump_parser)
layered_dump_parser.set_defaults(func=layered_dump_cmd)


#
# matchstream report
#


def report_cmd(args: argparse.Namespace) -> None:
    document = build_csv(args.reports)
    if args.output:
        validate_output_path(args.output)
        write_text_output(args.output, document)
        cli_logger.info(
            f"{len(args.reports)} run reports written to {bold_blue(str(args.output))}."
        )
    else:
        cli_logger.info(document.rstrip("\n"))


report_parser = matchstream_parser.add_parser(
    "report", help="Collect run reports into one CSV table."
)
report_parser.add_argument(
    "reports", action="store", type=Path, nargs="*", help="JSON run reports."
)
add_output_arg_to_parser(report_parser, "Write the CSV table to this path.")
add_verbose_arg_to_parser(report_parser)
report_parser.set_defaults(func=report_cmd)
