"""
procmine command-line interface.

Subcommands wire ingestion, algorithms and reports together:

    procmine convert  --input log.xes --output log.csv
    procmine discover --algorithm alpha --input log.xes --model-out net.json --dot-out net.dot
    procmine conform  --method alignment --input log.xes --model net.json
    procmine evaluate --input log.xes --model net.json
    procmine filter   --kind variants --top-k 3 --input log.xes --output top.xes
    procmine stats    --input log.xes --kind summary
    procmine sna      --metric handover --input log.xes --dot-out handover.dot
    procmine render   --what petri --input net.json --dot-out net.dot

Data goes to stdout or files; diagnostics go to stderr. Exit codes: 0 success,
1 usage error, 2 data error, 3 algorithm error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from src.analytics import (
    SNAMetric,
    TimeSeriesKind,
    attribute_distribution,
    case_statistics,
    filter_log,
    parse_filter,
    sna,
    split_variant_key,
    time_series,
)
from src.analytics.graphs import Histogram
from src.config import Settings
from src.conformance import AlignmentCosts, align, format_alignment, token_replay
from src.discovery import VARIANTS, discover, discover_dfg, discover_imdf
from src.errors import InvalidParameterError, ProcmineError, UsageError
from src.eventlog import Classifier, EventLog, format_value, sort_by_timestamp
from src.evaluation import FitnessMethod, evaluate
from src.ingest import CsvMapping, read_event_data, write_event_data
from src.petrinet import AcceptingPetriNet, dump_net, load_net, reachability_graph
from src.render import RenderOptions, check_dot, to_dot

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

console = Console(stderr=True)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse parser whose errors raise UsageError instead of exiting with 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


# Input and output helpers


def _csv_mapping(args: argparse.Namespace) -> CsvMapping:
    values = {
        "case_column": args.case_column,
        "activity_column": args.activity_column,
        "timestamp_column": args.timestamp_column,
        "timestamp_format": args.timestamp_format,
        "delimiter": args.delimiter,
    }
    mapping = {k: v for k, v in values.items() if v is not None}
    if args.timestamp_column == "":
        mapping["timestamp_column"] = None
    try:
        return CsvMapping(**mapping)
    except ValidationError as e:
        raise InvalidParameterError(f"Invalid CSV mapping: {e}") from e


def _read_log(args: argparse.Namespace) -> EventLog:
    log = read_event_data(args.input, _csv_mapping(args))
    if getattr(args, "sort", False):
        log = sort_by_timestamp(log)
    return log


def _read_net(path: str) -> AcceptingPetriNet:
    return load_net(Path(path).read_text(encoding="utf-8"))


def _classifier(args: argparse.Namespace) -> Classifier:
    return Classifier(name="activity", keys=(args.activity_key,))


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
        console.print(f"Wrote {path}", style="green", markup=False, highlight=False)
    else:
        sys.stdout.write(text)


def _render_options(**values: Any) -> RenderOptions:
    try:
        return RenderOptions(**values)
    except ValidationError as e:
        raise InvalidParameterError(f"Invalid render options: {e}") from e


def _noise(args: argparse.Namespace) -> Optional[float]:
    if args.noise is not None and not 0.0 <= args.noise <= 1.0:
        raise InvalidParameterError(f"--noise must lie in [0, 1], got {args.noise}")
    return args.noise


def _positive(value: Optional[int], flag: str, default: int) -> int:
    if value is None:
        return default
    if value < 1:
        raise InvalidParameterError(f"{flag} must be at least 1, got {value}")
    return value


def _emit_dot(text: str, path: Optional[str]) -> None:
    check_dot(text)
    _emit(text, path)


def _tsv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    lines = ["\t".join(header)]
    lines.extend("\t".join(_cell(value) for value in row) for row in rows)
    return "\n".join(lines) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    return format_value(value) if not isinstance(value, str) else value


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _print_table(title: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    table = Table(title=title)
    for column in header:
        table.add_column(column)
    for row in rows:
        table.add_row(*(_cell(v) for v in row))
    Console().print(table)


# Subcommands


def cmd_convert(args: argparse.Namespace, settings: Settings) -> int:
    """Convert between XES and CSV; CSV is read as a stream and grouped into a log."""
    log = _read_log(args)
    write_event_data(log, args.output)
    console.print(f"Converted {len(log)} traces to {args.output}", markup=False, highlight=False)
    return 0


def cmd_discover(args: argparse.Namespace, settings: Settings) -> int:
    log = _read_log(args)
    params: Dict[str, Any] = {}
    for item in args.param or []:
        if "=" not in item:
            raise UsageError(f"--param expects KEY=VALUE, got '{item}'")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    if _noise(args) is not None:
        params["noise_threshold"] = args.noise
    if args.activity_key:
        params["activity_key"] = args.activity_key

    anet = discover(log, args.algorithm, params)
    document = dump_net(anet)
    if args.model_out:
        _emit(document, args.model_out)
    if args.dot_out:
        _emit_dot(to_dot(anet, _render_options(rankdir=args.rankdir)).text, args.dot_out)
    if not args.model_out and not args.dot_out:
        sys.stdout.write(document)
    return 0


def cmd_conform(args: argparse.Namespace, settings: Settings) -> int:
    log = _read_log(args)
    anet = _read_net(args.model)
    classifier = _classifier(args)
    silent_depth = args.silent_depth if args.silent_depth is not None else settings.silent_depth
    case_ids = [trace.case_id for trace in log]

    if args.method == FitnessMethod.TOKEN.value:
        results = token_replay(log, anet, silent_depth, classifier)
        records = [
            {
                "case_id": case_id,
                "fitness": r.trace_fitness,
                "produced": r.produced,
                "consumed": r.consumed,
                "missing": r.missing,
                "remaining": r.remaining,
                "reached_final": r.reached_final,
                "fired_sequence": list(r.fired_sequence),
            }
            for case_id, r in zip(case_ids, results)
        ]
        header = ["case_id", "fitness", "produced", "consumed", "missing", "remaining", "reached_final"]
    else:
        try:
            costs = AlignmentCosts(log_move=args.log_move, visible_model_move=args.model_move)
        except ValidationError as e:
            raise InvalidParameterError(f"Invalid alignment costs: {e}") from e
        results = align(
            log,
            anet,
            costs,
            heuristic=not args.no_heuristic,
            search_budget=_positive(args.search_budget, "--search-budget", settings.search_budget),
            workers=_positive(args.threads, "--threads", settings.threads),
            classifier=classifier,
        )
        records = [
            {
                "case_id": case_id,
                "cost": a.cost,
                "fitness": a.fitness,
                "optimal": a.optimal,
                "moves": [[m.log, m.model] for m in a.moves],
                "alignment": format_alignment(a),
            }
            for case_id, a in zip(case_ids, results)
        ]
        header = ["case_id", "cost", "fitness", "alignment"]

    if args.json:
        text = _json(records)
    else:
        text = _tsv(header, [[record[h] for h in header] for record in records])
    _emit(text, args.report_out)
    return 0


def cmd_evaluate(args: argparse.Namespace, settings: Settings) -> int:
    log = _read_log(args)
    anet = _read_net(args.model)
    report = evaluate(
        log,
        anet,
        FitnessMethod(args.method),
        silent_depth=settings.silent_depth,
        search_budget=settings.search_budget,
        workers=_positive(args.threads, "--threads", settings.threads),
        classifier=_classifier(args),
    )
    flat = report.flat()
    if args.json:
        _emit(_json(report.model_dump(mode="json")), args.report_out)
    elif args.pretty:
        _print_table("Quality", ["metric", "value"], list(flat.items()))
    else:
        _emit(_tsv(["metric", "value"], list(flat.items())), args.report_out)
    return 0


FILTER_FIELDS: Dict[str, List[str]] = {
    "time_frame": ["start", "end", "mode"],
    "case_performance": ["min_duration", "max_duration"],
    "endpoints": ["start_in", "end_in"],
    "variants": ["variant", "top_k"],
    "attribute": ["level", "key", "value", "action"],
    "path": ["source", "target", "action"],
}

_FIELD_NAMES = {"variant": "keep", "value": "values"}


def build_filter_spec(args: argparse.Namespace) -> Dict[str, Any]:
    """Collect the filter flags of `args.kind` into a FilterSpec mapping; foreign flags are rejected."""
    allowed = FILTER_FIELDS[args.kind]
    spec: Dict[str, Any] = {"kind": args.kind}
    for name in sorted({f for fields in FILTER_FIELDS.values() for f in fields}):
        value = getattr(args, name, None)
        if value is None:
            continue
        if name not in allowed:
            raise UsageError(f"--{name.replace('_', '-')} does not apply to --kind {args.kind}")
        if name == "variant":
            value = [split_variant_key(v) for v in value]
        spec[_FIELD_NAMES.get(name, name)] = value
    return spec


def cmd_filter(args: argparse.Namespace, settings: Settings) -> int:
    log = _read_log(args)
    spec = parse_filter(build_filter_spec(args))
    filtered = filter_log(log, spec, _classifier(args))
    write_event_data(filtered, args.output)
    console.print(f"Kept {len(filtered)} of {len(log)} traces", markup=False, highlight=False)
    return 0


def _histogram_rows(histogram: Histogram) -> List[List[Any]]:
    return [[label, count] for label, count in histogram.bins]


def cmd_stats(args: argparse.Namespace, settings: Settings) -> int:
    log = _read_log(args)
    classifier = _classifier(args)

    if args.kind in ("summary", "variants", "cases"):
        stats = case_statistics(log, classifier)
        durations = stats.durations
        if args.kind == "summary":
            header = ["metric", "value"]
            rows = [
                ["traces", stats.trace_count],
                ["variants", len(stats.variants)],
                ["events", sum(c.event_count for c in stats.cases)],
                ["duration_count", durations.count],
                ["duration_mean", durations.mean],
                ["duration_median", durations.median],
                ["duration_min", durations.minimum],
                ["duration_max", durations.maximum],
            ]
        elif args.kind == "variants":
            header = ["variant", "count"]
            rows = [list(item) for item in stats.variants]
        else:
            header = ["case_id", "start", "end", "duration", "events", "variant"]
            rows = [[c.case_id, c.start, c.end, c.duration, c.event_count, c.variant] for c in stats.cases]
    else:
        if args.kind == "attribute":
            if not args.key:
                raise UsageError("--kind attribute needs --key")
            histogram = attribute_distribution(log, args.key, args.bins)
            if histogram.ignored:
                console.print(f"{histogram.ignored} events without '{args.key}' ignored", markup=False)
        else:
            kind = TimeSeriesKind(args.kind.replace("-", "_"))
            histogram = time_series(log, kind, args.bins)
        header = ["bin", "count"]
        rows = _histogram_rows(histogram)

    if args.json:
        _emit(_json([dict(zip(header, (_json_value(v) for v in row))) for row in rows]), args.output)
    elif args.pretty:
        _print_table(f"stats: {args.kind}", header, rows)
    else:
        _emit(_tsv(header, rows), args.output)
    return 0


def _json_value(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return format_value(value)


def cmd_sna(args: argparse.Namespace, settings: Settings) -> int:
    options = _render_options(threshold=args.threshold, rankdir=args.rankdir)
    log = _read_log(args)
    result = sna(log, SNAMetric(args.metric), args.resource_key, _classifier(args))
    if args.dot_out:
        _emit_dot(to_dot(result, options).text, args.dot_out)
    rows = [[s, t, round(v, 6)] for s, t, v in result.edges(options.threshold)]
    if args.json:
        payload = {
            "metric": result.metric.value,
            "directed": result.directed,
            "resources": list(result.resources),
            "matrix": result.matrix.tolist(),
            "skipped_events": result.skipped_events,
        }
        _emit(_json(payload), args.output)
    elif not args.dot_out or args.output:
        _emit(_tsv(["source", "target", "value"], rows), args.output)
    return 0


def cmd_render(args: argparse.Namespace, settings: Settings) -> int:
    options = _render_options(rankdir=args.rankdir)
    noise = _noise(args)
    what = args.what or ("petri" if args.input.lower().endswith(".json") else "dfg")
    if what in ("petri", "ts"):
        anet = _read_net(args.input)
        if what == "petri":
            obj: Any = anet
        else:
            bound = _positive(args.state_bound, "--state-bound", settings.state_bound)
            obj = reachability_graph(anet, bound)
    else:
        log = _read_log(args)
        if what == "dfg":
            obj = discover_dfg(log, _classifier(args))
        else:
            obj = discover_imdf(log, noise if noise is not None else 0.0, _classifier(args))
    _emit_dot(to_dot(obj, options).text, args.dot_out)
    return 0


# Parser


def _add_input(parser: argparse.ArgumentParser, csv: bool = True) -> None:
    parser.add_argument("--input", required=True, help="Event log (.xes, .xes.gz or .csv)")
    parser.add_argument("--activity-key", default="concept:name", help="Activity attribute")
    if csv:
        group = parser.add_argument_group("CSV mapping")
        group.add_argument("--case-column", help="Case id column (default case:concept:name)")
        group.add_argument("--activity-column", help="Activity column (default concept:name)")
        group.add_argument(
            "--timestamp-column", help="Timestamp column (default time:timestamp; empty for none)"
        )
        group.add_argument("--timestamp-format", help="strptime pattern; ISO-8601 when omitted")
        group.add_argument("--delimiter", help="CSV delimiter (default ',')")
        parser.add_argument("--sort", action="store_true", help="Sort events of each trace by timestamp")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="procmine", description="Process mining toolkit")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = commands.add_parser("convert", help="Convert event data between XES and CSV")
    _add_input(p)
    p.add_argument("--output", required=True, help="Output file (.xes, .xes.gz or .csv)")
    p.set_defaults(handler=cmd_convert)

    p = commands.add_parser("discover", help="Discover an accepting Petri net")
    _add_input(p)
    p.add_argument("--algorithm", choices=sorted(VARIANTS), default="alpha")
    p.add_argument("--noise", type=float, help="IMDF noise threshold in [0, 1]")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="Algorithm parameter")
    p.add_argument("--model-out", help="Write the net as JSON")
    p.add_argument("--dot-out", help="Write the net as DOT")
    p.add_argument("--rankdir", default="LR", choices=["LR", "TB", "RL", "BT"])
    p.set_defaults(handler=cmd_discover)

    p = commands.add_parser("conform", help="Token replay or alignments per trace")
    _add_input(p)
    p.add_argument("--model", required=True, help="Net JSON file")
    p.add_argument("--method", choices=[m.value for m in FitnessMethod], default="token")
    p.add_argument("--log-move", type=int, default=10, help="Alignment log-move cost")
    p.add_argument("--model-move", type=int, default=10, help="Alignment visible model-move cost")
    p.add_argument("--no-heuristic", action="store_true", help="Use Dijkstra instead of A*")
    p.add_argument("--search-budget", type=int, help="Expanded states per variant")
    p.add_argument("--silent-depth", type=int, help="Silent BFS depth for token replay")
    p.add_argument("--threads", type=int, help="Worker threads (default PROCMINE_THREADS)")
    p.add_argument("--report-out", help="Report file (stdout when omitted)")
    p.add_argument("--json", action="store_true", help="JSON instead of TSV")
    p.set_defaults(handler=cmd_conform)

    p = commands.add_parser("evaluate", help="Fitness, precision, generalization, simplicity")
    _add_input(p)
    p.add_argument("--model", required=True, help="Net JSON file")
    p.add_argument("--method", choices=[m.value for m in FitnessMethod], default="token")
    p.add_argument("--threads", type=int)
    p.add_argument("--report-out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--pretty", action="store_true", help="Print a table")
    p.set_defaults(handler=cmd_evaluate)

    p = commands.add_parser("filter", help="Filter a log")
    _add_input(p)
    p.add_argument("--output", required=True)
    p.add_argument("--kind", required=True, choices=sorted(FILTER_FIELDS))
    p.add_argument("--start", help="Time frame start (ISO-8601)")
    p.add_argument("--end", help="Time frame end (ISO-8601)")
    p.add_argument("--mode", choices=["contained", "intersecting"])
    p.add_argument("--min-duration", type=float, help="Seconds")
    p.add_argument("--max-duration", type=float, help="Seconds")
    p.add_argument("--start-in", action="append", help="Allowed start activity")
    p.add_argument("--end-in", action="append", help="Allowed end activity")
    p.add_argument("--variant", action="append", help="Variant to keep, comma-joined")
    p.add_argument("--top-k", type=int)
    p.add_argument("--level", choices=["trace", "event"])
    p.add_argument("--key", help="Attribute key")
    p.add_argument("--value", action="append", help="Attribute value")
    p.add_argument("--action", choices=["keep", "drop"])
    p.add_argument("--source", help="Path source activity")
    p.add_argument("--target", help="Path target activity")
    p.set_defaults(handler=cmd_filter)

    p = commands.add_parser("stats", help="Case, variant, time and attribute statistics")
    _add_input(p)
    p.add_argument(
        "--kind",
        default="summary",
        choices=["summary", "variants", "cases", "events-per-time", "case-duration", "attribute"],
    )
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--key", help="Numeric attribute for --kind attribute")
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(handler=cmd_stats)

    p = commands.add_parser("sna", help="Social network metrics")
    _add_input(p)
    p.add_argument("--metric", choices=[m.value for m in SNAMetric], default="handover")
    p.add_argument("--resource-key", default="org:resource")
    p.add_argument("--threshold", type=float, default=0.0)
    p.add_argument("--rankdir", default="LR", choices=["LR", "TB", "RL", "BT"])
    p.add_argument("--dot-out")
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_sna)

    p = commands.add_parser("render", help="Render a net, transition system, DFG or tree as DOT")
    _add_input(p)
    p.add_argument("--what", choices=["petri", "ts", "dfg", "tree"])
    p.add_argument("--dot-out", help="DOT file (stdout when omitted)")
    p.add_argument("--rankdir", default="LR", choices=["LR", "TB", "RL", "BT"])
    p.add_argument("--noise", type=float, help="IMDF noise threshold for --what tree")
    p.add_argument("--state-bound", type=int)
    p.set_defaults(handler=cmd_render)

    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI.

    Args:
        argv: Arguments without the program name; sys.argv[1:] when None

    Returns:
        Exit code
    """
    try:
        args = build_parser().parse_args(argv)
        settings = Settings.from_env()
        configure_logging("DEBUG" if args.verbose else settings.log_level)
        handler: Callable[[argparse.Namespace, Settings], int] = args.handler
        return handler(args, settings)
    except ProcmineError as e:
        console.print(f"error: {e}", style="red", markup=False, highlight=False)
        logger.debug("Command failed", exc_info=True)
        return e.exit_code
    except OSError as e:
        console.print(f"error: {e}", style="red", markup=False, highlight=False)
        return 2
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0
    except KeyboardInterrupt:
        console.print("Interrupted", style="yellow", markup=False, highlight=False)
        return 1
    except Exception as e:
        logger.error(f"Command failed: {e}", exc_info=True)
        console.print(f"error: {e}", style="red", markup=False, highlight=False)
        return 1


if __name__ == "__main__":
    sys.exit(main())
