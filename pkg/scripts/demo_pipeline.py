#!/usr/bin/env python3
"""
End-to-end procmine demo.

Loads a log, prints its statistics, discovers a model with each algorithm,
scores the models and shows the most expensive alignments of the best one.
DOT files for every model are written to the output directory.

Usage:
    python scripts/demo_pipeline.py [--input FILE] [--output DIR] [--noise 0.2]
"""

import argparse
import logging
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from rich.console import Console  # noqa: E402
from rich.panel import Panel  # noqa: E402
from rich.table import Table  # noqa: E402

from src.analytics import case_statistics  # noqa: E402
from src.conformance import align, format_alignment  # noqa: E402
from src.discovery import VARIANTS, discover  # noqa: E402
from src.errors import ProcmineError  # noqa: E402
from src.evaluation import FitnessMethod, evaluate  # noqa: E402
from src.ingest import read_event_data  # noqa: E402
from src.render import to_dot  # noqa: E402

logging.basicConfig(level=logging.WARNING, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)

console = Console()

DEFAULT_LOG = project_root / "golden_dataset" / "scenario_01_running_example" / "input_log.xes"


def display_banner(path: Path) -> None:
    console.print("\n" + "=" * 80)
    console.print("[bold cyan]procmine - discovery and conformance demo[/bold cyan]")
    console.print("=" * 80)
    console.print(f"\n[dim]Log: {path}[/dim]\n")


def display_statistics(log) -> None:
    stats = case_statistics(log)
    table = Table(title="Variants", show_header=True, header_style="bold magenta")
    table.add_column("#", style="dim", width=3)
    table.add_column("Variant", min_width=50)
    table.add_column("Cases", justify="right")
    for i, (variant, count) in enumerate(stats.variants[:10], 1):
        table.add_row(str(i), variant if len(variant) <= 80 else variant[:77] + "...", str(count))
    console.print(table)
    if len(stats.variants) > 10:
        console.print(f"[dim]... and {len(stats.variants) - 10} more variants[/dim]")

    durations = stats.durations
    if durations.count:
        console.print(
            f"\nCases: {stats.trace_count}   mean duration {durations.mean:.0f}s   "
            f"median {durations.median:.0f}s   max {durations.maximum:.0f}s\n"
        )


def main() -> int:
    parser = argparse.ArgumentParser(description="procmine end-to-end demo")
    parser.add_argument("--input", default=str(DEFAULT_LOG), help="Event log (.xes or .csv)")
    parser.add_argument("--output", default="results/demo", help="Directory for DOT files")
    parser.add_argument("--noise", type=float, default=0.0, help="IMDF noise threshold")
    parser.add_argument("--method", choices=[m.value for m in FitnessMethod], default="alignment")
    args = parser.parse_args()

    path = Path(args.input)
    display_banner(path)

    try:
        log = read_event_data(path)
    except (ProcmineError, OSError) as e:
        console.print(f"[red]✗ Cannot read {path}: {e}[/red]")
        return 2
    display_statistics(log)

    output = Path(args.output)
    output.mkdir(parents=True, exist_ok=True)

    scores = Table(title="Model quality", show_header=True, header_style="bold magenta")
    for column in ("Algorithm", "Places", "Transitions", "Fitness", "Precision", "Generalization", "Simplicity"):
        scores.add_column(column, justify="right" if column != "Algorithm" else "left")

    models = {}
    for algorithm in sorted(VARIANTS):
        parameters = {"noise_threshold": args.noise} if algorithm == "imdf" else {}
        try:
            anet = discover(log, algorithm, parameters)
            report = evaluate(log, anet, FitnessMethod(args.method))
        except ProcmineError as e:
            console.print(f"[yellow]⚠ {algorithm}: {e}[/yellow]")
            continue
        models[algorithm] = (anet, report)
        (output / f"{algorithm}.dot").write_text(to_dot(anet).text, encoding="utf-8")
        scores.add_row(
            algorithm,
            str(len(anet.net.places)),
            str(len(anet.net.transitions)),
            f"{report.fitness.average_trace_fitness:.3f}",
            f"{report.precision:.3f}",
            f"{report.generalization:.3f}",
            f"{report.simplicity:.3f}",
        )
    console.print(scores)

    if not models:
        return 3

    best = max(models, key=lambda name: models[name][1].fitness.average_trace_fitness)
    anet, _ = models[best]
    try:
        alignments = align(log, anet)
    except ProcmineError as e:
        console.print(f"[yellow]⚠ alignments on {best}: {e}[/yellow]")
        return 3
    worst = sorted(zip(log, alignments), key=lambda pair: -pair[1].cost)[:3]
    lines = [f"case {trace.case_id}: cost {a.cost}\n  {format_alignment(a)}" for trace, a in worst]
    console.print(Panel("\n".join(lines), title=f"Most expensive alignments ({best})"))

    console.print(f"\n[green]✓[/green] DOT files written to {output}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
