#!/usr/bin/env python3
"""
Synthetic event log generator.

Plays out an accepting Petri net at random and writes the runs as an event
log, optionally with noise (dropped or swapped events), resources and
timestamps. Useful for trying the miners on logs of known origin.

Usage:
    python scripts/generate_log.py --model golden_dataset/scenario_01_running_example/model.json \\
        --traces 500 --output data/requests.xes
    python scripts/generate_log.py --model net.json --traces 1000 --noise 0.1 --output noisy.csv
"""

import argparse
import logging
import random
import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import List, Optional

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from rich.console import Console  # noqa: E402

from src.eventlog import (  # noqa: E402
    CONCEPT_NAME,
    RESOURCE_KEY,
    TIMESTAMP_KEY,
    Event,
    EventLog,
    Timestamp,
    Trace,
)
from src.ingest import write_event_data  # noqa: E402
from src.petrinet import AcceptingPetriNet, enabled, fire, load_net  # noqa: E402

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)

console = Console()

START_TIME = datetime(2024, 1, 1, 8, 0, tzinfo=timezone.utc)


def play_out(anet: AcceptingPetriNet, rng: random.Random, max_steps: int) -> Optional[List[str]]:
    """
    One random run from the initial to the final marking.

    Returns:
        Visible labels of the run, or None if it deadlocked or exceeded max_steps
    """
    labels = {t.id: t.label for t in anet.net.transitions}
    marking = anet.im
    activities: List[str] = []
    for _ in range(max_steps):
        if marking == anet.fm:
            return activities
        candidates = sorted(enabled(anet, marking))
        if not candidates:
            return None
        transition = rng.choice(candidates)
        marking = fire(anet, marking, transition)
        if labels[transition] is not None:
            activities.append(labels[transition])
    return activities if marking == anet.fm else None


def add_noise(activities: List[str], rng: random.Random, probability: float) -> List[str]:
    """Drop one event or swap two neighbours with the given probability."""
    if len(activities) < 2 or rng.random() >= probability:
        return activities
    noisy = list(activities)
    i = rng.randrange(len(noisy) - 1)
    if rng.random() < 0.5:
        del noisy[i]
    else:
        noisy[i], noisy[i + 1] = noisy[i + 1], noisy[i]
    return noisy


def build_trace(case_id: str, activities: List[str], start: datetime, rng: random.Random, resources: int) -> Trace:
    events = []
    moment = start
    for activity in activities:
        moment += timedelta(minutes=rng.randint(1, 120))
        attributes = {CONCEPT_NAME: activity, TIMESTAMP_KEY: Timestamp.from_datetime(moment)}
        if resources:
            attributes[RESOURCE_KEY] = f"r{rng.randint(1, resources)}"
        events.append(Event(attributes))
    return Trace(events, {CONCEPT_NAME: case_id})


def main() -> int:
    parser = argparse.ArgumentParser(description="Generate an event log by playing out a Petri net")
    parser.add_argument("--model", required=True, help="Net JSON file")
    parser.add_argument("--output", required=True, help="Output log (.xes, .xes.gz or .csv)")
    parser.add_argument("--traces", type=int, default=100)
    parser.add_argument("--max-steps", type=int, default=100, help="Transition firings per run")
    parser.add_argument("--noise", type=float, default=0.0, help="Probability of a distorted trace")
    parser.add_argument("--resources", type=int, default=4, help="Resource pool size (0 for none)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    anet = load_net(Path(args.model).read_text(encoding="utf-8"))
    rng = random.Random(args.seed)

    traces = []
    failed_runs = 0
    while len(traces) < args.traces:
        activities = play_out(anet, rng, args.max_steps)
        if activities is None:
            failed_runs += 1
            if failed_runs > 10 * args.traces:
                logger.error("Too many runs without reaching the final marking")
                return 1
            continue
        activities = add_noise(activities, rng, args.noise)
        start = START_TIME + timedelta(hours=len(traces))
        traces.append(build_trace(str(len(traces) + 1), activities, start, rng, args.resources))

    log = EventLog(traces, {CONCEPT_NAME: Path(args.output).stem})
    Path(args.output).parent.mkdir(parents=True, exist_ok=True)
    write_event_data(log, args.output)

    if failed_runs:
        logger.info(f"Discarded {failed_runs} runs without a final marking")
    console.print(f"[green]✓[/green] Wrote {len(traces)} traces to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
