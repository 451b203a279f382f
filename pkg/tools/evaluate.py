#!/usr/bin/env python3
"""
Golden-scenario runner for procmine.

Runs discovery, alignments and the quality metrics on each scenario under
golden_dataset/ and compares the results with the expected values stored
next to the input log.

Usage:
    python tools/evaluate.py --scenario 01
    python tools/evaluate.py --all
    python tools/evaluate.py --all --report --output results/
"""

import argparse
import json
import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.conformance import align, format_alignment  # noqa: E402
from src.discovery import discover, discover_imdf  # noqa: E402
from src.evaluation import FitnessMethod, evaluate  # noqa: E402
from src.ingest import read_event_data  # noqa: E402
from src.petrinet import load_net  # noqa: E402
from tools.evaluation_utils import (  # noqa: E402
    compare_alignments,
    compare_metrics,
    compare_structure,
    format_metrics_report,
    scenario_passed,
)

# Configure logging
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)


def _read_json(path: Path, default: Any) -> Any:
    if not path.exists():
        return default
    return json.loads(path.read_text(encoding="utf-8"))


def load_scenario(scenario_path: Path) -> Dict[str, Any]:
    """
    Load a golden scenario.

    Args:
        scenario_path: Path to scenario directory

    Returns:
        Dict with log, optional model, expectations and metadata
    """
    logger.info(f"Loading scenario from {scenario_path}")

    log_path = scenario_path / "input_log.xes"
    if not log_path.exists():
        raise FileNotFoundError(f"Input log not found: {log_path}")

    model_path = scenario_path / "model.json"
    scenario = {
        "log": read_event_data(log_path),
        "model": load_net(model_path.read_text(encoding="utf-8")) if model_path.exists() else None,
        "expected_metrics": _read_json(scenario_path / "expected_metrics.json", {}),
        "expected_alignments": _read_json(scenario_path / "expected_alignments.json", {}),
        "metadata": _read_json(scenario_path / "metadata.json", {}),
    }

    logger.info(f"Loaded scenario: {scenario['metadata'].get('scenario_name', 'Unknown')}")
    logger.info(f"  - Traces: {len(scenario['log'])}")
    logger.info(f"  - Expected metrics: {len(scenario['expected_metrics'])}")
    logger.info(f"  - Expected alignments: {len(scenario['expected_alignments'])}")
    return scenario


def evaluate_scenario(scenario: Dict[str, Any]) -> Dict[str, Any]:
    """
    Run the scenario and compare the results with its expectations.

    The scenario's model.json is used when present; otherwise a model is
    discovered with metadata["algorithm"] (default alpha).
    """
    metadata = scenario["metadata"]
    log = scenario["log"]
    metrics: Dict[str, Any] = {}

    anet = scenario["model"]
    if anet is None:
        algorithm = metadata.get("algorithm", "alpha")
        anet = discover(log, algorithm, metadata.get("parameters", {}))
        logger.info(f"Discovered {algorithm} net with {len(anet.net.places)} places")

    structure = compare_structure(
        places=anet.net.places,
        expected_places=metadata.get("expected_places"),
        tree=str(discover_imdf(log)) if "expected_tree" in metadata else None,
        expected_tree=metadata.get("expected_tree"),
    )
    if structure:
        metrics["structure"] = structure

    if scenario["expected_alignments"]:
        records = [
            {"case_id": trace.case_id, "cost": a.cost, "alignment": format_alignment(a)}
            for trace, a in zip(log, align(log, anet))
        ]
        metrics["alignments"] = compare_alignments(records, scenario["expected_alignments"])
        logger.info(
            f"Alignments: {metrics['alignments']['matched']}/{metrics['alignments']['total_expected']} matched"
        )

    if scenario["expected_metrics"]:
        method = FitnessMethod(metadata.get("fitness_method", "token"))
        report = evaluate(log, anet, method)
        metrics["quality"] = compare_metrics(
            report.flat(), scenario["expected_metrics"], metadata.get("tolerance", 1e-6)
        )
        logger.info(f"Quality checks: {metrics['quality']['passed']} passed, {metrics['quality']['failed']} failed")

    return metrics


def save_evaluation_report(
    scenario_id: str,
    scenario: Dict[str, Any],
    metrics: Dict[str, Any],
    output_dir: Path,
) -> Path:
    """
    Save evaluation report to file, with a JSON copy of the results.

    Returns:
        Path to saved report
    """
    output_dir.mkdir(parents=True, exist_ok=True)

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    report_path = output_dir / f"evaluation_{scenario_id}_{timestamp}.txt"

    header = f"""
PROCMINE GOLDEN SCENARIO REPORT
Scenario: {scenario['metadata'].get('scenario_name', scenario_id)}
Date: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}
Scenario ID: {scenario_id}

"""
    report_path.write_text(header + format_metrics_report(metrics), encoding="utf-8")
    logger.info(f"Evaluation report saved to {report_path}")

    json_path = output_dir / f"evaluation_{scenario_id}_{timestamp}.json"
    json_path.write_text(
        json.dumps(
            {
                "scenario_id": scenario_id,
                "scenario_name": scenario["metadata"].get("scenario_name", scenario_id),
                "timestamp": timestamp,
                "metrics": metrics,
            },
            indent=2,
        ),
        encoding="utf-8",
    )
    logger.info(f"Evaluation JSON saved to {json_path}")

    return report_path


def main() -> int:
    """Main evaluation runner."""
    parser = argparse.ArgumentParser(description="Evaluate procmine on the golden scenarios")
    parser.add_argument("--scenario", type=str, help="Scenario ID to evaluate (e.g. '01')")
    parser.add_argument("--all", action="store_true", help="Evaluate all scenarios in golden_dataset/")
    parser.add_argument(
        "--output",
        type=str,
        default="results/evaluation",
        help="Output directory for reports (default: results/evaluation)",
    )
    parser.add_argument("--report", action="store_true", help="Write report files instead of printing")
    parser.add_argument("--dataset", type=str, default="golden_dataset", help="Scenario root directory")

    args = parser.parse_args()

    if not args.scenario and not args.all:
        parser.error("Must specify either --scenario or --all")

    golden_dataset_dir = Path(args.dataset)
    if not golden_dataset_dir.exists():
        logger.error(f"Golden dataset directory not found: {golden_dataset_dir}")
        return 1

    if args.all:
        scenarios_to_eval = [d for d in sorted(golden_dataset_dir.glob("scenario_*")) if d.is_dir()]
    else:
        scenario_pattern = f"scenario_{args.scenario.zfill(2)}_*"
        scenarios_to_eval = sorted(golden_dataset_dir.glob(scenario_pattern))
        if not scenarios_to_eval:
            logger.error(f"Scenario not found: {scenario_pattern}")
            return 1

    if not scenarios_to_eval:
        logger.error("No scenarios found to evaluate")
        return 1

    logger.info(f"Found {len(scenarios_to_eval)} scenario(s) to evaluate")

    all_results = []
    for scenario_dir in scenarios_to_eval:
        scenario_id = scenario_dir.name.split("_")[1]
        logger.info("=" * 80)
        logger.info(f"EVALUATING SCENARIO {scenario_id}: {scenario_dir.name}")
        logger.info("=" * 80)

        try:
            scenario = load_scenario(scenario_dir)
            metrics = evaluate_scenario(scenario)

            if args.report:
                save_evaluation_report(scenario_id, scenario, metrics, Path(args.output))
            else:
                print("\n" + format_metrics_report(metrics))

            all_results.append(
                {
                    "scenario_id": scenario_id,
                    "status": "success" if scenario_passed(metrics) else "mismatch",
                }
            )
        except Exception as e:
            logger.error(f"Evaluation failed for scenario {scenario_id}: {e}", exc_info=True)
            all_results.append({"scenario_id": scenario_id, "status": "failed", "error": str(e)})

    logger.info("=" * 80)
    logger.info("EVALUATION SUMMARY")
    logger.info("=" * 80)

    successful = sum(1 for r in all_results if r["status"] == "success")
    logger.info(f"Total scenarios: {len(all_results)}")
    logger.info(f"Passed: {successful}")
    logger.info(f"Mismatched: {sum(1 for r in all_results if r['status'] == 'mismatch')}")
    logger.info(f"Failed: {sum(1 for r in all_results if r['status'] == 'failed')}")

    return 0 if successful == len(all_results) else 1


if __name__ == "__main__":
    sys.exit(main())
