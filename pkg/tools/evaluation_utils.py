#!/usr/bin/env python3
"""
Comparison helpers for golden-scenario evaluation.

Checks actual results against a scenario's expectations:
- Quality metrics (fitness, precision, generalization, simplicity) within a tolerance
- Per-case alignment cost and rendered alignment
- Discovered structure (places of a net, rendered process tree)
"""

import math
from typing import Any, Dict, List, Mapping, Optional, Sequence


def compare_metrics(
    actual: Mapping[str, Any],
    expected: Mapping[str, Any],
    tolerance: float = 1e-6,
) -> Dict[str, Any]:
    """
    Compare flat metric values.

    Args:
        actual: Flat report, e.g. QualityReport.flat()
        expected: Metric name -> expected value; only these keys are checked
        tolerance: Absolute tolerance for numeric values

    Returns:
        Dict with per-metric checks and pass/fail counts
    """
    checks = []
    for name, want in expected.items():
        got = actual.get(name)
        if isinstance(want, (int, float)) and isinstance(got, (int, float)):
            passed = math.isclose(got, want, rel_tol=0.0, abs_tol=tolerance)
        else:
            passed = got == want
        checks.append({"metric": name, "expected": want, "actual": got, "passed": passed})

    passed = sum(1 for c in checks if c["passed"])
    return {"checks": checks, "passed": passed, "failed": len(checks) - passed}


def compare_alignments(
    actual: Sequence[Mapping[str, Any]],
    expected: Mapping[str, Mapping[str, Any]],
) -> Dict[str, Any]:
    """
    Compare per-case alignment records.

    Args:
        actual: Records with case_id, cost and alignment (as the conform command writes them)
        expected: case_id -> {"cost": ..., "alignment": ...}; "alignment" is optional

    Returns:
        Dict with mismatching cases, matched count and cost error
    """
    by_case = {record["case_id"]: record for record in actual}
    mismatches: List[Dict[str, Any]] = []
    absolute_error = 0

    for case_id, want in expected.items():
        got = by_case.get(case_id)
        if got is None:
            mismatches.append({"case_id": case_id, "reason": "missing"})
            continue
        absolute_error += abs(got["cost"] - want["cost"])
        if got["cost"] != want["cost"]:
            mismatches.append({"case_id": case_id, "reason": f"cost {got['cost']} != {want['cost']}"})
        elif "alignment" in want and got["alignment"] != want["alignment"]:
            mismatches.append({"case_id": case_id, "reason": "alignment differs"})

    return {
        "matched": len(expected) - len(mismatches),
        "total_expected": len(expected),
        "mismatches": mismatches,
        "cost_absolute_error": absolute_error,
    }


def compare_structure(
    places: Optional[Sequence[str]] = None,
    expected_places: Optional[Sequence[str]] = None,
    tree: Optional[str] = None,
    expected_tree: Optional[str] = None,
) -> Dict[str, Any]:
    """Check discovered places and tree text where the scenario names them."""
    result: Dict[str, Any] = {}
    if expected_places is not None:
        missing = sorted(set(expected_places) - set(places or ()))
        extra = sorted(set(places or ()) - set(expected_places))
        result["places"] = {"missing": missing, "extra": extra, "passed": not missing and not extra}
    if expected_tree is not None:
        result["tree"] = {"expected": expected_tree, "actual": tree, "passed": tree == expected_tree}
    return result


def scenario_passed(metrics: Mapping[str, Any]) -> bool:
    """True when every recorded check of a scenario passed."""
    if metrics.get("quality", {}).get("failed", 0):
        return False
    if metrics.get("alignments", {}).get("mismatches"):
        return False
    return all(part.get("passed", True) for part in metrics.get("structure", {}).values())


def format_metrics_report(metrics: Dict[str, Any]) -> str:
    """
    Format evaluation results as a readable report.

    Args:
        metrics: Dict as built by the evaluation runner

    Returns:
        Formatted string report
    """
    report_lines = []

    report_lines.append("=" * 80)
    report_lines.append("EVALUATION METRICS REPORT")
    report_lines.append("=" * 80)
    report_lines.append("")

    if "quality" in metrics:
        report_lines.append("QUALITY METRICS")
        report_lines.append("-" * 80)
        for check in metrics["quality"]["checks"]:
            mark = "✓" if check["passed"] else "✗"
            report_lines.append(
                f"  {mark} {check['metric']:<32} expected {check['expected']!s:<12} actual {check['actual']}"
            )
        report_lines.append("")

    if "alignments" in metrics:
        alignment_metrics = metrics["alignments"]
        report_lines.append("ALIGNMENTS")
        report_lines.append("-" * 80)
        report_lines.append(
            f"  Matched Cases:        {alignment_metrics['matched']}/{alignment_metrics['total_expected']}"
        )
        report_lines.append(f"  Cost Absolute Error:  {alignment_metrics['cost_absolute_error']}")
        for mismatch in alignment_metrics["mismatches"]:
            report_lines.append(f"  ✗ case {mismatch['case_id']}: {mismatch['reason']}")
        report_lines.append("")

    if metrics.get("structure"):
        report_lines.append("DISCOVERED STRUCTURE")
        report_lines.append("-" * 80)
        places = metrics["structure"].get("places")
        if places:
            mark = "✓" if places["passed"] else "✗"
            report_lines.append(f"  {mark} Places (missing {places['missing']}, extra {places['extra']})")
        tree = metrics["structure"].get("tree")
        if tree:
            mark = "✓" if tree["passed"] else "✗"
            report_lines.append(f"  {mark} Tree {tree['actual']}")
        report_lines.append("")

    report_lines.append("=" * 80)
    report_lines.append("SUMMARY")
    report_lines.append("=" * 80)
    report_lines.append("  ✓ All checks passed" if scenario_passed(metrics) else "  ✗ Some checks failed")
    report_lines.append("")

    return "\n".join(report_lines)
