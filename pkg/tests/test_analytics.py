"""
Tests for filters, statistics, histograms and social network analysis.
"""

import random
from datetime import timedelta

import pytest

from src.analytics import (
    CasePerformanceFilter,
    EndpointsFilter,
    PathFilter,
    SNAMetric,
    TimeSeriesKind,
    VariantsFilter,
    attribute_distribution,
    case_statistics,
    equal_width_histogram,
    filter_log,
    parse_filter,
    sna,
    split_variant_key,
    time_series,
)
from src.errors import (
    EmptyLogError,
    InvalidParameterError,
    MissingTimestampError,
    NonNumericValueError,
    NoResourcesError,
)
from src.eventlog import CONCEPT_NAME, RESOURCE_KEY, Event, EventLog, Trace, variant_key
from tests.helpers import BASE_TIME, make_log, make_trace, random_log, stamp


def random_filter_specs():
    """One spec per filter branch."""
    return [
        {
            "kind": "time_frame",
            "start": BASE_TIME.isoformat(),
            "end": (BASE_TIME + timedelta(hours=4)).isoformat(),
        },
        {
            "kind": "time_frame",
            "start": (BASE_TIME + timedelta(hours=2)).isoformat(),
            "end": (BASE_TIME + timedelta(hours=5)).isoformat(),
            "mode": "intersecting",
        },
        {"kind": "case_performance", "min_duration": 60, "max_duration": 240},
        {"kind": "endpoints", "start_in": ["a", "b"], "end_in": ["c", "d", "e"]},
        {"kind": "variants", "top_k": 2},
        {"kind": "attribute", "key": "channel", "values": ["web", "mail"]},
        {"kind": "attribute", "level": "event", "key": RESOURCE_KEY, "values": ["r1"], "action": "drop"},
        {"kind": "path", "source": "a", "target": "b"},
        {"kind": "path", "source": "c", "target": "c", "action": "drop"},
    ]


def is_sub_multiset(result: EventLog, source: EventLog) -> bool:
    """Every kept trace comes from the source, in order, with a subsequence of its events."""
    originals = iter(source)
    for trace in result:
        for original in originals:
            if original.case_id == trace.case_id:
                events = iter(original.events)
                if not all(any(e == o for o in events) for e in trace.events):
                    return False
                break
        else:
            return False
    return True


class TestFilters:
    """Test suite for log filters."""

    def test_case_performance(self):
        """Test a 30-minute case passes a one-hour maximum and a two-hour case does not."""
        log = EventLog(
            [
                make_trace("short", ["a", "b"], step_seconds=1800),
                make_trace("long", ["a", "b"], step_seconds=7200),
            ]
        )
        result = filter_log(log, CasePerformanceFilter(max_duration=3600))
        assert [t.case_id for t in result] == ["short"]

    def test_time_frame_modes(self):
        """Test contained and intersecting time frames."""
        log = EventLog(
            [
                make_trace("early", ["a", "b"], start_seconds=0, step_seconds=600),
                make_trace("late", ["a", "b"], start_seconds=3000, step_seconds=1200),
            ]
        )
        frame = {"start": BASE_TIME.isoformat(), "end": (BASE_TIME + timedelta(hours=1)).isoformat()}
        contained = filter_log(log, {"kind": "time_frame", **frame})
        intersecting = filter_log(log, {"kind": "time_frame", "mode": "intersecting", **frame})
        assert [t.case_id for t in contained] == ["early"]
        assert [t.case_id for t in intersecting] == ["early", "late"]

    def test_performance_needs_timestamps(self):
        """Test events without timestamps raise MissingTimestampError."""
        log = EventLog([make_trace("1", ["a"], timestamps=False)])
        with pytest.raises(MissingTimestampError):
            filter_log(log, {"kind": "case_performance", "max_duration": 10})

    def test_endpoints(self, abd_acd_log):
        """Test start and end activity sets."""
        assert len(filter_log(abd_acd_log, EndpointsFilter(start_in=frozenset("a")))) == 5
        assert len(filter_log(abd_acd_log, EndpointsFilter(end_in=frozenset("b")))) == 0

    def test_variants(self, abd_acd_log):
        """Test explicit variants and the top-k selection."""
        kept = filter_log(abd_acd_log, {"kind": "variants", "keep": [["a", "b", "d"]]})
        assert kept.variants() == [("a", "b", "d")] * 2
        top = filter_log(abd_acd_log, VariantsFilter(top_k=1))
        assert top.variants() == [("a", "c", "d")] * 3

    def test_event_level_attribute(self):
        """Test event-level filtering removes events and drops emptied traces."""
        log = EventLog(
            [
                make_trace("1", ["a", "b"], resources=["r1", "r2"]),
                make_trace("2", ["c"], resources=["r1"]),
            ]
        )
        spec = {"kind": "attribute", "level": "event", "key": RESOURCE_KEY, "values": ["r1"]}
        result = filter_log(log, {**spec, "action": "drop"})
        assert [t.case_id for t in result] == ["1"]
        assert result.variants() == [("b",)]

    def test_path(self, abd_acd_log):
        """Test keeping and dropping traces by a directly-follows pair."""
        assert len(filter_log(abd_acd_log, PathFilter(source="a", target="b"))) == 2
        assert len(filter_log(abd_acd_log, PathFilter(source="a", target="b", action="drop"))) == 3

    def test_metadata_kept(self, abd_acd_log):
        """Test the filtered log keeps the input's attributes."""
        log = EventLog(abd_acd_log.traces, {"source": "test"})
        assert filter_log(log, PathFilter(source="x", target="y")).attributes == log.attributes

    def test_invalid_specs(self):
        """Test malformed specs raise InvalidParameterError."""
        with pytest.raises(InvalidParameterError):
            parse_filter({"kind": "variants"})
        with pytest.raises(InvalidParameterError):
            parse_filter({"kind": "nope"})
        with pytest.raises(InvalidParameterError):
            parse_filter({"kind": "case_performance", "min_duration": -1})
        with pytest.raises(InvalidParameterError):
            parse_filter({"kind": "path", "source": "a", "target": "b", "extra": 1})

    @pytest.mark.parametrize("seed", range(100))
    def test_filters_are_idempotent_sub_multisets(self, seed):
        """Test every branch keeps a sub-multiset and is idempotent on random logs."""
        log = random_log(random.Random(seed))
        for spec in random_filter_specs():
            once = filter_log(log, spec)
            assert is_sub_multiset(once, log), spec["kind"]
            assert filter_log(once, spec) == once, spec["kind"]

    def test_split_variant_key(self):
        """Test variant keys split back into labels."""
        assert split_variant_key("a,b,c") == ("a", "b", "c")
        assert split_variant_key(variant_key(["x,y", "z"])) == ("x,y", "z")


class TestStatistics:
    """Test suite for case statistics."""

    def test_duration(self):
        """Test one case with events 90 seconds apart."""
        stats = case_statistics(make_log(["ab"], step_seconds=90))
        case = stats.cases[0]
        assert case.duration == 90.0
        assert case.event_count == 2
        assert case.variant == "a,b"
        assert case.start == stamp(0)
        assert stats.durations.mean == 90.0

    def test_variant_table(self, abd_acd_log):
        """Test variants are sorted by count, then key."""
        stats = case_statistics(abd_acd_log)
        assert stats.variants == (("a,c,d", 3), ("a,b,d", 2))
        assert stats.trace_count == 5
        assert stats.durations.count == 5
        assert stats.durations.median == 120.0

    def test_missing_timestamps(self):
        """Test traces without timestamps have no duration and are left out of aggregates."""
        log = EventLog([make_trace("1", ["a"], timestamps=False), make_trace("2", ["a", "b"])])
        stats = case_statistics(log)
        assert stats.cases[0].duration is None
        assert stats.durations.count == 1
        assert stats.durations.maximum == 60.0

    def test_empty_log(self):
        """Test an empty log has no cases and no aggregates."""
        stats = case_statistics(EventLog())
        assert stats.trace_count == 0
        assert stats.durations.mean is None


class TestHistograms:
    """Test suite for time series and attribute distributions."""

    def test_equal_width(self):
        """Test the maximum lands in the last bin."""
        histogram = equal_width_histogram([1, 2, 2, 9], 2)
        assert histogram.bins == (("1", 3), ("5", 1))
        assert histogram.width == 4.0

    def test_constant_values(self):
        """Test identical values use a unit width."""
        histogram = equal_width_histogram([5, 5], 3)
        assert histogram.bins == (("5", 2), ("6", 0), ("7", 0))

    def test_invalid_bins(self):
        """Test fewer than one bin is rejected."""
        with pytest.raises(InvalidParameterError):
            equal_width_histogram([1.0], 0)

    def test_events_per_time(self):
        """Test hourly events over four hours in two bins."""
        log = EventLog([make_trace("1", ["a", "b", "c", "d"], step_seconds=3600)])
        histogram = time_series(log, TimeSeriesKind.EVENTS_PER_TIME, bins=2)
        assert [count for _, count in histogram.bins] == [2, 2]
        assert histogram.bins[1][0] == "2024-01-01T01:30:00+00:00"

    def test_case_duration(self):
        """Test case durations in seconds."""
        histogram = time_series(make_log(["ab", "abc"]), "case_duration", bins=1)
        assert histogram.bins == (("60", 2),)

    def test_empty_log(self):
        """Test an empty log raises EmptyLogError."""
        with pytest.raises(EmptyLogError):
            time_series(EventLog())

    def test_missing_timestamp(self):
        """Test an event without a timestamp raises MissingTimestampError."""
        with pytest.raises(MissingTimestampError):
            time_series(EventLog([make_trace("1", ["a"], timestamps=False)]))

    def test_attribute_distribution(self):
        """Test numeric values are binned and events without the key are counted."""
        trace = Trace(
            [{CONCEPT_NAME: "a", "cost": 10}, {CONCEPT_NAME: "b", "cost": 30.0}, {CONCEPT_NAME: "c"}],
            {CONCEPT_NAME: "1"},
        )
        histogram = attribute_distribution(EventLog([trace]), "cost", bins=2)
        assert histogram.bins == (("10", 1), ("20", 1))
        assert histogram.ignored == 1
        assert histogram.total == 2

    def test_non_numeric(self):
        """Test strings and booleans are not numeric."""
        for value in ("high", True):
            log = EventLog([Trace([{CONCEPT_NAME: "a", "cost": value}], {CONCEPT_NAME: "1"})])
            with pytest.raises(NonNumericValueError):
                attribute_distribution(log, "cost")


class TestSocialNetwork:
    """Test suite for social network metrics."""

    @pytest.fixture
    def ping_pong_log(self):
        return EventLog([make_trace("1", ["a", "b", "c"], resources=["r1", "r2", "r1"])])

    def test_handover(self, ping_pong_log):
        """Test r1 -> r2 -> r1 splits handover evenly."""
        result = sna(ping_pong_log, SNAMetric.HANDOVER)
        assert result.resources == ("r1", "r2")
        assert result.value("r1", "r2") == 0.5
        assert result.value("r2", "r1") == 0.5
        assert result.value("r1", "r1") == 0.0
        assert result.directed

    def test_subcontracting(self, ping_pong_log):
        """Test r1 hands to r2 and gets the work straight back."""
        result = sna(ping_pong_log, "subcontracting")
        assert result.value("r1", "r2") == 1.0
        assert result.value("r2", "r1") == 0.0

    def test_working_together(self):
        """Test the share of cases in which two resources both appear."""
        log = EventLog(
            [
                make_trace("1", ["a", "b"], resources=["r1", "r2"]),
                make_trace("2", ["a"], resources=["r1"]),
            ]
        )
        result = sna(log, SNAMetric.WORKING_TOGETHER)
        assert result.value("r1", "r2") == 0.5
        assert result.edges() == [("r1", "r2", 0.5)]
        assert not result.directed

    def test_similar_activities(self):
        """Test identical activity profiles correlate fully."""
        trace = make_trace(
            "1", ["a", "a", "b", "a", "a", "b"], resources=["r1", "r1", "r1", "r2", "r2", "r2"]
        )
        result = sna(EventLog([trace]), SNAMetric.SIMILAR_ACTIVITIES)
        assert result.value("r1", "r2") == pytest.approx(1.0)

    def test_no_resources(self, abd_acd_log):
        """Test a log without resources raises NoResourcesError."""
        with pytest.raises(NoResourcesError):
            sna(abd_acd_log)

    def test_events_without_resource_skipped(self):
        """Test events lacking a resource are skipped and counted."""
        trace = Trace(
            [
                {CONCEPT_NAME: "a", RESOURCE_KEY: "r1"},
                Event({CONCEPT_NAME: "b"}),
                {CONCEPT_NAME: "c", RESOURCE_KEY: "r2"},
            ],
            {CONCEPT_NAME: "1"},
        )
        result = sna(EventLog([trace]))
        assert result.skipped_events == 1
        assert result.value("r1", "r2") == 1.0

    def test_matrix_read_only(self, ping_pong_log):
        """Test results cannot be modified in place."""
        result = sna(ping_pong_log)
        with pytest.raises(ValueError):
            result.matrix[0, 0] = 1.0

    @pytest.mark.parametrize("seed", range(100))
    def test_random_logs(self, seed):
        """Test handover sums to 1 and the undirected metrics are symmetric."""
        log = random_log(random.Random(seed))
        if not any(len(trace) for trace in log):
            with pytest.raises(NoResourcesError):
                sna(log)
            return

        handover = sna(log, SNAMetric.HANDOVER)
        if any(len(trace) > 1 for trace in log):
            assert handover.matrix.sum() == pytest.approx(1.0)
        for metric in (SNAMetric.WORKING_TOGETHER, SNAMetric.SIMILAR_ACTIVITIES):
            result = sna(log, metric)
            assert (result.matrix == result.matrix.T).all()
            assert (result.matrix >= -1.0).all() and (result.matrix <= 1.0).all()
