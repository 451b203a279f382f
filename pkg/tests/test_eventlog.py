"""
Tests for the event data model and log/stream conversions.
"""

import random
from datetime import datetime, timezone

import pytest

from src.errors import DuplicateCaseIdError, MissingCaseIdError, MissingKeyError
from src.eventlog import (
    CONCEPT_NAME,
    LIFECYCLE_KEY,
    STREAM_CASE_KEY,
    TIMESTAMP_KEY,
    Classifier,
    Event,
    EventLog,
    EventStream,
    Timestamp,
    Trace,
    classify,
    convert,
    format_value,
    sort_by_timestamp,
    to_event_log,
    to_event_stream,
    variant_key,
)
from tests.helpers import make_trace, random_log, stamp


class TestTimestamp:
    """Test suite for Timestamp."""

    def test_parse_keeps_text_and_offset(self):
        """Test parsing preserves the original text and offset."""
        ts = Timestamp.parse("2024-03-01T10:00:00+02:00")
        assert ts.text == "2024-03-01T10:00:00+02:00"
        assert ts.utc == datetime(2024, 3, 1, 8, 0, tzinfo=timezone.utc)

    def test_naive_is_utc(self):
        """Test naive timestamps are read as UTC."""
        ts = Timestamp.parse("2024-03-01T10:00:00")
        assert ts.utc == datetime(2024, 3, 1, 10, 0, tzinfo=timezone.utc)

    def test_ordering_uses_instant(self):
        """Test comparison ignores the offset notation."""
        early = Timestamp.parse("2024-03-01T10:00:00+02:00")
        late = Timestamp.parse("2024-03-01T09:00:00+00:00")
        assert early < late
        assert max(early, late) is late

    def test_invalid_text(self):
        """Test non-ISO text raises ValueError."""
        with pytest.raises(ValueError):
            Timestamp.parse("yesterday")

    def test_format_value(self):
        """Test export rendering of each attribute type."""
        assert format_value(True) == "true"
        assert format_value(3) == "3"
        assert format_value(0.5) == "0.5"
        assert format_value(stamp(0)) == "2024-01-01T00:00:00+00:00"


class TestClassifier:
    """Test suite for activity classification."""

    def test_default_classifier(self):
        """Test the default classifier reads concept:name."""
        assert classify(Event({CONCEPT_NAME: "decide"})) == "decide"

    def test_composite_classifier(self):
        """Test multi-key classifiers join values with '+'."""
        classifier = Classifier("lifecycle", (CONCEPT_NAME, LIFECYCLE_KEY))
        event = Event({CONCEPT_NAME: "decide", LIFECYCLE_KEY: "complete"})
        assert classify(event, classifier) == "decide+complete"
        assert classifier(event) == "decide+complete"

    def test_missing_key(self):
        """Test a missing key raises MissingKeyError."""
        with pytest.raises(MissingKeyError) as exc_info:
            classify(Event({"org:resource": "Pete"}))
        assert exc_info.value.key == CONCEPT_NAME

    def test_empty_classifier_rejected(self):
        """Test a classifier needs at least one key."""
        with pytest.raises(ValueError):
            Classifier("none", ())

    def test_variant_key_doubles_commas(self):
        """Test embedded commas are escaped in variant keys."""
        assert variant_key(["a", "b"]) == "a,b"
        assert variant_key(["x,y", "z"]) == "x,,y,z"


class TestEventLog:
    """Test suite for EventLog."""

    def test_duplicate_case_ids_rejected(self):
        """Test two traces cannot share a case id."""
        with pytest.raises(DuplicateCaseIdError):
            EventLog([make_trace("1", ["a"]), make_trace("1", ["b"])])

    def test_events_are_immutable(self):
        """Test events reject item assignment."""
        event = Event({CONCEPT_NAME: "a"})
        with pytest.raises(TypeError):
            event[CONCEPT_NAME] = "b"  # type: ignore[index]

    def test_variants(self):
        """Test variants lists activity sequences in trace order."""
        log = EventLog([make_trace("1", ["a", "b"]), make_trace("2", ["a"])])
        assert log.variants() == [("a", "b"), ("a",)]

    def test_with_traces_keeps_metadata(self):
        """Test with_traces carries log attributes and classifiers."""
        log = EventLog([make_trace("1", ["a"])], {"source": "x"}, [Classifier("A", (CONCEPT_NAME,))])
        copy = log.with_traces([])
        assert len(copy) == 0
        assert copy.attributes == {"source": "x"}
        assert copy.classifiers == log.classifiers


class TestConversion:
    """Test suite for log/stream conversion."""

    def test_stream_grouping(self):
        """Test events group by case in first-appearance order."""
        stream = EventStream(
            [
                Event({STREAM_CASE_KEY: "A", CONCEPT_NAME: "e1"}),
                Event({STREAM_CASE_KEY: "B", CONCEPT_NAME: "e2"}),
                Event({STREAM_CASE_KEY: "A", CONCEPT_NAME: "e3"}),
            ]
        )
        log = to_event_log(stream)
        assert [t.case_id for t in log] == ["A", "B"]
        assert log.variants() == [("e1", "e3"), ("e2",)]

    def test_case_attributes_move_to_trace(self):
        """Test case:-prefixed attributes become trace attributes."""
        stream = EventStream(
            [Event({STREAM_CASE_KEY: "A", "case:channel": "web", CONCEPT_NAME: "a"})]
        )
        trace = to_event_log(stream)[0]
        assert trace.attributes == {CONCEPT_NAME: "A", "channel": "web"}
        assert dict(trace[0]) == {CONCEPT_NAME: "a"}

    def test_flatten_copies_trace_attributes(self):
        """Test log->stream copies trace attributes onto every event."""
        log = EventLog([Trace([{CONCEPT_NAME: "a"}, {CONCEPT_NAME: "b"}], {CONCEPT_NAME: "1", "kind": "x"})])
        stream = to_event_stream(log)
        assert len(stream) == 2
        assert all(e["case:concept:name"] == "1" and e["case:kind"] == "x" for e in stream)

    def test_missing_case_id(self):
        """Test an event without a case id raises MissingCaseIdError."""
        stream = EventStream([Event({STREAM_CASE_KEY: "A"}), Event({CONCEPT_NAME: "b"})])
        with pytest.raises(MissingCaseIdError) as exc_info:
            to_event_log(stream)
        assert exc_info.value.index == 1

    def test_empty_stream(self):
        """Test an empty stream gives an empty log."""
        assert len(to_event_log(EventStream())) == 0

    def test_convert_is_identity_on_same_target(self):
        """Test converting to the current representation returns the input."""
        log = EventLog([make_trace("1", ["a"])])
        assert convert(log, "log") is log

    @pytest.mark.parametrize("seed", range(100))
    def test_round_trip_random_logs(self, seed):
        """Test log -> stream -> log is the identity on random logs."""
        log = random_log(random.Random(seed))
        # Empty traces vanish in a stream, so compare against the non-empty ones
        expected = log.with_traces([t for t in log if len(t)])
        assert convert(convert(log, "stream"), "log") == expected

    def test_sort_by_timestamp(self):
        """Test per-trace sorting is stable and skips traces lacking timestamps."""
        unsorted = Trace(
            [
                {CONCEPT_NAME: "b", TIMESTAMP_KEY: stamp(60)},
                {CONCEPT_NAME: "a", TIMESTAMP_KEY: stamp(0)},
                {CONCEPT_NAME: "c", TIMESTAMP_KEY: stamp(60)},
            ],
            {CONCEPT_NAME: "1"},
        )
        partial = Trace([{CONCEPT_NAME: "y"}, {CONCEPT_NAME: "x", TIMESTAMP_KEY: stamp(0)}], {CONCEPT_NAME: "2"})
        result = sort_by_timestamp(EventLog([unsorted, partial]))
        assert result.variants() == [("a", "b", "c"), ("y", "x")]
