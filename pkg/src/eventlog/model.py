"""
Event data object model.

Events are immutable key-value maps. Traces group the events of one case,
event logs group traces, and event streams hold a flat list of events that
carry their case identifier as an attribute. Every algorithm reads activity
labels through a Classifier, so swapping the labelling scheme never touches
algorithm code.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from datetime import datetime, timezone
from types import MappingProxyType
from typing import Any, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from src.errors import DuplicateCaseIdError, MissingKeyError

CONCEPT_NAME = "concept:name"
TIMESTAMP_KEY = "time:timestamp"
RESOURCE_KEY = "org:resource"
LIFECYCLE_KEY = "lifecycle:transition"
CASE_PREFIX = "case:"
STREAM_CASE_KEY = CASE_PREFIX + CONCEPT_NAME


@dataclass(frozen=True, order=False)
class Timestamp:
    """
    A point in time that remembers the text it was parsed from.

    Equality compares both the instant and the original text so that exports
    reproduce the source byte for byte. Ordering uses the instant only.

    Attributes:
        value: Timezone-aware datetime in the original offset
        text: ISO-8601 text written on export
    """

    value: datetime
    text: str

    @classmethod
    def parse(cls, text: str) -> "Timestamp":
        """
        Parse an ISO-8601 string; naive values are taken as UTC.

        Raises:
            ValueError: If the text is not ISO-8601
        """
        parsed = datetime.fromisoformat(text.strip())
        if parsed.tzinfo is None:
            parsed = parsed.replace(tzinfo=timezone.utc)
        return cls(value=parsed, text=text.strip())

    @classmethod
    def from_datetime(cls, value: datetime) -> "Timestamp":
        if value.tzinfo is None:
            value = value.replace(tzinfo=timezone.utc)
        return cls(value=value, text=value.isoformat())

    @property
    def utc(self) -> datetime:
        return self.value.astimezone(timezone.utc)

    def epoch_seconds(self) -> float:
        return self.value.timestamp()

    def __lt__(self, other: "Timestamp") -> bool:
        return self.value < other.value

    def __le__(self, other: "Timestamp") -> bool:
        return self.value <= other.value

    def __gt__(self, other: "Timestamp") -> bool:
        return self.value > other.value

    def __ge__(self, other: "Timestamp") -> bool:
        return self.value >= other.value

    def __str__(self) -> str:
        return self.text


AttributeValue = Union[str, int, float, bool, Timestamp]


def format_value(value: AttributeValue) -> str:
    """Render an attribute value the way XES and CSV exports write it."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Timestamp):
        return value.text
    if isinstance(value, float):
        return repr(value)
    return str(value)


class _AttributeMap(Mapping):
    """Read-only, insertion-ordered attribute map shared by events and traces."""

    __slots__ = ("_attributes",)

    def __init__(self, attributes: Optional[Union[Mapping, Iterable[Tuple[str, Any]]]] = None):
        self._attributes = MappingProxyType(dict(attributes or {}))

    @property
    def attributes(self) -> Mapping:
        return self._attributes

    def __getitem__(self, key: str) -> AttributeValue:
        return self._attributes[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._attributes)

    def __len__(self) -> int:
        return len(self._attributes)

    def __hash__(self) -> int:
        return hash(tuple(self._attributes.items()))


class Event(_AttributeMap):
    """An event: an immutable, ordered map of attribute key to value."""

    __slots__ = ()

    def __repr__(self) -> str:
        return f"Event({dict(self._attributes)!r})"


class Trace(Sequence):
    """
    The events recorded for one case.

    Attributes:
        attributes: Trace-level attributes (the case id lives under concept:name)
        events: Events in recorded order
    """

    __slots__ = ("_attributes", "_events")

    def __init__(
        self,
        events: Iterable[Event] = (),
        attributes: Optional[Union[Mapping, Iterable[Tuple[str, Any]]]] = None,
    ):
        self._events: Tuple[Event, ...] = tuple(
            e if isinstance(e, Event) else Event(e) for e in events
        )
        self._attributes = _AttributeMap(attributes)

    @property
    def attributes(self) -> Mapping:
        return self._attributes.attributes

    @property
    def events(self) -> Tuple[Event, ...]:
        return self._events

    @property
    def case_id(self) -> str:
        value = self._attributes.get(CONCEPT_NAME)
        return "" if value is None else format_value(value)

    def __getitem__(self, index):  # type: ignore[override]
        return self._events[index]

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self._events)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trace):
            return NotImplemented
        return self._attributes == other._attributes and self._events == other._events

    def __hash__(self) -> int:
        return hash((hash(self._attributes), self._events))

    def __repr__(self) -> str:
        return f"Trace(case={self.case_id!r}, events={len(self._events)})"


@dataclass(frozen=True)
class Classifier:
    """
    Named list of attribute keys whose values make up an activity label.

    Attributes:
        name: Classifier name as declared in XES
        keys: Attribute keys joined with '+' to form the label
    """

    name: str
    keys: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "keys", tuple(self.keys))
        if not self.keys:
            raise ValueError(f"Classifier '{self.name}' must name at least one key")

    def __call__(self, event: Mapping) -> str:
        return classify(event, self)


DEFAULT_CLASSIFIER = Classifier(name="Activity", keys=(CONCEPT_NAME,))


@dataclass(frozen=True)
class Extension:
    """XES extension declaration kept for export."""

    name: str
    prefix: str
    uri: str


def classify(event: Mapping, classifier: Classifier = DEFAULT_CLASSIFIER) -> str:
    """
    Compute the activity label of an event.

    Args:
        event: Event (or any attribute mapping)
        classifier: Keys to read; defaults to concept:name alone

    Returns:
        '+'-joined string renderings of the classifier keys

    Raises:
        MissingKeyError: If the event lacks one of the keys
    """
    parts = []
    for key in classifier.keys:
        if key not in event:
            raise MissingKeyError(key)
        parts.append(format_value(event[key]))
    return "+".join(parts)


def trace_activities(trace: Iterable[Mapping], classifier: Classifier = DEFAULT_CLASSIFIER) -> Tuple[str, ...]:
    """Activity labels of a trace in order."""
    return tuple(classify(event, classifier) for event in trace)


def variant_key(activities: Sequence[str]) -> str:
    """Comma-joined activity labels; embedded commas are doubled."""
    return ",".join(label.replace(",", ",,") for label in activities)


class EventLog(Sequence):
    """
    A list of traces with log-level metadata.

    Attributes:
        traces: Traces in order; case identifiers are unique
        attributes: Log-level attributes
        classifiers: Declared classifiers
        extensions: Declared XES extensions
    """

    __slots__ = ("_traces", "_attributes", "classifiers", "extensions")

    def __init__(
        self,
        traces: Iterable[Trace] = (),
        attributes: Optional[Union[Mapping, Iterable[Tuple[str, Any]]]] = None,
        classifiers: Iterable[Classifier] = (),
        extensions: Iterable[Extension] = (),
    ):
        self._traces: Tuple[Trace, ...] = tuple(traces)
        self._attributes = _AttributeMap(attributes)
        self.classifiers: Tuple[Classifier, ...] = tuple(classifiers)
        self.extensions: Tuple[Extension, ...] = tuple(extensions)

        seen = set()
        for trace in self._traces:
            if CONCEPT_NAME not in trace.attributes:
                continue
            if trace.case_id in seen:
                raise DuplicateCaseIdError(trace.case_id)
            seen.add(trace.case_id)

    @property
    def traces(self) -> Tuple[Trace, ...]:
        return self._traces

    @property
    def attributes(self) -> Mapping:
        return self._attributes.attributes

    def with_traces(self, traces: Iterable[Trace]) -> "EventLog":
        """Copy of this log with the same metadata and different traces."""
        return EventLog(traces, self.attributes, self.classifiers, self.extensions)

    def variants(self, classifier: Classifier = DEFAULT_CLASSIFIER) -> List[Tuple[str, ...]]:
        """Activity sequence of every trace, in trace order."""
        return [trace_activities(trace, classifier) for trace in self._traces]

    def __getitem__(self, index):  # type: ignore[override]
        return self._traces[index]

    def __len__(self) -> int:
        return len(self._traces)

    def __iter__(self) -> Iterator[Trace]:
        return iter(self._traces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventLog):
            return NotImplemented
        return (
            self._traces == other._traces
            and self._attributes == other._attributes
            and self.classifiers == other.classifiers
            and self.extensions == other.extensions
        )

    def __hash__(self) -> int:
        return hash((self._traces, hash(self._attributes), self.classifiers, self.extensions))

    def __repr__(self) -> str:
        return f"EventLog(traces={len(self._traces)})"


class EventStream(Sequence):
    """
    A flat list of events, each carrying its case identifier.

    Attributes:
        events: Events in stream order
        case_key: Attribute holding the case identifier
        attributes: Log-level attributes carried across conversions
        classifiers: Declared classifiers carried across conversions
        extensions: Declared XES extensions carried across conversions
    """

    __slots__ = ("_events", "case_key", "_attributes", "classifiers", "extensions")

    def __init__(
        self,
        events: Iterable[Event] = (),
        case_key: str = STREAM_CASE_KEY,
        attributes: Optional[Union[Mapping, Iterable[Tuple[str, Any]]]] = None,
        classifiers: Iterable[Classifier] = (),
        extensions: Iterable[Extension] = (),
    ):
        self._events: Tuple[Event, ...] = tuple(
            e if isinstance(e, Event) else Event(e) for e in events
        )
        self.case_key = case_key
        self._attributes = _AttributeMap(attributes)
        self.classifiers: Tuple[Classifier, ...] = tuple(classifiers)
        self.extensions: Tuple[Extension, ...] = tuple(extensions)

    @property
    def events(self) -> Tuple[Event, ...]:
        return self._events

    @property
    def attributes(self) -> Mapping:
        return self._attributes.attributes

    def __getitem__(self, index):  # type: ignore[override]
        return self._events[index]

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self._events)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventStream):
            return NotImplemented
        return (
            self._events == other._events
            and self.case_key == other.case_key
            and self._attributes == other._attributes
            and self.classifiers == other.classifiers
            and self.extensions == other.extensions
        )

    def __hash__(self) -> int:
        return hash((self._events, self.case_key))

    def __repr__(self) -> str:
        return f"EventStream(events={len(self._events)})"
