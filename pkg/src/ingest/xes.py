"""
XES import and export.

Supports the attribute types string, date, int, float, boolean and id (read
as string). Composite attributes (attributes with child attributes, lists and
containers) are flattened into '/'-joined keys; elements that cannot be
flattened are skipped and counted.
"""

import logging
import shlex
from typing import Dict, List, Optional, Tuple

from lxml import etree

from src.errors import UnsupportedAttributeTypeError, XesExportError, XesSyntaxError
from src.eventlog.model import (
    AttributeValue,
    Classifier,
    Event,
    EventLog,
    Extension,
    Timestamp,
    Trace,
    format_value,
)

logger = logging.getLogger(__name__)

XES_NAMESPACE = "http://www.xes-standard.org/"
XES_VERSION = "1.0"

SIMPLE_TYPES = ("string", "date", "int", "float", "boolean", "id")
COMPOSITE_TYPES = ("list", "container")


def _local(element: etree._Element) -> str:
    if not isinstance(element.tag, str):
        return ""
    return etree.QName(element).localname


class XesImporter:
    """
    Parser for XES documents.

    Attributes:
        strict: Raise on unsupported elements instead of skipping them
        skipped: Descriptions of elements skipped during the last parse
    """

    def __init__(self, strict: bool = False):
        """
        Initialize the importer.

        Args:
            strict: If True, unsupported attribute elements raise
                UnsupportedAttributeTypeError
        """
        self.strict = strict
        self.skipped: List[str] = []

    @property
    def warning_count(self) -> int:
        return len(self.skipped)

    def parse(self, source: bytes) -> EventLog:
        """
        Parse an XES document.

        Args:
            source: Raw document bytes

        Returns:
            EventLog

        Raises:
            XesSyntaxError: On malformed XML, a non-log root, bad typed values or classifiers
            UnsupportedAttributeTypeError: In strict mode, for unsupported elements
        """
        self.skipped = []
        parser = etree.XMLParser(resolve_entities=False, no_network=True, huge_tree=True)
        try:
            root = etree.fromstring(source, parser)
        except etree.XMLSyntaxError as e:
            line, column = getattr(e, "position", (e.lineno, e.offset))
            raise XesSyntaxError(str(e.msg), line, column) from e

        if _local(root) != "log":
            raise XesSyntaxError(f"expected <log> root, found <{_local(root)}>", root.sourceline, 1)

        log_attributes: Dict[str, AttributeValue] = {}
        classifiers: List[Classifier] = []
        extensions: List[Extension] = []
        traces: List[Trace] = []

        for child in root:
            tag = _local(child)
            if tag == "trace":
                traces.append(self._parse_trace(child, len(traces)))
            elif tag == "extension":
                extensions.append(
                    Extension(
                        name=child.get("name", ""),
                        prefix=child.get("prefix", ""),
                        uri=child.get("uri", ""),
                    )
                )
            elif tag == "classifier":
                classifiers.append(self._parse_classifier(child))
            elif tag == "global":
                logger.debug(f"[XES] Ignoring <global scope='{child.get('scope')}'> declarations")
            elif tag:
                self._parse_attribute(child, log_attributes)

        if self.skipped:
            logger.warning(f"[XES] Skipped {len(self.skipped)} unsupported attribute elements")
        logger.info(f"[XES] Imported {len(traces)} traces")
        return EventLog(traces, log_attributes, classifiers, extensions)

    def _parse_trace(self, element: etree._Element, index: int) -> Trace:
        attributes: Dict[str, AttributeValue] = {}
        events: List[Event] = []
        for child in element:
            tag = _local(child)
            if tag == "event":
                event_attributes: Dict[str, AttributeValue] = {}
                for attribute in child:
                    if _local(attribute):
                        self._parse_attribute(attribute, event_attributes)
                events.append(Event(event_attributes))
            elif tag:
                self._parse_attribute(child, attributes)

        if "concept:name" not in attributes:
            logger.warning(f"[XES] Trace #{index} has no concept:name; using its index")
            attributes["concept:name"] = str(index)
        return Trace(events, attributes)

    def _parse_classifier(self, element: etree._Element) -> Classifier:
        name = element.get("name", "")
        try:
            return Classifier(name=name, keys=tuple(shlex.split(element.get("keys", ""))))
        except ValueError as e:
            raise XesSyntaxError(f"invalid classifier '{name}': {e}", element.sourceline, 1) from e

    def _parse_attribute(
        self, element: etree._Element, target: Dict[str, AttributeValue], prefix: str = ""
    ) -> None:
        tag = _local(element)
        key = element.get("key")
        if key is None:
            self._skip(tag, "", element.sourceline, "missing key")
            return
        full_key = f"{prefix}{key}"

        if tag in SIMPLE_TYPES:
            target[full_key] = self._typed_value(tag, element)
            children = [c for c in element if _local(c)]
            for child in children:
                self._parse_attribute(child, target, prefix=f"{full_key}/")
        elif tag in COMPOSITE_TYPES:
            self._flatten_composite(element, target, full_key)
        else:
            self._skip(tag, full_key, element.sourceline, "unknown attribute type")

    def _flatten_composite(self, element: etree._Element, target: Dict[str, AttributeValue], key: str) -> None:
        # Items sit either directly under the element or inside <values>
        items = []
        for child in element:
            if _local(child) == "values":
                items.extend(c for c in child if _local(c))
            elif _local(child):
                items.append(child)

        flattened: Dict[str, AttributeValue] = {}
        for item in items:
            if _local(item) not in SIMPLE_TYPES or item.get("key") is None:
                self._skip(_local(element), key, element.sourceline, "nested composite")
                return
            item_key = f"{key}/{item.get('key')}"
            if item_key in flattened:
                self._skip(_local(element), key, element.sourceline, "duplicate item keys")
                return
            flattened[item_key] = self._typed_value(_local(item), item)
        target.update(flattened)

    def _typed_value(self, tag: str, element: etree._Element) -> AttributeValue:
        raw = element.get("value")
        if raw is None:
            raise XesSyntaxError(f"<{tag} key='{element.get('key')}'> has no value", element.sourceline, 1)
        try:
            if tag == "date":
                return Timestamp.parse(raw)
            if tag == "int":
                return int(raw)
            if tag == "float":
                return float(raw)
            if tag == "boolean":
                lowered = raw.strip().lower()
                if lowered not in ("true", "false"):
                    raise ValueError(raw)
                return lowered == "true"
        except ValueError as e:
            raise XesSyntaxError(
                f"invalid {tag} value '{raw}' for key '{element.get('key')}'", element.sourceline, 1
            ) from e
        return raw

    def _skip(self, tag: str, key: str, line: Optional[int], reason: str) -> None:
        if self.strict:
            raise UnsupportedAttributeTypeError(tag, key, line)
        logger.debug(f"[XES] Skipping <{tag} key='{key}'> at line {line}: {reason}")
        self.skipped.append(f"line {line}: <{tag} key='{key}'> ({reason})")


def import_xes(source: bytes) -> EventLog:
    """Parse an XES document with the default (lenient) importer."""
    return XesImporter().parse(source)


def _element(parent: etree._Element, tag: str, key: str, /, **attrib: str) -> etree._Element:
    try:
        return etree.SubElement(parent, f"{{{XES_NAMESPACE}}}{tag}", **attrib)
    except ValueError as e:
        raise XesExportError(key, str(e)) from e


def _attribute_element(parent: etree._Element, key: str, value: AttributeValue) -> None:
    if isinstance(value, bool):
        tag = "boolean"
    elif isinstance(value, Timestamp):
        tag = "date"
    elif isinstance(value, int):
        tag = "int"
    elif isinstance(value, float):
        tag = "float"
    else:
        tag = "string"
    _element(parent, tag, key, key=key, value=format_value(value))


def _classifier_keys(keys: Tuple[str, ...]) -> str:
    return " ".join(f"'{key}'" if any(ch.isspace() for ch in key) else key for key in keys)


def export_xes(log: EventLog) -> bytes:
    """
    Serialize a log as XES.

    Output is UTF-8 with two-space indentation and attributes in stored order,
    so equal logs always produce identical bytes.

    Args:
        log: Event log to write

    Returns:
        Document bytes

    Raises:
        XesExportError: If a name or value holds characters XML cannot carry
    """
    root = etree.Element(
        f"{{{XES_NAMESPACE}}}log", nsmap={None: XES_NAMESPACE}, attrib={"xes.version": XES_VERSION}
    )
    for extension in log.extensions:
        _element(
            root,
            "extension",
            extension.name,
            name=extension.name,
            prefix=extension.prefix,
            uri=extension.uri,
        )
    for classifier in log.classifiers:
        _element(
            root,
            "classifier",
            classifier.name,
            name=classifier.name,
            keys=_classifier_keys(classifier.keys),
        )
    for key, value in log.attributes.items():
        _attribute_element(root, key, value)

    for trace in log:
        trace_element = etree.SubElement(root, f"{{{XES_NAMESPACE}}}trace")
        for key, value in trace.attributes.items():
            _attribute_element(trace_element, key, value)
        for event in trace:
            event_element = etree.SubElement(trace_element, f"{{{XES_NAMESPACE}}}event")
            for key, value in event.items():
                _attribute_element(event_element, key, value)

    logger.info(f"[XES] Exported {len(log)} traces")
    return etree.tostring(root, pretty_print=True, xml_declaration=True, encoding="UTF-8")
