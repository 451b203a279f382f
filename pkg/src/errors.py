"""
Error hierarchy for procmine.

Every failure raised by the library belongs to one of three families, and each
family carries the exit code the command-line interface reports for it:

- UsageError (exit 1): bad flags, unknown algorithms or parameters, bad configuration.
- DataError (exit 2): malformed or unsuitable input data (logs, CSV files, nets).
- AlgorithmError (exit 3): an algorithm could not complete (search budget, state bound).
"""

from typing import Optional, Tuple


class ProcmineError(Exception):
    """Base class of all procmine errors."""

    exit_code: int = 2


class UsageError(ProcmineError):
    """Invalid invocation: flags, parameter maps, configuration."""

    exit_code = 1


class DataError(ProcmineError, ValueError):
    """Input data violates a precondition of the requested operation."""

    exit_code = 2


class AlgorithmError(ProcmineError, RuntimeError):
    """An algorithm stopped before producing a result."""

    exit_code = 3


# Configuration and parameters


class ConfigurationError(UsageError):
    """An environment setting holds an invalid value."""


class UnknownAlgorithmError(UsageError):
    def __init__(self, algorithm: str, available: Tuple[str, ...]):
        self.algorithm = algorithm
        self.available = available
        super().__init__(
            f"Unknown algorithm '{algorithm}' (available: {', '.join(available)})"
        )


class UnknownParameterError(UsageError):
    def __init__(self, name: str, algorithm: str):
        self.name = name
        self.algorithm = algorithm
        super().__init__(f"Unknown parameter '{name}' for algorithm '{algorithm}'")


class InvalidParameterError(UsageError):
    """A known parameter received a value outside its domain."""


# Event data


class MissingCaseIdError(DataError):
    def __init__(self, index: int, key: str):
        self.index = index
        self.key = key
        super().__init__(f"Event #{index} has no case identifier under '{key}'")


class MissingKeyError(DataError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"Event has no attribute '{key}' required by the classifier")


class DuplicateCaseIdError(DataError):
    def __init__(self, case_id: str):
        self.case_id = case_id
        super().__init__(f"Case identifier '{case_id}' appears in more than one trace")


# Ingestion


class XesSyntaxError(DataError):
    """Malformed XES document; carries the 1-based line and column when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        position = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"XES syntax error{position}: {message}")


class UnsupportedAttributeTypeError(DataError):
    def __init__(self, tag: str, key: str, line: Optional[int] = None):
        self.tag = tag
        self.key = key
        self.line = line
        super().__init__(f"Unsupported XES attribute <{tag} key='{key}'> at line {line}")


class XesExportError(DataError):
    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"Attribute '{key}' cannot be written as XES: {message}")


class CsvEncodingError(DataError):
    def __init__(self, position: int, reason: str):
        self.position = position
        super().__init__(f"CSV is not valid UTF-8 at byte {position}: {reason}")


class MissingColumnError(DataError):
    def __init__(self, column: str):
        self.column = column
        super().__init__(f"CSV header has no column '{column}'")


class BadTimestampError(DataError):
    def __init__(self, row: int, value: str):
        self.row = row
        self.value = value
        super().__init__(f"Row {row}: cannot parse timestamp '{value}'")


# Petri nets and process trees


class InvalidNetError(DataError):
    """Net structure violates the bipartite or unique-id rules."""


class ForeignPlaceError(DataError):
    def __init__(self, place: str):
        self.place = place
        super().__init__(f"Marking references place '{place}' which is not in the net")


class NotEnabledError(DataError):
    def __init__(self, transition: str):
        self.transition = transition
        super().__init__(f"Transition '{transition}' is not enabled")


class MalformedTreeError(DataError):
    """Process tree node violates arity rules."""


class StateSpaceExceededError(AlgorithmError):
    def __init__(self, bound: int, count: int):
        self.bound = bound
        self.count = count
        super().__init__(f"Reachability graph exceeded the bound of {bound} states ({count} reached)")


# Discovery


class EmptyTraceError(DataError):
    def __init__(self, case_id: str):
        self.case_id = case_id
        super().__init__(f"Trace '{case_id}' is empty; the Alpha miner needs non-empty traces")


class NoStartOrEndError(DataError):
    """Log yields no start or end activities."""


# Conformance


class DuplicateLabelError(DataError):
    def __init__(self, label: str, transitions: Tuple[str, ...]):
        self.label = label
        self.transitions = transitions
        super().__init__(
            f"Label '{label}' is shared by transitions {', '.join(transitions)}; "
            "token replay needs unique labels"
        )


class NoFinalMarkingPathError(AlgorithmError):
    """The final marking cannot be reached from the initial marking."""


class SearchBudgetExceededError(AlgorithmError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"Alignment search expanded more than {budget} states")


# Evaluation and analytics


class EmptyNetError(DataError):
    """Net has neither places nor transitions."""


class MissingTimestampError(DataError):
    def __init__(self, case_id: str):
        self.case_id = case_id
        super().__init__(f"Trace '{case_id}' has events without 'time:timestamp'")


class EmptyLogError(DataError):
    """Operation needs at least one value to work with."""


class NonNumericValueError(DataError):
    def __init__(self, key: str, value: object):
        self.key = key
        self.value = value
        super().__init__(f"Attribute '{key}' holds non-numeric value {value!r}")


class NoResourcesError(DataError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"No event carries the resource attribute '{key}'")


# Rendering


class MalformedObjectError(DataError):
    """Object handed to the renderer is unsupported or invalid."""


class DotSyntaxError(DataError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"DOT syntax error at offset {position}: {message}")
