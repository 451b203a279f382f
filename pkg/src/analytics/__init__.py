"""Log analytics: filters, statistics, time series, attribute distributions, social networks."""

from src.analytics.filters import (
    AttributeFilter,
    AttributeLevel,
    CasePerformanceFilter,
    EndpointsFilter,
    FilterAction,
    FilterSpec,
    PathFilter,
    TimeFrameFilter,
    TimeFrameMode,
    VariantsFilter,
    filter_log,
    parse_filter,
    split_variant_key,
    trace_span,
)
from src.analytics.graphs import (
    Histogram,
    TimeSeriesKind,
    attribute_distribution,
    equal_width_histogram,
    time_series,
)
from src.analytics.sna import SNAMetric, SNAResult, sna
from src.analytics.statistics import CaseInfo, CaseStats, DurationSummary, case_statistics

__all__ = [
    "AttributeFilter",
    "AttributeLevel",
    "CaseInfo",
    "CasePerformanceFilter",
    "CaseStats",
    "DurationSummary",
    "EndpointsFilter",
    "FilterAction",
    "FilterSpec",
    "Histogram",
    "PathFilter",
    "SNAMetric",
    "SNAResult",
    "TimeFrameFilter",
    "TimeFrameMode",
    "TimeSeriesKind",
    "VariantsFilter",
    "attribute_distribution",
    "case_statistics",
    "equal_width_histogram",
    "filter_log",
    "parse_filter",
    "sna",
    "split_variant_key",
    "time_series",
    "trace_span",
]
