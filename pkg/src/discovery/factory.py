"""
Single entry point for process discovery.

Each algorithm registers a variant function and a parameter model. Parameter
maps are validated strictly: unknown keys fail instead of being ignored.
"""

import logging
from typing import Any, Callable, Dict, Mapping, Optional, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.discovery.alpha import AlphaVariant, discover_alpha
from src.discovery.imdf import discover_imdf
from src.errors import InvalidParameterError, UnknownAlgorithmError, UnknownParameterError
from src.eventlog.model import CONCEPT_NAME, Classifier, EventLog
from src.petrinet.conversion import tree_to_petri
from src.petrinet.model import AcceptingPetriNet

logger = logging.getLogger(__name__)


class DiscoveryParameters(BaseModel):
    """Parameters shared by every discovery algorithm."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    activity_key: str = Field(default=CONCEPT_NAME, min_length=1, description="Activity attribute")

    @property
    def classifier(self) -> Classifier:
        return Classifier(name="activity", keys=(self.activity_key,))


class AlphaParameters(DiscoveryParameters):
    pass


class ImdfParameters(DiscoveryParameters):
    noise_threshold: float = Field(default=0.0, ge=0.0, le=1.0, description="Edge filter fraction")


def _alpha(log: EventLog, params: AlphaParameters) -> AcceptingPetriNet:
    return discover_alpha(log, AlphaVariant.CLASSIC, params.classifier)


def _alpha_plus(log: EventLog, params: AlphaParameters) -> AcceptingPetriNet:
    return discover_alpha(log, AlphaVariant.PLUS, params.classifier)


def _imdf(log: EventLog, params: ImdfParameters) -> AcceptingPetriNet:
    return tree_to_petri(discover_imdf(log, params.noise_threshold, params.classifier))


VARIANTS: Dict[str, Callable[[EventLog, Any], AcceptingPetriNet]] = {
    "alpha": _alpha,
    "alpha-plus": _alpha_plus,
    "imdf": _imdf,
}

PARAMETERS: Dict[str, Type[DiscoveryParameters]] = {
    "alpha": AlphaParameters,
    "alpha-plus": AlphaParameters,
    "imdf": ImdfParameters,
}


def resolve_parameters(algorithm: str, params: Optional[Mapping[str, Any]] = None) -> DiscoveryParameters:
    """
    Validate a parameter map for an algorithm.

    Raises:
        UnknownAlgorithmError: If the algorithm is not registered
        UnknownParameterError: If a key is not a parameter of the algorithm
        InvalidParameterError: If a value is out of range
    """
    if algorithm not in VARIANTS:
        raise UnknownAlgorithmError(algorithm, tuple(VARIANTS))
    model = PARAMETERS[algorithm]
    try:
        return model(**dict(params or {}))
    except ValidationError as e:
        for error in e.errors():
            if error["type"] == "extra_forbidden":
                raise UnknownParameterError(str(error["loc"][0]), algorithm) from e
        raise InvalidParameterError(f"Invalid parameters for '{algorithm}': {e}") from e


def discover(
    log: EventLog, algorithm: str = "alpha", params: Optional[Mapping[str, Any]] = None
) -> AcceptingPetriNet:
    """
    Discover an accepting Petri net.

    Args:
        log: Event log
        algorithm: One of "alpha", "alpha-plus", "imdf"
        params: Parameter map; keys must belong to the chosen algorithm

    Returns:
        AcceptingPetriNet (IMDF trees are converted with tree_to_petri)
    """
    parameters = resolve_parameters(algorithm, params)
    logger.info(f"[DISCOVER] Running {algorithm} with {parameters.model_dump()}")
    return VARIANTS[algorithm](log, parameters)
