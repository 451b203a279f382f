"""Shared fixtures."""

import random
from pathlib import Path

import pytest

from src.discovery import discover_alpha
from src.eventlog import EventLog
from src.petrinet import AcceptingPetriNet
from tests.helpers import request_handling_net, make_log

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240101)


@pytest.fixture
def abd_acd_log() -> EventLog:
    """[<a,b,d> x2, <a,c,d> x3]"""
    return make_log(["abd", "abd", "acd", "acd", "acd"])


@pytest.fixture
def alpha_net(abd_acd_log) -> AcceptingPetriNet:
    return discover_alpha(abd_acd_log)


@pytest.fixture
def request_net() -> AcceptingPetriNet:
    return request_handling_net()
