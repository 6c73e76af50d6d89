"""Shared fixtures: seed trees from the corpus and the small Schreier graphs built from them."""

from pathlib import Path

import pytest

from src.mealy import build_automaton
from src.schreier import build_schreier
from src.settings import LimitsSettings, Settings, VerifySettings
from src.tree_core import path_tree, spider_tree, star_tree

ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = ROOT / "data" / "corpus"


def gamma(tree, n):
    return build_schreier(build_automaton(tree), n)


@pytest.fixture
def p2():
    return path_tree(2)


@pytest.fixture
def p3():
    return path_tree(3)


@pytest.fixture
def p4():
    return path_tree(4)


@pytest.fixture
def s4():
    return star_tree(4)


@pytest.fixture
def spider():
    return spider_tree((2, 2, 1))


@pytest.fixture
def gamma_p3_1(p3):
    return gamma(p3, 1)


@pytest.fixture
def gamma_p3_2(p3):
    return gamma(p3, 2)


@pytest.fixture
def fast_settings():
    """Defaults with a short involution sample so verification tests stay quick."""
    return Settings(
        limits=LimitsSettings(involution_words=50),
        verify=VerifySettings(max_vertices=16),
    )


@pytest.fixture
def no_config(tmp_path):
    """A config path that does not exist: built-in defaults, console-only logging."""
    return str(tmp_path / "missing.yaml")


@pytest.fixture
def build_gamma():
    return gamma
