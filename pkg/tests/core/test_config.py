from argparse import Namespace

import pytest

from matchstream.config import Config
from matchstream.constants import (
    DEFAULT_MEM_C,
    DEFAULT_MEM_LOGK,
    DEFAULT_SEED,
    ORACLE_MAX_EDGES,
    ORACLE_MAX_VERTICES,
    THREADS_ENV_VAR,
)
from matchstream.exceptions import BudgetViolationError, ParameterError, ValidationError
from matchstream.stream import charge


@pytest.fixture
def namespace(monkeypatch):
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
    return Namespace()


def test_config_defaults(namespace):
    config = Config(namespace)
    assert config.seed == DEFAULT_SEED
    assert config.threads >= 1
    assert config.mem_c == DEFAULT_MEM_C
    assert config.mem_logk == DEFAULT_MEM_LOGK
    assert config.strict_memory is False
    assert config.oracle_budget.max_vertices == ORACLE_MAX_VERTICES
    assert config.oracle_budget.max_edges == ORACLE_MAX_EDGES


def test_config_with_threads_env_var(namespace, monkeypatch):
    monkeypatch.setenv(THREADS_ENV_VAR, "3")
    assert Config(namespace).threads == 3


def test_config_with_cli_threads_overrides_env_var(namespace, monkeypatch):
    monkeypatch.setenv(THREADS_ENV_VAR, "3")
    namespace.threads = 5
    assert Config(namespace).threads == 5


@pytest.mark.parametrize("threads,error", (("many", ValidationError), ("0", ParameterError)))
def test_config_rejects_invalid_threads_env_var(namespace, monkeypatch, threads, error):
    monkeypatch.setenv(THREADS_ENV_VAR, threads)
    with pytest.raises(error):
        Config(namespace)


@pytest.mark.parametrize("seed", (-1, 2 ** 64))
def test_config_rejects_seeds_outside_u64(namespace, seed):
    namespace.seed = seed
    with pytest.raises(ParameterError):
        Config(namespace)


@pytest.mark.parametrize(
    "field,value",
    (("mem_c", 0), ("mem_logk", -1), ("oracle_max_vertices", 0), ("oracle_max_edges", 0)),
)
def test_config_rejects_non_positive_budgets(namespace, field, value):
    setattr(namespace, field, value)
    with pytest.raises(ParameterError):
        Config(namespace)


def test_config_builds_strict_meter(config):
    meter = config.make_meter(4)
    with pytest.raises(BudgetViolationError):
        charge(meter, meter.budget + 1, "scratch")
