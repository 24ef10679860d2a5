from __future__ import annotations

from types import SimpleNamespace

import pytest

from rainbowthreshold.budget import DEFAULT_LIMITS, Budget, resolve
from rainbowthreshold.errors import BudgetExceededError


def test_default_budget_copies_the_limits() -> None:
    budget = Budget()
    budget.limits["orderings"] = 1

    assert DEFAULT_LIMITS["orderings"] == 1_000_000
    assert Budget().limit("orderings") == 1_000_000


def test_require_reports_the_requested_amount() -> None:
    budget = Budget(limits={"sequences": 10}, time_limit=None)

    budget.require("sequences", 10)
    with pytest.raises(BudgetExceededError) as excinfo:
        budget.require("sequences", 11)

    assert excinfo.value.context == {"budget": "sequences", "requested": 11, "limit": 10}


def test_charge_counts_until_the_limit() -> None:
    budget = Budget(limits={"search_nodes": 3}, time_limit=None)

    budget.charge("search_nodes", 2)
    budget.charge("search_nodes")
    assert budget.used == {"search_nodes": 3}

    with pytest.raises(BudgetExceededError) as excinfo:
        budget.charge("search_nodes")
    assert excinfo.value.context["budget"] == "search_nodes"


def test_unlimited_budget_never_fails() -> None:
    budget = Budget.unlimited()

    budget.require("sequences", 10**30)
    budget.charge("orderings", 10**9)

    assert budget.limit("orderings") is None


def test_expired_deadline_raises_on_check() -> None:
    budget = Budget(time_limit=1.0, _started=0.0)

    with pytest.raises(BudgetExceededError) as excinfo:
        budget.check_time()

    assert excinfo.value.context["budget"] == "time"


def test_spawn_shares_the_deadline_but_not_the_counters() -> None:
    parent = Budget(limits={"orderings": 5}, time_limit=1.0, _started=0.0)
    parent.charge("orderings", 4)

    child = parent.spawn()
    child.limits["orderings"] = 50

    assert child.used == {}
    assert parent.limit("orderings") == 5
    with pytest.raises(BudgetExceededError) as excinfo:
        child.check_time()
    assert excinfo.value.context["budget"] == "time"


def test_from_defaults_reads_the_resolved_settings() -> None:
    defaults = SimpleNamespace(budget_limits={"iso_vertices": 4}, time_limit=5.0)

    budget = Budget.from_defaults(defaults)

    assert budget.limits == {"iso_vertices": 4}
    assert budget.time_limit == 5.0


def test_resolve_keeps_a_given_budget() -> None:
    budget = Budget(time_limit=None)

    assert resolve(budget) is budget
    assert isinstance(resolve(None), Budget)
