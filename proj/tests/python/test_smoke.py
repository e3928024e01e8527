# Copyright 2026 The qrouter Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the Python bindings.

The heavy numeric checks live in the C++ suites; these make sure the
bindings expose the same behavior through Python types.
"""

import json
import math

import pytest

import qrouter


def test_plan_round_trip_and_labels():
    plan = qrouter.build_plan(5)
    assert plan.node_count == 5
    assert plan.color_count == 5
    assert plan.wavelength(0, 1) == 2
    assert plan.wavelength(1, 0) == 2

    assert qrouter.node_label(0) == "A"
    assert qrouter.node_label(27) == "AB"
    assert qrouter.node_from_label("AB") == 27
    assert qrouter.node_from_label("a?") is None

    doc = json.loads(plan.to_json())
    assert doc["n"] == 5
    assert doc["table"][0] == [2, 3, 4, 5]

    reparsed = qrouter.parse_plan(plan.to_json())
    assert reparsed.to_table() == plan.to_table()
    assert qrouter.verify_plan(reparsed).valid


def test_routing_inverts_the_table():
    plan = qrouter.build_plan(8)
    for u in range(8):
        for v in range(8):
            if u == v:
                continue
            w = plan.wavelength(u, v)
            assert plan.route(u, w) == v
            assert plan.route(v, w) == u
    # Wavelength 9 does not exist in a 7-color plan.
    assert plan.route(0, 9) is None


def test_verify_flags_tampering():
    plan = qrouter.build_plan(4)
    plan.assign_one_way(0, 1, 3)
    report = qrouter.verify_plan(plan)
    assert not report.valid
    kinds = {violation.kind for violation in report.violations}
    assert "asymmetry" in kinds or "duplicate-at-vertex" in kinds


def test_photonics_reference_numbers():
    spec = qrouter.MuxSpec()
    assert qrouter.router_insertion_loss_db(spec) == 10.0
    assert qrouter.db_to_ratio(10.0) == pytest.approx(0.1, rel=1e-12)
    assert qrouter.leak_ratio_per_pass(spec, 1) == pytest.approx(1e-3, rel=1e-12)
    assert qrouter.two_pass_crosstalk_ratio(spec, 1) == pytest.approx(
        1e-5, rel=1e-12
    )

    assessment = qrouter.worst_case_crosstalk_sum(spec, 10.0, 20)
    assert assessment.worst_case_sum == pytest.approx(5.7e-4, abs=1e-7)
    assert assessment.truncated_sum == pytest.approx(5.6e-4, abs=1e-7)
    assert assessment.interferer_count == 39

    bad = qrouter.MuxSpec()
    bad.insertion_loss_db = -1.0
    with pytest.raises(ValueError):
        bad.validate()


def test_simulation_is_deterministic_and_self_checking():
    config = qrouter.SimConfig()
    config.trials = 50_000
    config.seed = 7

    config.workers = 1
    first = qrouter.simulate_router_transit(config)
    config.workers = 4
    second = qrouter.simulate_router_transit(config)

    assert first.tallies.delivered == second.tallies.delivered
    assert first.tallies.leaked == second.tallies.leaked
    assert first.tallies.repeated_leak == second.tallies.repeated_leak
    assert first.generator == qrouter.GENERATOR_ID

    total = (
        first.tallies.delivered
        + first.tallies.lost
        + first.tallies.leaked_total()
    )
    assert total == config.trials

    assert first.expected.clean_delivered == pytest.approx(0.1, rel=1e-12)
    ratio = first.expected.repeated_leak[1] / first.expected.clean_delivered
    assert ratio == pytest.approx(1e-5, rel=1e-12)

    verdict = qrouter.compare_to_analytic(first)
    assert verdict.pass_
    assert bool(verdict)

    shards = qrouter.merge_tallies(
        qrouter.run_trials(config, 0, 20_000),
        qrouter.run_trials(config, 20_000, 50_000),
    )
    assert shards.delivered == first.tallies.delivered
    assert shards.leaked == first.tallies.leaked


def test_network_budget_and_reach():
    users = [qrouter.UserPort(i, 25.0) for i in range(40)]
    net = qrouter.StarNetwork(qrouter.build_plan(40), qrouter.MuxSpec(), users)
    policy = qrouter.FeasibilityPolicy()

    budget = qrouter.link_budget(net, 0, 1, policy)
    assert budget.total_loss_db == pytest.approx(20.0, rel=1e-12)
    assert budget.wavelength == 2
    assert budget.feasible

    report = qrouter.network_report(net, policy)
    assert report.pair_count == 780
    assert report.all_feasible

    reach = qrouter.max_reach_km(net, policy)
    assert reach.per_arm_km == pytest.approx(25.0, abs=1e-9)
    assert reach.end_to_end_km == pytest.approx(50.0, abs=1e-9)

    csv = report.to_csv()
    assert csv.splitlines()[0] == "u,v,wavelength,loss_db,crosstalk,feasible"


def test_config_parsing_errors_are_precise():
    cfg = qrouter.parse_config('{"sim": {"trials": 5000, "seed": 9}}')
    assert cfg.sim.trials == 5000
    assert cfg.sim.seed == 9
    assert len(cfg.users) == 40

    with pytest.raises(ValueError, match="/mux/chanel_count: unknown key"):
        qrouter.parse_config('{"mux": {"chanel_count": 40}}', "cfg.json")

    net = qrouter.make_network(qrouter.default_config())
    assert len(net.users) == 40
    assert net.plan.color_count == 39


def test_unphysical_spec_raises():
    config = qrouter.SimConfig()
    config.trials = 10
    config.spec.insertion_loss_db = 0.0
    config.spec.adjacent_crosstalk_db = -0.01
    config.spec.nonadjacent_crosstalk_db = -0.01
    with pytest.raises(ValueError):
        qrouter.simulate_router_transit(config)
    assert math.isfinite(qrouter.db_to_ratio(0.0))
