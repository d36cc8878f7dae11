import json
import math

import jsonschema
import numpy as np
import pytest

import crnepi


def test_fixtures_load():
    names = crnepi.fixture_names()
    assert "sirs_demography.crn" in names
    net = crnepi.load("sir")
    assert net.species == ["S", "I", "R"]
    assert crnepi.parse(net.to_dsl()).n_reactions == net.n_reactions


def test_structure_values():
    net = crnepi.load("sirs_demography")
    assert crnepi.deficiency(net) == 1
    assert not crnepi.is_weakly_reversible(net)
    report = crnepi.analyze(net)
    assert report["structure"]["n_linkage_classes"] == 2


def test_sir_threshold_closed_form():
    net = crnepi.load("sir").with_params({"Lambda": 0.2, "beta": 3.0, "gamma": 1.0})
    assert math.isclose(crnepi.r0(net), 3.0 / 1.2, rel_tol=1e-12)


def test_rhs_and_jacobian():
    net = crnepi.load("sis")
    x = np.array([0.3])
    beta, gamma = net.params["beta"], net.params["gamma"]
    assert crnepi.ode_rhs(net, x)[0] == pytest.approx(beta * 0.3 * 0.7 - gamma * 0.3, rel=1e-14)
    assert crnepi.ode_jacobian(net, x)[0, 0] == pytest.approx(beta * (1 - 0.6) - gamma, rel=1e-14)


def test_replacement_number_sair():
    assert crnepi.replacement_number("sair") == pytest.approx(1.5, rel=1e-12)


def test_ssa_deterministic():
    net = crnepi.load("birth_death")
    a = crnepi.ssa(net, [3], 5.0, seed=4)
    b = crnepi.ssa(net, [3], 5.0, seed=4)
    assert a == b
    assert a[0][0] == 0.0


def test_escape_action_immigration_death():
    net = crnepi.load("birth_death")
    action, drift = crnepi.escape_action(net, np.array([2.0]), np.array([0.0]))
    assert action == pytest.approx(2.0, abs=1e-5)
    assert drift < 1e-5


def test_errors_raise():
    with pytest.raises(crnepi.CrnError, match="SyntaxError"):
        crnepi.parse("species A\nreactions\n  A -> : k\n")
    with pytest.raises(crnepi.CrnError):
        crnepi.ngm(crnepi.load("four_species_zd"))


CLI_CASES = [
    ("analyze", ["--json", "analyze", "sair"]),
    ("analyze", ["--json", "analyze", "four_species_zd"]),
    ("analyze", ["--json", "analyze", "envz_ompr"]),
    ("ngm", ["--json", "ngm", "sair", "--sirph", "sair"]),
    ("ngm", ["--json", "ngm", "tonello"]),
    ("sirph", ["--json", "sirph", "sliar", "--network", "sliar"]),
    ("sirph", ["--json", "sirph", "sair"]),
    ("translate", ["--json", "translate", "tonello"]),
    ("simulate", ["--json", "simulate", "sirs_demography", "--init", "S=20,I=2", "--runs", "2", "--tmax", "2"]),
    ("simulate", ["--json", "simulate", "sir", "--ode", "--init", "S=0.9,I=0.1", "--tmax", "2"]),
    ("escape", ["--json", "escape", "sis", "--from", "0.5", "--to", "0"]),
    ("phasetype", ["--json", "phasetype", "sair_progression", "--samples", "500"]),
    ("phasetype", ["--json", "phasetype", "sair_progression"]),
    ("fixtures", ["--json", "fixtures"]),
]


@pytest.mark.parametrize("name,args", CLI_CASES)
def test_cli_json_matches_schema(schema, name, args):
    code, out, err = crnepi.cli(args)
    assert code == 0, err
    jsonschema.validate(json.loads(out), schema(name))


def test_cli_exit_codes():
    assert crnepi.run("analyze", "no_such_network.crn")[0] == 2
    assert crnepi.run("ngm", "four_species_zd")[0] == 3
    assert crnepi.run("--help")[0] == 0
