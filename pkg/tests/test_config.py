import pytest

from swmac import ExperimentConfig, ParseError, PowerBudget, ValidationError
from swmac.config import (
    DEFAULT_RATE_GRID,
    RateGrid,
    load_config,
    parse_config,
    preset_config,
    preset_description,
    preset_names,
)

MINIMAL = """
# minimal config: only budgets
[budget]
p1 = 1
p2 = 5
noise = 1e-5
"""


def test_minimal_config_applies_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.budgets == (PowerBudget(0.0, 1.0, 5.0, 1e-5),)
    assert cfg.marginals.lambda1 == 1.0  # sigma^2 = 0.5 on both branches
    assert cfg.marginals.lambda2 == 1.0
    assert cfg.seed == 1
    assert cfg.mc_samples == 1_000_000
    assert cfg.quad_tol == 1e-10
    assert cfg.methods == ("closed-form", "quadrature", "monte-carlo")
    assert [t.theta for t in cfg.thetas] == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert cfg.output_path is None


def test_load_config_reads_file(tmp_path):
    path = tmp_path / "cfg.txt"
    path.write_text(MINIMAL)
    assert load_config(path) == parse_config(MINIMAL)


def test_full_config_round_trip():
    cfg = parse_config(
        """
        seed = 42
        mc_samples = 5000
        quad_tol = 1e-8
        methods = quadrature, monte-carlo
        thetas = -0.5, 0.5
        rate_start = 0.2
        rate_stop = 1.0
        rate_step = 0.2
        lambda1 = 2
        lambda2 = 3
        output = out.csv
        [budget]
        p0 = 0.1
        p1 = 1
        p2 = 2
        noise = 0.5
        [budget]
        p1 = 3
        p2 = 4
        noise = 0.25
        """
    )
    assert cfg.seed == 42
    assert cfg.mc_samples == 5000
    assert cfg.methods == ("quadrature", "monte-carlo")
    assert cfg.marginals.lambda1 == 2.0
    assert len(cfg.budgets) == 2
    assert cfg.budgets[1].p0 == 0.0
    assert cfg.rate_grid.values() == (0.2, 0.4, 0.6000000000000001, 0.8, 1.0)
    assert cfg.output_path == "out.csv"


def test_theta_out_of_range_is_validation_error():
    with pytest.raises(ValidationError):
        parse_config("thetas = 1.5\n" + MINIMAL)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("bogus = 1\n" + MINIMAL, "unknown key"),
        ("seed = 1\nseed = 2\n" + MINIMAL, "duplicate"),
        ("seed\n" + MINIMAL, "key = value"),
        ("seed =\n" + MINIMAL, "missing value"),
        ("[other]\n" + MINIMAL, "unknown section"),
        ("seed = abc\n" + MINIMAL, "not an integer"),
        (MINIMAL + "\n[budget]\np1 = 1\np2 = 1\nnoise = 1\nseed = 2\n", "unknown key"),
    ],
)
def test_parse_errors_carry_line_numbers(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_config(text)
    assert fragment in str(err.value)
    assert "line" in str(err.value)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("", "at least one"),
        ("[budget]\np1 = 1\np2 = 1\n", "missing key 'noise'"),
        ("sigma1_sq = 0.5\nlambda1 = 1\n" + MINIMAL, "not both"),
        ("methods = bogus\n" + MINIMAL, "unknown method"),
        ("methods = monte-carlo\nmc_samples = 10\n" + MINIMAL, "mc_samples"),
        ("quad_tol = 0.5\n" + MINIMAL, "quad_tol"),
        ("rate_step = -1\n" + MINIMAL, "step"),
        ("sigma1_sq = -0.5\n" + MINIMAL, "sigma1_sq"),
        ("[budget]\np0 = 2\np1 = 1\np2 = 1\nnoise = 1\n", "p0"),
    ],
)
def test_validation_errors_name_the_violated_invariant(text, fragment):
    with pytest.raises(ValidationError) as err:
        parse_config(text)
    assert fragment in str(err.value)


def test_comments_and_blank_lines_ignored():
    cfg = parse_config("# leading comment\n\nseed = 9  # trailing\n" + MINIMAL)
    assert cfg.seed == 9


def test_rate_grid_single_point():
    grid = RateGrid(0.5, 0.5, 0.1)
    assert grid.values() == (0.5,)


def test_rate_grid_lands_exactly_on_stop():
    values = DEFAULT_RATE_GRID.values()
    assert len(values) == 30
    assert values[0] == 0.1
    assert values[-1] == 3.0


def test_rate_grid_partial_final_step():
    assert RateGrid(0.0, 0.25, 0.1).values() == (0.0, 0.1, 0.2)


def test_experiment_config_validation():
    budget = PowerBudget(0.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValidationError):
        ExperimentConfig(budgets=())
    with pytest.raises(ValidationError):
        ExperimentConfig(budgets=(budget,), methods=())
    with pytest.raises(ValidationError):
        ExperimentConfig(budgets=(budget,), methods=("quadrature", "quadrature"))
    with pytest.raises(ValidationError):
        ExperimentConfig(budgets=(budget,), mc_samples=10)
    cfg = ExperimentConfig(budgets=(budget,), methods=("quadrature",), mc_samples=10)
    assert cfg.mc_samples == 10  # no Monte Carlo selected, small n is fine


def test_with_overrides():
    cfg = parse_config(MINIMAL)
    out = cfg.with_overrides(seed=7, methods=("quadrature",), output_path="x.csv")
    assert out.seed == 7
    assert out.methods == ("quadrature",)
    assert out.output_path == "x.csv"
    assert out.budgets == cfg.budgets
    assert cfg.with_overrides() is cfg


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------


def test_preset_names_and_descriptions():
    assert preset_names() == ("fig2", "fig3", "fig4")
    for name in preset_names():
        assert preset_description(name)
    with pytest.raises(ValidationError):
        preset_config("fig9")


def test_fig2_preset_budgets():
    cfg = preset_config("fig2")
    assert cfg.budgets == (
        PowerBudget(0.0, 1.0, 5.0, 1e-5),
        PowerBudget(0.0, 1.0, 10.0, 1e-5),
    )
    assert cfg.marginals.lambda1 == 1.0
    assert cfg.marginals.lambda2 == 1.0


def test_fig3_preset_budgets_and_nondegenerate_marginals():
    cfg = preset_config("fig3")
    assert cfg.budgets == (PowerBudget(0.0, 1.0, 1.0, 1e-5),)
    # Equal powers give weight ratio 1; the preset marginals must keep all
    # three closed-form denominators away from zero.
    l1, l2 = cfg.marginals.lambda1, cfg.marginals.lambda2
    for denom in (l2 - l1, 2.0 * l2 - l1, l2 - 2.0 * l1):
        assert abs(denom) > 1e-9 * l2


def test_fig4_preset_budgets():
    cfg = preset_config("fig4")
    assert cfg.budgets == (
        PowerBudget(0.0, 5.0, 1.0, 1e-5),
        PowerBudget(0.0, 10.0, 1.0, 1e-5),
    )


def test_presets_carry_inert_annotations():
    cfg = preset_config("fig2")
    assert cfg.annotations["path_loss_exponent"] == "2.8"
    assert cfg.annotations["rate1_mbps"] == "0.44"
    assert cfg.annotations["rate2_mbps"] == "1.75"
