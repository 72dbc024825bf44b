"""Tests for configuration loading, defaults, and override precedence."""

import numpy as np
import pytest

from cachesec import ParameterError
from cachesec.config import DEFAULTS, ExperimentConfig, SweepGrid, load_config


class TestSweepGrid:
    def test_linear_values(self):
        grid = SweepGrid(start=0.0, stop=1.0, points=5)
        assert np.allclose(grid.values(), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_log_values(self):
        grid = SweepGrid(start=0.1, stop=10.0, points=3, spacing="log")
        assert np.allclose(grid.values(), [0.1, 1.0, 10.0])

    def test_validation(self):
        with pytest.raises(ParameterError):
            SweepGrid(start=0.0, stop=1.0, points=1)
        with pytest.raises(ParameterError):
            SweepGrid(start=1.0, stop=1.0, points=3)
        with pytest.raises(ParameterError):
            SweepGrid(start=0.0, stop=1.0, points=4, spacing="cubic")
        with pytest.raises(ParameterError):
            SweepGrid(start=0.0, stop=1.0, points=4, spacing="log")


class TestDefaults:
    def test_load_without_file_gives_documented_defaults(self):
        cfg = load_config()
        assert cfg.params.lambda_b == 1.0
        assert cfg.params.lambda_e == 5.0
        assert cfg.params.lambda_u == 100.0
        assert cfg.params.pathloss_beta == 4.0
        assert cfg.params.power_split == 0.5
        assert cfg.params.interference_limited is True
        assert cfg.content.file_count == 100
        assert cfg.content.cache_size == 5
        assert cfg.content.zipf_skew == 0.8
        assert cfg.trials == 0
        assert cfg.seed == 0
        assert cfg.mc_mode == "off"
        assert cfg.theta_grid.points == 19
        assert cfg.density_grid.spacing == "log"
        assert cfg.threshold_grid.stop == 4.0
        assert cfg.threshold_ratios == (0.5, 5.0)

    def test_every_defaults_entry_round_trips(self):
        cfg = load_config()
        lines = cfg.echo_lines()
        assert any(line.startswith("system.lambda_e = 5") for line in lines)
        assert "monte_carlo.trials = auto" in lines
        assert "monte_carlo.mode = off" in lines

    def test_mc_config_off_by_default(self):
        assert load_config().mc_config(1000) is None

    def test_mc_config_auto_trials(self):
        cfg = load_config(overrides={("monte_carlo", "mode"): "decoupled"})
        mc = cfg.mc_config(1234)
        assert mc is not None
        assert mc.trials == 1234
        assert mc.coupling_mode == "decoupled"
        assert mc.include_noise is False

    def test_mc_config_explicit_trials_win(self):
        cfg = load_config(
            overrides={("monte_carlo", "mode"): "coupled", ("monte_carlo", "trials"): "77"}
        )
        mc = cfg.mc_config(1234)
        assert mc.trials == 77
        assert mc.coupling_mode == "coupled"


class TestConfigFile:
    def write(self, tmp_path, text):
        path = tmp_path / "run.ini"
        path.write_text(text)
        return str(path)

    def test_file_values_override_defaults(self, tmp_path):
        path = self.write(
            tmp_path,
            """
[system]
lambda_e = 2.5
noise = on

[content]
cache_size = 10

[monte_carlo]
mode = decoupled
trials = 500
seed = 9
""",
        )
        cfg = load_config(path)
        assert cfg.params.lambda_e == 2.5
        assert cfg.params.interference_limited is False
        assert cfg.content.cache_size == 10
        assert cfg.trials == 500
        assert cfg.seed == 9
        # untouched sections keep their defaults
        assert cfg.theta_grid.points == 19

    def test_overrides_beat_file(self, tmp_path):
        path = self.write(tmp_path, "[system]\nlambda_e = 2.5\n")
        cfg = load_config(path, overrides={("system", "lambda_e"): "7.0"})
        assert cfg.params.lambda_e == 7.0

    def test_inline_comments_and_lists(self, tmp_path):
        path = self.write(
            tmp_path,
            """
[sweep_theta]
alphas = 0.1, 0.9  ; two extremes
points = 5

[sweep_density]
cache_sizes = 5,25
""",
        )
        cfg = load_config(path)
        assert cfg.theta_alphas == (0.1, 0.9)
        assert cfg.theta_grid.points == 5
        assert cfg.density_cache_sizes == (5, 25)

    def test_missing_file_rejected(self):
        with pytest.raises(ParameterError):
            load_config("/nonexistent/run.ini")

    def test_unknown_section_rejected(self, tmp_path):
        path = self.write(tmp_path, "[systems]\nlambda_e = 2\n")
        with pytest.raises(ParameterError):
            load_config(path)

    def test_unknown_key_rejected(self, tmp_path):
        path = self.write(tmp_path, "[system]\nlambda_x = 2\n")
        with pytest.raises(ParameterError):
            load_config(path)

    def test_top_level_keys_rejected(self, tmp_path):
        path = self.write(tmp_path, "lambda_e = 2\n[system]\n")
        with pytest.raises(ParameterError):
            load_config(path)

    def test_malformed_values_rejected(self, tmp_path):
        for body in (
            "[system]\nlambda_e = fast\n",
            "[system]\nnoise = sometimes\n",
            "[monte_carlo]\nmode = always\n",
            "[monte_carlo]\ntrials = 2.5\n",
            "[sweep_theta]\nalphas = a,b\n",
        ):
            with pytest.raises(ParameterError):
                load_config(self.write(tmp_path, body))

    def test_invalid_physics_rejected_at_load(self, tmp_path):
        path = self.write(tmp_path, "[system]\npathloss_beta = 5\n")
        with pytest.raises(ParameterError):
            load_config(path)

    def test_negative_trials_rejected(self, tmp_path):
        path = self.write(tmp_path, "[monte_carlo]\ntrials = -5\n")
        with pytest.raises(ParameterError):
            load_config(path)

    def test_unknown_override_rejected(self):
        with pytest.raises(ParameterError):
            load_config(overrides={("system", "nonsense"): "1"})


class TestSchemaConsistency:
    def test_defaults_table_parses_cleanly(self):
        # Every documented default must survive its own parser.
        for section, keys in DEFAULTS.items():
            for key, (parser, default) in keys.items():
                if isinstance(default, tuple):
                    rendered = ",".join(str(x) for x in default)
                    assert parser(rendered) == default
                elif isinstance(default, bool):
                    assert parser("on" if default else "off") == default
                else:
                    assert parser(str(default)) == default

    def test_config_is_frozen(self):
        cfg = load_config()
        with pytest.raises(AttributeError):
            cfg.seed = 5
        assert isinstance(cfg, ExperimentConfig)
