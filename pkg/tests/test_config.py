import pytest

from llolqs.config import ConfigError, RunConfig, load_config, parse_config_text


def test_defaults_are_reference_constants():
    cfg = parse_config_text("")
    assert cfg.lam == 300.0
    assert cfg.mu == 10.0
    assert cfg.d == 2
    assert cfg.learner == "vbftrl"


def test_basic_parse_and_comments():
    cfg = parse_config_text("""
        # a comment
        d = 3
        T = 7           # trailing comment
        lambda = 12.5
        mu = 0
        seed = 42
        learner = uniform
        reality = diagonal-random
        record_timings = true
    """)
    assert (cfg.d, cfg.T, cfg.lam, cfg.mu, cfg.seed) == (3, 7, 12.5, 0.0, 42)
    assert cfg.learner == "uniform"
    assert cfg.record_timings is True


def test_unknown_key_reports_name():
    with pytest.raises(ConfigError, match="tol_spd"):
        parse_config_text("tol_spd = 1e-9")


def test_bad_values_rejected():
    for text in ("lambda = 0", "mu = -1", "T = 0", "d = 1",
                 "learner = bogus", "reality = bogus",
                 "diag_lo = 0.9\ndiag_hi = 0.3", "eps_vol = 2",
                 "T = notanint"):
        with pytest.raises(ConfigError):
            parse_config_text(text)


def test_missing_equals_sign():
    with pytest.raises(ConfigError, match="key = value"):
        parse_config_text("just some words")


def test_replay_requires_path():
    with pytest.raises(ConfigError, match="replay_path"):
        parse_config_text("reality = replay-file")


def test_env_override(monkeypatch):
    monkeypatch.setenv("LLOLQS_SEED", "77")
    monkeypatch.setenv("LLOLQS_MU", "2.5")
    cfg = parse_config_text("seed = 1")
    assert cfg.seed == 77
    assert cfg.mu == 2.5


def test_env_override_bad_value(monkeypatch):
    monkeypatch.setenv("LLOLQS_D", "zebra")
    with pytest.raises(ConfigError, match="LLOLQS_D"):
        parse_config_text("")


def test_desk_scale_guard():
    with pytest.raises(ConfigError, match="desk scale"):
        parse_config_text("T = 500")
    with pytest.raises(ConfigError, match="desk scale"):
        parse_config_text("d_list = 2,5")
    cfg = parse_config_text("T = 500\nallow_large = true")
    assert cfg.T == 500


def test_lists_parse():
    cfg = parse_config_text("d_list = 2,3\nT_list = 10, 20\nseeds = 0,1,2\nlearners = vbftrl,uniform")
    assert cfg.d_list == [2, 3]
    assert cfg.T_list == [10, 20]
    assert cfg.seeds == [0, 1, 2]
    assert cfg.learners == ["vbftrl", "uniform"]
    with pytest.raises(ConfigError):
        parse_config_text("seeds = ,")


def test_solver_config_auto_fields():
    cfg = parse_config_text("max_iters = 50\nstall_window = 9")
    sc = cfg.solver_config()
    assert sc.max_iters == 50
    assert sc.stall_window == 9
    sc_auto = parse_config_text("").solver_config()
    assert sc_auto.max_iters is None
    assert sc_auto.tol_psd_cut is None


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "nope.cfg")


def test_echo_uses_lambda_key():
    cfg = RunConfig()
    echo = cfg.echo()
    assert echo["lambda"] == 300.0
    assert "lam" not in echo
