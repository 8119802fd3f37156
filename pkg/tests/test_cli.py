import numpy as np
import pytest

from dipolekit.cli import (
    RunConfig,
    emit_pattern_csv,
    emit_study_table,
    emit_sweep_csv,
    main,
    parse_config_text,
    resolve_config,
    resolve_substrate,
)
from dipolekit.errors import ConfigError
from dipolekit.farfield import PatternCut
from dipolekit.metrics import SweepResult, make_sample
from dipolekit.studies import StudyRow


def test_defaults():
    cfg = resolve_config({}, {})
    assert cfg.substrate == "fr4"
    assert cfg.band_mhz == (1000.0, 2600.0, 10.0)
    assert cfg.mesh == 41
    assert cfg.bw_threshold_db == -10.0
    assert cfg.freq_mhz == 1800.0
    assert (cfg.length_mm, cfg.width_mm, cfg.gap_mm) == (67.0, 6.0, 3.0)
    assert cfg.source("mesh") == "default"


def test_flag_overrides_file():
    cfg = resolve_config({"length_mm": 60.0}, {"length_mm": 63.0})
    assert cfg.length_mm == 63.0
    assert cfg.source("length_mm") == "flag"
    cfg2 = resolve_config({"length_mm": 60.0}, {})
    assert cfg2.length_mm == 60.0
    assert cfg2.source("length_mm") == "file"


def test_parse_config_text():
    vals = parse_config_text(
        "# comment\nlength_mm = 63  # inline\nband_mhz=1000:1600:20\n"
        "lengths_mm = 63,65,67\n")
    assert vals["length_mm"] == 63.0
    assert vals["band_mhz"] == (1000.0, 1600.0, 20.0)
    assert vals["lengths_mm"] == (63.0, 65.0, 67.0)


def test_parse_config_unknown_key():
    with pytest.raises(ConfigError, match="unknown key 'frobnicate'"):
        parse_config_text("frobnicate = 1\n")


def test_parse_config_type_mismatch_names_line():
    with pytest.raises(ConfigError, match=":2:"):
        parse_config_text("length_mm = 63\nmesh = fourty\n")


def test_resolve_substrate_catalog_and_inline():
    sub = resolve_substrate(RunConfig())
    assert sub.eps_r == 4.3 and sub.h == 1.6
    inline = resolve_substrate(RunConfig(substrate="3.5:1.0:0.001"))
    assert inline.eps_r == 3.5 and inline.h == 1.0
    with pytest.raises(ConfigError, match="not in catalog"):
        resolve_substrate(RunConfig(substrate="unobtainium"))


def test_inline_substrate_eps_below_one_rejected():
    with pytest.raises(ConfigError, match="eps_r must be >= 1"):
        resolve_substrate(RunConfig(substrate="0.5:1.6:0"))


def _sweep():
    return SweepResult(samples=(make_sample(1.0e9, 40 - 5j),
                                make_sample(1.1e9, 50 + 2j)))


def test_emit_sweep_csv(tmp_path):
    p = tmp_path / "s.csv"
    emit_sweep_csv(_sweep(), str(p))
    lines = p.read_text().splitlines()
    assert lines[0] == "freq_hz,r_ohm,x_ohm,s11_db,vswr"
    assert len(lines) == 3
    assert lines[1].startswith("1000000000.0,40.0,-5.0,")
    assert p.read_text().endswith("\n")


def test_emit_sweep_single_sample(tmp_path):
    p = tmp_path / "s.csv"
    emit_sweep_csv(SweepResult(samples=(make_sample(1.8e9, 50 + 0j),)), str(p))
    assert len(p.read_text().splitlines()) == 2


def test_emit_pattern_csv(tmp_path):
    cut = PatternCut(plane="E", angles_deg=np.array([89.0, 90.0, 91.0]),
                     field_db=np.array([-0.1, 0.0, -0.1]),
                     directivity_dbi=2.15, hpbw_deg=78.0)
    p = tmp_path / "p.csv"
    emit_pattern_csv(cut, str(p))
    lines = p.read_text().splitlines()
    assert lines[0] == "plane,angle_deg,field_db"
    assert lines[1] == "E,89.0,-0.1"
    assert lines[-2] == "# directivity_dbi=2.15"
    assert lines[-1] == "# hpbw_deg=78.0"


def test_emit_study_table(tmp_path):
    rows = [StudyRow(param_mm=63.0, z_in=49 + 1j, vswr=1.05, rl_db=-32.0,
                     bw_pct=16.5, directivity_dbi=2.1),
            StudyRow(param_mm=65.0, error="boom")]
    p = tmp_path / "t.csv"
    emit_study_table(rows, str(p))
    lines = p.read_text().splitlines()
    assert lines[0] == "param_mm,r_ohm,x_ohm,vswr,rl_db,bw_pct,directivity_dbi"
    assert lines[1] == "63.0,49.0,1.0,1.05,-32.0,16.5,2.1"
    assert "boom" in lines[2]


def test_emit_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_sweep_csv(_sweep(), str(a))
    emit_sweep_csv(_sweep(), str(b))
    assert a.read_bytes() == b.read_bytes()


def test_cli_design_runs(capsys):
    assert main(["design", "--substrate", "fr4", "--freq", "1800"]) == 0
    out = capsys.readouterr().out
    assert "design ok" in out
    assert "eps_e=2.6500" in out


def test_cli_analyze_writes_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    rc = main(["analyze", "--band", "1050:1250:50", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "freq_hz,r_ohm,x_ohm,s11_db,vswr"
    assert len(lines) == 6
    assert "analyze:" in capsys.readouterr().out


def test_cli_analyze_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["analyze", "--band", "1050:1250:50", "--out"]
    assert main(argv + [str(a)]) == 0
    assert main(argv + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_pattern(tmp_path, capsys):
    out = tmp_path / "pat.csv"
    rc = main(["pattern", "--freq", "1120", "--out", str(out)])
    assert rc == 0
    text = out.read_text()
    assert text.startswith("plane,angle_deg,field_db\n")
    assert "# directivity_dbi=" in text
    assert "# hpbw_deg=" in text


def test_cli_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("length_mm = 60\nband_mhz = 1050:1250:50\n")
    out = tmp_path / "o.csv"
    rc = main(["analyze", "--config", str(cfg), "--length", "63",
               "--out", str(out)])
    assert rc == 0


def test_cli_exit_code_config_error(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("mesh = fourty\n")
    assert main(["analyze", "--config", str(cfg)]) == 2
    assert "config error" in capsys.readouterr().err


def test_cli_exit_code_missing_config(capsys):
    assert main(["analyze", "--config", "/does/not/exist.cfg"]) == 2


def test_cli_exit_code_design_rule(capsys):
    # w/h exceeds the hard 20:1 restriction
    rc = main(["analyze", "--length", "300", "--width", "64",
               "--band", "1050:1150:50"])
    assert rc == 3
    assert "design-rule" in capsys.readouterr().err


def test_cli_exit_code_io_error(tmp_path, capsys):
    rc = main(["analyze", "--band", "1050:1150:50",
               "--out", str(tmp_path / "nope" / "x.csv")])
    assert rc == 5


def test_cli_unknown_substrate_exit(capsys):
    assert main(["design", "--substrate", "nosuch"]) == 2


def test_cli_study_length(tmp_path, capsys):
    out = tmp_path / "len.csv"
    rc = main(["study-length", "--lengths", "63,65", "--band",
               "1050:1350:50", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("param_mm,")
    assert len(lines) == 3


def test_cli_optimize(capsys):
    rc = main(["optimize", "--opt-low", "35", "--opt-high", "48"])
    assert rc == 0
    assert "optimize: L=" in capsys.readouterr().out
