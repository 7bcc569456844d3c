"""
Unit tests for the tech constants loader
"""
import pytest

from src.hardware.tech import DEVICE_ALMS, ArchKind, TechConstants
from src.utils.config_loader import DEFAULT_TECH, ConfigLoader, load_tech, resolve_tech, save_tech
from src.utils.exceptions import ConfigError


def test_config_loader_initialization():
    """Test ConfigLoader initializes correctly"""
    loader = ConfigLoader()
    assert loader is not None
    assert isinstance(loader.techs, dict)


def test_shipped_techs_loaded():
    """Test the calibration directory ships the default tech"""
    loader = ConfigLoader()
    assert DEFAULT_TECH in loader.list_available()
    assert "unlimited_device" in loader.list_available()


def test_get_default_tech():
    """Test the shipped file matches the built-in constants"""
    tech = ConfigLoader().get_tech()
    assert tech.name == DEFAULT_TECH
    assert tech.device_logic_capacity == DEVICE_ALMS
    assert tech.alpha(ArchKind.TMA) == TechConstants().alpha(ArchKind.TMA)
    assert tech.coefficients(ArchKind.FPA) == TechConstants().coefficients(ArchKind.FPA)


def test_invalid_tech_name():
    """Test error handling for an unknown tech name"""
    with pytest.raises(ValueError):
        ConfigLoader().get_tech("invalid_tech")


def test_missing_directory_is_empty(tmp_path):
    """Test a missing calibration directory loads nothing"""
    assert ConfigLoader(tmp_path / "missing").list_available() == []


def test_broken_file_is_skipped(tmp_path):
    """Test a malformed YAML file does not hide the others"""
    (tmp_path / "broken.yaml").write_text("mem_access_latency: [1, 2\n")
    (tmp_path / "unknown_key.yaml").write_text("bus_width: 64\n")
    save_tech(TechConstants(name="ok"), tmp_path / "ok.yaml")
    assert ConfigLoader(tmp_path).list_available() == ["ok"]


def test_save_and_load(tmp_path):
    """Test tech constants survive a YAML save/load"""
    tech = TechConstants(name="fast", mem_access_latency=1e-9, spike_energy=3e-12, device_logic_capacity=0)
    save_tech(tech, tmp_path / "fast.yaml")
    loaded = load_tech(tmp_path / "fast.yaml")
    assert loaded == tech


def test_name_defaults_to_file_stem(tmp_path):
    """Test a file without a name takes its stem"""
    (tmp_path / "lab_board.yaml").write_text("bits_per_weight: 4\n")
    tech = load_tech(tmp_path / "lab_board.yaml")
    assert tech.name == "lab_board"
    assert tech.bits_per_weight == 4


def test_resolve_tech(tmp_path):
    """Test defaults, names and paths"""
    assert resolve_tech() == TechConstants()
    assert resolve_tech("unlimited_device").device_logic_capacity == 0
    save_tech(TechConstants(name="x", bits_per_weight=16), tmp_path / "x.yaml")
    assert resolve_tech(str(tmp_path / "x.yaml")).bits_per_weight == 16
    with pytest.raises(ConfigError):
        resolve_tech("no_such_tech")
    with pytest.raises(ConfigError):
        resolve_tech(str(tmp_path / "missing.yaml"))
