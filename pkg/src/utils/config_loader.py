"""
Technology / calibration loader
Loads YAML tech files from the calibration directory
"""
import logging
from pathlib import Path

import yaml

from src.hardware.tech import TechConstants
from src.utils.exceptions import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CALIBRATION_DIR = Path(__file__).resolve().parents[2] / "data" / "calibration"
DEFAULT_TECH = "cyclone_v_sram"


def read_yaml(path) -> dict:
    path = Path(path)
    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: invalid YAML ({e})") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a mapping at top level")
    return data


def load_tech(path) -> TechConstants:
    """Load one tech file; the file name is the fallback for `name`"""
    data = read_yaml(path)
    data.setdefault("name", Path(path).stem)
    return TechConstants.from_dict(data)


def save_tech(tech: TechConstants, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        yaml.safe_dump(tech.to_dict(), f, sort_keys=False)
    logger.info("Wrote tech constants %s to %s", tech.name, path)


class ConfigLoader:
    """Load and manage named technology constant sets"""

    def __init__(self, calibration_dir=DEFAULT_CALIBRATION_DIR):
        self.calibration_dir = Path(calibration_dir)
        self.techs = {}
        self._load_all()

    def _load_all(self):
        """Load all YAML tech files from the calibration directory"""
        if not self.calibration_dir.exists():
            logger.warning("Calibration directory not found: %s", self.calibration_dir)
            return

        for tech_file in sorted(self.calibration_dir.glob("*.yaml")):
            try:
                tech = load_tech(tech_file)
            except ConfigError as e:
                logger.error("Skipping %s: %s", tech_file.name, e)
                continue
            self.techs[tech.name] = tech
            logger.debug("Loaded tech: %s", tech.name)

    def get_tech(self, name: str = DEFAULT_TECH) -> TechConstants:
        """Get tech constants by name"""
        if name not in self.techs:
            raise ValueError(f"No tech constants found for: {name}")
        return self.techs[name]

    def list_available(self) -> list:
        """List all loaded tech names"""
        return list(self.techs.keys())


def resolve_tech(spec=None, calibration_dir=DEFAULT_CALIBRATION_DIR) -> TechConstants:
    """
    Tech constants from a path, a registered name, or the built-in defaults

    Args:
        spec: None, a YAML path, or the name of a file in the calibration directory

    Returns:
        TechConstants
    """
    if spec is None:
        return TechConstants()
    path = Path(spec)
    if path.suffix in (".yaml", ".yml") or path.exists():
        if not path.exists():
            raise ConfigError(f"tech file not found: {path}")
        return load_tech(path)
    try:
        return ConfigLoader(calibration_dir).get_tech(str(spec))
    except ValueError as e:
        raise ConfigError(str(e)) from e
