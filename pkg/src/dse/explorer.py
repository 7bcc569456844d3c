"""
Design-space exploration: coding scheme x architecture x memory organization

Each scheme is profiled once on the dataset; the profile is then costed on
every architecture and memory organization, since the architecture does not
change the functional spike flow.
"""
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Optional

from tqdm import tqdm

from src.dse.pareto import rank_by_objective
from src.engine.selectors import SelectorConfig
from src.engine.simulator import profile_dataset
from src.hardware.evaluate import evaluate
from src.hardware.reference import DEEP_TOPOLOGY, SNN_ACCURACY, SPIKE_PROFILES
from src.hardware.tech import ArchConfig, ArchKind, CostReport, MemOrg, TechConstants
from src.models.coding import CodingParams, CodingScheme, SchemeTag, SpikeSelectConfig
from src.models.network import load_network, parse_topology
from src.models.trace import SpikeProfile
from src.preprocessing.mnist import MnistLoader
from src.utils.config_loader import resolve_tech
from src.utils.exceptions import ConfigError, ExplorationError
from src.utils.workers import max_workers

logger = logging.getLogger(__name__)

REFERENCE_PROFILES = "reference"


@dataclass(frozen=True)
class DesignPoint:
    scheme: SchemeTag
    config: ArchConfig
    report: CostReport
    accuracy: Optional[float] = None

    @property
    def label(self) -> str:
        return f"{self.scheme.value}/{self.config.label}"

    def to_dict(self) -> dict:
        return {"scheme": self.scheme.value, "accuracy": self.accuracy, **self.report.to_dict()}


@dataclass(frozen=True)
class ExplorationSpec:
    """
    What to explore

    Args:
        network: trained network file (JSON); needed unless profiles are given
        mnist_dir: directory holding the MNIST IDX files
        split: MNIST split used for profiling
        sample_count: samples profiled per scheme
        schemes: coding schemes
        archs: architectures
        mem_orgs: memory organizations
        tech: tech YAML path or name, None for the built-in constants
        objective: "product" or a weight mapping over latency/energy/logic
        seed: root seed for the encoders
        profiles: "reference" for the published spike table, a profile JSON path, or None to simulate
        topology: topology string, needed when profiles are given without a network
    """

    network: Optional[str] = None
    mnist_dir: Optional[str] = None
    split: str = "test"
    sample_count: int = 1000
    schemes: tuple = tuple(SchemeTag)
    archs: tuple = tuple(ArchKind)
    mem_orgs: tuple = tuple(MemOrg)
    tech: Optional[str] = None
    objective: object = "product"
    seed: int = 0
    profiles: Optional[str] = None
    topology: Optional[str] = None
    coding: CodingParams = field(default_factory=CodingParams)
    selector: SelectorConfig = field(default_factory=SelectorConfig)
    spike_select: SpikeSelectConfig = field(default_factory=SpikeSelectConfig)

    def __post_init__(self):
        if self.sample_count < 1:
            raise ConfigError(f"sample_count must be >= 1, got {self.sample_count}")
        for name, parser in (("schemes", SchemeTag.parse), ("archs", ArchKind.parse), ("mem_orgs", MemOrg.parse)):
            values = getattr(self, name)
            if isinstance(values, str) or not values:
                raise ConfigError(f"'{name}' must be a non-empty list")
            try:
                object.__setattr__(self, name, tuple(dict.fromkeys(parser(v) for v in values)))
            except ValueError as e:
                raise ConfigError(str(e)) from e
        if self.network is None and self.profiles is None:
            raise ConfigError("an exploration needs a 'network' or pre-computed 'profiles'")
        if self.network is None and self.topology is None and self.profiles != REFERENCE_PROFILES:
            raise ConfigError("'topology' is required when no network is given")

    @property
    def size(self) -> int:
        return len(self.schemes) * len(self.archs) * len(self.mem_orgs)

    @classmethod
    def from_dict(cls, data: dict, base_dir=None) -> "ExplorationSpec":
        if not isinstance(data, dict):
            raise ConfigError("exploration spec must be a JSON object")
        data = dict(data)
        base = Path(base_dir) if base_dir else None
        for key in ("network", "mnist_dir", "tech", "profiles"):
            value = data.get(key)
            if not value or base is None or value == REFERENCE_PROFILES or Path(value).is_absolute():
                continue
            # a bare tech name refers to the calibration directory
            if key == "tech" and not value.endswith((".yaml", ".yml")):
                continue
            data[key] = str(base / value)
        try:
            if "coding" in data:
                data["coding"] = CodingParams(**data["coding"])
            if "selector" in data:
                data["selector"] = SelectorConfig(**data["selector"])
            if "spike_select" in data:
                data["spike_select"] = SpikeSelectConfig(**data["spike_select"])
            return cls(**data)
        except TypeError as e:
            raise ConfigError(f"invalid exploration spec: {e}") from e
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"invalid exploration spec: {e}") from e

    @classmethod
    def from_json(cls, path) -> "ExplorationSpec":
        path = Path(path)
        try:
            with open(path, "r") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: not valid JSON ({e})") from e
        return cls.from_dict(data, base_dir=path.parent)


def load_profiles(path) -> dict:
    """
    Read a profile JSON written by the `profile` command

    Returns:
        {SchemeTag: (SpikeProfile, accuracy or None)}
    """
    try:
        with open(Path(path), "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: not valid JSON ({e})") from e
    entries = data if isinstance(data, list) else [data]
    profiles = {}
    for entry in entries:
        try:
            profiles[SchemeTag.parse(entry["scheme"])] = (SpikeProfile.from_dict(entry), entry.get("accuracy"))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"{path}: malformed profile entry ({e})") from e
    return profiles


def reference_profiles() -> dict:
    return {tag: (SPIKE_PROFILES[tag], SNN_ACCURACY[tag]) for tag in SPIKE_PROFILES}


def _simulate_profiles(spec: ExplorationSpec, net, workers, progress) -> dict:
    if spec.mnist_dir is None:
        raise ConfigError("'mnist_dir' is required to profile the network")
    dataset = MnistLoader(spec.mnist_dir).load_split(spec.split).take(spec.sample_count)
    profiles = {}
    for tag in spec.schemes:
        result = profile_dataset(
            net, dataset, CodingScheme(tag, spec.coding), spec.selector, seed=spec.seed,
            spike_select=spec.spike_select, workers=workers, progress=progress,
        )
        profiles[tag] = (result.profile, result.accuracy)
    return profiles


def _evaluate_point(tag, profile, accuracy, kind, mem_org, tech, topology) -> DesignPoint:
    config = ArchConfig(kind, mem_org, tech)
    try:
        report = evaluate(config, topology, profile)
        report.check()
    except Exception as e:
        raise ExplorationError(f"design point {tag.value}/{config.label} failed: {e}") from e
    return DesignPoint(tag, config, report, accuracy)


def explore(spec: ExplorationSpec, net=None, profiles: dict = None, tech: TechConstants = None,
            workers: int = None, progress: bool = True) -> list:
    """
    Evaluate every (scheme, architecture, memory organization) point

    Args:
        spec: exploration spec
        net: trained network, loaded from spec.network when None
        profiles: {SchemeTag: (SpikeProfile, accuracy)} overriding simulation
        tech: tech constants, resolved from spec.tech when None
        workers: worker cap (SNN_DSE_THREADS also applies)
        progress: show tqdm bars

    Returns:
        design points ranked by the spec's objective
    """
    tech = tech or resolve_tech(spec.tech)
    if net is None and spec.network is not None:
        net = load_network(spec.network)

    if profiles is None:
        if spec.profiles == REFERENCE_PROFILES:
            profiles = reference_profiles()
        elif spec.profiles is not None:
            profiles = load_profiles(spec.profiles)
        else:
            profiles = _simulate_profiles(spec, net, workers, progress)

    if net is not None:
        topology = net.topology
    elif spec.topology is not None:
        topology = parse_topology(spec.topology)
    else:
        topology = DEEP_TOPOLOGY

    missing = [t.value for t in spec.schemes if t not in profiles]
    if missing:
        raise ExplorationError(f"no spike profile for schemes {missing}")

    jobs = [
        (tag, profiles[tag][0], profiles[tag][1], kind, org, tech, topology)
        for tag, kind, org in product(spec.schemes, spec.archs, spec.mem_orgs)
    ]
    logger.info("Exploring %d design points on %s", len(jobs), topology)
    with ThreadPoolExecutor(max_workers=max_workers(workers)) as executor:
        futures = [executor.submit(_evaluate_point, *job) for job in jobs]
        points = [f.result() for f in tqdm(futures, desc="Evaluating", disable=not progress)]
    return rank_by_objective(points, spec.objective)
