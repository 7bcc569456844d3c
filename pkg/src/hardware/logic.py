"""
Logic-cell (ALM) and register estimates, and re-fitting the coefficients
from synthesis results
"""
import logging

import numpy as np
import pandas as pd
from scipy.optimize import nnls

from src.hardware.tech import ArchKind, LogicCoefficients, TechConstants
from src.models.network import NetworkTopology, neuron_count, parse_topology
from src.utils.exceptions import ConfigError

logger = logging.getLogger(__name__)

FEATURES = ("base", "neuron", "npu", "synapse", "mux_neuron")


def logic_features(kind: ArchKind, topology: NetworkTopology) -> dict:
    """
    Feature vector of the linear logic model

    neuron: parallel hardware neurons; npu: multiplexed processing units;
    synapse: synapses held in registers; mux_neuron: logical neurons
    emulated by a multiplexed NPU (one ROM word each).
    """
    kind = ArchKind.parse(kind)
    L = topology.depth
    if kind == ArchKind.FPA:
        return {"base": 1.0, "neuron": neuron_count(topology), "npu": 0,
                "synapse": sum(topology.synapses(l) for l in range(1, L + 1)), "mux_neuron": 0}
    if kind == ArchKind.TMA:
        return {"base": 1.0, "neuron": 0, "npu": L, "synapse": 0, "mux_neuron": neuron_count(topology)}
    return {"base": 1.0, "neuron": topology.size(1), "npu": L - 1, "synapse": topology.synapses(1),
            "mux_neuron": sum(topology.layer_sizes[2:])}


def _apply(coeffs: LogicCoefficients, prefix: str, features: dict) -> float:
    return float(
        getattr(coeffs, f"{prefix}_base") * features["base"]
        + getattr(coeffs, f"{prefix}_per_neuron") * features["neuron"]
        + getattr(coeffs, f"{prefix}_per_npu") * features["npu"]
        + getattr(coeffs, f"{prefix}_per_synapse") * features["synapse"]
        + getattr(coeffs, f"{prefix}_per_mux_neuron") * features["mux_neuron"]
    )


def logic_estimate(kind: ArchKind, topology: NetworkTopology, tech: TechConstants):
    """
    Returns:
        (logic_cells, registers)
    """
    features = logic_features(kind, topology)
    coeffs = tech.coefficients(kind)
    return _apply(coeffs, "alm", features), _apply(coeffs, "reg", features)


def _fit_column(matrix: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Non-negative least squares on relative error: rows scaled by 1 / target"""
    used = np.flatnonzero(np.any(matrix != 0, axis=0))
    scaled = matrix[:, used] / targets[:, np.newaxis]
    solution, _ = nnls(scaled, np.ones_like(targets))
    full = np.zeros(matrix.shape[1])
    full[used] = solution
    return full


def fit_logic_calibration(kind: ArchKind, rows) -> LogicCoefficients:
    """
    Fit coefficients for one architecture from synthesis rows

    Args:
        kind: architecture the rows were synthesized for
        rows: iterable of (topology, logic_cells, registers)

    Returns:
        LogicCoefficients
    """
    rows = list(rows)
    if not rows:
        raise ConfigError(f"no synthesis rows for {ArchKind.parse(kind).value}")
    matrix = np.array([[logic_features(kind, t)[f] for f in FEATURES] for t, _, _ in rows], dtype=np.float64)
    alm = np.array([r[1] for r in rows], dtype=np.float64)
    regs = np.array([r[2] for r in rows], dtype=np.float64)
    if np.any(alm <= 0) or np.any(regs <= 0):
        raise ConfigError("synthesis rows need positive logic and register counts")

    a = _fit_column(matrix, alm)
    r = _fit_column(matrix, regs)
    coeffs = LogicCoefficients(
        alm_base=a[0], alm_per_neuron=a[1], alm_per_npu=a[2], alm_per_synapse=a[3], alm_per_mux_neuron=a[4],
        reg_base=r[0], reg_per_neuron=r[1], reg_per_npu=r[2], reg_per_synapse=r[3], reg_per_mux_neuron=r[4],
    )
    worst = max(abs(_apply(coeffs, "alm", logic_features(kind, t)) - y) / y for t, y, _ in rows)
    logger.info("Fitted %s logic model on %d rows, worst relative ALM error %.1f%%",
                ArchKind.parse(kind).value, len(rows), 100 * worst)
    return coeffs


def load_synthesis_rows(path) -> dict:
    """
    Read a synthesis CSV with columns arch,topology,logic,registers

    Returns:
        {ArchKind: [(topology, logic, registers), ...]}
    """
    frame = pd.read_csv(path)
    missing = {"arch", "topology", "logic", "registers"} - set(frame.columns)
    if missing:
        raise ConfigError(f"{path}: missing columns {sorted(missing)}")
    grouped = {}
    for record in frame.itertuples(index=False):
        kind = ArchKind.parse(record.arch)
        grouped.setdefault(kind, []).append(
            (parse_topology(str(record.topology)), float(record.logic), float(record.registers))
        )
    return grouped


def fit_from_csv(path, tech: TechConstants) -> TechConstants:
    """Return tech with every architecture found in the CSV re-fitted"""
    logic = dict(tech.logic)
    for kind, rows in load_synthesis_rows(path).items():
        logic[kind] = fit_logic_calibration(kind, rows)
    return tech.with_updates(logic=logic)
