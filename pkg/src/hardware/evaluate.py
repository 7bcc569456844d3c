"""
Assemble a CostReport for one architecture from a spike profile
"""
import logging
import math
from typing import Union

from src.hardware.energy import as_profile, energy_estimate
from src.hardware.latency import latency_cycles
from src.hardware.logic import logic_estimate
from src.hardware.memory import contention_factor
from src.hardware.tech import ArchConfig, CostReport
from src.models.network import NetworkTopology, TrainedNetwork, memory_bits
from src.models.trace import SpikeProfile

logger = logging.getLogger(__name__)


def sops_estimate(profile: SpikeProfile, topology: NetworkTopology, latency_s: float) -> float:
    """Synaptic operations per second: sum_l spikes_in[l] * N_l updates over the latency"""
    if latency_s <= 0:
        return 0.0
    updates = sum(profile.mean_spikes_in[l - 1] * topology.size(l) for l in range(1, topology.depth + 1))
    return updates / latency_s


def evaluate(config: ArchConfig, net: Union[TrainedNetwork, NetworkTopology], profile) -> CostReport:
    """
    Cost of running `profile` on `config`

    Args:
        config: architecture, memory organization and tech constants
        net: trained network or just its topology
        profile: SpikeProfile (or an ActivityTrace) measured on the network

    Returns:
        CostReport
    """
    topology = net.topology if isinstance(net, TrainedNetwork) else net
    profile = as_profile(profile)
    tech = config.tech

    cycles = latency_cycles(config.kind, profile, topology)
    contention = contention_factor(config.kind, config.mem_org, topology)
    latency_s = cycles * tech.clock_period * contention
    energy_j = energy_estimate(profile, config, topology, latency_s)
    logic_cells, registers = logic_estimate(config.kind, topology, tech)

    feasible = not tech.device_logic_capacity or logic_cells <= tech.device_logic_capacity
    cost = latency_s * energy_j * logic_cells if feasible else math.inf
    if not feasible:
        logger.debug("%s on %s needs %.0f logic cells, device has %.0f",
                     config.label, topology, logic_cells, tech.device_logic_capacity)

    return CostReport(
        arch=config.kind,
        mem_org=config.mem_org,
        cycles=cycles,
        latency_s=latency_s,
        energy_j=energy_j,
        memory_bits=memory_bits(topology, tech.bits_per_weight),
        logic_cells=logic_cells,
        registers=registers,
        cost=cost,
        feasible=bool(feasible),
        sops=sops_estimate(profile, topology, latency_s),
        contention=contention,
    )
