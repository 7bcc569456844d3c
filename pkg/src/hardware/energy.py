"""
Energy per pattern: processing (alpha per spike) plus weight memory
(static power and leakage over the run, dynamic energy per access)
"""
from typing import Union

from src.hardware.memory import memory_accesses, memory_units, resident_bits
from src.hardware.tech import ArchConfig
from src.models.network import NetworkTopology
from src.models.trace import ActivityTrace, SpikeProfile


def as_profile(activity: Union[SpikeProfile, ActivityTrace]) -> SpikeProfile:
    if isinstance(activity, SpikeProfile):
        return activity
    out = activity.spikes_out[-1] if activity.spikes_out else 0
    return SpikeProfile(tuple(activity.spikes_in), out)


def energy_estimate(activity: Union[SpikeProfile, ActivityTrace], config: ArchConfig,
                    topology: NetworkTopology, latency_s: float) -> float:
    """
    E = alpha_kind * N_spikes
        + latency_s * (mem_static_power * units + mem_leakage_per_bit * resident_bits)
        + mem_dynamic_energy * accesses

    Args:
        activity: a SpikeProfile or one ActivityTrace
        config: architecture, memory organization and tech constants
        topology: network topology
        latency_s: latency of the pattern in seconds

    Returns:
        joules per pattern
    """
    profile = as_profile(activity)
    tech = config.tech
    spikes = profile.total_spikes
    static_power = (
        tech.mem_static_power * memory_units(config.kind, config.mem_org, topology)
        + tech.mem_leakage_per_bit * resident_bits(config.kind, topology, tech.bits_per_weight)
    )
    return (
        tech.alpha(config.kind) * spikes
        + latency_s * static_power
        + tech.mem_dynamic_energy * memory_accesses(config.kind, profile, topology)
    )
