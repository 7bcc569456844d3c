"""
Closed-form latency in clock cycles per input pattern

FPA: one cycle per incoming spike, neurons of a layer update in parallel.
TMA: each incoming spike visits every logical neuron of the layer in turn.
HA:  parallel first hidden layer, multiplexed deeper layers.
The arithmetic behind these forms is in docs/latency_model.md.
"""
from src.hardware.tech import ArchKind
from src.models.network import NetworkTopology
from src.models.trace import SpikeProfile
from src.utils.exceptions import ShapeError


def _check(profile: SpikeProfile, topology: NetworkTopology) -> None:
    if len(profile) != topology.depth:
        raise ShapeError(
            f"profile has {len(profile)} layers, topology {topology} has {topology.depth}"
        )


def latency_cycles(kind: ArchKind, profile: SpikeProfile, topology: NetworkTopology) -> float:
    """
    Average cycles to process one pattern

    Args:
        kind: FPA, TMA or HA
        profile: mean spikes entering layers 1..L
        topology: N_0..N_L

    Returns:
        cycles (real, since the profile is an average)
    """
    _check(profile, topology)
    kind = ArchKind.parse(kind)
    spikes = profile.mean_spikes_in
    serial = [spikes[l - 1] * topology.size(l) for l in range(1, topology.depth + 1)]
    if kind == ArchKind.FPA:
        return float(sum(spikes))
    if kind == ArchKind.TMA:
        return float(sum(serial))
    return float(spikes[0] + sum(serial[1:]))
