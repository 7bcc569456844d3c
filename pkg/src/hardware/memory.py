"""
Weight-memory bookkeeping per architecture and memory organization

HA keeps the first layer's synapses in registers of its neural core, so only
layers 2..L of HA are memory-backed. FPA and TMA read every layer from memory.
"""
from src.hardware.tech import ArchKind, MemOrg
from src.models.network import NetworkTopology, neuron_count
from src.models.trace import SpikeProfile


def memory_backed_layers(kind: ArchKind, topology: NetworkTopology) -> list:
    """Layers l in 1..L whose weights live in memory"""
    first = 2 if ArchKind.parse(kind) == ArchKind.HA else 1
    return list(range(first, topology.depth + 1))


def npu_count(kind: ArchKind, topology: NetworkTopology) -> int:
    """FPA: one per neuron. TMA: one per layer. HA: one per first-hidden neuron plus one per deeper layer"""
    kind = ArchKind.parse(kind)
    if kind == ArchKind.FPA:
        return neuron_count(topology)
    if kind == ArchKind.TMA:
        return topology.depth
    return topology.size(1) + topology.depth - 1


def memory_attached_npus(kind: ArchKind, topology: NetworkTopology) -> int:
    kind = ArchKind.parse(kind)
    if kind == ArchKind.FPA:
        return neuron_count(topology)
    return len(memory_backed_layers(kind, topology))


def memory_units(kind: ArchKind, mem_org: MemOrg, topology: NetworkTopology) -> int:
    """Centralized 1, layer-shared one per memory-backed layer, fully-distributed one per memory-attached NPU"""
    backed = memory_backed_layers(kind, topology)
    if not backed:
        return 0
    mem_org = MemOrg.parse(mem_org)
    if mem_org == MemOrg.CENTRALIZED:
        return 1
    if mem_org == MemOrg.LAYER_SHARED:
        return len(backed)
    return memory_attached_npus(kind, topology)


def resident_bits(kind: ArchKind, topology: NetworkTopology, bits_per_weight: int) -> int:
    """Weight bits stored in memory units (register-held synapses excluded)"""
    return int(bits_per_weight) * sum(topology.synapses(l) for l in memory_backed_layers(kind, topology))


def memory_accesses(kind: ArchKind, profile: SpikeProfile, topology: NetworkTopology) -> float:
    """One weight fetch per incoming spike per destination neuron of each memory-backed layer"""
    return float(sum(profile.mean_spikes_in[l - 1] * topology.size(l) for l in memory_backed_layers(kind, topology)))


def contention_factor(kind: ArchKind, mem_org: MemOrg, topology: NetworkTopology) -> float:
    """
    Slow-down of the clock-limited latency caused by NPUs sharing a memory

    FullyDistributed: 1.
    LayerShared: FPA serialises the neurons of the widest layer (max N_l);
    TMA/HA have one NPU per memory, so 1.
    Centralized: FPA serialises every neuron (sum N_l); TMA/HA only queue
    M multiplexed NPUs, 1 + (M - 1) / sum_{l=0..L} N_l.
    """
    kind = ArchKind.parse(kind)
    mem_org = MemOrg.parse(mem_org)
    if mem_org == MemOrg.FULLY_DISTRIBUTED:
        return 1.0
    hidden_and_output = topology.layer_sizes[1:]
    if kind == ArchKind.FPA:
        if mem_org == MemOrg.LAYER_SHARED:
            return float(max(hidden_and_output))
        return float(sum(hidden_and_output))
    if mem_org == MemOrg.LAYER_SHARED:
        return 1.0
    sharing = len(memory_backed_layers(kind, topology))
    if sharing <= 1:
        return 1.0
    return 1.0 + (sharing - 1) / sum(topology.layer_sizes)
