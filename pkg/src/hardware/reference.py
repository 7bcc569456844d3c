"""
Published measurements used to calibrate and check the models

Spike profiles and latencies are for the 784-300-300-300-10 network on
MNIST; logic tables are Cyclone V (5CGXFC7C7F23C8) synthesis results.
"""
from src.hardware.tech import DEVICE, DEVICE_ALMS, ArchKind, MemOrg  # noqa: F401
from src.models.coding import SchemeTag
from src.models.network import parse_topology
from src.models.trace import SpikeProfile

DEEP_TOPOLOGY = parse_topology("784-300-300-300-10")
MEMORY_ORG_TOPOLOGY = parse_topology("784-10-10")

# Mean spikes entering FC1..FC3 and the output layer, and spikes emitted by the output layer
SPIKE_PROFILES = {
    SchemeTag.JITTERED_PERIODIC: SpikeProfile((724, 173, 103.5, 39), 4),
    SchemeTag.SPIKE_SELECT: SpikeProfile((1547, 74.5, 35, 4), 1),
    SchemeTag.SINGLE_BURST: SpikeProfile((62.5, 363.5, 1055, 1597.5), 181.5),
    SchemeTag.FIRST_SPIKE: SpikeProfile((170, 14, 61, 87), 4),
}

SNN_ACCURACY = {
    SchemeTag.JITTERED_PERIODIC: 0.9824,
    SchemeTag.SPIKE_SELECT: 0.9787,
    SchemeTag.SINGLE_BURST: 0.7680,
    SchemeTag.FIRST_SPIKE: 0.8692,
}

# Average cycles per pattern
LATENCY_CYCLES = {
    SchemeTag.JITTERED_PERIODIC: {ArchKind.FPA: 1039.5, ArchKind.HA: 84064, ArchKind.TMA: 300540},
    SchemeTag.SPIKE_SELECT: {ArchKind.FPA: 1660.5, ArchKind.HA: 34437, ArchKind.TMA: 496990},
    SchemeTag.FIRST_SPIKE: {ArchKind.FPA: 332, ArchKind.HA: 23540, ArchKind.TMA: 74370},
    SchemeTag.SINGLE_BURST: {ArchKind.FPA: 3077, ArchKind.HA: 441432, ArchKind.TMA: 459970},
}

MEMORY_FOOTPRINT_784_300_10 = {1: 238200, 8: 1905600, 64: 15244800}

SYNTHESIS_TOPOLOGIES = ("784-100-10", "784-200-10", "784-300-10", "784-300-300-10", "784-300-300-300-10")

# (logic cells, registers) per topology
LOGIC_TABLES = {
    ArchKind.FPA: dict(zip(SYNTHESIS_TOPOLOGIES, [
        (13317, 3836), (26225, 7048), (31461, 10974), (47257, 24008), (60628, 40600),
    ])),
    ArchKind.TMA: dict(zip(SYNTHESIS_TOPOLOGIES, [
        (690, 1255), (1192, 2168), (1714, 3082), (3235, 5937), (4736, 8799),
    ])),
    ArchKind.HA: dict(zip(SYNTHESIS_TOPOLOGIES, [
        (2440, 1383), (7478, 2434), (21406, 3455), (22638, 6318), (22859, 9336),
    ])),
}

# Measured synaptic operations per second on the device
SOPS = {ArchKind.FPA: 51.02e9, ArchKind.TMA: 283.80e6, ArchKind.HA: 23.12e9}

# 784-10-10 with SRAM memory models: area mm2, energy uJ, latency us
MEMORY_ORG_RESULTS = {
    (ArchKind.FPA, MemOrg.FULLY_DISTRIBUTED): (13, 3.34, 0.042),
    (ArchKind.FPA, MemOrg.LAYER_SHARED): (13, 3.37, 0.24),
    (ArchKind.FPA, MemOrg.CENTRALIZED): (13, 3.35, 0.25),
    (ArchKind.TMA, MemOrg.LAYER_SHARED): (1.3, 27.9, 6.32),
    (ArchKind.TMA, MemOrg.CENTRALIZED): (1.3, 27.2, 6.19),
}


def synthesis_rows(kind: ArchKind) -> list:
    """[(topology, logic, registers), ...] for one architecture"""
    return [(parse_topology(t), alm, regs) for t, (alm, regs) in LOGIC_TABLES[kind].items()]
