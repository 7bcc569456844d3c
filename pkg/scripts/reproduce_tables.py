"""
Print the latency, memory and logic tables from the models next to the published values
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from src.hardware.evaluate import evaluate  # noqa: E402
from src.hardware.latency import latency_cycles  # noqa: E402
from src.hardware.logic import logic_estimate  # noqa: E402
from src.hardware.reference import (  # noqa: E402
    DEEP_TOPOLOGY,
    DEVICE,
    DEVICE_ALMS,
    LATENCY_CYCLES,
    LOGIC_TABLES,
    MEMORY_FOOTPRINT_784_300_10,
    MEMORY_ORG_RESULTS,
    MEMORY_ORG_TOPOLOGY,
    SOPS,
    SPIKE_PROFILES,
)
from src.hardware.tech import ArchConfig, MemOrg, TechConstants  # noqa: E402
from src.models.coding import SchemeTag  # noqa: E402
from src.models.network import memory_bits, parse_topology  # noqa: E402
from src.models.trace import SpikeProfile  # noqa: E402

tech = TechConstants()

print("=" * 70)
print(f"LATENCY (cycles per pattern, {DEEP_TOPOLOGY})")
print("=" * 70)
print(f"{'coding':<20}{'arch':<6}{'model':>14}{'published':>14}{'error':>10}")
for tag, row in LATENCY_CYCLES.items():
    for kind, published in row.items():
        model = latency_cycles(kind, SPIKE_PROFILES[tag], DEEP_TOPOLOGY)
        error = 100 * (model - published) / published
        print(f"{tag.label:<20}{kind.value:<6}{model:>14.1f}{published:>14.1f}{error:>9.2f}%")

print("\n" + "=" * 70)
print("MEMORY FOOTPRINT (784-300-10)")
print("=" * 70)
for bits, published in MEMORY_FOOTPRINT_784_300_10.items():
    model = memory_bits(parse_topology("784-300-10"), bits)
    print(f"{bits:>3} bits/weight  {model:>12,}  published {published:>12,}")

print("\n" + "=" * 70)
print(f"LOGIC (ALMs on {DEVICE}, {DEVICE_ALMS:,} available)")
print("=" * 70)
for kind, rows in LOGIC_TABLES.items():
    print(f"\n{kind.value}")
    print("-" * 70)
    for topology, (alm, regs) in rows.items():
        model_alm, model_regs = logic_estimate(kind, parse_topology(topology), tech)
        print(f"{topology:<22}{model_alm:>10.0f} / {alm:<8}{100 * (model_alm - alm) / alm:>8.1f}%"
              f"   regs {model_regs:>8.0f} / {regs}")

print("\n" + "=" * 70)
print(f"MEMORY ORGANIZATIONS ({MEMORY_ORG_TOPOLOGY}, JP-like input flow)")
print("=" * 70)
small = SpikeProfile((724, 30), 4)
for (kind, org), (area, energy_uj, latency_us) in MEMORY_ORG_RESULTS.items():
    report = evaluate(ArchConfig(kind, org, tech), MEMORY_ORG_TOPOLOGY, small)
    print(f"{kind.value}/{org.short:<3} latency {report.latency_s * 1e6:>9.3f} us (published {latency_us})"
          f"  energy {report.energy_j * 1e6:>9.4f} uJ (published {energy_uj})")
print("Only orderings are comparable: the published figures come from a memory compiler.")

print("\n" + "=" * 70)
print(f"SYNAPTIC OPERATIONS PER SECOND ({DEEP_TOPOLOGY}, JP, fully distributed)")
print("=" * 70)
jp = SPIKE_PROFILES[SchemeTag.JITTERED_PERIODIC]
for kind, measured in SOPS.items():
    report = evaluate(ArchConfig(kind, MemOrg.FULLY_DISTRIBUTED, tech), DEEP_TOPOLOGY, jp)
    print(f"{kind.value:<6}model {report.sops:>12.3e}   measured {measured:>12.3e}")
