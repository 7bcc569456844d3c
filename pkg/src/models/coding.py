"""
Information-coding parameters and scheme tags
"""
from dataclasses import dataclass, field
from enum import Enum


class SchemeTag(str, Enum):
    """Input coding schemes; SPIKE_SELECT is Jittered Periodic input + raised first threshold"""

    JITTERED_PERIODIC = "jp"
    SINGLE_BURST = "sb"
    FIRST_SPIKE = "fs"
    SPIKE_SELECT = "ss"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def parse(cls, text: str) -> "SchemeTag":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        for tag in cls:
            if key in (tag.value, tag.name.lower(), tag.label.lower().replace(" ", "")):
                return tag
        raise ValueError(f"unknown coding scheme: {text!r} (expected one of jp, sb, fs, ss)")


_LABELS = {
    SchemeTag.JITTERED_PERIODIC: "Jittered Periodic",
    SchemeTag.SINGLE_BURST: "Single Burst",
    SchemeTag.FIRST_SPIKE: "First Spike",
    SchemeTag.SPIKE_SELECT: "Spike Select",
}


@dataclass(frozen=True)
class CodingParams:
    """
    Spike generation parameters

    Args:
        f_min: frequency of the faintest non-zero pixel (spikes per unit sim time)
        f_max: frequency of a saturated pixel
        s_dev: relative standard deviation of the jitter (sd = s_dev * period)
        t_min: earliest First Spike emission time
        window: presentation window w_t
        seed: RNG seed
    """

    f_min: float = 10.0
    f_max: float = 100.0
    s_dev: float = 0.1
    t_min: float = 0.01
    window: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.f_min <= self.f_max:
            raise ValueError(f"need 0 < f_min <= f_max, got f_min={self.f_min}, f_max={self.f_max}")
        if self.s_dev < 0:
            raise ValueError(f"s_dev must be >= 0, got {self.s_dev}")
        if not 0 <= self.t_min < self.window:
            raise ValueError(f"need 0 <= t_min < window, got t_min={self.t_min}, window={self.window}")


@dataclass(frozen=True)
class CodingScheme:
    tag: SchemeTag
    params: CodingParams = field(default_factory=CodingParams)

    @property
    def name(self) -> str:
        return self.tag.value


@dataclass(frozen=True)
class SpikeSelectConfig:
    """Factor applied to the first hidden layer threshold"""

    threshold_factor: float = 3.0

    def __post_init__(self):
        if self.threshold_factor < 1:
            raise ValueError(f"threshold_factor must be >= 1, got {self.threshold_factor}")
