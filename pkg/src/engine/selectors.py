"""
Class selection policies polled on the output-layer spike counts
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


class SelectorKind(str, Enum):
    TERMINATE_DELTA = "delta"
    MAX_TERMINATE = "max"

    @classmethod
    def parse(cls, text: str) -> "SelectorKind":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"unknown selector: {text!r} (expected delta or max)")


@dataclass(frozen=True)
class SelectorConfig:
    kind: SelectorKind = SelectorKind.TERMINATE_DELTA
    delta_value: int = 4
    max_value: int = 4

    def __post_init__(self):
        object.__setattr__(self, "kind", SelectorKind.parse(self.kind))
        if self.delta_value < 1:
            raise ValueError(f"delta_value must be >= 1, got {self.delta_value}")
        if self.max_value < 1:
            raise ValueError(f"max_value must be >= 1, got {self.max_value}")


def terminate_delta(counts, delta: int) -> Optional[int]:
    """
    Leading class once it has spiked delta times more than the runner-up

    A single-class output has no runner-up; its count is compared to 0.
    """
    counts = np.asarray(counts)
    if counts.size == 0:
        return None
    leader = int(np.argmax(counts))
    if counts.size == 1:
        return leader if counts[0] >= delta else None
    top_two = np.sort(counts)[-2:]
    if top_two[1] - top_two[0] >= delta:
        return leader
    return None


def max_terminate(counts, max_value: int) -> Optional[int]:
    """Lowest-index class whose count reached max_value"""
    reached = np.flatnonzero(np.asarray(counts) >= max_value)
    return int(reached[0]) if reached.size else None


def poll(counts, cfg: SelectorConfig) -> Optional[int]:
    if cfg.kind == SelectorKind.TERMINATE_DELTA:
        return terminate_delta(counts, cfg.delta_value)
    return max_terminate(counts, cfg.max_value)
