"""
Spike events, input spike trains and activity traces
"""
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

import numpy as np
import pandas as pd

from src.utils.exceptions import ShapeError

TERMINATED_BY_DELTA = "delta"
TERMINATED_BY_MAX = "max"
TERMINATED_BY_WINDOW = "window"


@dataclass(frozen=True)
class SpikeEvent:
    """AER record: when, and which neuron of which layer, emitted"""

    time: float
    layer: int
    neuron: int


@dataclass(frozen=True, eq=False)
class SpikeTrainSet:
    """
    Input-layer spikes of one pattern, sorted by (time, neuron)

    Args:
        times: emission times, each in [0, window]
        neurons: source input neuron per event
        n_inputs: N_0
        window: presentation window
    """

    times: np.ndarray
    neurons: np.ndarray
    n_inputs: int
    window: float

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64).ravel()
        neurons = np.asarray(self.neurons, dtype=np.int64).ravel()
        if times.shape != neurons.shape:
            raise ShapeError(f"{times.size} times for {neurons.size} neurons")
        if neurons.size and (neurons.min() < 0 or neurons.max() >= self.n_inputs):
            raise ShapeError(f"neuron index out of range 0..{self.n_inputs - 1}")
        if times.size and (times.min() < 0 or times.max() > self.window):
            raise ValueError(f"event times must lie in [0, {self.window}]")
        order = np.lexsort((neurons, times))
        times, neurons = times[order], neurons[order]
        times.setflags(write=False)
        neurons.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "neurons", neurons)

    @classmethod
    def empty(cls, n_inputs: int, window: float) -> "SpikeTrainSet":
        return cls(np.empty(0), np.empty(0, dtype=np.int64), n_inputs, window)

    def __len__(self):
        return int(self.times.size)

    def __iter__(self) -> Iterator[SpikeEvent]:
        for t, n in zip(self.times.tolist(), self.neurons.tolist()):
            yield SpikeEvent(t, 0, n)

    def __eq__(self, other):
        if not isinstance(other, SpikeTrainSet):
            return NotImplemented
        return (
            self.n_inputs == other.n_inputs
            and self.window == other.window
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.neurons, other.neurons)
        )

    __hash__ = None

    def counts_per_neuron(self) -> np.ndarray:
        return np.bincount(self.neurons, minlength=self.n_inputs)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"time": self.times, "neuron": self.neurons})

    def to_csv(self, path) -> None:
        """Export rows "time,neuron" sorted by time"""
        self.to_frame().to_csv(path, index=False, float_format="%.17g")


@dataclass
class ActivityTrace:
    """
    Per-layer spike counts of one inference run

    Index k of both lists refers to layer l = k + 1 (layers 1..L).
    spikes_in[k]: spikes arriving at layer k+1, spikes_out[k]: spikes emitted by it.
    """

    spikes_in: list
    spikes_out: list
    predicted_class: Optional[int] = None
    elapsed_window: float = 0.0
    terminated_by: str = TERMINATED_BY_WINDOW
    no_input: bool = False

    @property
    def depth(self) -> int:
        return len(self.spikes_in)

    @property
    def total_spikes(self) -> int:
        """Input spikes + every spike emitted by layers 1..L"""
        if not self.spikes_in:
            return 0
        return int(self.spikes_in[0] + sum(self.spikes_out))

    def is_consistent(self) -> bool:
        if len(self.spikes_in) != len(self.spikes_out):
            return False
        if any(c < 0 for c in self.spikes_in) or any(c < 0 for c in self.spikes_out):
            return False
        return all(self.spikes_in[k + 1] == self.spikes_out[k] for k in range(len(self.spikes_in) - 1))

    def to_dict(self) -> dict:
        return {
            "spikes_in": [int(c) for c in self.spikes_in],
            "spikes_out": [int(c) for c in self.spikes_out],
            "class": None if self.predicted_class is None else int(self.predicted_class),
            "terminated_by": self.terminated_by,
            "elapsed_window": float(self.elapsed_window),
            "no_input": bool(self.no_input),
        }

    def to_json(self, path) -> None:
        with open(Path(path), "w") as f:
            json.dump(self.to_dict(), f, indent=2)


@dataclass(frozen=True)
class SpikeProfile:
    """
    Average spikes entering each layer l = 1..L over a dataset

    mean_output_spikes is what the output layer emits on average; together with
    mean_spikes_in it gives the total spikes per pattern.
    """

    mean_spikes_in: tuple
    mean_output_spikes: float = 0.0

    def __post_init__(self):
        values = tuple(float(v) for v in self.mean_spikes_in)
        if not values:
            raise ShapeError("a spike profile needs at least one layer")
        if any(v < 0 or not np.isfinite(v) for v in values):
            raise ValueError(f"spike counts must be finite and >= 0: {values}")
        if self.mean_output_spikes < 0:
            raise ValueError("mean_output_spikes must be >= 0")
        object.__setattr__(self, "mean_spikes_in", values)
        object.__setattr__(self, "mean_output_spikes", float(self.mean_output_spikes))

    def __len__(self):
        return len(self.mean_spikes_in)

    @property
    def total_spikes(self) -> float:
        return sum(self.mean_spikes_in) + self.mean_output_spikes

    def scaled(self, k: float) -> "SpikeProfile":
        return SpikeProfile(tuple(v * k for v in self.mean_spikes_in), self.mean_output_spikes * k)

    @classmethod
    def from_traces(cls, traces) -> "SpikeProfile":
        traces = list(traces)
        if not traces:
            raise ValueError("cannot average an empty list of traces")
        counts = np.array([t.spikes_in for t in traces], dtype=np.float64)
        outputs = np.array([t.spikes_out[-1] for t in traces], dtype=np.float64)
        return cls(tuple(counts.mean(axis=0).tolist()), float(outputs.mean()))

    def to_dict(self) -> dict:
        return {"mean_spikes_in": list(self.mean_spikes_in), "mean_output_spikes": self.mean_output_spikes}

    @classmethod
    def from_dict(cls, data: dict) -> "SpikeProfile":
        return cls(tuple(data["mean_spikes_in"]), data.get("mean_output_spikes", 0.0))
