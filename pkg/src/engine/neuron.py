"""
Integrate-and-Fire neuron update with reset by subtraction

s = p + sum_i w_ij * gamma_i; fire when s >= theta and keep s - theta.
No leak, no refractory period; potentials may go negative.
"""
from dataclasses import dataclass

import numpy as np


@dataclass
class NeuronState:
    potential: float = 0.0
    spike_count: int = 0


def if_integrate(state: NeuronState, weight: float, threshold: float):
    """
    Integrate one incoming spike

    Returns:
        (new NeuronState, fired)
    """
    if threshold <= 0:
        raise ValueError(f"threshold must be > 0, got {threshold}")
    s = state.potential + weight
    if s >= threshold:
        return NeuronState(s - threshold, state.spike_count + 1), True
    return NeuronState(s, state.spike_count), False


def integrate_batch(potentials: np.ndarray, weights: np.ndarray, gamma: np.ndarray, threshold: float):
    """
    Summation form: every neuron adds sum_i w_ij * gamma_i, then one threshold test

    Args:
        potentials: (N_l,) membrane potentials
        weights: (N_{l-1}, N_l) weight matrix
        gamma: (N_{l-1},) binary spike flags of the presynaptic layer
        threshold: firing threshold of the layer

    Returns:
        (new potentials, boolean fired mask)
    """
    s = potentials + np.asarray(gamma, dtype=np.float64) @ weights
    fired = s >= threshold
    return s - threshold * fired, fired


def integrate_spike(potentials: np.ndarray, weight_row: np.ndarray, threshold: float) -> np.ndarray:
    """if_integrate over a whole layer for one presynaptic spike, in place; returns fired indices"""
    potentials += weight_row
    fired = np.flatnonzero(potentials >= threshold)
    if fired.size:
        potentials[fired] -= threshold
    return fired
