"""
Formal (non-spiking) MLP: Xavier init, forward pass, SGD training, accuracy

Layers have no bias: s_l = W_l^T y_{l-1}; rectifier on hidden layers,
linear output. Training minimises softmax cross-entropy over the linear
output, inference keeps the plain argmax.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from tqdm import tqdm

from src.models.network import RECTIFIER, NetworkTopology, TrainedNetwork
from src.preprocessing.mnist import Dataset
from src.utils.exceptions import ShapeError, TrainingError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hyperparams:
    """SGD with momentum, weight decay and a step-decayed learning rate (0.993 per epoch by default)"""

    learning_rate: float = 0.01
    momentum: float = 0.9
    weight_decay: float = 0.0005
    lr_step_size: int = 1
    lr_decay: float = 0.993
    epochs: int = 20
    batch_size: int = 32
    seed: int = 0

    def __post_init__(self):
        if not (self.learning_rate >= 0 and math.isfinite(self.learning_rate)):
            raise ValueError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if not 0 <= self.momentum < 1:
            raise ValueError(f"momentum must lie in [0, 1), got {self.momentum}")
        if self.weight_decay < 0:
            raise ValueError(f"weight_decay must be >= 0, got {self.weight_decay}")
        if not 0 < self.lr_decay <= 1:
            raise ValueError(f"lr_decay must lie in (0, 1], got {self.lr_decay}")
        if self.lr_step_size < 1:
            raise ValueError(f"lr_step_size must be >= 1, got {self.lr_step_size}")
        if self.epochs < 0:
            raise ValueError(f"epochs must be >= 0, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")


@dataclass
class EpochLog:
    epoch: int
    learning_rate: float
    loss: float
    train_accuracy: float
    val_accuracy: Optional[float]


@dataclass
class TrainResult:
    network: TrainedNetwork
    history: List[EpochLog] = field(default_factory=list)


def init_xavier(topology: NetworkTopology, seed: int = 0) -> TrainedNetwork:
    """Uniform Xavier filler: W_l ~ U(-b, b), b = sqrt(6 / (N_{l-1} + N_l))"""
    rng = np.random.default_rng(seed)
    weights = []
    for l in range(1, topology.depth + 1):
        fan_in, fan_out = topology.size(l - 1), topology.size(l)
        bound = math.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
    return TrainedNetwork(topology, tuple(weights))


def _forward_batch(net: TrainedNetwork, x: np.ndarray):
    """Return pre-activations and outputs of every layer for a (B, N_0) batch"""
    outputs = [x]
    pre = []
    y = x
    for l in range(1, net.depth + 1):
        s = y @ net.weight(l)
        pre.append(s)
        y = np.maximum(s, 0.0) if net.activations[l - 1] == RECTIFIER else s
        outputs.append(y)
    return pre, outputs


def forward(net: TrainedNetwork, x) -> list:
    """
    Formal forward pass of one input vector

    Returns:
        [y_0, y_1, ..., y_L] with y_0 = x
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size != net.topology.n_inputs:
        raise ShapeError(f"input has {x.size} values, network expects {net.topology.n_inputs}")
    _, outputs = _forward_batch(net, x[np.newaxis, :])
    return [y[0] for y in outputs]


def predict_formal(net: TrainedNetwork, images: np.ndarray) -> np.ndarray:
    """Argmax of the output layer; np.argmax already breaks ties toward the lowest index"""
    images = np.asarray(images, dtype=np.float64)
    if images.ndim != 2 or images.shape[1] != net.topology.n_inputs:
        raise ShapeError(f"images of shape {images.shape} do not fit {net.topology.n_inputs} inputs")
    _, outputs = _forward_batch(net, images)
    return np.argmax(outputs[-1], axis=1)


def evaluate_formal(net: TrainedNetwork, dataset: Dataset) -> float:
    """Fraction of samples whose output argmax equals the label"""
    if len(dataset) == 0:
        return 0.0
    predictions = predict_formal(net, dataset.images)
    return float(np.mean(predictions == dataset.labels))


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def loss_and_gradients(net: TrainedNetwork, x: np.ndarray, labels: np.ndarray):
    """
    Mean softmax cross-entropy of a batch and its gradient per weight matrix

    Weight decay is not included here; the optimiser adds it.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    labels = np.atleast_1d(np.asarray(labels, dtype=np.int64))
    batch = x.shape[0]
    pre, outputs = _forward_batch(net, x)
    probs = _softmax(outputs[-1])
    picked = probs[np.arange(batch), labels]
    loss = float(-np.mean(np.log(np.maximum(picked, 1e-300))))

    delta = probs.copy()
    delta[np.arange(batch), labels] -= 1.0
    delta /= batch
    grads = [None] * net.depth
    for l in range(net.depth, 0, -1):
        grads[l - 1] = outputs[l - 1].T @ delta
        if l > 1:
            delta = delta @ net.weight(l).T
            if net.activations[l - 2] == RECTIFIER:
                delta = delta * (pre[l - 2] > 0)
    return loss, grads


def learning_rate_at(hp: Hyperparams, epoch: int) -> float:
    """Step decay: lr * decay ** floor(epoch / step)"""
    return hp.learning_rate * hp.lr_decay ** (epoch // hp.lr_step_size)


def train(net: TrainedNetwork, train_set: Dataset, val_set: Optional[Dataset], hp: Hyperparams,
          progress: bool = True) -> TrainResult:
    """
    Mini-batch SGD with momentum and L2 weight decay

    Args:
        net: starting network (e.g. from init_xavier)
        train_set: training samples
        val_set: validation samples, may be None or empty
        hp: hyperparameters
        progress: show a tqdm bar over epochs

    Returns:
        TrainResult with the trained network and one EpochLog per epoch
    """
    if train_set.dims != net.topology.n_inputs:
        raise ShapeError(f"dataset has {train_set.dims} inputs, network expects {net.topology.n_inputs}")
    if train_set.n_classes > net.topology.n_classes:
        raise ShapeError(f"dataset has {train_set.n_classes} classes, network outputs {net.topology.n_classes}")

    rng = np.random.default_rng(hp.seed)
    weights = [w.copy() for w in net.weights]
    velocity = [np.zeros_like(w) for w in weights]
    history = []
    current = net

    epochs = tqdm(range(hp.epochs), desc="Training", disable=not progress)
    for epoch in epochs:
        lr = learning_rate_at(hp, epoch)
        order = rng.permutation(len(train_set))
        total_loss = 0.0
        n_batches = 0
        for batch_index, start in enumerate(range(0, len(order), hp.batch_size)):
            idx = order[start:start + hp.batch_size]
            loss, grads = loss_and_gradients(current, train_set.images[idx], train_set.labels[idx])
            if not math.isfinite(loss):
                raise TrainingError(f"non-finite loss ({loss}) at epoch {epoch + 1}, batch {batch_index + 1}")
            for k, g in enumerate(grads):
                velocity[k] = hp.momentum * velocity[k] - lr * (g + hp.weight_decay * weights[k])
                weights[k] = weights[k] + velocity[k]
            current = net.with_weights(weights)
            total_loss += loss
            n_batches += 1

        train_acc = evaluate_formal(current, train_set)
        val_acc = evaluate_formal(current, val_set) if val_set is not None and len(val_set) else None
        mean_loss = total_loss / max(n_batches, 1)
        history.append(EpochLog(epoch + 1, lr, mean_loss, train_acc, val_acc))
        logger.info(
            "epoch %d: lr=%.6f loss=%.4f train_acc=%.4f val_acc=%s",
            epoch + 1, lr, mean_loss, train_acc, "n/a" if val_acc is None else f"{val_acc:.4f}",
        )
        if progress:
            epochs.set_postfix(loss=f"{mean_loss:.4f}", val=f"{val_acc:.4f}" if val_acc is not None else "n/a")

    return TrainResult(current, history)
