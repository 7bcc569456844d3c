"""
Spike Select: filter input spikes in the first hidden layer by raising its threshold
"""
import logging

from src.models.coding import SpikeSelectConfig
from src.models.network import TrainedNetwork
from src.utils.exceptions import ShapeError

logger = logging.getLogger(__name__)


def apply_spike_select(net: TrainedNetwork, cfg: SpikeSelectConfig = SpikeSelectConfig()) -> TrainedNetwork:
    """
    Return a copy of the network with theta_1 multiplied by cfg.threshold_factor

    Args:
        net: transcoded network, needs at least one hidden layer
        cfg: Spike Select configuration

    Returns:
        New TrainedNetwork; weights and deeper thresholds are shared unchanged
    """
    if net.depth < 2:
        raise ShapeError("Spike Select needs at least one hidden layer")
    thresholds = list(net.thresholds)
    thresholds[0] = thresholds[0] * cfg.threshold_factor
    logger.debug("Spike Select: theta_1 %.3f -> %.3f", net.thresholds[0], thresholds[0])
    return net.with_thresholds(thresholds)
