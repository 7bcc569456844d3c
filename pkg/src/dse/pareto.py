"""
Ranking and Pareto filtering of design points
"""
import math

AXES = {
    "latency": lambda p: p.report.latency_s,
    "energy": lambda p: p.report.energy_j,
    "logic": lambda p: p.report.logic_cells,
    "accuracy_loss": lambda p: 1.0 - (p.accuracy if p.accuracy is not None else 0.0),
}


def cost_key(point):
    """Infeasible last, then cost, latency and logic ascending"""
    r = point.report
    return (not r.feasible, r.cost, r.latency_s, r.logic_cells)


def rank_by_cost(points) -> list:
    """Stable ascending sort by product cost; ties by lower latency, then lower logic"""
    return sorted(points, key=cost_key)


def _axis_values(point, axes):
    return tuple(AXES[a](point) for a in axes)


def dominates(a, b, axes=("latency", "logic")) -> bool:
    """a is no worse than b on every axis and strictly better on one"""
    va, vb = _axis_values(a, axes), _axis_values(b, axes)
    return all(x <= y for x, y in zip(va, vb)) and any(x < y for x, y in zip(va, vb))


def pareto_front(points, axes=("latency", "logic")) -> list:
    """
    Non-dominated points (minimisation on every axis), ordered by cost

    Points that do not fit the device are left out unless none does.

    Args:
        points: design points
        axes: subset of latency, energy, logic, accuracy_loss

    Returns:
        list of points
    """
    unknown = set(axes) - set(AXES)
    if unknown:
        raise ValueError(f"unknown Pareto axes: {sorted(unknown)} (expected {sorted(AXES)})")
    if not axes:
        raise ValueError("at least one Pareto axis is needed")
    points = rank_by_cost(points)
    candidates = [p for p in points if p.report.feasible] or points
    return [p for p in candidates if not any(dominates(q, p, axes) for q in candidates if q is not p)]


def weighted_objective(points, weights: dict) -> list:
    """
    Weighted sum of latency, energy and logic, each normalised by its minimum over the points

    Infeasible points score +inf.
    """
    unknown = set(weights) - {"latency", "energy", "logic"}
    if unknown:
        raise ValueError(f"unknown objective weights: {sorted(unknown)}")
    points = list(points)
    scales = {}
    for axis in weights:
        positive = [AXES[axis](p) for p in points if AXES[axis](p) > 0]
        scales[axis] = min(positive) if positive else 1.0
    scores = []
    for p in points:
        if not p.report.feasible:
            scores.append(math.inf)
            continue
        scores.append(sum(w * AXES[axis](p) / scales[axis] for axis, w in weights.items()))
    return scores


def rank_by_objective(points, objective="product") -> list:
    """Rank by product cost, or by a weighted sum when objective is a dict of weights"""
    points = list(points)
    if objective in (None, "product"):
        return rank_by_cost(points)
    if not isinstance(objective, dict):
        raise ValueError(f"objective must be 'product' or a weight mapping, got {objective!r}")
    scores = weighted_objective(points, objective)
    order = sorted(range(len(points)), key=lambda i: (scores[i],) + cost_key(points[i]))
    return [points[i] for i in order]
