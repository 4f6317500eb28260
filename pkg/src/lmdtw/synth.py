"""Deterministic synthetic series pairs with a controllable time warp.

Stands in for real audio features in tests and demos: the second series
samples the same underlying signal through a smooth monotone warp, so exact
alignments are monotone and near-diagonal.
"""

from __future__ import annotations

import numpy as np

from .core import DEFAULT_FPS, FeatureSeries, InvalidInputError

KINDS = ("warped-sine", "random-walk")


def _warp_positions(length: int, strength: float, rng) -> np.ndarray:
    """Monotone map of [0, 1] sample positions; identity at strength 0."""
    t = np.linspace(0.0, 1.0, length)
    if strength == 0.0:
        return t
    # Two-harmonic perturbation keeps the derivative positive for strength < 1.
    phase = rng.uniform(0, 2 * np.pi)
    w = (np.sin(np.pi * t) / np.pi
         + 0.3 * np.sin(2 * np.pi * t + phase) / (2 * np.pi))
    u = t + 0.7 * strength * w
    u = (u - u[0]) / (u[-1] - u[0])
    return u


def _base_signal(kind: str, length: int, dim: int, rng) -> np.ndarray:
    t = np.linspace(0.0, 1.0, length)
    if kind == "warped-sine":
        freqs = rng.uniform(2.0, 8.0, size=dim)
        phases = rng.uniform(0, 2 * np.pi, size=dim)
        return np.sin(2 * np.pi * np.outer(t, freqs) + phases)
    if kind == "random-walk":
        steps = rng.standard_normal((length, dim)).astype(np.float64)
        walk = np.cumsum(steps, axis=0)
        return walk / np.sqrt(length)
    raise InvalidInputError(f"unknown kind {kind!r}; expected one of {KINDS}")


def synth_pair(kind: str = "warped-sine", length: int = 1000, seed: int = 0,
               warp_strength: float = 0.3, dim: int = 2,
               fps: float = DEFAULT_FPS) -> tuple[FeatureSeries, FeatureSeries]:
    """A series and its time-warped counterpart, deterministic per seed."""
    if length < 2:
        raise InvalidInputError("length must be >= 2")
    if not (0.0 <= warp_strength < 1.0):
        raise InvalidInputError("warp_strength must be in [0, 1)")
    rng = np.random.default_rng(seed)
    base = _base_signal(kind, length, dim, rng)
    t = np.linspace(0.0, 1.0, length)
    u = _warp_positions(length, warp_strength, rng)
    warped = np.empty_like(base)
    for c in range(base.shape[1]):
        warped[:, c] = np.interp(u, t, base[:, c])
    return FeatureSeries(base, fps), FeatureSeries(warped, fps)


def random_series(length: int, dim: int, seed: int, scale: float = 1.0,
                  fps: float = DEFAULT_FPS) -> FeatureSeries:
    """Uncorrelated gaussian features; handy for oracle-equivalence tests."""
    rng = np.random.default_rng(seed)
    return FeatureSeries(scale * rng.standard_normal((length, dim)), fps)
