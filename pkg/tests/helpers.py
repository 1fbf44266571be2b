"""Shared random-input generators for the test suite.

Everything takes an explicit numpy Generator so each test file controls
its own seed and stays reproducible in isolation.
"""

import numpy as np

from gofmetrics import ConfusionMatrix


def random_counts(rng, n, high=50):
    """Random integer grid, any zero pattern, never all-zero."""
    while True:
        grid = rng.integers(0, high, size=(n, n))
        if grid.sum() > 0:
            return grid.astype(float)


def random_positive_marginal_counts(rng, n, high=50):
    """Random integer grid where every row and column sum is positive."""
    while True:
        grid = rng.integers(0, high, size=(n, n))
        if (grid.sum(axis=0) > 0).all() and (grid.sum(axis=1) > 0).all():
            return grid.astype(float)


def random_permutation_counts(rng, n, high=50):
    """Counts concentrated on one random permutation: a perfect fit up to relabeling."""
    grid = np.zeros((n, n))
    perm = rng.permutation(n)
    for j, i in enumerate(perm):
        grid[i, j] = float(rng.integers(1, high))
    return grid


def random_matrix(rng, n, high=50):
    return ConfusionMatrix.from_counts(random_counts(rng, n, high))


def random_tuple(rng, k=None, low=0.0, high=10.0, allow_zero=True):
    """Random tuple of non-negative floats, sometimes with exact zeros."""
    if k is None:
        k = int(rng.integers(1, 7))
    values = rng.uniform(low, high, size=k)
    if allow_zero and rng.random() < 0.25:
        values[rng.integers(0, k)] = 0.0
    return tuple(float(v) for v in values)
