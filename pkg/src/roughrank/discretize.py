"""Turn continuous attribute matrices into the discrete codes indiscernibility needs.

Cut points are fit once (normally on the training split) and frozen; the
boundary convention is fixed as ``value <= cut -> lower bin`` so codes are
identical across platforms.  Values outside the fitted range clamp to the
edge bins.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DataError

STRATEGIES = ("equal_width", "equal_frequency")


@dataclass(frozen=True)
class Binning:
    """Per-attribute cut points plus the strategy that produced them."""

    cuts: tuple[tuple[float, ...], ...]
    strategy: str
    n_bins: int

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ConfigurationError(f"unknown strategy {self.strategy!r}")
        if self.n_bins < 2:
            raise ConfigurationError("n_bins must be at least 2")
        for j, cuts in enumerate(self.cuts):
            if len(cuts) > self.n_bins - 1:
                raise DataError(f"column {j} has more than n_bins - 1 cut points")
            if any(b <= a for a, b in zip(cuts, cuts[1:])):
                raise DataError(f"column {j} cut points are not strictly increasing")

    @property
    def n_columns(self) -> int:
        return len(self.cuts)


def fit_bins(matrix, n_bins: int = 3, strategy: str = "equal_frequency") -> Binning:
    """Fit per-column cut points.

    equal_width places cuts at min + k*(max-min)/n_bins; equal_frequency
    places them at the k/n_bins empirical quantiles, collapsing duplicate
    cuts (so skewed columns may end up with fewer effective bins).  A
    constant column gets no cuts at all.
    """
    if n_bins < 2:
        raise ConfigurationError("n_bins must be at least 2")
    if strategy not in STRATEGIES:
        raise ConfigurationError(f"unknown strategy {strategy!r}")
    data = np.asarray(matrix, dtype=float)
    if data.ndim != 2 or data.size == 0:
        raise DataError("matrix must be two-dimensional and nonempty")
    cuts: list[tuple[float, ...]] = []
    for j in range(data.shape[1]):
        col = data[:, j]
        lo, hi = float(col.min()), float(col.max())
        if lo == hi:
            cuts.append(())
            continue
        if strategy == "equal_width":
            points = [lo + k * (hi - lo) / n_bins for k in range(1, n_bins)]
        else:
            qs = [k / n_bins for k in range(1, n_bins)]
            points = [float(q) for q in np.quantile(col, qs)]
        seen: list[float] = []
        for p in points:
            if not seen or p > seen[-1]:
                seen.append(p)
        cuts.append(tuple(seen))
    return Binning(cuts=tuple(cuts), strategy=strategy, n_bins=n_bins)


def apply_bins(binning: Binning, matrix) -> np.ndarray:
    """Map each value to its bin code.

    A value equal to a cut point falls in the lower bin; values beyond the
    fitted range clamp to code 0 or the highest code.
    """
    data = np.asarray(matrix, dtype=float)
    if data.ndim != 2:
        raise DataError("matrix must be two-dimensional")
    if data.shape[1] != binning.n_columns:
        raise ConfigurationError(
            f"matrix has {data.shape[1]} columns, binning expects {binning.n_columns}"
        )
    codes = np.zeros(data.shape, dtype=int)
    for j, cuts in enumerate(binning.cuts):
        if not cuts:
            continue
        codes[:, j] = [bisect_left(cuts, v) for v in data[:, j]]
    return codes


def save_binning(binning: Binning, path) -> None:
    """Write the sidecar format: one line per attribute, space-separated cuts."""
    with open(path, "w", encoding="utf-8") as fh:
        for cuts in binning.cuts:
            fh.write(" ".join(repr(c) for c in cuts) + "\n")


def load_binning(path, strategy: str = "equal_frequency") -> Binning:
    """Read a sidecar file written by :func:`save_binning`.

    The file stores cut points only, so the strategy is taken from the
    caller and n_bins is inferred from the widest line.
    """
    cuts: list[tuple[float, ...]] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            parts = line.split()
            try:
                cuts.append(tuple(float(p) for p in parts))
            except ValueError:
                raise DataError(f"{path}:{line_no}: bad cut point") from None
    if not cuts:
        raise DataError(f"{path}: empty binning file")
    n_bins = max(2, max(len(c) for c in cuts) + 1)
    return Binning(cuts=tuple(cuts), strategy=strategy, n_bins=n_bins)
