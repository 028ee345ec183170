"""Exact verification of combinatorial-telescoping proofs of q-series identities."""

__version__ = "0.1.0"

from .partitions import INFINITY, Partition  # noqa: E402
from .series import AQSeries, QSeries  # noqa: E402

__all__ = ["__version__", "INFINITY", "Partition", "QSeries", "AQSeries"]
