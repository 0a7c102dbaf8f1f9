"""Exact q-series arithmetic and particle-motion bijections for
parity-restricted partition identities."""

__version__ = "0.1.0"

from .partitions import FrequencySequence, freq_to_partition, partition_to_freq
from .series import TruncatedSeries

__all__ = [
    "FrequencySequence",
    "TruncatedSeries",
    "freq_to_partition",
    "partition_to_freq",
    "__version__",
]
