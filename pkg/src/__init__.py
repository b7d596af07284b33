"""FaultLCA - fault-tolerant lowest common ancestors on rooted trees."""

__version__ = "1.0.0"
