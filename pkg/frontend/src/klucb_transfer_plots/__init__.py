"""Figure generation for regret-curve CSVs emitted by klucb-transfer.

This package consumes only the CSV file contract
(`policy,t,mean_regret,sem,runs`); it does not import the simulation library.
"""

from .plots import Curve, MalformedCsvError, PlotSpec, read_curves, render

__all__ = ["Curve", "MalformedCsvError", "PlotSpec", "read_curves", "render"]
__version__ = "0.1.0"
