"""Stable q-series Phi_G(q) of plane graphs.

Submodules: :mod:`phiseries.qseries` (truncated series), :mod:`phiseries.plane_graph`
(graph model and fixtures), :mod:`phiseries.nahm` (evaluators),
:mod:`phiseries.identify` (theta-product search) and :mod:`phiseries.cli`.
"""

__version__ = "0.1.0"

from .identify import IdentifyResult, identify_theta_product, verify_product
from .nahm import compute_phi, compute_phi_tqft
from .nahm.l8a7 import compute_phi_l8a7, u_bound
from .nahm.oracle import compute_phi_oracle
from .plane_graph import PlaneGraph, catalog, edge_connect, polygon, validate
from .qseries import TruncatedSeries, euler_infinity, pochhammer, theta_h
