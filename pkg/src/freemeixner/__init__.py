"""Exact arithmetic for multivariate free Meixner states."""
from .fock import DataError, MeixnerData, fock_cumulant, fock_moment
from .moments import CumulantFunctional, MomentFunctional, cumulants_to_moments, moments_to_cumulants
from .ncpoly import NcPolynomial, NcSeries
from .partitions import NcPartition, PartitionClass, enumerate_partitions

__all__ = [
    "DataError", "MeixnerData", "fock_cumulant", "fock_moment",
    "CumulantFunctional", "MomentFunctional", "cumulants_to_moments", "moments_to_cumulants",
    "NcPolynomial", "NcSeries", "NcPartition", "PartitionClass", "enumerate_partitions",
]
