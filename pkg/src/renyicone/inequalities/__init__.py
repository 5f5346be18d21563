"""Inequality checkers, the Audenaert bound, violation search and convergence sweeps."""

from .audenaert import AudenaertReport, audenaert_from_spectra, audenaert_report
from .checks import MonotonicityViolation, VNReport, VNSlack, check_monotonicity, check_vn_inequalities
from .search import (
    VIOLATION_TOL,
    ViolationWitness,
    find_subadditivity_violation,
    random_density_matrix,
    random_pmf,
)
from .sweep import CSV_HEADER, SweepRow, convergence_sweep, sweep_csv_rows

__all__ = [
    "AudenaertReport", "audenaert_from_spectra", "audenaert_report",
    "MonotonicityViolation", "VNReport", "VNSlack", "check_monotonicity", "check_vn_inequalities",
    "VIOLATION_TOL", "ViolationWitness", "find_subadditivity_violation", "random_density_matrix", "random_pmf",
    "CSV_HEADER", "SweepRow", "convergence_sweep", "sweep_csv_rows",
]
