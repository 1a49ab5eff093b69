"""Centralized numeric tolerances.

Every absolute tolerance used by the package lives in this one record so
that tests, library code, and the CLI agree on what "equal" means.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermiticity: float = 1e-12
    positivity: float = 1e-10  # min eigenvalue >= -positivity
    trace: float = 1e-12
    norm: float = 1e-12
    unitarity: float = 1e-12
    support: float = 1e-12  # occupation below this counts as an empty sector
    povm: float = 1e-12
    violation: float = 1e-12  # witness ratio must undercut 1 by this margin
    closed_form: float = 1e-10  # closed form vs. simulation agreement
    exact_match: float = 1e-12  # dual-route checks that must agree to rounding
    state_match: float = 1e-11  # simulated vs. closed-form conditional states
    protocol_match: float = 1e-8  # end-to-end protocol vs. closed-form averages
    average_match: float = 1e-6  # quadrature / Monte Carlo averaging cross-checks
    bound_slack: float = 1e-9  # slack when asserting analytic inequalities
    golden_section: float = 1e-10
    bisection: float = 1e-10
    bisection_onoff: float = 1e-9


TOL = Tolerances()
