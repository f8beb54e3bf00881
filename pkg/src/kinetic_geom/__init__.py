"""Kinetic computational geometry on polynomial trajectories.

Objects move in R^d with polynomial coordinates over a time horizon
``[0, M]``.  The package answers first-event queries about them (too close,
too far, epsilon-approximately three aligned) exactly, through piecewise
polynomial descriptions of their distance functions, and checks the answers
against a brute-force sampling oracle.
"""
from .errors import (ApproximationInfeasibleError, ConfigurationError, ContractError,
                     DegreeOverflowError, EverywhereZeroError, KineticError,
                     NumericalFailureError, PreconditionError, UnsupportedMetricError)
from .events import AlignmentWitness, EventKind, EventReport
from .motion import (Metric, MovingObject, Scenario, Trajectory, approximate_trig_motion,
                     difference, euclidean_distance_sq_fn, manhattan_distance_fn)
from .oracle import GridSpec, OracleEvent, check_report, oracle_first_event, sample_fn
from .piecewise import (Op, Piece, PiecewiseFunction, Sign, abs_of, abs_pieces, combine,
                        combine3, extrema_on, first_time_geq, first_time_leq, piece_sign_on)
from .poly import DEFAULT_TOL, Interval, Polynomial, roots_in
from .scenario_file import load_scenario, parse_scenario, scenario_to_document
from .solvers import three_aligned, too_close, too_far

__version__ = "0.1.0"
