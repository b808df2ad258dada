"""Liftings of holomorphic maps into the symmetrized polydisc to the spectral ball.

Exact arithmetic over Gaussian rationals decides every vanishing-order
statement; floating point is used only where roots are unavoidable.
"""

__version__ = "0.1.0"

from .conditions import ConditionEntry, ConditionReport, check_conditions, check_conditions_multi, required_orders
from .counterexample import CounterexampleReport, b_lambda_k, contradiction_report, epsilon_reparametrize
from .divdiff import divdiff, divdiff_horner, divdiff_monomial_oracle, newton_expand
from .errors import *  # noqa: F403
from .jordan import EigenBlocks, JordanSpec, d_indices, jordan_matrix, modified_jordan
from .lifting import Certificate, LiftingFrame, LiftProblem, LiftResult, assemble, lift, lift_single, solve_node, verify_lift
from .matrix import Matrix
from .poly import Poly
from .rational import RationalFunction, RationalMatrix
from .scalars import GaussQ
from .series import AtLeast, Series
from .spectral import SigmaVector, char_poly, companion_matrix, is_cyclic, lift_cyclic, membership, pi_map, poly_from_sigma
