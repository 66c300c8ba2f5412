"""Multiplier ideals, test ideals and Poincare series of jumping numbers
for m-primary monomial ideals, with exact Tor computations."""

from .errors import (DimensionMismatch, InfiniteLengthError, InvariantViolation, MonomialError,
                     NoParameterReduction, PreconditionError, RejectedFiltration, ResourceError,
                     StabilizationError, UndefinedPolyhedronError)
from .filtration import (Filtration, HPolynomial, Jump, JumpTable, h_polynomial, hilbert_series_check,
                         jumping_numbers, make_table_filtration, multiplicity, poincare_bruteforce,
                         poincare_closed_form, tail_series)
from .monomial import (MonomialIdeal, colength, frobenius_power, frobenius_root, ideal_intersection,
                       ideal_leq, ideal_power, ideal_product, ideal_sum, is_m_primary, minimalize,
                       quotient_length)
from .multiplier import lct, multiplier_filtration, multiplier_ideal, multiplier_left_limit
from .newton import NewtonPolyhedron, candidate_jumps, integral_closure, is_reduction, newton_polyhedron
from .series import PoincareForm, TruncatedSeries, UniRational, expand, parse_rendering, render
from .testideal import CharP, test_filtration, test_ideal, test_ideal_chain, test_left_limit
from .tor import (cm_poincare_form, excess, parameter_reduction, tor_lengths, tor_lengths_swapped, tor_table,
                  verify_lemma_41, verify_lemma_42)
from .verify import SUITES, run_suite

__version__ = "0.1.0"
