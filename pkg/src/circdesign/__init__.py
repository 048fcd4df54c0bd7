"""Finite point sets on the unit circle with prescribed harmonic strength."""

from .construction import (SearchConfig, StrengthSpec, antipodal_pairs, assemble,
                           construct_design, construct_singleton, regular_ngon, replay,
                           search_parameter)
from .core import (ConstructionTrace, Design, Moment, TraceStep, UnitPoint, canonicalize,
                   conjugate_closed, min_separation, moment, moments, product)
from .errors import (BoundError, CollisionError, DegenerateError, DesignError, DomainError,
                     SearchExhaustedError, SingletonError, TraceError)
from .moment_functions import (ZeroScanResult, f_eval, f_eval_chebyshev, margin, scan_zeros)
from .verification import (BoundedStrength, VerificationReport, cross_check,
                           strength_within_bound, verify)

__version__ = "0.1.0"
