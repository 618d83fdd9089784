"""Primality of 6^(m+1)*N - 1 by residues mod 6i+1, and a 6n+-1 index sieve."""

from .closed_form import (Decomposition, LinearFamily, decompose, family_membership,
                          mod_square_closed, residue_families)
from .exclusion import (DomainError, ExclusionWitness, TheoremParams, Verdict,
                        bound_audit, excluded_set_stream, find_witness,
                        paper_i_bound, paper_literal_verdict, residue,
                        sound_i_bound, theorem_verdict)
from .sieve import (CapacityError, SieveRange, SieveStats, compare, eratosthenes,
                    wheel_sieve)
from .verify import Disagreement, factor_small, is_prime_ref, search_counterexamples
from .wheel import (Case, CompositeIndex, NonCoprime, Series, WheelIndex, WidthError,
                    classify, composite_index, from_factors, index_to_value)

__version__ = "0.1.0"
