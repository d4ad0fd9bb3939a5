"""Statevector simulation of one-query zero-crossing counting and the sequency-ordered Walsh-Hadamard circuit."""
from .classical import (brute_force_zero_crossings, generate_sequence, zero_crossings_closed_form,
                        zero_crossings_recurrence, zero_crossings_trace)
from .core import BitString, bit_reversal_permutation, dot_mod2, g_bits, g_bits_inverse, truncate
from .circuit import (Circuit, Gate, OracleHandle, build_bv_circuit, build_oracle,
                      build_sequency_wht_circuit, build_uz, build_zero_crossings_circuit, from_text,
                      gate_counts, to_text)
from .estimators import WalshHadamardTransformer, ZeroCrossingCounter
from .simulator import (StateVector, apply, circuit_unitary, count_zero_crossings, initial_state,
                        measure_register)
from .transforms import (fwht_natural, fwht_sequency, natural_matrix, sequency_matrix,
                         sequency_permutation, walsh_function_sequency)

__version__ = "0.1.0"
