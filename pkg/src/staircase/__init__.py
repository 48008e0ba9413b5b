"""Staircase codes: threshold secret sharing with minimal communication and read overheads."""

from .codec import (ReadPlan, Share, access_plan, decode_oracle, decode_structured, draw_keys,
                    encode, read_symbols)
from .errors import (CorruptionError, DecodabilityError, FormatError, InsufficientPartiesError,
                     ParameterError, SingularMatrixError, StaircaseError)
from .field import Field, FieldSpec, binary8_field, field_make, prime_field
from .matrix import Matrix, mat_mul, rank, solve, vandermonde
from .scheme import (Layout, SchemeParams, build_layout, coefficient_maps, params_delta,
                     params_fixed, params_universal)
from .secrecy import (check_secrecy_exhaustive, check_secrecy_rank, entropy_accounting,
                      overheads)
from .tcss import rethreshold, storage_cost, verify_tcss

__version__ = "0.1.0"

__all__ = [
    "CorruptionError", "DecodabilityError", "Field", "FieldSpec", "FormatError",
    "InsufficientPartiesError", "Layout", "Matrix", "ParameterError", "ReadPlan",
    "SchemeParams", "Share", "SingularMatrixError", "StaircaseError", "access_plan",
    "binary8_field", "build_layout", "check_secrecy_exhaustive", "check_secrecy_rank",
    "coefficient_maps", "decode_oracle", "decode_structured", "draw_keys", "encode",
    "entropy_accounting", "field_make", "mat_mul", "overheads", "params_delta", "params_fixed",
    "params_universal", "prime_field", "rank", "read_symbols", "rethreshold", "solve",
    "storage_cost", "vandermonde", "verify_tcss",
]
