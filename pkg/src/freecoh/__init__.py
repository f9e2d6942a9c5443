"""Free coherent states over a two-mode Fock space and their 2-adic images."""

from .coherent import (
    CoeffSeq,
    first_mismatch,
    overlap_coeffs,
    pairing_series,
    parse_seq,
    renorm_pairing,
    rho_distance_sq,
)
from .dyadic import Delta, Disc, DyadicPoint, Induced, LocallyConstantFn
from .fock import VACUUM, FockVector
from .padic_map import VerificationReport, phi_functional, phi_state
from .scalar import ParseError, Scalar
from .series import DivergentAt, DivergentBeforeLimit, GeomTailSeries, SeriesSum

__version__ = "0.1.0"
