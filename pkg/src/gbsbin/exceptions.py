"""
gbsbin.exceptions
~~~~~~~~~~~~~~~~~
This module contains custom GBSBin exception and warning classes.
"""


class GBSBinWarning(Warning):
    """Generic GBSBin warning"""
    pass


class VacuousBoundWarning(GBSBinWarning):
    """Warning for a cutoff tail bound requested with alpha <= 1"""
    pass


class ClampWarning(GBSBinWarning):
    """Warning for negative probability mass clamped to zero"""
    pass


class PoolingWarning(GBSBinWarning):
    """Warning for chi-square cells pooled into too few categories"""
    pass


class TruncationWarning(GBSBinWarning):
    """Warning for Fock-space truncation losing noticeable probability mass"""
    pass


class GBSBinException(Exception):
    """Generic GBSBin exception"""
    pass


class DimensionError(GBSBinException):
    """Raised for non-square matrices and mismatched mode or bin counts"""
    pass


class NetworkError(GBSBinException):
    """Raised when a transfer matrix is not sub-unitary"""
    pass


class PartitionError(GBSBinException):
    """Raised for empty, overlapping or out-of-range bins"""
    pass


class DomainError(GBSBinException):
    """Raised for parameters outside their valid range"""
    pass


class ConditioningError(GBSBinException):
    """Raised when the real part of a Q matrix is not positive definite"""
    pass


class NumericError(GBSBinException):
    """Raised for non-finite determinants and large negative probabilities"""
    pass


class SingularityError(NumericError):
    """Raised when det Q vanishes within tolerance"""
    pass


class BranchError(NumericError):
    """
    Raised when the square root branch of det Q cannot be continued, or when
    an inverse transform leaves an imaginary residue pointing to a branch jump.
    """
    pass


class PolicyError(GBSBinException):
    """Raised when no energy cutoff satisfies the requested tail probability"""
    pass


class OracleSizeError(GBSBinException):
    """Raised when the truncated Fock space of the oracle exceeds its cap"""
    pass


class SampleParsingError(GBSBinException):
    """Errors relating to parsing a sample file"""


class InstanceParsingError(GBSBinException):
    """Errors relating to parsing an instance or partition JSON document"""


class HaarTrialError(GBSBinException):
    """
    Raised when a single Haar Monte Carlo draw fails. The seed and trial index
    of the offending draw are kept so the failure can be reproduced.
    """
    def __init__(self, message, seed=None, trial=None):
        super().__init__(message)
        self.seed = seed
        self.trial = trial
