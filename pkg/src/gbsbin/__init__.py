from .gbs_core import TransferMatrix, SqueezedInput, BinPartition, GbsInstance, \
    CharacteristicFunction, validate_network, uniform_loss, char_fn_squeezed
from .classical_models import ThermalInput, SquashedInput, char_fn_thermal, char_fn_squashed, \
    match_squashed_to_squeezed, match_thermal_to_squeezed
from .distinguishability import PartialDistInstance, build_partial_instance, char_fn_partial
from .binned_dist import CutoffPolicy, BinnedDistribution, total_pair_distribution, cutoff_tail_bound, \
    select_cutoff, binned_distribution, instance_distribution, characteristic_from_distribution, \
    marginalize, merge_bins, post_select, binned_moments
from .haar import HaarParams, HaarAverage, haar_fock_distinguishable, haar_fock_indistinguishable, \
    gaussian_asymptotic, haar_gbs_asymptotic, haar_gbs_table, random_haar_unitary, monte_carlo_haar_average
from .fock_oracle import squeezed_fock_coeffs, permanent, transition_amplitude, dilate_to_unitary, \
    oracle_binned_distribution
from .sample_data import SampleSet, ingest_samples, bin_samples, generate_samples
from .validation import tv_distance, chi_square, log_likelihood_ratio, ValidationReport, validate_samples
from .utils import read_instance, read_partition, instance_to_dict
from .writers import write_distribution, write_haar_table
from . import exceptions as exceptions  # noqa

from ._version import __version__

__all__ = [
    'TransferMatrix',
    'SqueezedInput',
    'ThermalInput',
    'SquashedInput',
    'BinPartition',
    'GbsInstance',
    'PartialDistInstance',
    'CharacteristicFunction',
    'validate_network',
    'uniform_loss',
    'char_fn_squeezed',
    'char_fn_thermal',
    'char_fn_squashed',
    'char_fn_partial',
    'match_squashed_to_squeezed',
    'match_thermal_to_squeezed',
    'build_partial_instance',
    'CutoffPolicy',
    'BinnedDistribution',
    'total_pair_distribution',
    'cutoff_tail_bound',
    'select_cutoff',
    'binned_distribution',
    'instance_distribution',
    'characteristic_from_distribution',
    'marginalize',
    'merge_bins',
    'post_select',
    'binned_moments',
    'HaarParams',
    'HaarAverage',
    'haar_fock_distinguishable',
    'haar_fock_indistinguishable',
    'gaussian_asymptotic',
    'haar_gbs_asymptotic',
    'haar_gbs_table',
    'random_haar_unitary',
    'monte_carlo_haar_average',
    'squeezed_fock_coeffs',
    'permanent',
    'transition_amplitude',
    'dilate_to_unitary',
    'oracle_binned_distribution',
    'SampleSet',
    'ingest_samples',
    'bin_samples',
    'generate_samples',
    'tv_distance',
    'chi_square',
    'log_likelihood_ratio',
    'ValidationReport',
    'validate_samples',
    'read_instance',
    'read_partition',
    'instance_to_dict',
    'write_distribution',
    'write_haar_table',
    'exceptions'
]
