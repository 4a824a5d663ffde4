"""
gbsbin.classical_models
~~~~~~~~~~~~~~~~~~~~~~~
Characteristic functions for the classical mock-up hypotheses: thermal and
squashed inputs. Both have a regular P function, so X(eta) reduces to a
Gaussian integral with a complex symmetric Q matrix over the active modes.
"""
import numpy as np
from .gbs_core import GbsInstance, SqueezedInput, gaussian_characteristic_function, \
    _as_parameter_vector
from .exceptions import DomainError


class ThermalInput(object):
    """
    Thermal state on every input port, described by its mean photon number.
    Modes with nbar = 0 carry vacuum.

    :param nbar: per-mode mean photon numbers, each >= 0
    """
    model = 'thermal'

    def __init__(self, nbar):
        self._nbar = _as_parameter_vector(nbar, 'nbar')

    def __repr__(self):
        return '%s(m=%d, active=%d)' % (self.__class__.__name__, self.mode_count, self.active_modes.size)

    @property
    def nbar(self):
        return self._nbar

    @property
    def k(self):
        """Covariance scale 2 nbar + 1 per mode"""
        return 2.0 * self._nbar + 1.0

    @property
    def mode_count(self):
        return self._nbar.size

    @property
    def active_modes(self):
        return np.flatnonzero(self._nbar > 0)

    def mean_photon_numbers(self):
        return np.array(self._nbar)

    def characteristic_function(self, network, partition, **options):
        active = self.active_modes
        nbar = self._nbar[active]

        # normalization N (2 pi)^m_a = prod 2 / nbar
        log_prefactor = float(np.sum(np.log(2.0 / nbar))) if active.size else 0.0

        return gaussian_characteristic_function(
            network,
            partition,
            active,
            1.0 / nbar,
            _thermal_blocks,
            log_prefactor,
            **options
        )


def _thermal_blocks(gram, diagonal):
    symmetric = 2.0 * np.diag(diagonal) - gram - gram.T
    skew = 1j * (gram - gram.T)
    return np.block([[symmetric, skew], [-skew, symmetric]])


class SquashedInput(object):
    """
    Squashed state on every input port: vacuum fluctuations in one quadrature
    and excess noise e^{4r} in the conjugate one, i.e. squeezed thermal light
    S(r) nu_th(e^{2r}) S(r)^dagger. Modes with r = 0 carry vacuum.

    :param r: per-mode squash parameters, each >= 0
    """
    model = 'squashed'

    def __init__(self, r):
        self._r = _as_parameter_vector(r, 'squeezing')

    def __repr__(self):
        return '%s(m=%d, active=%d)' % (self.__class__.__name__, self.mode_count, self.active_modes.size)

    @property
    def r(self):
        return self._r

    @property
    def lam(self):
        """e^{4r} - 1 per mode"""
        return np.expm1(4.0 * self._r)

    @property
    def mode_count(self):
        return self._r.size

    @property
    def active_modes(self):
        return np.flatnonzero(self._r > 0)

    def mean_photon_numbers(self):
        return self.lam / 4.0

    def characteristic_function(self, network, partition, **options):
        active = self.active_modes
        lam = self.lam[active]

        # N sqrt((2 pi)^m_a) = prod sqrt(4 / lambda)
        log_prefactor = float(np.sum(0.5 * np.log(4.0 / lam))) if active.size else 0.0

        return gaussian_characteristic_function(
            network,
            partition,
            active,
            2.0 / lam,
            _squashed_blocks,
            log_prefactor,
            **options
        )


def _squashed_blocks(gram, diagonal):
    return 2.0 * np.diag(diagonal) - gram - gram.T


def _check_model(inst, input_class):
    if not isinstance(inst, GbsInstance) or not isinstance(inst.inputs, input_class):
        raise DomainError("expected a %s instance, got %r" % (input_class.model, inst))


def thermal_characteristic_function(inst, partition, **options):
    """
    Characteristic function object for thermal inputs through a lossy network.

    :param inst: GbsInstance with ThermalInput
    :param partition: BinPartition or list of bins
    :return: CharacteristicFunction
    """
    _check_model(inst, ThermalInput)
    return inst.characteristic_function(partition, **options)


def squashed_characteristic_function(inst, partition, **options):
    """
    Characteristic function object for squashed inputs through a lossy network.

    :param inst: GbsInstance with SquashedInput
    :param partition: BinPartition or list of bins
    :return: CharacteristicFunction
    """
    _check_model(inst, SquashedInput)
    return inst.characteristic_function(partition, **options)


def char_fn_thermal(inst, partition, eta, **options):
    """X(eta) for thermal inputs"""
    return thermal_characteristic_function(inst, partition, **options)(eta)


def char_fn_squashed(inst, partition, eta, **options):
    """X(eta) for squashed inputs"""
    return squashed_characteristic_function(inst, partition, **options)(eta)


def match_squashed_to_squeezed(squeezed):
    """
    Squashed input with the same per-mode mean photon number as a squeezed
    input: (e^{4 r'} - 1) / 4 = sinh^2 r.

    :param squeezed: SqueezedInput or GbsInstance with one
    :return: SquashedInput, or GbsInstance sharing the network when given an instance
    """
    if isinstance(squeezed, GbsInstance):
        return GbsInstance(match_squashed_to_squeezed(squeezed.inputs), squeezed.network)
    if not isinstance(squeezed, SqueezedInput):
        raise DomainError("expected squeezed input, got %r" % squeezed)

    return SquashedInput(np.log1p(4.0 * np.sinh(squeezed.r) ** 2) / 4.0)


def match_thermal_to_squeezed(squeezed):
    """
    Thermal input with the same per-mode mean photon number as a squeezed
    input: nbar = sinh^2 r.

    :param squeezed: SqueezedInput or GbsInstance with one
    :return: ThermalInput, or GbsInstance sharing the network when given an instance
    """
    if isinstance(squeezed, GbsInstance):
        return GbsInstance(match_thermal_to_squeezed(squeezed.inputs), squeezed.network)
    if not isinstance(squeezed, SqueezedInput):
        raise DomainError("expected squeezed input, got %r" % squeezed)

    return ThermalInput(np.sinh(squeezed.r) ** 2)
