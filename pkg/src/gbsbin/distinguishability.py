"""
gbsbin.distinguishability
~~~~~~~~~~~~~~~~~~~~~~~~~
Partial distinguishability as an expanded squeezed-vacuum instance. With
indistinguishability efficiency eta, every squeezed input feeds one shared
copy of the network scaled by sqrt(eta) and a private copy scaled by
sqrt(1 - eta). The private copies never interfere with each other. Detector
counts are summed over all copies of an output port.
"""
from collections import namedtuple
import numpy as np
from scipy import linalg
from .gbs_core import GbsInstance, SqueezedInput, TransferMatrix, BinPartition, \
    as_partition, _as_parameter_vector
from .exceptions import DimensionError, DomainError

ExpandedInstance = namedtuple('ExpandedInstance', ['instance', 'port_map'])


class PartialDistInstance(object):
    """
    Squeezed vacuum through a network with a scalar indistinguishability
    efficiency.

    :ivar squeezing: per-mode squeezing parameters
    :ivar network: base TransferMatrix
    :ivar eta_ind: indistinguishability efficiency in [0, 1]

    :param r: per-mode squeezing parameters, each >= 0
    :param network: TransferMatrix or array-like, defaults to the identity
    :param eta_ind: scalar efficiency; per-mode sequences are rejected
    """
    input_model = 'partial'

    def __init__(self, r, network=None, eta_ind=1.0):
        self.squeezing = _as_parameter_vector(r, 'squeezing')

        if network is None:
            network = TransferMatrix.identity(self.squeezing.size)
        elif not isinstance(network, TransferMatrix):
            network = TransferMatrix(network)
        if network.mode_count != self.squeezing.size:
            raise DimensionError(
                "network has %d modes but %d squeezing values were given" % (network.mode_count, self.squeezing.size)
            )

        if np.ndim(eta_ind) != 0:
            raise DomainError("eta_ind must be a scalar; per-mode efficiencies are not supported")
        eta_ind = float(eta_ind)
        if not 0.0 <= eta_ind <= 1.0:
            raise DomainError("eta_ind must lie in [0, 1], got %r" % eta_ind)

        self.network = network
        self.eta_ind = eta_ind

    def __repr__(self):
        return '%s(m=%d, eta_ind=%g)' % (self.__class__.__name__, self.mode_count, self.eta_ind)

    @property
    def mode_count(self):
        return self.squeezing.size

    @property
    def expanded_mode_count(self):
        return self.mode_count * (self.mode_count + 1)

    def with_network(self, network):
        return PartialDistInstance(self.squeezing, network, self.eta_ind)

    def mean_photon_number(self):
        return float(np.sum(np.sinh(self.squeezing) ** 2))

    def characteristic_function(self, partition, **options):
        return partial_characteristic_function(self, partition, **options)


def build_partial_instance(p):
    """
    Expanded squeezed-vacuum instance on m (m + 1) ports. Block 0 carries all
    squeezers through sqrt(eta) L; block j carries squeezer j at its port j
    through sqrt(1 - eta) L. Inputs of a block with zero transmission are set
    to vacuum, so exactly 2m modes stay active for 0 < eta < 1 and m at the
    end points.

    :param p: PartialDistInstance
    :return: ExpandedInstance(instance, port_map) where port_map[i] lists the
        m + 1 copies of base output port i
    """
    m = p.mode_count
    entries = p.network.entries

    blocks = [np.sqrt(p.eta_ind) * entries] + [np.sqrt(1.0 - p.eta_ind) * entries] * m
    expanded = linalg.block_diag(*blocks)

    r = np.zeros(m * (m + 1))
    if p.eta_ind > 0:
        r[:m] = p.squeezing
    if p.eta_ind < 1:
        for j in range(m):
            r[(j + 1) * m + j] = p.squeezing[j]

    port_map = tuple(tuple(i + b * m for b in range(m + 1)) for i in range(m))

    instance = GbsInstance(SqueezedInput(r), TransferMatrix(expanded))
    return ExpandedInstance(instance, port_map)


def expand_partition(partition, port_map):
    """
    Maps a partition of base output ports to the expanded instance by uniting
    every port with its copies.

    :param partition: BinPartition or list of bins over base ports
    :param port_map: port copies from build_partial_instance
    :return: BinPartition over expanded ports
    """
    partition = as_partition(partition, len(port_map))
    return BinPartition([
        sorted(copy for port in modes for copy in port_map[port]) for modes in partition.bins
    ])


def partial_characteristic_function(p, partition, **options):
    """
    Characteristic function object of a partially distinguishable instance,
    evaluated on the expanded instance with the expanded partition.

    :param p: PartialDistInstance
    :param partition: BinPartition or list of bins over base output ports
    :return: CharacteristicFunction
    """
    expanded = build_partial_instance(p)
    return expanded.instance.characteristic_function(
        expand_partition(partition, expanded.port_map),
        **options
    )


def char_fn_partial(p, partition, eta, **options):
    """X(eta) for a partially distinguishable instance"""
    return partial_characteristic_function(p, partition, **options)(eta)
