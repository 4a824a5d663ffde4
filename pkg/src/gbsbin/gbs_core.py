"""
gbsbin.gbs_core
~~~~~~~~~~~~~~~
Domain types for Gaussian boson sampling instances and the determinant form of
the binned characteristic function X(eta) = Tr[rho exp(i eta . N)] for squeezed
vacuum sent through a (possibly lossy) linear optical network.
"""
import operator
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from scipy import linalg
from . import constants
from .exceptions import DimensionError, NetworkError, PartitionError, DomainError, \
    ConditioningError, NumericError, SingularityError, BranchError

NetworkReport = namedtuple(
    'NetworkReport',
    ['singular_values', 'sigma_max', 'is_unitary', 'is_subunitary']
)


def _as_square_matrix(entries):
    matrix = np.array(entries, dtype=complex)

    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError("transfer matrix must be square, got shape %s" % (matrix.shape,))
    if matrix.shape[0] < 1:
        raise DimensionError("transfer matrix must have at least one mode")
    if not np.all(np.isfinite(matrix)):
        raise NumericError("transfer matrix contains non-finite entries")

    return matrix


def _as_parameter_vector(values, label):
    vector = np.array(np.atleast_1d(values), dtype=float)

    if vector.ndim != 1 or vector.size < 1:
        raise DimensionError("%s must be a non-empty vector" % label)
    if not np.all(np.isfinite(vector)):
        raise DomainError("%s contains non-finite values" % label)
    if np.any(vector < 0):
        raise DomainError("%s must be non-negative, got %s" % (label, vector.tolist()))

    vector.setflags(write=False)
    return vector


def _as_phase_point(eta, bin_count):
    point = np.array(np.atleast_1d(eta), dtype=float)

    if point.ndim != 1 or point.size != bin_count:
        raise DimensionError(
            "phase point has %d components but the partition has %d bins" % (point.size, bin_count)
        )
    if not np.all(np.isfinite(point)):
        raise DomainError("phase point contains non-finite values")

    return np.mod(point, 2.0 * np.pi)


def validate_network(L, tol=constants.TOL_SUBUNITARY):
    """
    Reports the singular values of a transfer matrix together with its
    unitarity and sub-unitarity status.

    :param L: TransferMatrix or a square array-like of complex amplitudes
    :param tol: tolerance on the singular values, default is 1e-8
    :return: NetworkReport named tuple (singular_values, sigma_max, is_unitary, is_subunitary)
    """
    if isinstance(L, TransferMatrix):
        matrix = L.entries
    else:
        matrix = _as_square_matrix(L)

    singular_values = linalg.svdvals(matrix)
    sigma_max = float(singular_values[0])

    return NetworkReport(
        singular_values=singular_values,
        sigma_max=sigma_max,
        is_unitary=bool(np.all(np.abs(singular_values - 1.0) <= tol)),
        is_subunitary=sigma_max <= 1.0 + tol
    )


class TransferMatrix(object):
    """
    Complex m x m mode transformation of a passive linear optical network.
    Lossy networks are sub-unitary: the largest singular value may not exceed 1.

    :ivar report: NetworkReport computed at construction

    :param entries: square array-like of complex amplitudes
    :param tol: sub-unitarity tolerance, default is 1e-8
    """
    def __init__(self, entries, tol=constants.TOL_SUBUNITARY):
        matrix = _as_square_matrix(entries)
        self.report = validate_network(matrix, tol=tol)

        if not self.report.is_subunitary:
            raise NetworkError(
                "largest singular value %.12g exceeds 1 + %g" % (self.report.sigma_max, tol)
            )

        matrix.setflags(write=False)
        self._entries = matrix

    def __repr__(self):
        return '%s(m=%d, %s)' % (
            self.__class__.__name__,
            self.mode_count,
            'unitary' if self.is_unitary else 'sub-unitary'
        )

    @classmethod
    def identity(cls, mode_count):
        """Lossless network that leaves every mode untouched"""
        return cls(np.eye(mode_count))

    @property
    def entries(self):
        return self._entries

    @property
    def mode_count(self):
        return self._entries.shape[0]

    @property
    def is_unitary(self):
        return self.report.is_unitary


def uniform_loss(L, transmissivity):
    """
    Composes a network with uniform loss, scaling every amplitude by the square
    root of the transmissivity.

    :param L: TransferMatrix or square array-like
    :param transmissivity: power transmission in [0, 1]
    :return: TransferMatrix
    """
    if not 0.0 <= transmissivity <= 1.0:
        raise DomainError("transmissivity must lie in [0, 1], got %r" % transmissivity)

    entries = L.entries if isinstance(L, TransferMatrix) else _as_square_matrix(L)
    return TransferMatrix(np.sqrt(transmissivity) * entries)


class SqueezedInput(object):
    """
    Single-mode squeezed vacuum on every input port. Modes with r = 0 carry
    vacuum and drop out of the Gaussian integral.

    :param r: per-mode squeezing parameters, each >= 0
    """
    model = 'squeezed'

    def __init__(self, r):
        self._r = _as_parameter_vector(r, 'squeezing')

    def __repr__(self):
        return '%s(m=%d, active=%d)' % (self.__class__.__name__, self.mode_count, self.active_modes.size)

    @property
    def r(self):
        return self._r

    @property
    def gamma(self):
        """e^{2r} - 1 per mode"""
        return np.expm1(2.0 * self._r)

    @property
    def mode_count(self):
        return self._r.size

    @property
    def active_modes(self):
        return np.flatnonzero(self._r > 0)

    def mean_photon_numbers(self):
        return np.sinh(self._r) ** 2

    def characteristic_function(self, network, partition, **options):
        return _squeezed_characteristic_function(self, network, partition, **options)


class BinPartition(object):
    """
    Disjoint, non-empty groups of 0-based output-mode indices. Detector counts
    within a group are summed into a single binned count. The union of the bins
    may leave some modes out, which realizes marginal distributions.

    :param bins: iterable of iterables of mode indices
    :param mode_count: optional number of modes to range-check against
    """
    def __init__(self, bins, mode_count=None):
        parsed = []
        seen = set()

        for position, bin_modes in enumerate(bins):
            try:
                modes = tuple(sorted(operator.index(i) for i in bin_modes))
            except TypeError:
                raise PartitionError("bin %d contains a non-integer mode index" % position)

            if len(modes) == 0:
                raise PartitionError("bin %d is empty" % position)
            if modes[0] < 0:
                raise PartitionError("bin %d contains a negative mode index" % position)
            if len(set(modes)) != len(modes) or seen.intersection(modes):
                raise PartitionError("bin %d overlaps another bin or repeats a mode" % position)

            seen.update(modes)
            parsed.append(modes)

        if not parsed:
            raise PartitionError("a partition needs at least one bin")

        self._bins = tuple(parsed)

        if mode_count is not None:
            self.validate(mode_count)

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, self.to_list())

    def __eq__(self, other):
        return isinstance(other, BinPartition) and self._bins == other._bins

    def __hash__(self):
        return hash(self._bins)

    def __len__(self):
        return len(self._bins)

    @classmethod
    def singletons(cls, mode_count):
        """One bin per mode, i.e. the full photon-number-resolved pattern"""
        return cls([[i] for i in range(mode_count)])

    @classmethod
    def contiguous(cls, bin_sizes):
        """Consecutive blocks of modes with the given sizes"""
        bins = []
        start = 0
        for size in bin_sizes:
            bins.append(range(start, start + int(size)))
            start += int(size)
        return cls(bins)

    @property
    def bins(self):
        return self._bins

    @property
    def bin_count(self):
        return len(self._bins)

    @property
    def bin_sizes(self):
        return tuple(len(b) for b in self._bins)

    @property
    def modes(self):
        return tuple(sorted(i for b in self._bins for i in b))

    def validate(self, mode_count):
        """Raises PartitionError if any index falls outside 0..mode_count-1"""
        if max(self.modes) >= mode_count:
            raise PartitionError(
                "partition references mode %d but the instance has %d modes" % (max(self.modes), mode_count)
            )

    def covers(self, mode_count):
        return self.modes == tuple(range(mode_count))

    def fractions(self, mode_count):
        """Bin fractions q_i = |K_i| / m"""
        return np.array(self.bin_sizes, dtype=float) / mode_count

    def check_bin_index(self, index):
        if not 0 <= index < self.bin_count:
            raise PartitionError("bin index %d out of range for %d bins" % (index, self.bin_count))

    def without(self, index):
        """Partition with one bin removed"""
        self.check_bin_index(index)
        return BinPartition(b for i, b in enumerate(self._bins) if i != index)

    def merged(self, i, j):
        """Partition with bins i and j united; the union takes the lower position"""
        self.check_bin_index(i)
        self.check_bin_index(j)
        if i == j:
            raise PartitionError("cannot merge bin %d with itself" % i)

        low, high = sorted((i, j))
        bins = [list(b) for b in self._bins]
        bins[low] = bins[low] + bins[high]
        del bins[high]

        return BinPartition(bins)

    def to_list(self):
        return [list(b) for b in self._bins]


def as_partition(partition, mode_count=None):
    """Accepts a BinPartition or a plain list of bins"""
    if not isinstance(partition, BinPartition):
        partition = BinPartition(partition)
    if mode_count is not None:
        partition.validate(mode_count)
    return partition


class GbsInstance(object):
    """
    Input state plus linear network. The input is one of SqueezedInput,
    ThermalInput or SquashedInput and decides which characteristic function
    the instance evaluates.

    :param inputs: per-mode input model
    :param network: TransferMatrix or array-like, defaults to the identity
    """
    def __init__(self, inputs, network=None):
        if network is None:
            network = TransferMatrix.identity(inputs.mode_count)
        elif not isinstance(network, TransferMatrix):
            network = TransferMatrix(network)

        if network.mode_count != inputs.mode_count:
            raise DimensionError(
                "network has %d modes but the input has %d" % (network.mode_count, inputs.mode_count)
            )

        self.inputs = inputs
        self.network = network

    def __repr__(self):
        return '%s(%s, m=%d)' % (self.__class__.__name__, self.input_model, self.mode_count)

    @property
    def input_model(self):
        return self.inputs.model

    @property
    def mode_count(self):
        return self.inputs.mode_count

    def with_network(self, network):
        return GbsInstance(self.inputs, network)

    def mean_photon_number(self):
        """Total mean photon number entering the network"""
        return float(np.sum(self.inputs.mean_photon_numbers()))

    def characteristic_function(self, partition, **options):
        return self.inputs.characteristic_function(self.network, partition, **options)


def theta_vector(partition, eta, m):
    """
    Per-mode phases: theta_i = eta_j for mode i in bin j, 0 for modes outside
    every bin (those are traced out).

    :param partition: BinPartition or list of bins
    :param eta: phase point, one angle per bin
    :param m: mode count
    :return: real array of length m
    """
    partition = as_partition(partition, m)
    eta = _as_phase_point(eta, partition.bin_count)

    theta = np.zeros(m)
    for phase, modes in zip(eta, partition.bins):
        theta[list(modes)] = phase

    return theta


def phased_gram(L, theta, modes=None):
    """
    Returns L^T H L* with H = diag(e^{i theta} - 1), restricted to the given
    input modes (rows and columns).

    :param L: TransferMatrix or array-like with one column per input mode
    :param theta: per-output-mode phases
    :param modes: input mode indices to keep, default is all
    :return: complex square array
    """
    entries = L.entries if isinstance(L, TransferMatrix) else np.asarray(L, dtype=complex)
    if modes is not None:
        entries = entries[:, modes]

    h = np.exp(1j * np.asarray(theta, dtype=float)) - 1.0
    return (entries.T * h) @ entries.conj()


def lu_log_det(q):
    """
    Logarithm of det Q from the pivots of an LU factorization. The imaginary
    part is only defined modulo 2 pi; branch selection happens in the callers.

    :param q: complex square array
    :return: complex log-determinant
    """
    try:
        lu, piv = linalg.lu_factor(q, check_finite=True)
    except ValueError as ex:
        raise NumericError("Q matrix is not finite: %s" % ex)

    pivots = np.diagonal(lu)
    scale = max(1.0, float(np.max(np.abs(q))))
    if np.min(np.abs(pivots)) <= np.finfo(float).eps * scale:
        raise SingularityError("det Q vanishes within tolerance (smallest pivot %.3g)" % np.min(np.abs(pivots)))

    swaps = np.count_nonzero(piv != np.arange(piv.size))
    log_det = complex(np.sum(np.log(pivots.astype(complex)))) + 1j * np.pi * swaps

    if not np.isfinite(log_det):
        raise NumericError("det Q is not finite")

    return log_det


def check_q_matrix(q, tol_symmetric=constants.TOL_SYMMETRIC):
    """
    Raises unless Q is complex symmetric with a positive definite real part,
    the condition under which the Gaussian integral converges.
    """
    scale = max(1.0, float(np.max(np.abs(q))))
    if np.max(np.abs(q - q.T)) > tol_symmetric * scale:
        raise ConditioningError("Q matrix is not symmetric to within %g" % tol_symmetric)

    try:
        np.linalg.cholesky(q.real)
    except np.linalg.LinAlgError:
        raise ConditioningError("real part of the Q matrix is not positive definite")


def _wrap_phase(angle):
    return (angle + np.pi) % (2.0 * np.pi) - np.pi


def branch_sqrt_det(q_builder, eta, log_det_origin=None, **options):
    """
    Square root of det Q(eta) on the branch continued from eta = 0 along the
    axis-aligned path (first axis 0, then axis 1, ...). At the origin the root
    is the positive real value.

    :param q_builder: callable mapping a phase point to the Q matrix
    :param eta: target phase point
    :param log_det_origin: log det Q(0) if already known
    :param options: max_phase_step, max_eta_step, max_depth
    :return: complex square root of det Q(eta)
    """
    eta = np.asarray(eta, dtype=float)
    origin = np.zeros_like(eta)

    if log_det_origin is None:
        log_det_origin = _anchor_log_det(lu_log_det(q_builder(origin)))

    waypoints = [origin]
    for axis in range(eta.size):
        corner = waypoints[-1].copy()
        corner[axis] = eta[axis]
        waypoints.append(corner)

    log_det = continue_log_det(q_builder, waypoints, log_det_origin, **options)
    return np.exp(0.5 * log_det)


def _anchor_log_det(log_det):
    # det Q(0) is real and positive for every supported input model
    if abs(_wrap_phase(log_det.imag)) > 1e-8:
        raise NumericError("det Q at the origin is not positive (phase %.3g)" % log_det.imag)
    return complex(log_det.real, 0.0)


def continue_log_det(
        q_builder,
        waypoints,
        log_det_start,
        max_phase_step=constants.MAX_PHASE_STEP,
        max_eta_step=constants.MAX_ETA_STEP,
        max_depth=constants.MAX_BISECTION_DEPTH
):
    """
    Continues log det Q along a polyline of phase points, keeping the phase of
    the determinant continuous. Segments are cut to at most max_eta_step and
    bisected while the phase increment exceeds max_phase_step.

    :param q_builder: callable mapping a phase point to the Q matrix
    :param waypoints: sequence of phase points, the first one carrying log_det_start
    :param log_det_start: log det Q at the first waypoint on the chosen branch
    :return: log det Q at the last waypoint on the continued branch
    """
    log_det = log_det_start

    for start, stop in zip(waypoints[:-1], waypoints[1:]):
        start = np.asarray(start, dtype=float)
        stop = np.asarray(stop, dtype=float)
        span = float(np.max(np.abs(stop - start))) if start.size else 0.0
        if span == 0.0:
            continue

        pieces = int(np.ceil(span / max_eta_step))
        previous = start
        for piece in range(1, pieces + 1):
            current = start + (stop - start) * piece / pieces
            log_det = _bisect_log_det(q_builder, previous, current, log_det, max_phase_step, max_depth)
            previous = current

    return log_det


def _bisect_log_det(q_builder, start, stop, log_det_start, max_phase_step, depth):
    raw = lu_log_det(q_builder(stop))
    step = _wrap_phase(raw.imag - log_det_start.imag)

    if abs(step) <= max_phase_step:
        return complex(raw.real, log_det_start.imag + step)
    if depth == 0:
        raise BranchError(
            "det Q phase jumps by %.3g rad between %s and %s" % (step, np.round(start, 6), np.round(stop, 6))
        )

    middle = 0.5 * (start + stop)
    log_det_middle = _bisect_log_det(q_builder, start, middle, log_det_start, max_phase_step, depth - 1)
    return _bisect_log_det(q_builder, middle, stop, log_det_middle, max_phase_step, depth - 1)


class CharacteristicFunction(object):
    """
    Characteristic function of the binned photon counts for models where

        X(eta) = exp(log_prefactor) / sqrt(det Q(eta)),

    with the square root continued from eta = 0 where X = 1. A model without
    active modes has no Q matrix and X is identically 1.

    Grid evaluation walks a spanning tree of the (n+1)^B phase grid: every
    point is continued from its parent, the point with its last nonzero index
    decremented, so each grid point costs one path segment. Subtrees hanging
    off the first axis are independent and may run in a thread pool.

    :ivar bin_count: number of bins B
    :ivar log_prefactor: log of the normalization constant

    :param q_builder: callable mapping a phase point to the Q matrix, or None
    :param log_prefactor: real log of the normalization constant
    :param bin_count: number of bins B
    :param tol_symmetric: symmetry tolerance for Q, default is 1e-10
    :param max_phase_step: largest accepted det Q phase increment per segment
    :param max_eta_step: longest path segment before subdivision
    :param max_depth: bisection depth limit
    """
    def __init__(
            self,
            q_builder,
            log_prefactor,
            bin_count,
            tol_symmetric=constants.TOL_SYMMETRIC,
            max_phase_step=constants.MAX_PHASE_STEP,
            max_eta_step=constants.MAX_ETA_STEP,
            max_depth=constants.MAX_BISECTION_DEPTH
    ):
        self.bin_count = int(bin_count)
        self.log_prefactor = float(log_prefactor)
        self._raw_builder = q_builder
        self._tol_symmetric = tol_symmetric
        self._path_options = {
            'max_phase_step': max_phase_step,
            'max_eta_step': max_eta_step,
            'max_depth': max_depth
        }

        if q_builder is None:
            self._log_det_origin = None
        else:
            self._log_det_origin = _anchor_log_det(lu_log_det(self.q_matrix(np.zeros(self.bin_count))))

            # bright bins turn det Q fast; a segment must stay well below one full turn
            rate = self.origin_phase_rate()
            if rate > 0:
                self._path_options['max_eta_step'] = min(max_eta_step, 0.5 * max_phase_step / rate)

    def __repr__(self):
        return '%s(B=%d%s)' % (self.__class__.__name__, self.bin_count, ', trivial' if self.is_trivial else '')

    @property
    def is_trivial(self):
        return self._raw_builder is None

    def q_matrix(self, eta):
        """Checked Q matrix at a phase point"""
        q = self._raw_builder(eta)
        check_q_matrix(q, self._tol_symmetric)
        return q

    def origin_phase_rate(self, h=1e-7):
        """
        Rate at which the phase of det Q turns near eta = 0, summed over the
        axes. It equals twice the total mean photon number in the bins.
        """
        rate = 0.0
        for axis in range(self.bin_count):
            eta = np.zeros(self.bin_count)
            eta[axis] = h
            step = _wrap_phase(lu_log_det(self.q_matrix(eta)).imag - self._log_det_origin.imag)
            rate += abs(step) / h
        return rate

    @property
    def max_eta_step(self):
        """Longest path segment used between continuation checks"""
        return self._path_options['max_eta_step']

    def log_det_along(self, waypoints):
        """log det Q at the end of a polyline starting at the origin"""
        waypoints = [np.asarray(w, dtype=float) for w in waypoints]
        if np.any(waypoints[0] != 0):
            waypoints.insert(0, np.zeros(self.bin_count))
        return continue_log_det(self.q_matrix, waypoints, self._log_det_origin, **self._path_options)

    def __call__(self, eta):
        eta = _as_phase_point(eta, self.bin_count)
        if self.is_trivial:
            return 1.0 + 0.0j

        root = branch_sqrt_det(self.q_matrix, eta, self._log_det_origin, **self._path_options)
        return complex(np.exp(self.log_prefactor) / root)

    def evaluate_path(self, waypoints):
        """X at the end of a polyline from the origin, for path-independence checks"""
        if self.is_trivial:
            return 1.0 + 0.0j
        return complex(np.exp(self.log_prefactor - 0.5 * self.log_det_along(waypoints)))

    def grid(self, sizes, workers=None):
        """
        Values of X at eta = 2 pi nu / size for every nu in the grid.

        :param sizes: points per axis (n + 1), an int or one int per bin
        :param workers: optional thread count for independent subtrees
        :return: complex array of shape sizes
        """
        if np.ndim(sizes) == 0:
            sizes = (int(sizes),) * self.bin_count
        sizes = tuple(int(s) for s in sizes)
        if len(sizes) != self.bin_count or min(sizes) < 1:
            raise DimensionError("grid sizes %s do not match %d bins" % (sizes, self.bin_count))

        if self.is_trivial:
            return np.ones(sizes, dtype=complex)

        steps = 2.0 * np.pi / np.array(sizes, dtype=float)
        log_dets = np.empty(sizes, dtype=complex)
        origin = (0,) * self.bin_count
        log_dets[origin] = self._log_det_origin

        def extend(index, parent):
            log_dets[index] = continue_log_det(
                self.q_matrix,
                [steps * np.array(parent), steps * np.array(index)],
                log_dets[parent],
                **self._path_options
            )

        # spine along the first axis
        for a in range(1, sizes[0]):
            index = (a,) + origin[1:]
            extend(index, (a - 1,) + origin[1:])

        def walk_subtree(a):
            for rest in np.ndindex(*sizes[1:]):
                nonzero = np.flatnonzero(rest)
                if nonzero.size == 0:
                    continue
                index = (a,) + tuple(rest)
                parent = list(index)
                parent[nonzero[-1] + 1] -= 1
                extend(index, tuple(parent))

        if self.bin_count > 1:
            if workers is not None and workers > 1:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    list(pool.map(walk_subtree, range(sizes[0])))
            else:
                for a in range(sizes[0]):
                    walk_subtree(a)

        return np.exp(self.log_prefactor - 0.5 * log_dets)


def gaussian_characteristic_function(network, partition, active, diagonal, block_builder, log_prefactor, **options):
    """
    Shared assembly for the determinant models. The block builder receives the
    restricted phased Gram matrix and the diagonal entries and returns Q.

    :param network: TransferMatrix
    :param partition: BinPartition or list of bins
    :param active: input mode indices kept in the Gaussian integral
    :param diagonal: per active mode diagonal coefficients
    :param block_builder: callable (gram, diagonal) -> Q
    :param log_prefactor: log of the normalization constant
    :return: CharacteristicFunction
    """
    m = network.mode_count
    partition = as_partition(partition, m)

    if len(active) == 0:
        return CharacteristicFunction(None, 0.0, partition.bin_count, **options)

    columns = network.entries[:, active]
    diagonal = np.asarray(diagonal, dtype=float)

    def q_builder(eta):
        theta = theta_vector(partition, eta, m)
        gram = phased_gram(columns, theta)
        return block_builder(gram, diagonal)

    return CharacteristicFunction(q_builder, log_prefactor, partition.bin_count, **options)


def _squeezed_blocks(gram, diagonal):
    a = np.diag(diagonal).astype(complex)
    off = -(np.eye(diagonal.size) + gram)
    return np.block([[a, off], [off.T, a]])


def _squeezed_characteristic_function(inputs, network, partition, **options):
    active = inputs.active_modes
    r = inputs.r[active]
    gamma = np.expm1(2.0 * r)

    # prefactor 2 sqrt(1 + gamma) / gamma per active mode, with sqrt(1 + gamma) = e^r
    log_prefactor = float(np.sum(np.log(2.0) + r - np.log(gamma))) if active.size else 0.0

    return gaussian_characteristic_function(
        network,
        partition,
        active,
        2.0 / gamma + 1.0,
        _squeezed_blocks,
        log_prefactor,
        **options
    )


def squeezed_characteristic_function(inst, partition, **options):
    """
    Characteristic function object for squeezed vacuum through a lossy network.
    The Q matrix spans only active modes (r > 0): diagonal blocks
    2 Gamma^-1 + I and off-diagonal blocks -(I + U) and its transpose, where U
    is the phased Gram matrix.

    :param inst: GbsInstance with SqueezedInput
    :param partition: BinPartition or list of bins
    :return: CharacteristicFunction
    """
    if not isinstance(inst.inputs, SqueezedInput):
        raise DomainError("expected a squeezed-vacuum instance, got %s" % inst.input_model)
    return _squeezed_characteristic_function(inst.inputs, inst.network, partition, **options)


def char_fn_squeezed(inst, partition, eta, **options):
    """X(eta) for squeezed vacuum through a lossy network"""
    return squeezed_characteristic_function(inst, partition, **options)(eta)
