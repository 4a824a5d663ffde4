"""
gbsbin.binned_dist
~~~~~~~~~~~~~~~~~~
Energy-cutoff selection and reconstruction of binned photon-count tables from
characteristic functions by inverse discrete Fourier transform.
"""
from collections import namedtuple
from warnings import warn
import numpy as np
from scipy import optimize, special, stats
from . import constants
from .gbs_core import GbsInstance, SqueezedInput, BinPartition, as_partition
from .distinguishability import PartialDistInstance
from .exceptions import ClampWarning, VacuousBoundWarning, BranchError, DimensionError, \
    DomainError, NumericError, PartitionError, PolicyError

CutoffSelection = namedtuple('CutoffSelection', ['n', 'tail_bound', 'alpha'])


class CutoffPolicy(object):
    """
    How to choose the per-bin photon cutoff n.

    :param epsilon: target tail probability in (0, 1), default is 1e-6
    :param alpha: starting multiplier of the mean photon number, >= 1
    :param n_override: explicit cutoff, bypasses the search when given
    """
    def __init__(self, epsilon=constants.DEFAULT_EPSILON, alpha=1.0, n_override=None):
        if not 0.0 < epsilon < 1.0:
            raise DomainError("epsilon must lie in (0, 1), got %r" % epsilon)
        if alpha < 1.0:
            raise DomainError("alpha must be at least 1, got %r" % alpha)
        if n_override is not None and int(n_override) < 0:
            raise DomainError("cutoff override must be non-negative, got %r" % n_override)

        self.epsilon = float(epsilon)
        self.alpha = float(alpha)
        self.n_override = None if n_override is None else int(n_override)

    def __repr__(self):
        return '%s(epsilon=%g, alpha=%g, n_override=%s)' % (
            self.__class__.__name__, self.epsilon, self.alpha, self.n_override
        )


class BinnedDistribution(object):
    """
    Probability table over binned count patterns k in {0..n}^B.

    :ivar probs: real array of shape (n + 1,) * B
    :ivar partition: BinPartition the table refers to, may be None
    :ivar tail_bound: probability mass possibly lying beyond the cutoff
    :ivar imag_residue: largest imaginary part left by the inverse transform
    :ivar clamped_mass: total negative noise clamped to zero

    :param probs: array-like table with equal axis lengths
    :param partition: optional BinPartition with B bins
    :param tail_bound: tail probability bound, default is 0
    :param imag_residue: imaginary residue bookkeeping, default is 0
    :param clamped_mass: clamped negative mass bookkeeping, default is 0
    """
    def __init__(self, probs, partition=None, tail_bound=0.0, imag_residue=0.0, clamped_mass=0.0):
        probs = np.array(probs, dtype=float)

        if probs.ndim < 1 or len(set(probs.shape)) != 1:
            raise DimensionError("probability table must have equal axis lengths, got %s" % (probs.shape,))
        if partition is not None:
            partition = as_partition(partition)
            if partition.bin_count != probs.ndim:
                raise DimensionError(
                    "table has %d axes but the partition has %d bins" % (probs.ndim, partition.bin_count)
                )

        self.probs = probs
        self.partition = partition
        self.tail_bound = float(tail_bound)
        self.imag_residue = float(imag_residue)
        self.clamped_mass = float(clamped_mass)

    def __repr__(self):
        return '%s(n=%d, B=%d)' % (self.__class__.__name__, self.n, self.bin_count)

    def __getitem__(self, pattern):
        return self.probs[tuple(pattern)]

    @property
    def n(self):
        return self.probs.shape[0] - 1

    @property
    def bin_count(self):
        return self.probs.ndim

    def total(self):
        return float(self.probs.sum())

    def patterns(self):
        """All count patterns in lexicographic order"""
        return np.ndindex(*self.probs.shape)

    def probability(self, pattern):
        """Probability of a pattern; 0 for patterns beyond the cutoff"""
        pattern = tuple(int(k) for k in pattern)
        if len(pattern) != self.bin_count:
            raise DimensionError("pattern has %d entries for %d bins" % (len(pattern), self.bin_count))
        if min(pattern) < 0:
            raise DomainError("pattern %s has negative counts" % (pattern,))
        if max(pattern) > self.n:
            return 0.0
        return float(self.probs[pattern])

    def padded(self, n):
        """Same distribution on a larger cutoff, padded with zeros"""
        if n < self.n:
            raise DomainError("cannot pad cutoff %d down to %d" % (self.n, n))
        probs = np.zeros((n + 1,) * self.bin_count)
        probs[(slice(0, self.n + 1),) * self.bin_count] = self.probs
        return self._copy_with(probs)

    def truncated(self, n):
        """Same distribution on a smaller cutoff; dropped mass moves into the tail"""
        if n > self.n:
            raise DomainError("cannot truncate cutoff %d up to %d" % (self.n, n))
        probs = self.probs[(slice(0, n + 1),) * self.bin_count].copy()
        dropped = self.total() - float(probs.sum())
        return self._copy_with(probs, tail_bound=self.tail_bound + max(dropped, 0.0))

    def sidecar(self):
        """Metadata written next to exported tables"""
        return {
            'n': self.n,
            'B': self.bin_count,
            'partition': None if self.partition is None else self.partition.to_list(),
            'tail_bound': self.tail_bound,
            'imag_residue': self.imag_residue,
            'clamped_mass': self.clamped_mass
        }

    def _copy_with(self, probs, partition=None, tail_bound=None):
        return BinnedDistribution(
            probs,
            partition=self.partition if partition is None else partition,
            tail_bound=self.tail_bound if tail_bound is None else tail_bound,
            imag_residue=self.imag_residue,
            clamped_mass=self.clamped_mass
        )


def total_pair_distribution(m, r, k):
    """
    Probability of k photon pairs in total from m identical single-mode
    squeezers, a negative binomial law:

        Gamma(k + m/2) / (Gamma(m/2) k!) sech^m(r) tanh^{2k}(r)

    :param m: number of squeezed modes, >= 1
    :param r: squeezing parameter, > 0
    :param k: pair count or array of pair counts
    :return: probability, or array of probabilities for array input
    """
    if m < 1:
        raise DomainError("mode count must be at least 1, got %r" % m)
    if not r > 0:
        raise DomainError("squeezing must be positive, got %r" % r)

    k = np.asarray(k)
    if np.any(k < 0):
        raise DomainError("pair count must be non-negative")

    half = 0.5 * m
    log_cosh = np.logaddexp(r, -r) - np.log(2.0)
    log_p = special.gammaln(k + half) - special.gammaln(half) - special.gammaln(k + 1) \
        - m * log_cosh + 2.0 * k * np.log(np.tanh(r))
    p = np.exp(log_p)

    return float(p) if p.ndim == 0 else p


def cutoff_tail_bound(m, r, alpha):
    """
    Upper bound on the probability that m squeezers with parameter r emit more
    than alpha m sinh^2(r) photons:

        exp(-m (alpha - 1)^2 sinh^2(r) tanh^2(r) / (4 (1 + alpha sinh^2(r))))

    A multiplier alpha <= 1 gives the vacuous bound 1 with a warning.

    :param m: number of squeezed modes
    :param r: squeezing parameter, > 0
    :param alpha: multiplier of the mean photon number
    :return: bound in (0, 1]
    """
    if not r > 0:
        raise DomainError("squeezing must be positive, got %r" % r)
    if m < 1:
        raise DomainError("mode count must be at least 1, got %r" % m)
    if alpha <= 1:
        warn("alpha = %g gives a vacuous tail bound" % alpha, VacuousBoundWarning)
        return 1.0

    sinh2 = np.sinh(r) ** 2
    tanh2 = np.tanh(r) ** 2
    return float(np.exp(-m * (alpha - 1.0) ** 2 * sinh2 * tanh2 / (4.0 * (1.0 + alpha * sinh2))))


def _squeezing_of(inst):
    if isinstance(inst, PartialDistInstance):
        return inst.squeezing
    if isinstance(inst, GbsInstance) and isinstance(inst.inputs, SqueezedInput):
        return inst.inputs.r
    return None


def select_cutoff(inst, policy=None):
    """
    Smallest even per-bin cutoff n = 2 ceil(alpha m sinh^2(r_max) / 2) whose
    tail bound does not exceed epsilon, m being the number of squeezed modes.
    Classical inputs use the total photon distribution instead.

    :param inst: GbsInstance or PartialDistInstance
    :param policy: CutoffPolicy, default is CutoffPolicy()
    :return: CutoffSelection(n, tail_bound, alpha)
    """
    policy = CutoffPolicy() if policy is None else policy
    r = _squeezing_of(inst)
    if r is None:
        return _select_cutoff_by_total(inst, policy)

    active = r[r > 0]
    if active.size == 0:
        return CutoffSelection(policy.n_override or 0, 0.0, None)

    m = active.size
    r_max = float(active.max())
    sinh2 = np.sinh(r_max) ** 2

    if policy.n_override is not None:
        n = policy.n_override
        # photons beyond n means pairs beyond floor(n / 2)
        tail = float(stats.nbinom.sf(n // 2, 0.5 * m, 1.0 / np.cosh(r_max) ** 2))
        return CutoffSelection(n, tail, None)

    rate = m * sinh2 * np.tanh(r_max) ** 2
    target = -np.log(policy.epsilon)

    def excess(alpha):
        return rate * (alpha - 1.0) ** 2 / (4.0 * (1.0 + alpha * sinh2)) - target

    limit = constants.ALPHA_SEARCH_LIMIT
    if excess(limit) < 0:
        raise PolicyError("no alpha below %g reaches tail probability %g" % (limit, policy.epsilon))

    alpha = policy.alpha
    if excess(alpha) < 0:
        alpha = optimize.brentq(excess, alpha, limit, xtol=1e-12)
        while excess(alpha) < 0:
            alpha = alpha * (1.0 + 1e-12)

    n = 2 * int(np.ceil(alpha * m * sinh2 / 2.0))
    effective = n / (m * sinh2)

    return CutoffSelection(n, cutoff_tail_bound(m, r_max, effective), effective)


def _select_cutoff_by_total(inst, policy):
    mean = inst.mean_photon_number()
    if mean == 0:
        return CutoffSelection(policy.n_override or 0, 0.0, None)

    one_bin = BinPartition([range(inst.mode_count)])
    char_fn = inst.characteristic_function(one_bin)

    provisional = max(constants.PROVISIONAL_MIN_CUTOFF, int(np.ceil(20.0 * (1.0 + mean))))
    if policy.n_override is not None:
        provisional = max(provisional, 2 * policy.n_override)

    for attempt in range(2):
        probs = binned_distribution(char_fn, provisional, partition=one_bin).probs
        survival = probs[::-1].cumsum()[::-1]
        tails = np.append(survival[1:], 0.0)

        if policy.n_override is not None:
            n = policy.n_override
            return CutoffSelection(n, float(tails[min(n, provisional)]), None)

        n = int(np.flatnonzero(tails <= policy.epsilon)[0])
        if n <= provisional // 2 or attempt == 1:
            return CutoffSelection(n, float(tails[n]), None)

        provisional *= 2


def distribution_from_grid(values, partition=None, tail_bound=0.0,
                           imag_tol=constants.IMAG_RESIDUE_TOL, negative_clamp=constants.NEGATIVE_CLAMP):
    """
    Inverse transform of characteristic function values on the full phase grid:

        P(k) = (n + 1)^-B sum_nu X(2 pi nu / (n + 1)) exp(-2 pi i nu . k / (n + 1))

    Small negative entries are clamped to zero without renormalization.

    :param values: complex array of shape (n + 1,) * B
    :param partition: optional BinPartition
    :param tail_bound: tail mass to record
    :param imag_tol: largest tolerated imaginary residue, default is 1e-8
    :param negative_clamp: largest tolerated negative entry, default is 1e-9
    :return: BinnedDistribution
    """
    probs, residue, clamped = _inverse_transform(values, imag_tol, negative_clamp)
    return BinnedDistribution(probs, partition, tail_bound, residue, clamped)


def _inverse_transform(values, imag_tol, negative_clamp):
    values = np.asarray(values, dtype=complex)
    spectrum = np.fft.fftn(values) / values.size

    residue = float(np.max(np.abs(spectrum.imag)))
    if residue > imag_tol:
        raise BranchError("inverse transform left an imaginary residue of %.3g" % residue)

    probs = spectrum.real
    if probs.min() < -negative_clamp:
        raise NumericError("probability table has a negative entry %.3g" % probs.min())

    negative = probs < 0
    clamped = float(-probs[negative].sum())
    probs[negative] = 0.0
    if clamped > constants.CLAMP_WARN_MASS:
        warn("clamped %.3g of negative probability mass" % clamped, ClampWarning)

    return probs, residue, clamped


def binned_distribution(char_fn, n, B=None, partition=None, tail_bound=0.0, workers=None, **options):
    """
    Binned probability table from a characteristic function.

    :param char_fn: CharacteristicFunction, or any callable mapping a phase
        point to a complex value
    :param n: per-bin cutoff, >= 0
    :param B: number of bins, taken from the partition or char_fn when omitted
    :param partition: optional BinPartition recorded on the result
    :param tail_bound: tail mass to record
    :param workers: optional thread count for grid evaluation
    :param options: imag_tol and negative_clamp for distribution_from_grid
    :return: BinnedDistribution
    """
    n = int(n)
    if n < 0:
        raise DomainError("cutoff must be non-negative, got %d" % n)

    if partition is not None:
        partition = as_partition(partition)
    if B is None:
        B = partition.bin_count if partition is not None else getattr(char_fn, 'bin_count', None)
    if B is None or B < 1:
        raise DimensionError("number of bins must be at least 1")

    sizes = (n + 1,) * B
    if hasattr(char_fn, 'grid'):
        values = char_fn.grid(sizes, workers=workers)
    else:
        step = 2.0 * np.pi / (n + 1)
        values = np.empty(sizes, dtype=complex)
        for index in np.ndindex(*sizes):
            values[index] = complex(char_fn(step * np.array(index, dtype=float)))

    return distribution_from_grid(values, partition, tail_bound, **options)


def instance_distribution(inst, partition, policy=None, workers=None):
    """
    Binned distribution of an instance with the cutoff chosen by a policy.

    :param inst: GbsInstance or PartialDistInstance
    :param partition: BinPartition or list of bins
    :param policy: CutoffPolicy, default is CutoffPolicy()
    :param workers: optional thread count for grid evaluation
    :return: BinnedDistribution
    """
    partition = as_partition(partition, inst.mode_count)
    selection = select_cutoff(inst, policy)

    return binned_distribution(
        inst.characteristic_function(partition),
        selection.n,
        partition=partition,
        tail_bound=selection.tail_bound,
        workers=workers
    )


def characteristic_from_distribution(dist, eta=None):
    """
    Forward transform X(eta) = sum_k P(k) exp(i eta . k).

    :param dist: BinnedDistribution
    :param eta: phase point; when omitted, X is returned on the whole grid
        eta = 2 pi nu / (n + 1)
    :return: complex value or complex array of shape (n + 1,) * B
    """
    probs = dist.probs
    if eta is None:
        return np.fft.ifftn(probs) * probs.size

    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    if eta.size != dist.bin_count:
        raise DimensionError("phase point has %d components for %d bins" % (eta.size, dist.bin_count))

    counts = np.arange(dist.n + 1)
    value = probs.astype(complex)
    for phase in eta:
        value = np.tensordot(np.exp(1j * phase * counts), value, axes=([0], [0]))

    return complex(value)


def marginalize(dist, drop_bin):
    """
    Sums a distribution over one bin.

    :param dist: BinnedDistribution with at least two bins
    :param drop_bin: index of the bin to sum out
    :return: BinnedDistribution over the remaining bins
    """
    if dist.bin_count < 2:
        raise DimensionError("cannot marginalize a single-bin distribution")
    if not 0 <= drop_bin < dist.bin_count:
        raise PartitionError("bin index %d out of range for %d bins" % (drop_bin, dist.bin_count))

    partition = None if dist.partition is None else dist.partition.without(drop_bin)
    return dist._copy_with(dist.probs.sum(axis=drop_bin), partition=partition)


def _truncate_axis(probs, axis, n):
    kept = np.take(probs, np.arange(n + 1), axis=axis)
    return kept, float(probs.sum() - kept.sum())


def merge_bins(source, i, j, partition=None, n=None, workers=None):
    """
    Distribution of k_i + k_j in place of bins i and j. The merged bin takes
    the lower position.

    From a BinnedDistribution the merged axis is summed exactly up to 2n and
    truncated to n. From an instance (GbsInstance or PartialDistInstance,
    requiring partition and n) the merged partition is evaluated directly with
    2n on the merged axis, then truncated. Mass beyond n joins the tail bound.

    :param source: BinnedDistribution or instance
    :param i: first bin index
    :param j: second bin index
    :param partition: partition for the instance route
    :param n: cutoff for the instance route
    :param workers: optional thread count for the instance route
    :return: BinnedDistribution
    """
    if i == j:
        raise PartitionError("cannot merge bin %d with itself" % i)
    low, high = sorted((i, j))

    if isinstance(source, BinnedDistribution):
        if low < 0 or high >= source.bin_count:
            raise PartitionError("bin indices %d, %d out of range for %d bins" % (i, j, source.bin_count))

        size = source.n + 1
        moved = np.moveaxis(source.probs, (low, high), (-2, -1))
        summed = np.zeros(moved.shape[:-2] + (2 * size - 1,))
        for a in range(size):
            summed[..., a:a + size] += moved[..., a, :]
        summed = np.moveaxis(summed, -1, low)

        probs, dropped = _truncate_axis(summed, low, source.n)
        merged = None if source.partition is None else source.partition.merged(low, high)
        return source._copy_with(probs, partition=merged, tail_bound=source.tail_bound + max(dropped, 0.0))

    if partition is None or n is None:
        raise DomainError("merging from an instance needs a partition and a cutoff")

    merged = as_partition(partition, source.mode_count).merged(low, high)
    sizes = [n + 1] * merged.bin_count
    sizes[low] = 2 * n + 1
    values = source.characteristic_function(merged).grid(sizes, workers=workers)

    probs, residue, clamped = _inverse_transform(values, constants.IMAG_RESIDUE_TOL, constants.NEGATIVE_CLAMP)
    probs, dropped = _truncate_axis(probs, low, n)
    cutoff_tail = select_cutoff(source, CutoffPolicy(n_override=n)).tail_bound

    return BinnedDistribution(probs, merged, cutoff_tail + max(dropped, 0.0), residue, clamped)


def post_select(probs, total, normalization=None):
    """
    Conditions a table on a fixed total count sum(k) = total.

    :param probs: BinnedDistribution or array table
    :param total: required total count
    :param normalization: divisor for the selected entries, e.g. the
        probability of that total; defaults to the sum of the slice
    :return: (patterns, values) with patterns an int array of shape (K, B)
    """
    table = probs.probs if isinstance(probs, BinnedDistribution) else np.asarray(probs, dtype=float)
    counts = np.indices(table.shape).reshape(table.ndim, -1).T
    selected = counts[counts.sum(axis=1) == total]
    values = table[tuple(selected.T)]

    if normalization is None:
        normalization = values.sum()
    if normalization <= 0:
        raise DomainError("post-selection normalization must be positive")

    return selected, values / normalization


def binned_moments(dist):
    """
    Mean vector and covariance matrix of the binned counts over the retained
    table. Low-order correlators of binned counts follow from these.

    :param dist: BinnedDistribution
    :return: (means, covariance)
    """
    probs = dist.probs
    counts = np.indices(probs.shape).reshape(probs.ndim, -1).astype(float)
    weights = probs.reshape(-1)

    means = counts @ weights
    centered = counts - means[:, None]
    covariance = (centered * weights) @ centered.T

    return means, covariance
