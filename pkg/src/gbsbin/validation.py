"""
gbsbin.validation
~~~~~~~~~~~~~~~~~
Statistics comparing binned sample counts with hypothesis distributions.
"""
from collections import namedtuple, OrderedDict
from warnings import warn
import numpy as np
from scipy import stats
from . import constants
from .binned_dist import BinnedDistribution
from .sample_data import BinnedCounts, SampleSet, bin_samples
from .exceptions import DimensionError, DomainError, PoolingWarning

ChiSquareResult = namedtuple('ChiSquareResult', ['statistic', 'dof', 'p_value', 'pooled_cells'])


def _as_table(source):
    if isinstance(source, BinnedDistribution):
        return source.probs
    if isinstance(source, BinnedCounts):
        return source.frequencies
    return np.asarray(source, dtype=float)


def _pad_to(table, shape):
    padded = np.zeros(shape)
    padded[tuple(slice(0, s) for s in table.shape)] = table
    return padded


def tv_distance(p, q):
    """
    Total variation distance between two binned tables. Tables of different
    cutoffs are zero-padded to a common shape, and the mass missing from each
    table forms one extra overflow cell.

    :param p: BinnedDistribution, BinnedCounts or array table
    :param q: BinnedDistribution, BinnedCounts or array table
    :return: distance in [0, 1]
    """
    p = _as_table(p)
    q = _as_table(q)
    if p.ndim != q.ndim:
        raise DimensionError("tables have %d and %d bins" % (p.ndim, q.ndim))

    shape = tuple(max(a, b) for a, b in zip(p.shape, q.shape))
    p = _pad_to(p, shape)
    q = _pad_to(q, shape)

    overflow_p = max(1.0 - p.sum(), 0.0)
    overflow_q = max(1.0 - q.sum(), 0.0)
    distance = 0.5 * (np.abs(p - q).sum() + abs(overflow_p - overflow_q))

    return float(min(max(distance, 0.0), 1.0))


def _observed_cells(counts, shape):
    counts = np.asarray(counts, dtype=float)
    if counts.ndim != len(shape):
        raise DimensionError("counts have %d bins but the hypothesis has %d" % (counts.ndim, len(shape)))

    common = tuple(max(a, b) for a, b in zip(counts.shape, shape))
    counts = _pad_to(counts, common)
    within = counts[tuple(slice(0, s) for s in shape)]
    return within.reshape(-1), float(counts.sum() - within.sum())


def chi_square(p_expected, counts):
    """
    Pearson chi-square test of binned counts against a hypothesis. Patterns
    beyond the hypothesis cutoff form an overflow cell carrying the missing
    probability mass. Cells expecting fewer than 5 counts are pooled into the
    overflow cell; a pooled cell still below 5 joins the smallest remaining
    cell.

    :param p_expected: BinnedDistribution or array table
    :param counts: BinnedCounts or integer array table
    :return: ChiSquareResult(statistic, dof, p_value, pooled_cells)
    """
    probs = _as_table(p_expected)
    capped = 0
    if isinstance(counts, BinnedCounts):
        capped = counts.overflow
        counts = counts.counts

    observed, observed_overflow = _observed_cells(counts, probs.shape)
    observed_overflow += capped
    total = observed.sum() + observed_overflow
    if total <= 0:
        raise DomainError("chi-square test needs at least one sample")

    expected = total * np.clip(probs.reshape(-1), 0.0, None)
    expected_overflow = total * max(1.0 - probs.sum(), 0.0)

    small = expected < constants.CHI_SQUARE_MIN_EXPECTED
    pooled_cells = int(small.sum())
    pooled_observed = observed_overflow + observed[small].sum()
    pooled_expected = expected_overflow + expected[small].sum()
    observed = observed[~small]
    expected = expected[~small]

    if pooled_expected < constants.CHI_SQUARE_MIN_EXPECTED and expected.size:
        smallest = np.argmin(expected)
        observed[smallest] += pooled_observed
        expected[smallest] += pooled_expected
    elif pooled_expected > 0 or pooled_observed > 0:
        observed = np.append(observed, pooled_observed)
        expected = np.append(expected, pooled_expected)

    dof = expected.size - 1
    if dof < 1:
        warn("chi-square test has no degrees of freedom after pooling", PoolingWarning)
        return ChiSquareResult(0.0, max(dof, 0), 1.0, pooled_cells)

    statistic = float(np.sum((observed - expected) ** 2 / expected))
    return ChiSquareResult(statistic, dof, float(stats.chi2.sf(statistic, dof)), pooled_cells)


def log_likelihood_ratio(samples, dist_a, dist_b, partition=None):
    """
    sum over records of log P_a(k) - log P_b(k). Positive values favour
    hypothesis a. Probabilities are floored at 1e-300 and patterns beyond a
    cutoff count as floored.

    :param samples: SampleSet or BinnedCounts
    :param dist_a: BinnedDistribution
    :param dist_b: BinnedDistribution
    :param partition: partition used for binning a SampleSet, defaults to
        the partition of dist_a
    :return: real log-likelihood ratio
    """
    if isinstance(samples, SampleSet):
        partition = dist_a.partition if partition is None else partition
        if partition is None:
            raise DomainError("binning samples needs a partition")
        samples = bin_samples(samples, partition, n=max(dist_a.n, dist_b.n))

    counts = samples.counts
    log_ratio = 0.0
    for pattern in zip(*np.nonzero(counts)):
        p_a = max(dist_a.probability(pattern), constants.PROBABILITY_FLOOR)
        p_b = max(dist_b.probability(pattern), constants.PROBABILITY_FLOOR)
        log_ratio += counts[pattern] * (np.log(p_a) - np.log(p_b))

    return float(log_ratio)


class ValidationReport(object):
    """
    Comparison of one sample set with two hypotheses.

    :ivar hypotheses: the two hypothesis names, in order
    :ivar tv_distance: dictionary of TV distance per hypothesis
    :ivar chi_square: dictionary of ChiSquareResult per hypothesis
    :ivar log_likelihood_ratio: log P(samples | first) - log P(samples | second)
    :ivar sample_count: number of records
    :ivar partition: BinPartition used for binning
    """
    def __init__(self, hypotheses, tv, chi2, llr, sample_count, partition):
        self.hypotheses = tuple(hypotheses)
        self.tv_distance = tv
        self.chi_square = chi2
        self.log_likelihood_ratio = llr
        self.sample_count = sample_count
        self.partition = partition

    def __repr__(self):
        return '%s(%s vs %s, samples=%d)' % (
            self.__class__.__name__, self.hypotheses[0], self.hypotheses[1], self.sample_count
        )

    @property
    def preferred(self):
        """Name of the hypothesis favoured by the likelihood ratio"""
        return self.hypotheses[0] if self.log_likelihood_ratio >= 0 else self.hypotheses[1]

    def to_dict(self):
        return {
            'sample_count': self.sample_count,
            'partition': self.partition.to_list(),
            'hypotheses': {
                name: {
                    'tv_distance': self.tv_distance[name],
                    'chi_square': self.chi_square[name]._asdict()
                }
                for name in self.hypotheses
            },
            'log_likelihood_ratio': self.log_likelihood_ratio,
            'preferred': self.preferred
        }


def validate_samples(samples, hypotheses, partition=None):
    """
    Scores a sample set against two named hypothesis distributions.

    :param samples: SampleSet
    :param hypotheses: ordered mapping or list of (name, BinnedDistribution)
        pairs, exactly two
    :param partition: BinPartition, defaults to the first hypothesis' partition
    :return: ValidationReport
    """
    hypotheses = OrderedDict(hypotheses)
    if len(hypotheses) != 2:
        raise DomainError("validation compares exactly two hypotheses, got %d" % len(hypotheses))

    (name_a, dist_a), (name_b, dist_b) = hypotheses.items()
    if partition is None:
        partition = dist_a.partition
    if partition is None:
        raise DomainError("validation needs a partition")

    # patterns beyond every hypothesis cutoff only matter as overflow
    binned = bin_samples(samples, partition, n=max(dist.n for dist in hypotheses.values()))
    tv = OrderedDict((name, tv_distance(binned, dist)) for name, dist in hypotheses.items())
    chi2 = OrderedDict((name, chi_square(dist, binned)) for name, dist in hypotheses.items())
    llr = log_likelihood_ratio(binned, dist_a, dist_b)

    return ValidationReport((name_a, name_b), tv, chi2, llr, samples.record_count, binned.partition)
