"""
gbsbin.haar
~~~~~~~~~~~
Haar-averaged binned distributions: closed-form laws for Fock inputs and for
identical squeezers, and a Monte Carlo harness averaging over random unitaries.
"""
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from scipy import linalg, special
from .gbs_core import TransferMatrix, as_partition
from .binned_dist import CutoffPolicy, binned_distribution, post_select, select_cutoff, \
    total_pair_distribution
from .exceptions import DomainError, GBSBinException, HaarTrialError, PartitionError

HAAR_LAWS = ('exact', 'gaussian')


class HaarParams(object):
    """
    Parameters of a Haar-averaged Fock law: n photons in m modes, output
    modes grouped into bins of the given sizes.

    :ivar q: bin fractions |K_i| / m
    :ivar alpha: particle density n / m

    :param n: total photon number, >= 0
    :param m: number of modes, >= 1
    :param bin_sizes: number of modes per bin, summing to at most m
    :param sigma: 1 for indistinguishable photons, 0 for distinguishable ones
    """
    def __init__(self, n, m, bin_sizes, sigma=1):
        self.n = int(n)
        self.m = int(m)
        self.bin_sizes = np.array(bin_sizes, dtype=int)
        self.sigma = int(sigma)

        if self.n < 0:
            raise DomainError("photon number must be non-negative, got %d" % self.n)
        if self.m < 1:
            raise DomainError("mode count must be at least 1, got %d" % self.m)
        if self.sigma not in (0, 1):
            raise DomainError("sigma must be 0 or 1, got %r" % sigma)
        if self.bin_sizes.ndim != 1 or self.bin_sizes.size < 1 or np.any(self.bin_sizes < 1):
            raise PartitionError("bin sizes must be a non-empty list of positive sizes")
        if self.bin_sizes.sum() > self.m:
            raise PartitionError("bins hold %d modes but there are only %d" % (self.bin_sizes.sum(), self.m))

    def __repr__(self):
        return '%s(n=%d, m=%d, bin_sizes=%s, sigma=%d)' % (
            self.__class__.__name__, self.n, self.m, self.bin_sizes.tolist(), self.sigma
        )

    @property
    def q(self):
        return self.bin_sizes / float(self.m)

    @property
    def alpha(self):
        return self.n / float(self.m)

    @property
    def bin_count(self):
        return self.bin_sizes.size

    def check_pattern(self, k):
        k = np.array(k, dtype=int)
        if k.shape != (self.bin_count,):
            raise DomainError("pattern has %d entries for %d bins" % (k.size, self.bin_count))
        if np.any(k < 0):
            raise DomainError("pattern %s has negative counts" % k.tolist())
        if k.sum() != self.n:
            raise DomainError("pattern %s does not hold n = %d photons" % (k.tolist(), self.n))
        return k


def _log_multinomial(k, p):
    q = p.q
    if np.any((q == 0) & (k > 0)):
        return -np.inf
    log_q = np.log(np.where(q > 0, q, 1.0))
    return special.gammaln(p.n + 1) - np.sum(special.gammaln(k + 1)) + np.sum(k * log_q)


def _log_rising_ratio(count, size):
    # log prod_{l < count} (1 + l / size)
    return special.gammaln(size + count) - special.gammaln(size) - count * np.log(size)


def haar_fock_distinguishable(k, p):
    """
    Haar average of the binned pattern probability for n distinguishable
    photons, the multinomial law n! / prod k_i! prod q_i^{k_i}.

    :param k: binned count pattern with sum n
    :param p: HaarParams
    :return: probability
    """
    k = p.check_pattern(k)
    return float(np.exp(_log_multinomial(k, p)))


def haar_fock_indistinguishable(k, p):
    """
    Haar average of the binned pattern probability for n indistinguishable
    photons: the multinomial law times the bunching factor

        prod_i prod_{l < k_i} (1 + l / |K_i|) / prod_{l < n} (1 + l / m)

    :param k: binned count pattern with sum n
    :param p: HaarParams
    :return: probability
    """
    k = p.check_pattern(k)
    log_p = _log_multinomial(k, p)
    if np.isinf(log_p):
        return 0.0

    bunching = np.sum(_log_rising_ratio(k, p.bin_sizes.astype(float))) - _log_rising_ratio(p.n, float(p.m))
    return float(np.exp(log_p + bunching))


def haar_fock(k, p):
    """Fock law selected by p.sigma"""
    if p.sigma == 1:
        return haar_fock_indistinguishable(k, p)
    return haar_fock_distinguishable(k, p)


def gaussian_asymptotic(k, p):
    """
    Gaussian approximation of the Haar-averaged Fock law for many photons,
    with x_i = k_i / n:

        exp(-n sum (x_i - q_i)^2 / (2 (1 + sigma alpha) q_i))
            / ((2 pi (1 + sigma alpha) n)^((B - 1) / 2) prod sqrt(q_i))

    :param k: binned count pattern
    :param p: HaarParams with n >= 1
    :return: density value, >= 0
    """
    if p.n < 1:
        raise DomainError("the Gaussian law needs at least one photon")
    k = np.array(k, dtype=float)
    if k.shape != (p.bin_count,):
        raise DomainError("pattern has %d entries for %d bins" % (k.size, p.bin_count))

    q = p.q
    spread = 1.0 + p.sigma * p.alpha
    x = k / p.n

    exponent = -p.n * np.sum((x - q) ** 2 / (2.0 * spread * q))
    norm = (2.0 * np.pi * spread * p.n) ** ((p.bin_count - 1) / 2.0) * np.prod(np.sqrt(q))

    return float(np.exp(exponent) / norm)


def haar_gbs_asymptotic(k, m, r, sigma=1, bin_sizes=None, law='exact'):
    """
    Haar-averaged binned law for m identical squeezers with parameter r on
    a lossless network: P_m(n/2) times the Fock law for n = sum k photons,
    and zero for odd n.

    :param k: binned count pattern
    :param m: number of modes
    :param r: squeezing parameter, > 0
    :param sigma: 1 for indistinguishable photons, 0 for distinguishable ones
    :param bin_sizes: modes per bin; must add up to m. Defaults to equal
        bins when m divides evenly
    :param law: 'exact' for the Fock Haar average or 'gaussian' for its
        asymptotic form
    :return: probability
    """
    if law not in HAAR_LAWS:
        raise DomainError("unknown Haar law %r, use one of %s" % (law, HAAR_LAWS))

    k = np.array(k, dtype=int)
    if bin_sizes is None:
        if m % k.size:
            raise PartitionError("%d modes cannot be split evenly into %d bins" % (m, k.size))
        bin_sizes = [m // k.size] * k.size
    if sum(bin_sizes) != m:
        raise PartitionError("bins hold %d of %d modes; the law needs all modes binned" % (sum(bin_sizes), m))
    if np.any(k < 0):
        raise DomainError("pattern %s has negative counts" % k.tolist())

    n = int(k.sum())
    if n % 2:
        return 0.0

    p = HaarParams(n, m, bin_sizes, sigma)
    pairs = total_pair_distribution(m, r, n // 2)
    if law == 'gaussian' and n > 0:
        return pairs * gaussian_asymptotic(k, p)

    return pairs * haar_fock(k, p)


def haar_gbs_table(n, m, r, bin_sizes, sigma=1, law='exact'):
    """
    haar_gbs_asymptotic over every pattern in {0..n}^B.

    :return: array of shape (n + 1,) * B
    """
    table = np.zeros((n + 1,) * len(bin_sizes))
    for pattern in np.ndindex(*table.shape):
        table[pattern] = haar_gbs_asymptotic(pattern, m, r, sigma, bin_sizes, law)
    return table


def random_haar_unitary(m, seed=None):
    """
    Haar-random m x m unitary from the QR decomposition of a complex Gaussian
    matrix, with the phases of R's diagonal moved into Q.

    :param m: number of modes, >= 1
    :param seed: int, SeedSequence or Generator passed to numpy's default_rng
    :return: TransferMatrix
    """
    if m < 1:
        raise DomainError("mode count must be at least 1, got %r" % m)

    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2.0)
    q, r = linalg.qr(z)
    d = np.diag(r)

    return TransferMatrix(q * (d / np.abs(d)))


class HaarAverage(object):
    """
    Per-pattern sample mean and standard error of binned probabilities over
    random unitaries.

    :ivar mean: array of shape (n + 1,) * B
    :ivar stderr: array of shape (n + 1,) * B
    :ivar partition: BinPartition of the averaged tables
    :ivar trials: number of draws
    :ivar seed: base seed of the draws
    """
    def __init__(self, mean, stderr, partition, trials, seed):
        self.mean = mean
        self.stderr = stderr
        self.partition = partition
        self.trials = trials
        self.seed = seed

    def __repr__(self):
        return '%s(n=%d, B=%d, trials=%d)' % (self.__class__.__name__, self.n, self.mean.ndim, self.trials)

    @property
    def n(self):
        return self.mean.shape[0] - 1

    def post_selected(self, total, normalization=None):
        """Mean table conditioned on total photons, see binned_dist.post_select"""
        return post_select(self.mean, total, normalization)

    def to_rows(self, m=None, r=None, law='exact'):
        """
        Rows of k_1..k_B, mc_mean, mc_stderr, asymptotic and
        asymptotic_distinguishable. The asymptotic columns are None unless
        the squeezing r and mode count m are given.
        """
        bin_sizes = self.partition.bin_sizes
        rows = []
        for pattern in np.ndindex(*self.mean.shape):
            if r is None:
                indist = dist = None
            else:
                indist = haar_gbs_asymptotic(pattern, m, r, 1, bin_sizes, law)
                dist = haar_gbs_asymptotic(pattern, m, r, 0, bin_sizes, law)
            rows.append(list(pattern) + [float(self.mean[pattern]), float(self.stderr[pattern]), indist, dist])
        return rows


def monte_carlo_haar_average(
        template,
        partition,
        trials,
        seed,
        n=None,
        policy=None,
        workers=None,
        unitary_sampler=None,
        callback=None
):
    """
    Averages binned distributions of a template instance over random
    networks. Draw i uses the seed sequence (seed, i), so results do not
    depend on scheduling.

    :param template: GbsInstance or PartialDistInstance whose network is replaced
    :param partition: BinPartition or list of bins
    :param trials: number of draws, >= 2
    :param seed: non-negative int
    :param n: per-bin cutoff; when omitted the policy picks it from the template
    :param policy: CutoffPolicy used when n is omitted
    :param workers: optional thread count running draws concurrently
    :param unitary_sampler: callable (m, seed_sequence) -> network, default
        is random_haar_unitary
    :param callback: optional callable (trial, BinnedDistribution) run after
        each draw
    :return: HaarAverage
    """
    if trials < 2:
        raise DomainError("a Haar average needs at least 2 trials, got %d" % trials)
    if seed is None or int(seed) < 0:
        raise DomainError("Haar averaging needs an explicit non-negative seed")

    seed = int(seed)
    m = template.mode_count
    partition = as_partition(partition, m)
    sampler = random_haar_unitary if unitary_sampler is None else unitary_sampler

    if n is None:
        n = select_cutoff(template, policy if policy is not None else CutoffPolicy()).n

    def run_trial(trial):
        trial_seed = np.random.SeedSequence([seed, trial])
        try:
            inst = template.with_network(sampler(m, trial_seed))
            dist = binned_distribution(inst.characteristic_function(partition), n, partition=partition)
        except GBSBinException as ex:
            raise HaarTrialError(
                "Haar trial %d with seed (%d, %d) failed: %s" % (trial, seed, trial, ex),
                seed=seed,
                trial=trial
            ) from ex
        if callback is not None:
            callback(trial, dist)
        return dist.probs

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tables = list(pool.map(run_trial, range(trials)))
    else:
        tables = [run_trial(trial) for trial in range(trials)]

    stack = np.stack(tables)
    mean = stack.mean(axis=0)
    stderr = stack.std(axis=0, ddof=1) / np.sqrt(trials)

    return HaarAverage(mean, stderr, partition, trials, seed)
