"""
gbsbin.fock_oracle
~~~~~~~~~~~~~~~~~~
Brute-force truncated Fock space simulator for small instances. Losses are
handled by dilating the network to a unitary on system plus environment modes
and summing over environment occupations. Used as an independent check of the
characteristic function route.
"""
import itertools
from warnings import warn
import numpy as np
from scipy import linalg, sparse, signal, special
from scipy.sparse import csgraph
from . import constants
from .gbs_core import GbsInstance, SqueezedInput, TransferMatrix, as_partition
from .classical_models import ThermalInput, SquashedInput
from .distinguishability import PartialDistInstance, build_partial_instance, expand_partition
from .binned_dist import BinnedDistribution
from .haar import random_haar_unitary
from .exceptions import DomainError, NetworkError, OracleSizeError, TruncationWarning

# amplitudes below this are treated as structural zeros of a dilated network
_ZERO_AMPLITUDE = 1e-14

# extra Fock levels used when squeezing a thermal state before truncation
_SQUASH_PADDING = 60


class FockBasis(object):
    """
    Occupation-number basis of M modes with at most n_max photons in total,
    ordered by total photon number.

    :ivar states: int array of shape (size, M)

    :param mode_count: number of modes M
    :param n_max: largest total photon number
    :param max_size: basis size cap, default is 250000
    """
    def __init__(self, mode_count, n_max, max_size=constants.ORACLE_MAX_BASIS):
        self.mode_count = int(mode_count)
        self.n_max = int(n_max)

        size = special.comb(self.mode_count + self.n_max, self.mode_count, exact=True)
        if size > max_size:
            raise OracleSizeError(
                "Fock basis of %d modes up to %d photons has %d states, cap is %d"
                % (self.mode_count, self.n_max, size, max_size)
            )

        states = [
            occupation
            for total in range(self.n_max + 1)
            for occupation in _occupations(self.mode_count, total)
        ]
        self.states = np.array(states, dtype=int).reshape(size, self.mode_count)

        self._radix = (self.n_max + 1) ** np.arange(self.mode_count)[::-1]
        keys = self.states @ self._radix
        self._order = np.argsort(keys)
        self._sorted_keys = keys[self._order]

    def __repr__(self):
        return '%s(M=%d, n_max=%d, size=%d)' % (self.__class__.__name__, self.mode_count, self.n_max, self.size)

    @property
    def size(self):
        return self.states.shape[0]

    def index(self, occupations):
        """Basis indices of one or more occupation tuples"""
        occupations = np.atleast_2d(np.asarray(occupations, dtype=int))
        if occupations.shape[1] != self.mode_count or np.any(occupations < 0) \
                or np.any(occupations.sum(axis=1) > self.n_max):
            raise DomainError("occupations %s are outside the basis" % occupations.tolist())

        position = np.searchsorted(self._sorted_keys, occupations @ self._radix)
        return self._order[position]

    def vacuum(self):
        vector = np.zeros(self.size, dtype=complex)
        vector[0] = 1.0
        return vector

    def creation(self, mode):
        """Sparse creation operator of one mode; states leaving the basis are dropped"""
        source = np.flatnonzero(self.states.sum(axis=1) < self.n_max)
        raised = self.states[source].copy()
        raised[:, mode] += 1

        target = self.index(raised)
        values = np.sqrt(raised[:, mode].astype(float))

        return sparse.csr_matrix((values, (target, source)), shape=(self.size, self.size))


def _occupations(mode_count, total):
    # stars and bars
    for bars in itertools.combinations(range(total + mode_count - 1), mode_count - 1):
        edges = (-1,) + bars + (total + mode_count - 1,)
        yield tuple(edges[i + 1] - edges[i] - 1 for i in range(mode_count))


class FockState(object):
    """
    Pure state on a truncated Fock basis.

    :ivar basis: FockBasis
    :ivar amplitudes: complex vector over the basis
    """
    def __init__(self, basis, amplitudes):
        self.basis = basis
        self.amplitudes = np.asarray(amplitudes, dtype=complex)

    def __repr__(self):
        return '%s(M=%d, n_max=%d)' % (self.__class__.__name__, self.basis.mode_count, self.basis.n_max)

    def amplitude(self, occupation):
        return complex(self.amplitudes[self.basis.index(occupation)[0]])

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    @property
    def truncation_loss(self):
        """Probability lost to the truncation of a normalized input"""
        return max(1.0 - self.norm() ** 2, 0.0)


def squeezed_fock_coeffs(r, k_max):
    """
    Fock amplitudes of single-mode squeezed vacuum on |2k>, k = 0..k_max:

        tanh^k(r) sqrt((2k)!) / (2^k k!) / sqrt(cosh r)

    :param r: squeezing parameter, >= 0
    :param k_max: largest pair number
    :return: real array of length k_max + 1
    """
    if r < 0:
        raise DomainError("squeezing must be non-negative, got %r" % r)

    coeffs = np.zeros(k_max + 1)
    if r == 0:
        coeffs[0] = 1.0
        return coeffs

    k = np.arange(k_max + 1)
    log_amp = k * np.log(np.tanh(r)) + 0.5 * special.gammaln(2 * k + 1) - k * np.log(2.0) \
        - special.gammaln(k + 1) - 0.5 * np.log(np.cosh(r))

    return np.exp(log_amp)


def thermal_fock_weights(nbar, n_max):
    """Geometric Fock weights of a thermal state, truncated at n_max"""
    n = np.arange(n_max + 1)
    return (1.0 / (1.0 + nbar)) * (nbar / (1.0 + nbar)) ** n


def squashed_fock_ensemble(r, n_max):
    """
    Eigen-ensemble of the squashed state S(r) rho_th S(r)^dagger with
    nbar = (e^{2r} - 1) / 2, projected onto Fock levels 0..n_max.

    :return: (weights, vectors) with vectors[i] the i-th eigenvector
    """
    dim = n_max + 1 + _SQUASH_PADDING
    lowering = np.diag(np.sqrt(np.arange(1, dim)), 1)
    raising = lowering.T
    squeeze = linalg.expm(0.5 * r * (raising @ raising - lowering @ lowering))

    thermal = np.diag(thermal_fock_weights(np.expm1(2.0 * r) / 2.0, dim - 1))
    rho = (squeeze @ thermal @ squeeze.T)[:n_max + 1, :n_max + 1]

    weights, vectors = linalg.eigh(0.5 * (rho + rho.T))
    keep = weights > constants.ORACLE_WEIGHT_FLOOR
    return weights[keep], vectors[:, keep].T


def _mode_ensemble(model, parameter, n_max):
    """Pure-state decomposition [(weight, fock vector)] of one input mode"""
    if model == 'squeezed':
        vector = np.zeros(n_max + 1)
        vector[::2] = squeezed_fock_coeffs(parameter, n_max // 2)
        return [(1.0, vector)]
    if model == 'thermal':
        return [(w, np.eye(n_max + 1)[n]) for n, w in enumerate(thermal_fock_weights(parameter, n_max))]
    if model == 'squashed':
        return list(zip(*squashed_fock_ensemble(parameter, n_max)))
    raise DomainError("the oracle does not support input model %r" % model)


def permanent(matrix):
    """
    Permanent of a square matrix by Ryser's formula in Gray-code order.

    :param matrix: square array-like, at most 10 x 10
    :return: complex permanent; 1 for the empty matrix
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("permanent needs a square matrix, got shape %s" % (a.shape,))

    size = a.shape[0]
    if size == 0:
        return 1.0 + 0.0j
    if size > constants.ORACLE_MAX_PERMANENT:
        raise OracleSizeError("permanent of size %d exceeds %d" % (size, constants.ORACLE_MAX_PERMANENT))

    row_sums = np.zeros(size, dtype=complex)
    total = 0.0j
    for step in range(1, 2 ** size):
        column = (step & -step).bit_length() - 1
        gray = step ^ (step >> 1)
        if gray >> column & 1:
            row_sums += a[:, column]
        else:
            row_sums -= a[:, column]
        sign = -1.0 if bin(gray).count('1') % 2 else 1.0
        total += sign * np.prod(row_sums)

    return complex((-1) ** size * total)


def transition_amplitude(U, occupation_in, occupation_out):
    """
    Fock transition amplitude <out| U |in> of a linear network, via the
    permanent of U with rows repeated per output photon and columns repeated
    per input photon, divided by sqrt(prod in! prod out!).

    :param U: TransferMatrix or square array-like
    :param occupation_in: input occupation numbers
    :param occupation_out: output occupation numbers
    :return: complex amplitude
    """
    entries = U.entries if isinstance(U, TransferMatrix) else np.asarray(U, dtype=complex)
    occupation_in = np.asarray(occupation_in, dtype=int)
    occupation_out = np.asarray(occupation_out, dtype=int)

    if occupation_in.sum() != occupation_out.sum():
        raise DomainError(
            "input holds %d photons but output holds %d" % (occupation_in.sum(), occupation_out.sum())
        )

    rows = np.repeat(np.arange(occupation_out.size), occupation_out)
    cols = np.repeat(np.arange(occupation_in.size), occupation_in)
    norm = np.prod(special.factorial(occupation_in)) * np.prod(special.factorial(occupation_out))

    return permanent(entries[np.ix_(rows, cols)]) / np.sqrt(norm)


def dilate_to_unitary(L, environment_unitary=None, tol=constants.TOL_UNITARY):
    """
    Unitary 2m x 2m completion of a sub-unitary network. With L = W C V^dagger
    and S = sqrt(I - C^2):

        T = [[L, W S], [-S V^dagger, C]]

    The first m rows are the system outputs, the rest environment modes.
    Singular values within tol of 1 count as lossless, so a unitary L gives
    L plus an identity block.

    :param L: TransferMatrix or square array-like, sigma_max <= 1
    :param environment_unitary: optional m x m unitary applied to the
        environment rows, giving another valid completion
    :param tol: singular value tolerance, default is 1e-8
    :return: complex array of shape (2m, 2m)
    """
    if not isinstance(L, TransferMatrix):
        L = TransferMatrix(L)

    entries = L.entries
    m = L.mode_count
    w, cosines, vh = linalg.svd(entries)

    lossless = 1.0 - cosines <= tol
    cosines = np.where(lossless, 1.0, cosines)
    sines = np.diag(np.where(lossless, 0.0, np.sqrt(np.clip(1.0 - cosines ** 2, 0.0, None))))

    dilation = np.block([[entries, w @ sines], [-sines @ vh, np.diag(cosines)]])

    if environment_unitary is not None:
        env = environment_unitary.entries if isinstance(environment_unitary, TransferMatrix) \
            else np.asarray(environment_unitary, dtype=complex)
        if env.shape != (m, m):
            raise NetworkError("environment unitary must be %d x %d" % (m, m))
        dilation[m:] = env @ dilation[m:]

    return dilation


def evolve_fock_input(U, occupation, n_max=None):
    """
    Output state of a Fock input through a unitary network, built by applying
    the mapped creation operators to the vacuum.

    :param U: unitary TransferMatrix or array-like
    :param occupation: input occupation numbers
    :param n_max: basis truncation, defaults to the photon number
    :return: FockState over the output modes
    """
    if not isinstance(U, TransferMatrix):
        U = TransferMatrix(U)
    if not U.is_unitary:
        raise NetworkError("evolve_fock_input needs a unitary network; dilate lossy ones first")

    occupation = np.asarray(occupation, dtype=int)
    n_max = int(occupation.sum()) if n_max is None else n_max
    basis = FockBasis(U.mode_count, n_max)
    creators = [basis.creation(j) for j in range(U.mode_count)]

    vector = basis.vacuum()
    for i, count in enumerate(occupation):
        mapped = _mapped_creator(creators, U.entries[:, i])
        for _ in range(count):
            vector = mapped @ vector
        vector = vector / np.sqrt(special.factorial(count))

    return FockState(basis, vector)


def _mapped_creator(creators, column):
    mapped = sparse.csr_matrix(creators[0].shape, dtype=complex)
    for amplitude, creator in zip(column, creators):
        if abs(amplitude) > _ZERO_AMPLITUDE:
            mapped = mapped + amplitude * creator
    return mapped


def _input_parameters(inst):
    inputs = inst.inputs
    if isinstance(inputs, SqueezedInput):
        return inputs.r
    if isinstance(inputs, ThermalInput):
        return inputs.nbar
    if isinstance(inputs, SquashedInput):
        return inputs.r
    raise DomainError("the oracle does not support input %r" % inputs)


def _components(columns):
    """Groups active inputs that reach a common output mode"""
    reach = (np.abs(columns) > _ZERO_AMPLITUDE).astype(int)
    coupling = sparse.csr_matrix(reach.T @ reach)
    count, labels = csgraph.connected_components(coupling, directed=False)
    return [np.flatnonzero(labels == c) for c in range(count)]


def _component_table(inst, inputs, partition, n_max, environment_rng):
    m = inst.mode_count
    entries = inst.network.entries
    parameters = _input_parameters(inst)

    outputs = np.flatnonzero(np.any(np.abs(entries[:, inputs]) > _ZERO_AMPLITUDE, axis=1))
    shape = (n_max + 1,) * partition.bin_count
    table = np.zeros(shape)
    if outputs.size == 0:
        # every photon of this component is lost
        table[(0,) * partition.bin_count] = 1.0
        return table

    size = max(outputs.size, inputs.size)
    square = np.zeros((size, size), dtype=complex)
    square[:outputs.size, :inputs.size] = entries[np.ix_(outputs, inputs)]

    environment = None if environment_rng is None else random_haar_unitary(size, environment_rng)
    dilation = dilate_to_unitary(square, environment)[:, :inputs.size]

    rows = np.flatnonzero(np.any(np.abs(dilation) > _ZERO_AMPLITUDE, axis=1))
    isometry = dilation[rows]
    system = rows < outputs.size

    basis = FockBasis(rows.size, n_max)
    creators = [basis.creation(j) for j in range(rows.size)]
    mapped = [_mapped_creator(creators, isometry[:, i]) for i in range(inputs.size)]
    ensembles = [_mode_ensemble(inst.input_model, parameters[i], n_max) for i in inputs]

    mass = np.zeros(basis.size)

    def expand(depth, vector, weight):
        if depth == len(ensembles):
            mass[:] += weight * np.abs(vector) ** 2
            return

        # C^n vector / sqrt(n!) for every n the basis can hold
        powers = [vector]
        for count in range(1, n_max + 1):
            raised = mapped[depth] @ powers[-1] / np.sqrt(count)
            if not np.any(raised):
                break
            powers.append(raised)

        for member_weight, fock_vector in ensembles[depth]:
            branch_weight = weight * member_weight
            if branch_weight < constants.ORACLE_WEIGHT_FLOOR:
                continue
            result = np.zeros(basis.size, dtype=complex)
            for count, power in enumerate(powers):
                if fock_vector[count] != 0:
                    result += fock_vector[count] * power
            if not np.any(result):
                continue
            expand(depth + 1, result, branch_weight)

    expand(0, basis.vacuum(), 1.0)

    # binned counts from system outputs only; environment is traced out
    membership = np.zeros((rows.size, partition.bin_count), dtype=int)
    output_modes = outputs[rows[system]]
    for b, modes in enumerate(partition.bins):
        membership[np.flatnonzero(system)[np.isin(output_modes, modes)], b] = 1

    patterns = basis.states @ membership
    flat = np.ravel_multi_index(tuple(patterns.T), shape)
    table += np.bincount(flat, weights=mass, minlength=table.size).reshape(shape)

    return table


def oracle_binned_distribution(inst, partition, n_max, loss_tol=None, completion_seed=None):
    """
    Binned distribution of a small instance by explicit Fock space evolution.
    Active inputs are split into groups that share no output mode; each
    group is dilated to a unitary and evolved on its own, and the binned
    tables of the groups are convolved. Mass beyond n_max photons is reported
    as the tail bound.

    :param inst: GbsInstance (squeezed, thermal or squashed) or PartialDistInstance
    :param partition: BinPartition or list of bins
    :param n_max: photon truncation per group, also the per-bin cutoff
    :param loss_tol: optional tolerance; a larger truncation loss warns
    :param completion_seed: optional seed drawing a random environment
        unitary for each dilation
    :return: BinnedDistribution
    """
    n_max = int(n_max)
    if n_max < 0:
        raise DomainError("cutoff must be non-negative, got %d" % n_max)

    if isinstance(inst, PartialDistInstance):
        partition = as_partition(partition, inst.mode_count)
        expanded = build_partial_instance(inst)
        table = oracle_binned_distribution(
            expanded.instance,
            expand_partition(partition, expanded.port_map),
            n_max,
            loss_tol,
            completion_seed
        )
        return BinnedDistribution(table.probs, partition, table.tail_bound)

    if not isinstance(inst, GbsInstance):
        raise DomainError("expected a GbsInstance or PartialDistInstance, got %r" % inst)

    partition = as_partition(partition, inst.mode_count)
    shape = (n_max + 1,) * partition.bin_count
    active = np.flatnonzero(_input_parameters(inst) > 0)
    rng = None if completion_seed is None else np.random.default_rng(completion_seed)

    probs = np.zeros(shape)
    probs[(0,) * partition.bin_count] = 1.0

    if active.size:
        for group in _components(inst.network.entries[:, active]):
            table = _component_table(inst, active[group], partition, n_max, rng)
            probs = signal.convolve(probs, table, method='direct')[tuple(slice(0, n_max + 1) for _ in shape)]

    tail = max(1.0 - float(probs.sum()), 0.0)
    if loss_tol is not None and tail > loss_tol:
        warn("oracle truncation lost %.3g of probability mass" % tail, TruncationWarning)

    return BinnedDistribution(probs, partition, tail)
