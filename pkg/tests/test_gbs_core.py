import unittest
import warnings
import numpy as np
from gbsbin import TransferMatrix, SqueezedInput, BinPartition, GbsInstance, char_fn_squeezed, \
    uniform_loss, validate_network, random_haar_unitary, binned_distribution, total_pair_distribution
from gbsbin.gbs_core import theta_vector, lu_log_det, check_q_matrix, continue_log_det, branch_sqrt_det, phased_gram
from gbsbin.exceptions import DimensionError, NetworkError, PartitionError, DomainError, \
    SingularityError, ConditioningError, BranchError


def single_mode_squeezed(r, eta):
    return 1.0 / np.sqrt(np.cosh(r) ** 2 - np.exp(2j * eta) * np.sinh(r) ** 2)


class TransferMatrixTestCase(unittest.TestCase):
    def test_beam_splitter_is_unitary(self):
        bs = TransferMatrix(np.array([[1, 1], [1, -1]]) / np.sqrt(2))

        self.assertTrue(bs.is_unitary)
        self.assertEqual(bs.mode_count, 2)
        self.assertEqual(str(bs), 'TransferMatrix(m=2, unitary)')

    def test_lossy_network_is_sub_unitary(self):
        lossy = TransferMatrix(0.5 * np.eye(3))

        self.assertFalse(lossy.is_unitary)
        self.assertAlmostEqual(lossy.report.sigma_max, 0.5)
        self.assertEqual(str(lossy), 'TransferMatrix(m=3, sub-unitary)')

    def test_validate_network_report(self):
        report = validate_network(np.diag([1.0, 0.6]))

        self.assertTrue(report.is_subunitary)
        self.assertFalse(report.is_unitary)
        self.assertAlmostEqual(report.sigma_max, 1.0)

    def test_gain_is_rejected(self):
        self.assertRaises(NetworkError, TransferMatrix, 1.1 * np.eye(2))

    def test_non_square_is_rejected(self):
        self.assertRaises(DimensionError, TransferMatrix, np.ones((2, 3)))

    def test_entries_are_read_only(self):
        network = TransferMatrix.identity(2)

        with self.assertRaises(ValueError):
            network.entries[0, 0] = 2.0

    def test_unitary_off_diagonal_block(self):
        u = random_haar_unitary(4, seed=9).entries
        theta = np.array([0.3, 2.1, 4.0, 5.5])

        off = -(np.eye(4) + phased_gram(u, theta))
        np.testing.assert_allclose(off, -u.T @ np.diag(np.exp(1j * theta)) @ u.conj(), atol=1e-12)

    def test_uniform_loss(self):
        lossy = uniform_loss(TransferMatrix.identity(2), 0.25)

        np.testing.assert_allclose(lossy.entries, 0.5 * np.eye(2))
        self.assertRaises(DomainError, uniform_loss, np.eye(2), 1.5)


class BinPartitionTestCase(unittest.TestCase):
    def test_contiguous(self):
        partition = BinPartition.contiguous([2, 3])

        self.assertEqual(partition.to_list(), [[0, 1], [2, 3, 4]])
        self.assertEqual(list(partition.bin_sizes), [2, 3])
        self.assertTrue(partition.covers(5))
        self.assertFalse(partition.covers(6))

    def test_singletons(self):
        partition = BinPartition.singletons(3)

        self.assertEqual(partition.bin_count, 3)
        self.assertEqual(partition.to_list(), [[0], [1], [2]])

    def test_overlap_is_rejected(self):
        self.assertRaises(PartitionError, BinPartition, [[0, 1], [1, 2]])

    def test_empty_bin_is_rejected(self):
        self.assertRaises(PartitionError, BinPartition, [[0], []])

    def test_negative_mode_is_rejected(self):
        self.assertRaises(PartitionError, BinPartition, [[-1]])

    def test_out_of_range_mode(self):
        partition = BinPartition([[0], [4]])

        self.assertRaises(PartitionError, partition.validate, 3)

    def test_merged_and_without(self):
        partition = BinPartition([[0], [1, 2], [3]])

        self.assertEqual(partition.merged(0, 2).to_list(), [[0, 3], [1, 2]])
        self.assertEqual(partition.without(1).to_list(), [[0], [3]])
        self.assertRaises(PartitionError, partition.merged, 1, 1)

    def test_theta_vector_leaves_unbinned_modes_at_zero(self):
        theta = theta_vector([[0], [2]], [0.3, 1.2], 4)

        np.testing.assert_allclose(theta, [0.3, 0.0, 1.2, 0.0])

    def test_theta_vector_checks_dimension(self):
        self.assertRaises(DimensionError, theta_vector, [[0], [1]], [0.3], 2)


class DeterminantTestCase(unittest.TestCase):
    def test_lu_log_det_matches_det(self):
        rng = np.random.default_rng(7)
        q = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))

        self.assertAlmostEqual(np.exp(lu_log_det(q)), np.linalg.det(q), places=10)

    def test_lu_log_det_with_row_swap(self):
        log_det = lu_log_det(np.array([[0.0, 1.0], [1.0, 0.0]]))

        self.assertAlmostEqual(np.exp(log_det), -1.0, places=12)

    def test_singular_matrix(self):
        self.assertRaises(SingularityError, lu_log_det, np.zeros((2, 2)))

    def test_check_q_matrix(self):
        self.assertRaises(ConditioningError, check_q_matrix, np.array([[1.0, 2.0], [0.0, 1.0]]))
        self.assertRaises(ConditioningError, check_q_matrix, -np.eye(2))
        check_q_matrix(np.eye(2) + 0.5j * np.ones((2, 2)))

    def test_continuation_tracks_winding(self):
        # det Q = e^{i eta}; the continued log keeps winding past pi
        def q_builder(eta):
            return np.array([[np.exp(1j * eta[0])]])

        log_det = continue_log_det(q_builder, [np.zeros(1), np.array([3.0 * np.pi])], 0j)

        self.assertAlmostEqual(log_det.imag, 3.0 * np.pi, places=10)

    def test_branch_sqrt_det_follows_the_path(self):
        def q_builder(eta):
            return np.diag([2.0 * np.exp(1j * eta[0]), np.exp(1j * eta[1])])

        self.assertAlmostEqual(branch_sqrt_det(q_builder, [0.0, 0.0]), np.sqrt(2.0), places=12)
        # the principal root would be +i sqrt(2)
        self.assertAlmostEqual(branch_sqrt_det(q_builder, [1.5 * np.pi, 1.5 * np.pi]), -1j * np.sqrt(2.0), places=10)

    def test_continuation_gives_up_on_jumps(self):
        def q_builder(eta):
            return np.array([[1.0 if eta[0] < 0.5 else -1.0]])

        self.assertRaises(
            BranchError, continue_log_det, q_builder, [np.zeros(1), np.ones(1)], 0j, max_depth=5
        )


class SqueezedCharacteristicTestCase(unittest.TestCase):
    def setUp(self):
        self.inst = GbsInstance(SqueezedInput([0.4, 0.2, 0.3]), random_haar_unitary(3, seed=11))
        self.partition = BinPartition([[0], [1, 2]])

    def test_instance_repr(self):
        self.assertEqual(str(self.inst), 'GbsInstance(squeezed, m=3)')

    def test_one_at_origin(self):
        value = char_fn_squeezed(self.inst, self.partition, [0.0, 0.0])

        self.assertAlmostEqual(value, 1.0, places=12)

    def test_single_mode_closed_form(self):
        inst = GbsInstance(SqueezedInput([0.5]))
        cf = inst.characteristic_function([[0]])

        self.assertAlmostEqual(abs(cf([np.pi / 2]) - 0.8050), 0.0, places=3)
        for eta in np.linspace(0, 2 * np.pi, 32, endpoint=False):
            self.assertAlmostEqual(cf([eta]), single_mode_squeezed(0.5, eta), places=12)

    def test_identity_network_factorizes(self):
        inst = GbsInstance(SqueezedInput([0.3, 0.5]))
        cf = inst.characteristic_function(BinPartition.singletons(2))

        for eta in ([0.4, 1.1], [2.5, -0.7], [np.pi, np.pi / 3]):
            expected = single_mode_squeezed(0.3, eta[0]) * single_mode_squeezed(0.5, eta[1])
            self.assertAlmostEqual(cf(eta), expected, places=12)

    def test_total_count_ignores_the_network(self):
        cf = self.inst.characteristic_function([[0, 1, 2]])

        for eta in (0.7, 2.0, 4.4):
            expected = np.prod([single_mode_squeezed(r, eta) for r in (0.4, 0.2, 0.3)])
            self.assertAlmostEqual(cf([eta]), expected, places=10)

    def test_hermitian_symmetry(self):
        cf = self.inst.characteristic_function(self.partition)

        for eta in ([0.4, 1.1], [2.5, -0.7]):
            self.assertAlmostEqual(cf(-np.array(eta)), np.conj(cf(eta)), places=10)

    def test_path_independence(self):
        cf = self.inst.characteristic_function(self.partition)
        eta = np.array([2.2, -1.4])
        direct = cf(eta)

        other = cf.evaluate_path([[0.0, 0.0], [0.0, eta[1]], eta])
        around = cf.evaluate_path([[0.0, 0.0], [2 * np.pi, 0.0], [2 * np.pi, 2 * np.pi], eta])

        self.assertAlmostEqual(other, direct, places=10)
        self.assertAlmostEqual(around, direct, places=10)

    def test_grid_matches_pointwise(self):
        cf = self.inst.characteristic_function(self.partition)
        values = cf.grid(5)

        for index in np.ndindex(*values.shape):
            eta = 2 * np.pi * np.array(index) / 5.0
            self.assertAlmostEqual(values[index], cf(eta), places=10)

    def test_threaded_grid_matches_serial(self):
        cf = self.inst.characteristic_function(self.partition)

        np.testing.assert_allclose(cf.grid(7, workers=3), cf.grid(7), atol=1e-14)

    def test_grid_size_mismatch(self):
        cf = self.inst.characteristic_function(self.partition)

        self.assertRaises(DimensionError, cf.grid, (3, 3, 3))

    def test_vacuum_is_trivial(self):
        inst = GbsInstance(SqueezedInput([0.0, 0.0]), random_haar_unitary(2, seed=3))
        cf = inst.characteristic_function([[0], [1]])

        self.assertTrue(cf.is_trivial)
        self.assertEqual(cf([1.0, 2.0]), 1.0)

    def test_vacuum_mode_drops_out(self):
        with_vacuum = GbsInstance(SqueezedInput([0.4, 0.0]))
        alone = GbsInstance(SqueezedInput([0.4]))

        value = with_vacuum.characteristic_function([[0, 1]])([1.3])
        self.assertAlmostEqual(value, alone.characteristic_function([[0]])([1.3]), places=12)

    def test_lossy_network(self):
        inst = GbsInstance(SqueezedInput([0.4, 0.3]), uniform_loss(random_haar_unitary(2, seed=5), 0.6))
        cf = inst.characteristic_function([[0], [1]])

        self.assertAlmostEqual(cf([0.0, 0.0]), 1.0, places=12)
        self.assertLessEqual(abs(cf([1.0, 2.0])), 1.0 + 1e-12)

    def test_full_loss_is_vacuum(self):
        inst = GbsInstance(SqueezedInput([0.4, 0.3]), np.zeros((2, 2)))
        cf = inst.characteristic_function([[0], [1]])

        with warnings.catch_warnings():
            warnings.simplefilter('error')
            self.assertAlmostEqual(cf([1.0, 2.0]), 1.0, places=12)

    def test_bright_bin_keeps_the_branch(self):
        inst = GbsInstance(SqueezedInput([1.0] * 10))
        cf = inst.characteristic_function([list(range(10))])

        self.assertAlmostEqual(cf.origin_phase_rate(), 20.0 * np.sinh(1.0) ** 2, places=4)
        self.assertLess(cf.max_eta_step, np.pi / 8)
        for eta in (np.pi / 8, 0.3, 1.0):
            self.assertAlmostEqual(cf([eta]), single_mode_squeezed(1.0, eta) ** 10, places=10)

    def test_bright_bin_grid_matches_aliased_pair_law(self):
        inst = GbsInstance(SqueezedInput([1.0] * 10))
        dist = binned_distribution(inst.characteristic_function([list(range(10))]), 15)

        pairs = np.arange(600)
        aliased = np.zeros(16)
        np.add.at(aliased, (2 * pairs) % 16, total_pair_distribution(10, 1.0, pairs))
        np.testing.assert_allclose(dist.probs, aliased, atol=1e-10)

    def test_origin_phase_rate_follows_the_bins(self):
        inst = GbsInstance(SqueezedInput([0.4, 0.2, 0.3]), random_haar_unitary(3, seed=11))
        rate = inst.characteristic_function([[0], [1], [2]]).origin_phase_rate()

        self.assertAlmostEqual(rate, 2.0 * np.sum(np.sinh([0.4, 0.2, 0.3]) ** 2), places=4)

    def test_negative_squeezing(self):
        self.assertRaises(DomainError, SqueezedInput, [0.3, -0.1])

    def test_network_size_mismatch(self):
        self.assertRaises(DimensionError, GbsInstance, SqueezedInput([0.3, 0.1]), np.eye(3))
