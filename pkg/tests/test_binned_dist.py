import unittest
import warnings
import numpy as np
from scipy import stats
from gbsbin import GbsInstance, SqueezedInput, ThermalInput, SquashedInput, PartialDistInstance, BinPartition, \
    CutoffPolicy, BinnedDistribution, uniform_loss, \
    total_pair_distribution, cutoff_tail_bound, select_cutoff, binned_distribution, instance_distribution, \
    characteristic_from_distribution, marginalize, merge_bins, post_select, binned_moments, random_haar_unitary
from gbsbin.binned_dist import distribution_from_grid
from gbsbin.validation import tv_distance
from gbsbin.exceptions import DomainError, DimensionError, PartitionError, NumericError, BranchError, \
    PolicyError, VacuousBoundWarning, ClampWarning


class TotalPairDistributionTestCase(unittest.TestCase):
    def test_vacuum_probability(self):
        self.assertAlmostEqual(total_pair_distribution(2, 0.4, 0), 1.0 / np.cosh(0.4) ** 2, places=14)
        self.assertAlmostEqual(total_pair_distribution(2, 0.4, 0), 0.85564, places=5)

    def test_single_mode_one_pair(self):
        self.assertAlmostEqual(total_pair_distribution(1, 0.5, 1), 0.09469, places=5)

    def test_normalization(self):
        k = np.arange(201)
        for m in (1, 7, 30):
            for r in (0.1, 0.6):
                self.assertAlmostEqual(float(np.sum(total_pair_distribution(m, r, k))), 1.0, places=12)

    def test_is_negative_binomial(self):
        k = np.arange(12)
        expected = stats.nbinom.pmf(k, 10, 1.0 / np.cosh(0.4) ** 2)

        np.testing.assert_allclose(total_pair_distribution(20, 0.4, k), expected, rtol=1e-10)

    def test_rejects_vacuum(self):
        self.assertRaises(DomainError, total_pair_distribution, 4, 0.0, 1)
        self.assertRaises(DomainError, total_pair_distribution, 0, 0.3, 1)


class CutoffTestCase(unittest.TestCase):
    def test_tail_bound_value(self):
        sinh2 = np.sinh(0.4) ** 2
        expected = np.exp(-20 * sinh2 * np.tanh(0.4) ** 2 * 4.0 / (4.0 * (1.0 + 3.0 * sinh2)))

        self.assertAlmostEqual(cutoff_tail_bound(20, 0.4, 3.0), expected, places=12)
        self.assertAlmostEqual(cutoff_tail_bound(20, 0.4, 3.0), 0.7237, places=3)

    def test_vacuous_bound(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            self.assertEqual(cutoff_tail_bound(20, 0.4, 1.0), 1.0)

        self.assertTrue(any(issubclass(w.category, VacuousBoundWarning) for w in caught))

    def test_bound_decreases(self):
        self.assertLess(cutoff_tail_bound(20, 0.4, 5.0), cutoff_tail_bound(20, 0.4, 3.0))
        self.assertLess(cutoff_tail_bound(40, 0.4, 3.0), cutoff_tail_bound(20, 0.4, 3.0))

    def test_bound_dominates_true_tail(self):
        k = np.arange(400)
        for m in (4, 10, 20):
            for r in (0.2, 0.4):
                pairs = total_pair_distribution(m, r, k)
                for alpha in (2.0, 3.0, 5.0):
                    threshold = alpha * m * np.sinh(r) ** 2
                    tail = float(np.sum(pairs[2 * k > threshold]))
                    self.assertLessEqual(tail, cutoff_tail_bound(m, r, alpha) + 1e-15)

    def test_select_cutoff(self):
        inst = GbsInstance(SqueezedInput([0.4] * 20))
        selection = select_cutoff(inst)
        sinh2 = np.sinh(0.4) ** 2

        self.assertEqual(selection.n % 2, 0)
        self.assertLessEqual(selection.tail_bound, 1e-6)
        self.assertGreater(cutoff_tail_bound(20, 0.4, (selection.n - 2) / (20 * sinh2)), 1e-6)
        self.assertAlmostEqual(selection.alpha, selection.n / (20 * sinh2), places=12)

    def test_select_cutoff_uses_largest_squeezing(self):
        uniform = select_cutoff(GbsInstance(SqueezedInput([0.4] * 4)))
        mixed = select_cutoff(GbsInstance(SqueezedInput([0.4, 0.1, 0.1, 0.1])))

        self.assertEqual(mixed.n, uniform.n)

    def test_vacuum_cutoff(self):
        selection = select_cutoff(GbsInstance(SqueezedInput([0.0, 0.0])))

        self.assertEqual(selection.n, 0)
        self.assertEqual(selection.tail_bound, 0.0)

    def test_unreachable_target(self):
        inst = GbsInstance(SqueezedInput([1e-4]))

        self.assertRaises(PolicyError, select_cutoff, inst, CutoffPolicy(epsilon=1e-6))

    def test_override_reports_exact_tail(self):
        inst = GbsInstance(SqueezedInput([0.4] * 20))
        selection = select_cutoff(inst, CutoffPolicy(n_override=8))
        expected = 1.0 - float(np.sum(total_pair_distribution(20, 0.4, np.arange(5))))

        self.assertEqual(selection.n, 8)
        self.assertAlmostEqual(selection.tail_bound, expected, places=12)

    def test_thermal_cutoff(self):
        inst = GbsInstance(ThermalInput([0.3, 0.2]), random_haar_unitary(2, seed=6))
        selection = select_cutoff(inst, CutoffPolicy(epsilon=1e-8))
        ratio = 0.3 / 1.3

        self.assertLessEqual(selection.tail_bound, 1e-8)
        # the brighter mode alone bounds the tail of the total from below
        self.assertLessEqual(ratio ** (selection.n + 1), 1e-8)
        self.assertLessEqual(selection.n, 20)

    def test_policy_checks(self):
        self.assertRaises(DomainError, CutoffPolicy, epsilon=0.0)
        self.assertRaises(DomainError, CutoffPolicy, alpha=0.5)
        self.assertRaises(DomainError, CutoffPolicy, n_override=-2)


class BinnedDistributionTestCase(unittest.TestCase):
    def setUp(self):
        self.inst = GbsInstance(SqueezedInput([0.3, 0.2, 0.25]), random_haar_unitary(3, seed=13))

    def test_constant_characteristic_function(self):
        dist = binned_distribution(lambda eta: 1.0, 4, B=2)

        self.assertEqual(str(dist), 'BinnedDistribution(n=4, B=2)')
        self.assertAlmostEqual(dist.probs[0, 0], 1.0, places=14)
        self.assertAlmostEqual(dist.total(), 1.0, places=14)

    def test_single_mode(self):
        inst = GbsInstance(SqueezedInput([0.5]))
        dist = binned_distribution(inst.characteristic_function([[0]]), 8, partition=[[0]])

        self.assertAlmostEqual(dist.probs[0], 0.88682, places=5)
        self.assertAlmostEqual(dist.probs[2], 0.09469, places=5)

        fine = binned_distribution(inst.characteristic_function([[0]]), 40, partition=[[0]])
        self.assertLessEqual(float(np.max(fine.probs[1::2])), 1e-10)

    def test_lossless_parity(self):
        partition = [[0], [1, 2]]
        dist = binned_distribution(self.inst.characteristic_function(partition), 20, partition=partition)
        totals = np.indices(dist.probs.shape).sum(axis=0)

        self.assertLessEqual(float(np.max(dist.probs[totals % 2 == 1])), 1e-10)

    def test_policy_distribution_is_normalized(self):
        inst = GbsInstance(SqueezedInput([0.3] * 4), random_haar_unitary(4, seed=9))
        dist = instance_distribution(inst, [[0, 1], [2, 3]])

        self.assertGreaterEqual(dist.total() + dist.tail_bound, 1.0 - 1e-6)
        self.assertLessEqual(dist.total(), 1.0 + 1e-8)
        self.assertGreaterEqual(float(dist.probs.min()), 0.0)

    def test_identity_network_is_a_product(self):
        inst = GbsInstance(SqueezedInput([0.3, 0.5]))
        joint = binned_distribution(inst.characteristic_function([[0], [1]]), 12, partition=[[0], [1]])
        first = binned_distribution(GbsInstance(SqueezedInput([0.3])).characteristic_function([[0]]), 12)
        second = binned_distribution(GbsInstance(SqueezedInput([0.5])).characteristic_function([[0]]), 12)

        np.testing.assert_allclose(joint.probs, np.outer(first.probs, second.probs), atol=1e-12)

    def test_forward_transform_recovers_grid(self):
        partition = [[0], [1, 2]]
        cf = self.inst.characteristic_function(partition)
        dist = binned_distribution(cf, 10, partition=partition)

        np.testing.assert_allclose(characteristic_from_distribution(dist), cf.grid(11), atol=1e-10)
        eta = 2 * np.pi * np.array([3, 7]) / 11.0
        self.assertAlmostEqual(characteristic_from_distribution(dist, eta), cf(eta), places=10)

    def test_probability_beyond_cutoff(self):
        dist = BinnedDistribution([[0.5, 0.1], [0.2, 0.2]])

        self.assertEqual(dist.probability((1, 0)), 0.2)
        self.assertEqual(dist.probability((3, 0)), 0.0)
        self.assertRaises(DimensionError, dist.probability, (1,))

    def test_padded_and_truncated(self):
        dist = BinnedDistribution([[0.5, 0.1], [0.2, 0.2]], tail_bound=0.01)
        padded = dist.padded(3)
        truncated = padded.truncated(0)

        self.assertEqual(padded.probs.shape, (4, 4))
        self.assertAlmostEqual(padded.total(), 1.0, places=14)
        self.assertAlmostEqual(truncated.tail_bound, 0.51, places=14)
        self.assertRaises(DomainError, dist.padded, 0)

    def test_sidecar(self):
        dist = BinnedDistribution([[1.0, 0.0], [0.0, 0.0]], partition=[[0], [1, 2]], tail_bound=1e-7)
        sidecar = dist.sidecar()

        self.assertEqual(sidecar['n'], 1)
        self.assertEqual(sidecar['B'], 2)
        self.assertEqual(sidecar['partition'], [[0], [1, 2]])
        self.assertEqual(sidecar['tail_bound'], 1e-7)

    def test_unequal_axes_are_rejected(self):
        self.assertRaises(DimensionError, BinnedDistribution, np.zeros((2, 3)))

    def test_partition_must_match(self):
        self.assertRaises(DimensionError, BinnedDistribution, np.zeros((2, 2)), [[0], [1], [2]])


class GridTransformTestCase(unittest.TestCase):
    def setUp(self):
        self.probs = np.array([0.5, 0.3, 0.2])

    def values_for(self, probs):
        return np.fft.ifftn(probs) * probs.size

    def test_round_trip(self):
        dist = distribution_from_grid(self.values_for(self.probs))

        np.testing.assert_allclose(dist.probs, self.probs, atol=1e-15)
        self.assertEqual(dist.clamped_mass, 0.0)

    def test_small_negative_is_clamped(self):
        probs = np.array([0.5, 0.5 + 1e-10, -1e-10])

        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            dist = distribution_from_grid(self.values_for(probs))

        self.assertEqual(dist.probs[2], 0.0)
        self.assertAlmostEqual(dist.clamped_mass, 1e-10, places=15)
        self.assertTrue(any(issubclass(w.category, ClampWarning) for w in caught))

    def test_large_negative_is_an_error(self):
        probs = np.array([0.5, 0.5 + 1e-6, -1e-6])

        self.assertRaises(NumericError, distribution_from_grid, self.values_for(probs))

    def test_imaginary_residue_is_an_error(self):
        values = np.array([1.0, 1j, 0.0])

        self.assertRaises(BranchError, distribution_from_grid, values)


class BinOperationsTestCase(unittest.TestCase):
    def setUp(self):
        self.inst = GbsInstance(SqueezedInput([0.2, 0.25, 0.15]), random_haar_unitary(3, seed=17))
        self.partition = BinPartition.singletons(3)
        self.joint = binned_distribution(self.inst.characteristic_function(self.partition), 12,
                                         partition=self.partition)

    def test_marginalize_matches_direct_evaluation(self):
        marginal = marginalize(self.joint, 2)
        direct = binned_distribution(self.inst.characteristic_function([[0], [1]]), 12, partition=[[0], [1]])

        self.assertEqual(marginal.partition.to_list(), [[0], [1]])
        self.assertLessEqual(tv_distance(marginal, direct), 1e-8)

    def test_marginalize_product(self):
        inst = GbsInstance(SqueezedInput([0.3, 0.5]))
        joint = binned_distribution(inst.characteristic_function([[0], [1]]), 10, partition=[[0], [1]])
        single = binned_distribution(GbsInstance(SqueezedInput([0.3])).characteristic_function([[0]]), 10)

        np.testing.assert_allclose(marginalize(joint, 1).probs, single.probs, atol=1e-12)

    def test_marginalize_single_bin(self):
        single = marginalize(marginalize(self.joint, 2), 1)

        self.assertRaises(DimensionError, marginalize, single, 0)
        self.assertRaises(PartitionError, marginalize, self.joint, 3)

    def test_merge_routes_agree(self):
        from_table = merge_bins(self.joint, 0, 2)
        from_instance = merge_bins(self.inst, 0, 2, partition=self.partition, n=12)

        self.assertEqual(from_table.partition.to_list(), [[0, 2], [1]])
        self.assertEqual(from_instance.partition.to_list(), [[0, 2], [1]])
        self.assertLessEqual(tv_distance(from_table, from_instance), 1e-6)

    def test_merge_matches_merged_partition(self):
        merged = merge_bins(self.inst, 1, 2, partition=self.partition, n=12)
        direct = binned_distribution(self.inst.characteristic_function([[0], [1, 2]]), 24,
                                     partition=[[0], [1, 2]]).truncated(12)

        self.assertLessEqual(tv_distance(merged, direct), 1e-7)

    def test_doubling_the_cutoff_moves_little_mass(self):
        partition = [[0, 1], [2]]
        policy = CutoffPolicy(epsilon=1e-6)
        dist = instance_distribution(self.inst, partition, policy)
        doubled = binned_distribution(self.inst.characteristic_function(partition), 2 * dist.n, partition=partition)

        self.assertLessEqual(float(np.max(np.abs(doubled.truncated(dist.n).probs - dist.probs))), 10 * policy.epsilon)

    def test_merge_from_instance_keeps_the_cutoff_tail(self):
        merged = merge_bins(self.inst, 0, 2, partition=self.partition, n=4)
        cutoff_tail = select_cutoff(self.inst, CutoffPolicy(n_override=4)).tail_bound

        self.assertGreater(cutoff_tail, 0.0)
        self.assertGreaterEqual(merged.tail_bound, cutoff_tail)
        self.assertGreaterEqual(merged.tail_bound, 1.0 - merged.total() - 1e-12)
        self.assertGreaterEqual(merged.clamped_mass, 0.0)
        self.assertLessEqual(merged.imag_residue, 1e-8)

    def test_merge_errors(self):
        self.assertRaises(PartitionError, merge_bins, self.joint, 1, 1)
        self.assertRaises(PartitionError, merge_bins, self.joint, 0, 5)
        self.assertRaises(DomainError, merge_bins, self.inst, 0, 1)

    def test_post_select(self):
        patterns, values = post_select(self.joint, 4)

        self.assertTrue(np.all(patterns.sum(axis=1) == 4))
        self.assertAlmostEqual(float(values.sum()), 1.0, places=12)

    def test_moments(self):
        inst = GbsInstance(SqueezedInput([0.3, 0.5]))
        dist = binned_distribution(inst.characteristic_function([[0], [1]]), 30, partition=[[0], [1]])
        means, covariance = binned_moments(dist)

        np.testing.assert_allclose(means, np.sinh([0.3, 0.5]) ** 2, atol=1e-9)
        # squeezed vacuum: var n = 2 sinh^2 r cosh^2 r
        np.testing.assert_allclose(np.diag(covariance), 2 * (np.sinh([0.3, 0.5]) * np.cosh([0.3, 0.5])) ** 2,
                                   atol=1e-8)
        self.assertAlmostEqual(covariance[0, 1], 0.0, places=10)


class NormalizationSuiteTestCase(unittest.TestCase):
    @staticmethod
    def random_instance(rng):
        m = int(rng.integers(1, 11))
        network = random_haar_unitary(m, seed=rng)
        if rng.random() < 0.5:
            network = uniform_loss(network, rng.uniform(0.3, 1.0))

        model = rng.choice(['squeezed', 'thermal', 'squashed', 'partial'])
        if model == 'squeezed':
            return GbsInstance(SqueezedInput(rng.uniform(0.1, 0.3, m)), network)
        if model == 'thermal':
            return GbsInstance(ThermalInput(rng.uniform(0.05, 0.3, m)), network)
        if model == 'squashed':
            return GbsInstance(SquashedInput(rng.uniform(0.05, 0.2, m)), network)

        m = min(m, 4)
        network = random_haar_unitary(m, seed=rng)
        return PartialDistInstance(rng.uniform(0.1, 0.3, m), network, rng.uniform(0.0, 1.0))

    @staticmethod
    def random_partition(rng, m):
        modes = rng.permutation(m)
        if m == 1 or rng.random() < 0.3:
            return [modes[:int(rng.integers(1, m + 1))].tolist()]
        split = int(rng.integers(1, m))
        return [modes[:split].tolist(), modes[split:].tolist()]

    def test_randomized_instances(self):
        rng = np.random.default_rng(2024)

        for trial in range(50):
            inst = self.random_instance(rng)
            partition = self.random_partition(rng, inst.mode_count)

            with self.subTest(trial=trial, instance=str(inst), partition=partition):
                cf = inst.characteristic_function(partition)
                self.assertLessEqual(abs(cf(np.zeros(len(partition))) - 1.0), 1e-12)

                dist = instance_distribution(inst, partition)
                self.assertLessEqual(dist.tail_bound, 1e-6)
                self.assertGreaterEqual(dist.total(), 1.0 - 1e-6)
                self.assertLessEqual(dist.total(), 1.0 + 1e-8)
