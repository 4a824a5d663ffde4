import unittest
import warnings
import numpy as np
from scipy import stats
from gbsbin import GbsInstance, SqueezedInput, BinnedDistribution, CutoffPolicy, SampleSet, tv_distance, chi_square, \
    log_likelihood_ratio, validate_samples, instance_distribution, generate_samples, bin_samples, \
    match_squashed_to_squeezed, random_haar_unitary
from gbsbin.exceptions import DomainError, DimensionError, PoolingWarning


class TvDistanceTestCase(unittest.TestCase):
    def test_identical(self):
        p = np.array([[0.5, 0.2], [0.1, 0.2]])

        self.assertEqual(tv_distance(p, p), 0.0)

    def test_disjoint(self):
        self.assertAlmostEqual(tv_distance([1.0, 0.0], [0.0, 1.0]), 1.0)

    def test_different_cutoffs(self):
        short = BinnedDistribution([0.6, 0.4])
        long = BinnedDistribution([0.6, 0.3, 0.1])

        self.assertAlmostEqual(tv_distance(short, long), 0.1, places=14)

    def test_missing_mass_is_an_overflow_cell(self):
        self.assertAlmostEqual(tv_distance([0.9, 0.0], [0.9, 0.1]), 0.1, places=14)

    def test_bin_count_mismatch(self):
        self.assertRaises(DimensionError, tv_distance, np.ones((2, 2)) / 4, [0.5, 0.5])


class ChiSquareTestCase(unittest.TestCase):
    def test_true_hypothesis_is_not_rejected(self):
        p = np.array([0.4, 0.3, 0.2, 0.1])
        rng = np.random.default_rng(5)
        counts = np.bincount(rng.choice(4, size=5000, p=p), minlength=4)

        result = chi_square(p, counts)
        self.assertEqual(result.dof, 3)
        self.assertGreater(result.p_value, 0.001)

    def test_wrong_hypothesis_is_rejected(self):
        counts = np.array([2000, 1500, 1000, 500])

        result = chi_square([0.25, 0.25, 0.25, 0.25], counts)
        self.assertLess(result.p_value, 1e-10)

    def test_small_cells_are_pooled(self):
        p = np.array([0.5, 0.4999, 0.0001])
        counts = np.array([510, 490, 0])

        result = chi_square(p, counts)
        self.assertEqual(result.pooled_cells, 1)
        self.assertEqual(result.dof, 1)

    def test_no_degrees_of_freedom(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            result = chi_square([1.0, 0.0], np.array([20, 0]))

        self.assertEqual(result.p_value, 1.0)
        self.assertEqual(result.dof, 0)
        self.assertTrue(any(issubclass(w.category, PoolingWarning) for w in caught))

    def test_counts_beyond_cutoff_join_the_overflow(self):
        counts = np.zeros(6, dtype=int)
        counts[:2] = [50, 40]
        counts[5] = 10

        result = chi_square([0.5, 0.4], counts)
        self.assertEqual(result.dof, 2)
        self.assertAlmostEqual(result.statistic, 0.0, places=12)

    def test_capped_counts_keep_the_overflow(self):
        samples = SampleSet.from_records([[0]] * 50 + [[1]] * 40 + [[5]] * 10)
        full = chi_square([0.5, 0.4], bin_samples(samples, [[0]]))
        capped = chi_square([0.5, 0.4], bin_samples(samples, [[0]], n=1))

        self.assertEqual(capped.dof, full.dof)
        self.assertAlmostEqual(capped.statistic, full.statistic, places=12)
        self.assertEqual(tv_distance(bin_samples(samples, [[0]], n=1), [0.5, 0.4]), 0.0)

    def test_needs_samples(self):
        self.assertRaises(DomainError, chi_square, [0.5, 0.5], np.zeros(2))


class LikelihoodRatioTestCase(unittest.TestCase):
    def setUp(self):
        self.a = BinnedDistribution([0.8, 0.2], partition=[[0]])
        self.b = BinnedDistribution([0.2, 0.8], partition=[[0]])

    def test_sign_follows_the_data(self):
        samples = SampleSet.from_records([[0], [0], [1]])

        expected = 2 * np.log(4.0) - np.log(4.0)
        self.assertAlmostEqual(log_likelihood_ratio(samples, self.a, self.b), expected, places=12)
        self.assertAlmostEqual(log_likelihood_ratio(samples, self.b, self.a), -expected, places=12)

    def test_patterns_beyond_cutoff_are_floored(self):
        samples = bin_samples(SampleSet.from_records([[3]]), [[0]])

        self.assertEqual(log_likelihood_ratio(samples, self.a, self.b), 0.0)

    def test_outlier_record_is_floored_without_a_wide_table(self):
        samples = SampleSet.from_records([[0], [10 ** 9]])

        self.assertAlmostEqual(log_likelihood_ratio(samples, self.a, self.b), np.log(4.0), places=12)

    def test_binned_counts_input(self):
        samples = SampleSet.from_records([[0], [1], [1]])

        self.assertAlmostEqual(
            log_likelihood_ratio(bin_samples(samples, [[0]]), self.a, self.b),
            log_likelihood_ratio(samples, self.a, self.b),
            places=14
        )


class ValidateSamplesTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        squeezed = GbsInstance(SqueezedInput([0.4] * 6), random_haar_unitary(6, seed=14))
        squashed = match_squashed_to_squeezed(squeezed)
        cls.partition = [[0, 1, 2], [3, 4, 5]]
        policy = CutoffPolicy(n_override=20)

        cls.squeezed = instance_distribution(squeezed, cls.partition, policy)
        cls.squashed = instance_distribution(squashed, cls.partition, policy)

    def test_likelihood_ratio_prefers_the_source(self):
        squeezed_wins = squashed_wins = 0
        for seed in range(100):
            samples = generate_samples(self.squeezed, 10000, seed=seed, mode_count=6)
            squeezed_wins += log_likelihood_ratio(samples, self.squeezed, self.squashed) > 0

            samples = generate_samples(self.squashed, 10000, seed=seed, mode_count=6)
            squashed_wins += log_likelihood_ratio(samples, self.squeezed, self.squashed) < 0

        self.assertGreaterEqual(squeezed_wins, 95)
        self.assertGreaterEqual(squashed_wins, 95)

    def test_true_hypothesis_p_values_are_uniform(self):
        p_values = []
        for seed in range(200):
            samples = generate_samples(self.squeezed, 5000, seed=1000 + seed, mode_count=6)
            p_values.append(chi_square(self.squeezed, bin_samples(samples, self.partition)).p_value)

        self.assertGreater(stats.kstest(p_values, 'uniform').pvalue, 1e-3)

    def test_report(self):
        samples = generate_samples(self.squeezed, 5000, seed=99, mode_count=6)
        report = validate_samples(samples, [('squeezed', self.squeezed), ('squashed', self.squashed)])

        self.assertEqual(report.preferred, 'squeezed')
        self.assertEqual(report.sample_count, 5000)
        self.assertLess(report.tv_distance['squeezed'], report.tv_distance['squashed'])
        self.assertLess(report.chi_square['squashed'].p_value, 1e-6)

        summary = report.to_dict()
        self.assertEqual(summary['partition'], self.partition)
        self.assertEqual(set(summary['hypotheses']), {'squeezed', 'squashed'})
        self.assertIn('p_value', summary['hypotheses']['squeezed']['chi_square'])

    def test_needs_two_hypotheses(self):
        samples = generate_samples(self.squeezed, 10, seed=1, mode_count=6)

        self.assertRaises(DomainError, validate_samples, samples, [('squeezed', self.squeezed)])
