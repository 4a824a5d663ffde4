import unittest

from .test_gbs_core import TransferMatrixTestCase, BinPartitionTestCase, DeterminantTestCase, \
    SqueezedCharacteristicTestCase
from .test_classical_models import ThermalTestCase, SquashedTestCase, MeanMatchingTestCase
from .test_distinguishability import PartialDistinguishabilityTestCase
from .test_binned_dist import TotalPairDistributionTestCase, CutoffTestCase, BinnedDistributionTestCase, \
    GridTransformTestCase, BinOperationsTestCase, NormalizationSuiteTestCase
from .test_haar import HaarFockLawTestCase, GaussianLawTestCase, HaarGbsLawTestCase, RandomUnitaryTestCase, \
    MonteCarloHaarTestCase, HaarAcceptanceTestCase
from .test_fock_oracle import PermanentTestCase, TransitionTestCase, FockBasisTestCase, DilationTestCase, \
    FockStateHelpersTestCase, OracleTestCase
from .test_sample_data import SampleSetTestCase, BinSamplesTestCase, GenerateSamplesTestCase
from .test_validation import TvDistanceTestCase, ChiSquareTestCase, LikelihoodRatioTestCase, \
    ValidateSamplesTestCase
from .test_utils import ReadInstanceTestCase, PartitionParsingTestCase
from .test_writers import WriteDistributionTestCase, CreateSampleFileTestCase
from .test_cli import CommandLineTestCase


if __name__ == "__main__":
    unittest.main()
