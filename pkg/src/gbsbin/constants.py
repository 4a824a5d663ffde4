"""
Default tolerances, limits and file keywords shared across GBSBin modules.
Functions accept these as keyword arguments; the values here are the defaults.
"""
import math

# network and Q-matrix checks
TOL_SUBUNITARY = 1e-8
TOL_UNITARY = 1e-8
TOL_SYMMETRIC = 1e-10

# branch continuation of sqrt(det Q)
MAX_PHASE_STEP = math.pi / 4
MAX_ETA_STEP = math.pi / 8
MAX_BISECTION_DEPTH = 40

# inverse transform bookkeeping
NEGATIVE_CLAMP = 1e-9
IMAG_RESIDUE_TOL = 1e-8
CLAMP_WARN_MASS = 1e-12

# energy cutoff
DEFAULT_EPSILON = 1e-6
ALPHA_SEARCH_LIMIT = 1e6
PROVISIONAL_MIN_CUTOFF = 16

# Fock oracle
ORACLE_MAX_BASIS = 250000
ORACLE_WEIGHT_FLOOR = 1e-16
ORACLE_MAX_PERMANENT = 10

# validation statistics
CHI_SQUARE_MIN_EXPECTED = 5
PROBABILITY_FLOOR = 1e-300
MAX_COUNT_TABLE_CELLS = 10 ** 7

INPUT_MODELS = (
    'squeezed',
    'thermal',
    'squashed',
    'partial'
)

INSTANCE_REQUIRED_KEYWORDS = (
    'modes',
    'input_model'
)

# per input model, the keywords that must be present besides the required ones
INSTANCE_MODEL_KEYWORDS = {
    'squeezed': ('squeezing',),
    'thermal': ('nbar',),
    'squashed': ('squeezing',),
    'partial': ('squeezing', 'eta_ind')
}

SAMPLE_FORMATS = ('jsonl', 'csv')
