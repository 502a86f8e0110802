from fractions import Fraction

import pkg_resources

MATCHSTREAM_VERSION = pkg_resources.require("matchstream")[0].version
THREADS_ENV_VAR = "MATCHSTREAM_THREADS"

JSON_SCHEMA_VERSION = 1
REPORT_COLUMNS = (
    "algorithm",
    "seed",
    "n",
    "m",
    "weight",
    "opt",
    "ratio",
    "passes",
    "peak_edges",
)

# Graph universe
DEFAULT_WEIGHT_EXPONENT = 4
MAX_INT64 = 2 ** 63 - 1

# Stream harness
DEFAULT_SEED = 0
DEFAULT_MEM_C = 8.0
DEFAULT_MEM_LOGK = 2

# Oracles
ORACLE_MAX_VERTICES = 20
ORACLE_MAX_EDGES = 64

# Wgt-Aug-Paths
DEFAULT_ALPHA = Fraction(1, 50)
DEFAULT_BETA = Fraction(1, 16000)
SMALL_CLASS_FACTOR = 100
SMALL_CLASS_STORE_FACTOR = 4

# Unweighted random arrival
DEFAULT_UNWEIGHTED_BETA = Fraction(1, 2)
UNWAUGPATH_LAMBDA_FACTOR = 8

# Rand-Arr-Matching
DEFAULT_P_NUMERATOR = 100
MAX_SAMPLING_RATE = Fraction(1, 2)

# Multipass
DEFAULT_EPS = Fraction(2, 5)
DEFAULT_GRANULARITY = Fraction(1, 8)
DEFAULT_K_MAX = 9
DEFAULT_ITERS = 50
DEFAULT_PAIR_CAP = 100000
DEFAULT_STALL_LIMIT = 1
STRICT_CONSTANTS_MAX_EPS = Fraction(1, 16)
RELAXED_MAX_EPS = Fraction(9, 10)

# Exit codes
EXIT_PARAMETER_ERROR = 2
EXIT_BUDGET_VIOLATION = 3
EXIT_ORACLE_OVERSIZE = 4

# Sides of a parametrization
LEFT = "L"
RIGHT = "R"
