# Hyperparameters of the measure. alpha sits just below the universal 2T = 0.5
DEFAULT_ALPHA = 0.49
DEFAULT_GAMMA = 1.0
DEFAULT_A = 1.0
DEFAULT_T = 0.25
DEFAULT_SEED = 0

# Inference
DEFAULT_THRESHOLD = 0.5
DEFAULT_ZETA = 0.05

# Credible balls
DEFAULT_MC_SAMPLES = 10_000
MIN_MC_SAMPLES = 100
DEFAULT_BALL_M = 1.0
DEFAULT_BALL_L = 2.0
BALL_METHODS = ("quantile", "plug_in")

# Rows drawn per seeded block by the sampler. Changing it changes every stream.
SAMPLE_BLOCK_ROWS = 1024

# Signal template of the coverage study: five large, five intermediate, then theta_11
COVERAGE_STUDY_LARGE = 7.0
COVERAGE_STUDY_INTERMEDIATE = 2.0
COVERAGE_STUDY_BLOCK = 5
COVERAGE_STUDY_TARGET_INDEX = 10
COVERAGE_STUDY_N = 500

DEFAULT_REPLICATIONS = 500

ERROR_LAWS = ("gaussian", "uniform", "rademacher")
TRUTH_PATTERNS = ("coverage_study", "sparse_random", "explicit")

# Column order of the plot-ready coverage table
CURVE_COLUMNS = ("theta11", "coverage", "se", "mean_length")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_NUMERIC = 4

# Hyperparameters of the coverage-study preset. Gaussian errors allow T = 1/2;
# alpha + gamma = 1 makes tau equal sigma, and a smaller a lowers the detection threshold
COVERAGE_STUDY_T = 0.5
COVERAGE_STUDY_ALPHA = 0.9
COVERAGE_STUDY_GAMMA = 0.1
COVERAGE_STUDY_A = 0.25
