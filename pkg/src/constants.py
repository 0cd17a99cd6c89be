# Shared constants used across the engine, analyzers and services.

# ── Status values ────────────────────────────────────────────────────────────
STATUS_OK = "ok"
STATUS_WARNING = "warning"
STATUS_ERROR = "error"

# ── Search / enumeration limits ──────────────────────────────────────────────
# Brute-force GF(2) oracle: maximum faces per level (2^n subsets enumerated)
ORACLE_MAX_FACES = 20
# Kernel enumeration (face-minimal search, orientable certificate candidates)
KERNEL_ENUMERATION_MAX_DIM = 20
# Orientability backtracking over ridges of incidence >= 4
ORIENTATION_NODE_BUDGET = 1_000_000

# ── Fields ───────────────────────────────────────────────────────────────────
DEFAULT_FIELD = "gf2"
DEFAULT_SCAN_FIELDS = ["gf2", "gf3", "q"]
# Primes at or above this use object-dtype numpy arrays (int64 products overflow)
INT64_SAFE_PRIME_LIMIT = 2 ** 31

# ── Files ────────────────────────────────────────────────────────────────────
CORPUS_PREFIX = "corpus:"
DEFAULT_CONFIG_FILE = "config.yaml"
DEFAULT_REPORT_DIR = "reports"
COMPLEX_FILE_SUFFIXES = (".json", ".txt", ".facets")

# ── CLI exit codes ───────────────────────────────────────────────────────────
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2

# ── Certificate kinds ────────────────────────────────────────────────────────
KIND_CHAR2 = "Char2Cycle"
KIND_ORIENTABLE = "OrientableCycle"
KIND_GRAPH = "GraphCycle"
