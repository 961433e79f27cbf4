"""
Tunables and fixed names shared by the library and the command line.
"""

# region ---[ Resolution ]---

# Termination is guaranteed; the guard only catches runaway input.
DEFAULT_DEPTH_LIMIT = 64

# Integer shears x -> x + t*y tried when making a pair y-general for resultants.
DEFAULT_SHEAR_LIMIT = 32

# Slope at which the end of a terminal (cross) trunk is drawn.
DEFAULT_TERMINAL_END_SLOPE = 1

# endregion ---[ Resolution ]---
# region ---[ Element names ]---

DEFAULT_R_NAME = "x"
DEFAULT_FIRST_L_NAME = "y"
DEFAULT_CURVETTA_NAMES: list[str] = ["z", "w", "v", "u", "t", "s", "r", "q", "p"]
DEFAULT_CURVETTA_FALLBACK_PREFIX = "l"
DEFAULT_BRANCH_PREFIX = "C"
DEFAULT_DIVISOR_PREFIX = "R"
DEFAULT_CURVE_COLUMN = "C"

# endregion ---[ Element names ]---
# region ---[ Documents ]---

DEFAULT_SCHEMA = "fantree/1"
DEFAULT_JSON_INDENT = 2

# endregion ---[ Documents ]---
# region ---[ Default CLI Options ]---

DEFAULT_FORMAT = "json"
DEFAULT_FORMAT_CHOICES = ["json", "text"]
DEFAULT_MAX = "1"
DEFAULT_THREADS = 1
DEFAULT_REDUCED = "auto"
DEFAULT_REDUCED_CHOICES = ["auto", "yes", "no"]
DEFAULT_ORACLE_CHOICES = ["howald", "blowup", "intersection"]
DEFAULT_VERBOSE = 0

# endregion ---[ Default CLI Options ]---
