import os

BASE_DIR = os.path.dirname(os.path.abspath(__file__))

# Package
PACKAGE_NAME = "idcodes"
VERSION = "0.1.0"

# Irreducible polynomials for the non-prime fields, lowest degree coefficient first
IRREDUCIBLE_POLYNOMIALS = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (1, 0, 1),  # x^2 + 1
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
}

# Constructions
DIAGONAL_ORDER = 4
LARGE_CUBE_Q = 256

# Exit codes
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INPUT_ERROR = 3
EXIT_BUDGET = 4
EXIT_PRECONDITION = 5
EXIT_INTERNAL = 6

# File Paths
SPORADIC_CODES_PATH = os.path.join(BASE_DIR, "assets", "json", "sporadic_codes.json")
TEMPLATE_DIR = os.path.join(BASE_DIR, "assets", "templates")
ANALYSIS_TEMPLATE = "analysis.md.j2"
BOUNDS_TEMPLATE = "bounds.md.j2"
HTML_TEMPLATE = "report.html"
