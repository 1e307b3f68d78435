#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Configuration Module
-------------------
Configuration settings and constants for the fbm toolkit.
Includes variable names, certification depths, verification windows and exit codes.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

# Variable settings
POLY_VARIABLE = "x"           # variable of basis elements and of L in K[x]<E>
ORE_VARIABLE = "k"            # variable of the coefficient field Q(k)
POLY_SHIFT = "E"
ORE_SHIFT = "S"
POLY_VARIABLE_ALIASES = ("x", "n")
ORE_VARIABLE_ALIASES = ("k", "n")
ORE_SHIFT_ALIASES = ("S", "E")

# Certification settings
CERTIFICATE_DEPTH = 100       # prefix length used to validate structural predicates
COMPAT_SAMPLES = 20           # random (k0, x0) pairs checked by verify_compatibility
COMPAT_SAMPLE_BOUND = 50      # sampled k0 and x0 are drawn from 0..bound
IDENTITY_CHECK_VALUES = 10    # k values per section for polynomial identity checks
RANDOM_SEED = 1729

# Compatibility settings
MINIMIZE_A = True             # retry smaller A while the E-system stays solvable

# Pipeline settings
VERIFY_RANGE = (0, 30)
REDUCTION_MAX_RETRIES = 3
SHIFT_CACHE_SIZE = 8192

# Output settings
DEFAULT_ELEMENT_COUNT = 6
JSON_INDENT = 2

# Exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_NO_COMPATIBILITY = 3
EXIT_VERIFICATION_FAILED = 4

# Debug settings
ENABLE_DEBUG_LOGGING = False
SHOW_PROCESSING_TIME = False
SHOW_PROGRESS = False
LOG_FORMAT = "%(name)s: %(message)s"
