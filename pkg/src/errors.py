#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Errors Module
-------------
Exception hierarchy shared by the library and the command line front end.
Every error knows the process exit code the CLI should return for it.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

from . import config


class FactorialBasisError(Exception):
    """Base class for every error raised by fbm"""

    exit_code = config.EXIT_FAILURE

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class AlgebraError(FactorialBasisError):
    """Invalid operation in the coefficient field"""


class PoleError(AlgebraError):
    """A rational function was evaluated at one of its poles"""

    def __init__(self, point, message=None):
        super().__init__(message or f"pole at {point}")
        self.point = point


class SingularSystemError(AlgebraError):
    """Linear system over Q(k) without a unique solution"""

    def __init__(self, rank, size):
        super().__init__(f"singular {size}x{size} system (rank {rank})")
        self.rank = rank
        self.size = size


class OperatorError(FactorialBasisError):
    """Invalid operation on shift operators or operator matrices"""


class BasisError(FactorialBasisError):
    """Malformed basis or failed structural certificate"""


class CompatibilityError(FactorialBasisError):
    """No compatibility table exists within the structural cap"""

    exit_code = config.EXIT_NO_COMPATIBILITY


class PipelineError(FactorialBasisError):
    """Failure inside the recurrence pipeline"""


class VerificationError(FactorialBasisError):
    """A verification report came back negative"""

    exit_code = config.EXIT_VERIFICATION_FAILED


class ParseError(FactorialBasisError):
    """Syntax error in an operator, rational function or basis expression"""

    exit_code = config.EXIT_PARSE_ERROR

    def __init__(self, message, text="", position=(0, 0)):
        super().__init__(message)
        self.text = text
        self.position = position

    def display(self):
        """Render the message with a caret line under the offending span"""
        if not self.text:
            return self.message
        start, end = self.position
        start = max(0, min(start, len(self.text)))
        width = max(1, end - start)
        return f"{self.text}\n{' ' * start}{'^' * width}\n{self.message} (column {start + 1})"
