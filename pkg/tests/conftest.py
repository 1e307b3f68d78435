#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Shared pytest fixtures: builtin bases, the Apéry bases and their operator matrices.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

import pytest

from src.parser import parse_basis
from src.pipeline import sectioned_matrices
from tests import fixtures


@pytest.fixture(scope="session")
def binomial():
    return parse_basis(fixtures.BINOMIAL)


@pytest.fixture(scope="session")
def binomial_squared():
    return parse_basis(fixtures.BINOMIAL_SQUARED)


@pytest.fixture(scope="session")
def binomial_cubed():
    return parse_basis(fixtures.BINOMIAL_CUBED)


@pytest.fixture(scope="session")
def apery2_basis():
    return parse_basis(fixtures.APERY2_BASIS)


@pytest.fixture(scope="session")
def apery3_basis():
    return parse_basis(fixtures.APERY3_BASIS)


@pytest.fixture(scope="session")
def binomial_matrices(binomial):
    return sectioned_matrices(binomial)


@pytest.fixture(scope="session")
def squared_matrices(binomial_squared):
    return sectioned_matrices(binomial_squared)


@pytest.fixture(scope="session")
def apery2_matrices(apery2_basis):
    return sectioned_matrices(apery2_basis)


@pytest.fixture(scope="session")
def apery3_matrices(apery3_basis):
    return sectioned_matrices(apery3_basis)
