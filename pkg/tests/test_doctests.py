"""Run every docstring example as a test."""

import doctest

import pytest

import pretzelslice
from pretzelslice import (cli, cyclotomic, factor, numth, obstruction, poly,
                          pretzel)

MODULES = [pretzelslice, poly, numth, cyclotomic, factor, pretzel,
           obstruction, cli]


@pytest.mark.parametrize("mod", MODULES, ids=lambda m: m.__name__)
def test_module_doctests(mod):
    result = doctest.testmod(mod, verbose=False)
    assert result.failed == 0
