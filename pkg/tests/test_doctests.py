"""Run the worked examples embedded in the docstrings."""

import doctest
import importlib

import pytest

# harness is all orchestration, its docs carry no runnable examples
MODULES = {
    "stacksort.perms": True,
    "stacksort.machine": True,
    "stacksort.signatures": True,
    "stacksort.dyck": True,
    "stacksort.sequences": True,
    "stacksort.harness": False,
}


@pytest.mark.parametrize("name,expects_examples", MODULES.items(), ids=MODULES)
def test_docstring_examples(name, expects_examples):
    module = importlib.import_module(name)
    result = doctest.testmod(module, verbose=False)
    if expects_examples:
        assert result.attempted > 0, f"{name} has no examples to run"
    assert result.failed == 0
