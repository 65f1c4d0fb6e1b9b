import json
from fractions import Fraction

import pytest

from lipnorm.lipfun import LipFunction
from lipnorm.metric import line_space


@pytest.fixture
def gap_space():
    return line_space(['0', '1.5', '2.5', '4'])


@pytest.fixture
def johnson_space():
    return line_space(['0', '1.5', '2', '4'])


@pytest.fixture
def gap_function(gap_space):
    return LipFunction.of(gap_space, ['0.5', '-0.25', '0.25', '-0.5'])


@pytest.fixture
def johnson_function(johnson_space):
    return LipFunction.of(johnson_space, ['0.5', '-0.25', '0', '-0.5'])


@pytest.fixture
def two_points():
    def build(d):
        return line_space(['0', str(Fraction(d))])
    return build


@pytest.fixture
def write_doc(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return write
