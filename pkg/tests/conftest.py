import json
import pathlib

import numpy as np
import pytest

from weil_lab.groups import SignedPermutation, conjugation_element, generate, parse_group

DATA = pathlib.Path(__file__).parent / "data"

# Order-24 group of the worked g = 6 example, and its Newton polygon.
EXAMPLE6_GENS = "(2 4)(3 5~)(5 3~)(2~ 4~), (1 3~ 4~)(2 6~ 5)(3 4 1~)(6 5~ 2~)"
EXAMPLE6_NEWTON = "0,0,0,1/3,1/3,1/3,2/3,2/3,2/3,1,1,1"
P3 = [1, -3, 0, 14, -21, -27, 120, -81, -189, 378, 0, -729, 729]
P8 = [1, -12, 75, -351, 1392, -4692, 13912, -37536, 89088, -179712, 307200, -393216, 262144]


def reference_rows():
    return json.loads((DATA / "reference_rows.json").read_text())


def group_from_row(row, g):
    gens = [SignedPermutation.parse(s, g) for s in row["generators_mod_iota"].split(", ")]
    return generate(gens + [conjugation_element(g)])


@pytest.fixture
def example6_group():
    return parse_group(EXAMPLE6_GENS, 6)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
