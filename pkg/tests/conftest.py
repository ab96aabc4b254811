import random
import sys

import pytest

from twistcube.etale import CubicAlgebra
from twistcube.field import GF, QQ
from twistcube.verify import default_algebras

FIELDS = [QQ, GF(5), GF(7), GF(11)]


def all_algebras(fields=FIELDS):
    return [E for F in fields for E in default_algebras(F)]


def algebra_id(E):
    return repr(E).replace("CubicAlgebra", "").replace(" ", "")


ALGEBRAS = all_algebras()
SMALL_ALGEBRAS = all_algebras([QQ, GF(7)])


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def split_q():
    return CubicAlgebra.split(QQ)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
