import pytest

from catdeform import data_path
from catdeform.algebra import QQ, CyclotomicField, PrimeField
from catdeform.category import load_category, load_group

F2, F3 = PrimeField(2), PrimeField(3)

BUNDLED = ["vec_z2_trivial", "vec_z2_omega", "vec_z3", "vec_klein", "rep_s3", "fibonacci"]


def bundled(name, field=None):
    return load_category(data_path(name), field=field)


def group(name):
    return load_group(data_path(f"group_{name}"))


@pytest.fixture(scope="session")
def cats():
    return {name: bundled(name) for name in BUNDLED}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
