import pytest
from hypothesis import settings

from superquot.atlas import build_projective_superspace, pi_action_field
from superquot.homological import OddDerivation
from superquot.superalgebra import Ring

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def p12():
    X = build_projective_superspace(1, 2)
    return X, pi_action_field(X)


@pytest.fixture(scope="session")
def p12_chart(p12):
    """Chart 0 of ``P^{1|2}`` with its odd field ``v``: ring generators ``u1 | e0, e1``."""
    X, v = p12
    return v.at(0)


@pytest.fixture(scope="session")
def theta_dz():
    R = Ring(("z",), ("t",))
    return OddDerivation(R, {"z": R.gen("t")})


ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: result, wall time and its limit."""
    def record(n: int, title: str, ok: bool, seconds: float, limit: float, detail: str = "") -> bool:
        passed = bool(ok) and seconds <= limit
        line = f"criterion {n:>2}  {'PASS' if passed else 'FAIL'}  {title}  ({seconds:.2f} s, limit {limit:g} s)"
        ACCEPTANCE[n] = line + (f"  {detail}" if detail else "")
        print(ACCEPTANCE[n])
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
