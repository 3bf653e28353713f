import numpy as np
import pytest

from paracontact.classes import random_F
from paracontact.gallery import LieExample, build, random_structure
from paracontact.lie import levi_civita

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=[3, 5], ids=["dim3", "dim5"])
def random_pair(request):
    s, _ = random_structure(request.param, 4242)
    return s, random_F(s, 7)


def example(a1, a2):
    alg, s, model = build(LieExample(1, (a1, a2)))
    return alg, s, levi_civita(alg, model)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
