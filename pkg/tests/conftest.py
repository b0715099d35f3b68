import random
from fractions import Fraction

import pytest

from painleve_webs.algebra import Polynomial, VariableContext
from painleve_webs.surface import surface_lookup


@pytest.fixture(scope="session")
def pvi():
    return surface_lookup("pvi")


@pytest.fixture(scope="session")
def ctx4():
    return VariableContext(param_vars=("a1", "a2", "a3", "a4"))


def random_poly(rng: random.Random, ctx: VariableContext, nterms: int = 4, deg: int = 2, nvars: int | None = None,
                fractions: bool = True) -> Polynomial:
    nvars = nvars or ctx.nvars
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        exps = tuple(rng.randint(0, deg) if i < nvars and rng.random() < 0.6 else 0 for i in range(ctx.nvars))
        c = rng.randint(-6, 6)
        if fractions and rng.random() < 0.3:
            c = Fraction(c, rng.randint(1, 4))
        terms[exps] = terms.get(exps, 0) + c
    return Polynomial(ctx, terms)


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture()
def acceptance(request):
    """Call with (criterion, ok, detail) to add a line to the acceptance summary."""
    log = request.config.stash[ACCEPTANCE_KEY]

    def record(criterion: int, ok: bool, detail: str) -> None:
        log.append((criterion, ok, detail))

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = sorted(config.stash.get(ACCEPTANCE_KEY, []))
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in log:
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
