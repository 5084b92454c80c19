from functools import lru_cache

import pytest
from hypothesis import settings

from tensorrest import examples as ex
from tensorrest.sconstr import build_s_construction

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

SEMILATTICES = ("chain1", "chain2", "chain3", "diamond", "bool0", "bool1", "bool2")
BASES = SEMILATTICES + ("finset1", "finset2", "Z2", "Z3")


@lru_cache(maxsize=None)
def base(name):
    if name in SEMILATTICES:
        return ex.from_semilattice(ex.named_semilattice(name))
    if name.startswith("finset"):
        return ex.finset_monoidal(int(name[6:]))
    if name.startswith("Z"):
        return ex.cyclic_group_category(int(name[1:]))
    raise KeyError(name)


@lru_cache(maxsize=None)
def scon(name):
    return build_s_construction(*base(name))


@pytest.fixture(params=BASES)
def base_name(request):
    return request.param


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
