import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from braided_forge.braided_space import BasedSpace, braiding_from_diagonal  # noqa: E402
from braided_forge.corpus import corpus_paths, fixture_path  # noqa: E402
from braided_forge.exactla import FieldSpec, QQ  # noqa: E402
from braided_forge.specio import load_spec  # noqa: E402

GF7 = FieldSpec.prime(7)
GF2 = FieldSpec.prime(2)


def diagonal(q, field=QQ):
    return braiding_from_diagonal(q, BasedSpace(len(q), (), field))


def corpus_braidings():
    out = []
    for p in corpus_paths():
        spec = load_spec(p)
        out.append((p.stem, spec.braiding()))
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_braidings()


@pytest.fixture(scope="session")
def gf2_fixture():
    return load_spec(fixture_path("gf2_truncated_polynomial")).bialgebra()


@pytest.fixture(scope="session")
def square_zero_fixture():
    return load_spec(fixture_path("zero_product_gf2")).bialgebra()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
