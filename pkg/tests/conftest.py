import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("suite", max_examples=1000, deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def g2():
    from mcgwords.corpus import load_surface
    return load_surface("g2")
