import pathlib

import pytest

from jordanbounds import permgroups

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"

CORPUS_FILES = sorted(p.name for p in CORPUS.glob("*.grp"))


@pytest.fixture(scope="session")
def corpus_groups():
    """All bundled permutation groups, loaded once."""
    return {p.stem: permgroups.load_group(str(p)) for p in CORPUS.glob("*.grp")}


def corpus_path(name: str) -> str:
    return str(CORPUS / name)
