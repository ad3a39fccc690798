import sys
from pathlib import Path

import pytest

from freqlex.ingest import CleanText
from freqlex.pipeline import RunConfig, run_pipeline
from freqlex.tokenizer import tokenize

REPO = Path(__file__).resolve().parent.parent
MINICORPUS = REPO / "data" / "minicorpus"
GOLDEN = REPO / "data" / "golden"
SCRIPTS = REPO / "scripts"


def toks(text, doc_id="t", accent_keep=frozenset()):
    """Tokenize a plain string (no annotations) for unit tests."""
    return tokenize(CleanText(text=text, annotations=(), provenance=doc_id),
                    accent_keep)


@pytest.fixture(scope="session")
def minicorpus_config(tmp_path_factory):
    out = tmp_path_factory.mktemp("minibuild")
    return RunConfig(manifest=MINICORPUS / "manifest.tsv",
                     lexicon=MINICORPUS / "lexicon.tsv",
                     out_dir=out)


@pytest.fixture(scope="session")
def minicorpus_build(minicorpus_config):
    return run_pipeline(minicorpus_config)


@pytest.fixture
def scripts_on_path(monkeypatch):
    monkeypatch.syspath_prepend(str(SCRIPTS))
