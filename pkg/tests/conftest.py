import pytest

from transcheck.corpus import bundled_corpus_dir, bundled_properties_dir, load_corpus
from transcheck.dsl import load_spec_file
from transcheck.engine import Inspector
from transcheck.mock_backend import MockBackend, MockConfig
from transcheck.translate import QueryCache, Translator, TranslatorParams


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(bundled_corpus_dir())


@pytest.fixture(scope="session")
def corpus_by_id(corpus):
    return {u.id: u for u in corpus}


@pytest.fixture(scope="session")
def testing_specs():
    return [load_spec_file(p)
            for p in sorted(bundled_properties_dir("testing").glob("*.ksp"))]


@pytest.fixture(scope="session")
def search_specs():
    return [load_spec_file(p)
            for p in sorted(bundled_properties_dir("search").glob("*.ksp"))]


def make_translator(t_star=0.35, gain=1.0, seed=0, rig="prob", cache_dir=None):
    backend = MockBackend(MockConfig(t_star=t_star, gain=gain, seed=seed, rig=rig))
    return Translator(backend, QueryCache(cache_dir)), backend


def make_params(backend, beam=1, temperature=0.1, extra=()):
    return TranslatorParams(beam=beam, temperature=temperature,
                            backend_id=backend.identity, extra=extra)


@pytest.fixture()
def inspector():
    return Inspector()
