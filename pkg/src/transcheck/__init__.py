"""transcheck: metamorphic k-safety testing for code-translation backends.

The package tests user-written properties of source-to-source
translators over a program corpus, and searches translator parameters
for the best translation of a single program.
"""

__version__ = "0.1.0"

from .corpus import ProgramUnit, TestCase, load_corpus
from .dsl import PropertySpec, check_spec, parse_spec, validate_search_spec
from .engine import Inspector, TestReport, run_property, run_suite
from .inspections import ToolchainConfig
from .mock_backend import MockBackend, MockConfig
from .search import mutate_params, search_translation
from .translate import QueryCache, Translator, TranslatorParams

__all__ = [
    "ProgramUnit", "TestCase", "load_corpus",
    "PropertySpec", "check_spec", "parse_spec", "validate_search_spec",
    "Inspector", "TestReport", "run_property", "run_suite",
    "ToolchainConfig", "MockBackend", "MockConfig",
    "mutate_params", "search_translation",
    "QueryCache", "Translator", "TranslatorParams",
    "__version__",
]
