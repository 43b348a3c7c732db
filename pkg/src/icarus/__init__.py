"""icarus: deterministic scenario-prompt engine for the ICARUS
space-cyberattack matrix.

Counts, enumerates, ranks, filters, and samples prompts drawn from a
categories-by-variables grid; ships a 42-scenario corpus and a
critical-thinking question battery; tracks workshop sessions with coverage;
and exposes everything over a CLI and a local HTTP API.
"""

from .corpus import Era, Locale, Scenario, bucket_counts, load_corpus, query
from .errors import IcarusError
from .matrix import Cell, Category, Matrix, load_matrix
from .prompts import (
    Prompt,
    PromptSpace,
    count_prompts,
    enumerate_prompts,
    parse_prompt,
    sample,
)
from .rules import (
    Rule,
    RuleSet,
    admissible,
    count_admissible,
    load_rules,
    parse_rules,
    render_rules,
)
from .session import (
    CoverageReport,
    Session,
    SessionEvent,
    SessionStore,
    coverage,
    session_replay,
    suggest_next,
)
from .worksheet import build_worksheet, load_battery, render_worksheet
from .workspace import Workspace

__version__ = "0.1.0"

__all__ = [
    "Cell", "Category", "Matrix", "load_matrix",
    "Prompt", "PromptSpace", "count_prompts", "enumerate_prompts",
    "parse_prompt", "sample",
    "Rule", "RuleSet", "parse_rules", "load_rules", "render_rules",
    "admissible", "count_admissible",
    "Era", "Locale", "Scenario", "load_corpus", "query", "bucket_counts",
    "build_worksheet", "load_battery", "render_worksheet",
    "Session", "SessionEvent", "SessionStore", "CoverageReport",
    "coverage", "session_replay", "suggest_next",
    "Workspace", "IcarusError",
    "__version__",
]
