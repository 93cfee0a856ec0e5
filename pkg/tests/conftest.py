from __future__ import annotations

import io
import random
from pathlib import Path

import pytest

from wagmine import pipeline
from wagmine.corpus import Document, load_corpus, tokenize

DATA = Path(__file__).parent / "data"

ECONOMY = [
    "The world economy has fully recovered from the crisis.",
    "The world economy has shrugged off the crisis completely.",
    "The world economy has gotten rid of the crisis already.",
]

# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def economy_doc() -> Document:
    return load_corpus(io.StringIO("\n".join(ECONOMY)), "economy")


@pytest.fixture(scope="session")
def economy_result(economy_doc):
    return pipeline.run(economy_doc)


def doc_from_lines(lines, label="test") -> Document:
    return Document([tokenize(line, k + 1) for k, line in enumerate(lines)], label)


OPENERS = ["can you", "could you", "please", "i want you to", "would you"]
VERBS = ["check", "find", "get me", "show me", "tell me", "look up", "give me"]
OBJECTS = ["the weather", "the forecast", "the weather report", "the temperature"]
PLACES = ["in Paris", "for Boston", "in the city", "near the airport", "at home"]
TIMES = ["tomorrow", "tonight", "today", "this weekend", "next week", "right now"]


def synthetic_corpus(n: int, seed: int = 0) -> str:
    """``n`` same-intent requests of 9-10 words each."""
    rng = random.Random(seed)
    lines = []
    while len(lines) < n:
        parts = [rng.choice(OPENERS), rng.choice(VERBS), rng.choice(OBJECTS), rng.choice(PLACES), rng.choice(TIMES)]
        words = " ".join(parts).split()
        if 9 <= len(words) <= 10:
            lines.append(" ".join(words))
    return "\n".join(lines) + "\n"
