"""Fixed question catalog and shared domain types.

Ten generic questions are supported.  Six of them ("b-questions") take a
free-text answer that is reduced to a single letter at a fixed index
position; two have fixed four-way choices; two take a number from a finite
range.  The catalog is immutable and identical for every user.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


class IndexSelector(Enum):
    """Which letter of a normalized answer is used as the true alternative."""

    FIRST = "first"
    SECOND = "second"
    THIRD = "third"
    LAST = "last"

    def pick(self, normalized: str) -> str:
        """Return the selected letter, or raise IndexError if too short."""
        offset = {"first": 0, "second": 1, "third": 2}.get(self.value)
        if offset is None:  # last
            if not normalized:
                raise IndexError("empty answer")
            return normalized[-1]
        return normalized[offset]

    def min_length(self) -> int:
        return {"first": 1, "second": 2, "third": 3, "last": 1}[self.value]


class CorpusClass(Enum):
    PERSON_NAME = "person"
    MOVIE_NAME = "movie"


@dataclass(frozen=True)
class BQuestion:
    """Free-text question; answer reduced to one letter at `index`."""

    corpus_class: CorpusClass
    index: IndexSelector


@dataclass(frozen=True)
class FixedChoice:
    """Question with predefined, inherently flat alternatives."""

    labels: tuple[str, str, str, str]


@dataclass(frozen=True)
class NumericRange:
    """Answer is an integer in [lo, hi]; width pads the rendering (None = free)."""

    lo: int
    hi: int
    width: Optional[int] = None

    def render(self, value: int) -> str:
        if self.width is None:
            return str(value)
        return str(value).zfill(self.width)


QuestionKind = Union[BQuestion, FixedChoice, NumericRange]


@dataclass(frozen=True)
class Question:
    id: int
    text: str
    kind: QuestionKind


_CATALOG: tuple[Question, ...] = (
    Question(1, "What is name of your first childhood friend?",
             BQuestion(CorpusClass.PERSON_NAME, IndexSelector.FIRST)),
    Question(2, "What is the name of the movie you first saw in a cinema hall?",
             BQuestion(CorpusClass.MOVIE_NAME, IndexSelector.LAST)),
    Question(3, "What is the name of the doctor you visited often in childhood?",
             BQuestion(CorpusClass.PERSON_NAME, IndexSelector.FIRST)),
    Question(4, "What is the name of your parents friend you find (or found) your close too?",
             BQuestion(CorpusClass.PERSON_NAME, IndexSelector.FIRST)),
    Question(5, "What was your (or your closest one's) birth time?",
             FixedChoice(("Morning", "Afternoon", "Evening", "Night"))),
    Question(6, "What is the last two digits of the phone number you call often?",
             NumericRange(0, 99, width=2)),
    Question(7, "What is the name of the person (except your parents) who gave you a special gift in childhood?",
             BQuestion(CorpusClass.PERSON_NAME, IndexSelector.FIRST)),
    Question(8, "Who is your favourite teacher?",
             BQuestion(CorpusClass.PERSON_NAME, IndexSelector.FIRST)),
    Question(9, "What was your best rank (or roll number) in school?",
             NumericRange(1, 99)),
    Question(10, "Marriage anniversary of your parents (or closest one) falls in which quarter of the year?",
             FixedChoice(("Jan-Mar", "Apr-Jun", "Jul-Sep", "Oct-Dec"))),
)


def catalog() -> tuple[Question, ...]:
    """All ten questions, in id order. Immutable; safe to share."""
    return _CATALOG


def get_question(question_id: int) -> Question:
    if not 1 <= question_id <= len(_CATALOG):
        raise KeyError(f"no question with id {question_id}")
    return _CATALOG[question_id - 1]


def option_letter(position: int) -> str:
    """Label of alternative `position` (0-based): 0->A, 1->B, ..."""
    return string.ascii_uppercase[position]


def option_letters(d: int) -> str:
    return string.ascii_uppercase[:d]


def validate_sequence(sequence: str, d: int, length: Optional[int] = None) -> None:
    """Raise ValueError unless `sequence` is a valid option sequence."""
    allowed = set(option_letters(d))
    if length is not None and len(sequence) != length:
        raise ValueError(f"sequence length {len(sequence)} != {length}")
    bad = set(sequence) - allowed
    if bad:
        raise ValueError(f"symbols {sorted(bad)} outside first {d} option letters")


def default_lambda(q: int) -> int:
    """Minimum pairwise difference used when none is configured: q - 3."""
    return q - 3


@dataclass(frozen=True)
class SystemParams:
    """Account-level scheme parameters.

    q questions are answered out of the fixed 10; each shows d alternatives;
    k sweetwords are stored per user, every pair at Hamming distance >= lam.
    """

    q: int = 6
    d: int = 4
    k: int = 20
    lam: int = field(default=-1)  # -1 means "derive from q"

    TOTAL_QUESTIONS = 10

    def __post_init__(self):
        if self.lam == -1:
            object.__setattr__(self, "lam", default_lambda(self.q))
        if not 6 <= self.q <= 8:
            raise ValueError("q must be between 6 and 8")
        if not 2 <= self.d <= 26:
            raise ValueError("d must be between 2 and 26")
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if not 0 < self.lam <= self.q:
            raise ValueError("lam must be in 1..q")


def catalog_as_json() -> str:
    """Catalog export for UI clients (structured text, UTF-8)."""
    items = []
    for q in _CATALOG:
        entry: dict = {"id": q.id, "text": q.text}
        if isinstance(q.kind, BQuestion):
            entry["kind"] = "b_question"
            entry["corpus_class"] = q.kind.corpus_class.value
            entry["index"] = q.kind.index.value
        elif isinstance(q.kind, FixedChoice):
            entry["kind"] = "fixed_choice"
            entry["labels"] = list(q.kind.labels)
        else:
            entry["kind"] = "numeric_range"
            entry["lo"] = q.kind.lo
            entry["hi"] = q.kind.hi
            entry["width"] = q.kind.width
        items.append(entry)
    return json.dumps({"questions": items}, ensure_ascii=False, indent=2)
