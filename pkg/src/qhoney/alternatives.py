"""Building the d alternatives shown for each answered question.

Free-text answers are reduced to one letter; its decoys come from the
letter's own frequency band so all d options look equally plausible.
Fixed-choice questions use their predefined labels verbatim; numeric
questions draw decoys uniformly from the question's range.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .catalog import BQuestion, FixedChoice, IndexSelector, NumericRange, Question
from .errors import (
    AnswerTooShortError,
    GroupTooSmallError,
    InvalidAnswerError,
    LetterUngroupedError,
    OutOfRangeError,
    RangeTooSmallError,
    WrongKindError,
)
from .grouping import GroupTable
from .text import normalize


@dataclass(frozen=True)
class AnswerSubmission:
    question_id: int
    answer: str


@dataclass
class OptionTuple:
    """The d alternatives stored for one question.

    correct_position exists only while registering; it must never be
    persisted alongside the alternatives.
    """

    question_id: int
    alternatives: tuple[str, ...]
    correct_position: Optional[int] = None
    index: Optional[IndexSelector] = None  # set for letter tuples only

    def __post_init__(self):
        if len(set(self.alternatives)) != len(self.alternatives):
            raise ValueError("alternatives must be pairwise distinct")


def extract_letter(answer: str, index: IndexSelector) -> str:
    """Letter of the normalized answer at the selected position."""
    norm = normalize(answer)
    if len(norm) < index.min_length():
        raise AnswerTooShortError(
            f"answer normalizes to {len(norm)} letters; "
            f"position '{index.value}' needs {index.min_length()}"
        )
    return index.pick(norm)


def build_tuple_b(
    answer: str,
    question: Question,
    group_table: GroupTable,
    d: int,
    rng: random.Random,
    index: Optional[IndexSelector] = None,
) -> OptionTuple:
    """True letter plus d-1 uniform same-band decoys, in shuffled order."""
    if not isinstance(question.kind, BQuestion):
        raise WrongKindError(f"question {question.id} takes no free-text answer")
    idx = index if index is not None else question.kind.index
    letter = extract_letter(answer, idx)
    group = group_table.group_of(letter)
    if group is None:
        raise LetterUngroupedError(
            f"letter {letter} is outside every group", question_id=question.id
        )
    if len(group.letters) < d:
        raise GroupTooSmallError(
            f"group of {letter} has {len(group.letters)} letters, need {d}",
            question_id=question.id,
        )
    decoys = rng.sample([c for c in group.letters if c != letter], d - 1)
    alts = [letter] + decoys
    rng.shuffle(alts)
    return OptionTuple(
        question_id=question.id,
        alternatives=tuple(alts),
        correct_position=alts.index(letter),
        index=idx,
    )


def build_tuple_fixed(question: Question, answer: Optional[str] = None) -> OptionTuple:
    """Predefined labels in catalog order; optionally resolve the answer."""
    if not isinstance(question.kind, FixedChoice):
        raise WrongKindError(f"question {question.id} has no fixed choices")
    labels = question.kind.labels
    position = None
    if answer is not None:
        wanted = answer.strip().lower()
        matches = [i for i, lab in enumerate(labels) if lab.lower() == wanted]
        if not matches:
            raise InvalidAnswerError(
                f"answer must be one of {list(labels)}", question_id=question.id
            )
        position = matches[0]
    return OptionTuple(question.id, labels, correct_position=position)


def build_tuple_numeric(
    answer: int,
    lo: int,
    hi: int,
    d: int,
    rng: random.Random,
    width: Optional[int] = None,
    question_id: int = 0,
) -> OptionTuple:
    """True value plus d-1 distinct uniform decoys from [lo, hi], shuffled."""
    if not lo <= answer <= hi:
        raise OutOfRangeError(f"{answer} outside [{lo}, {hi}]")
    if hi - lo + 1 < d:
        raise RangeTooSmallError(f"range [{lo}, {hi}] has fewer than {d} values")
    pool = [v for v in range(lo, hi + 1) if v != answer]
    values = [answer] + rng.sample(pool, d - 1)
    rng.shuffle(values)
    kind = NumericRange(lo, hi, width)
    return OptionTuple(
        question_id=question_id,
        alternatives=tuple(kind.render(v) for v in values),
        correct_position=values.index(answer),
    )


def build_tuple(
    submission: AnswerSubmission,
    question: Question,
    d: int,
    rng: random.Random,
    group_table: Optional[GroupTable] = None,
    index: Optional[IndexSelector] = None,
) -> OptionTuple:
    """Dispatch on the question kind; raises with the question id attached."""
    kind = question.kind
    if isinstance(kind, BQuestion):
        if group_table is None:
            raise InvalidAnswerError(
                "no group table configured for this question",
                question_id=question.id,
            )
        return build_tuple_b(submission.answer, question, group_table, d, rng, index)
    if isinstance(kind, FixedChoice):
        if d != len(kind.labels):
            raise InvalidAnswerError(
                f"question {question.id} is only available when d={len(kind.labels)}",
                question_id=question.id,
            )
        return build_tuple_fixed(question, submission.answer)
    try:
        value = int(submission.answer.strip())
    except ValueError:
        raise InvalidAnswerError(
            f"answer to question {question.id} must be an integer",
            question_id=question.id,
        ) from None
    try:
        return build_tuple_numeric(
            value, kind.lo, kind.hi, d, rng, kind.width, question_id=question.id
        )
    except (OutOfRangeError, RangeTooSmallError) as exc:
        raise InvalidAnswerError(str(exc), question_id=question.id) from exc
