"""Sweetword generation: k option sequences kept pairwise far apart.

Decoy sequences are drawn by rejection sampling: a uniform random sequence
is accepted only if it differs from every sequence already in the list in
at least `lam` positions.  Keeping sweetwords distant makes it unlikely
that a typo in the true sequence lands exactly on a decoy.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .catalog import option_letters
from .errors import AttemptsExhaustedError, LengthMismatchError

DEFAULT_MAX_ATTEMPTS = 10_000


def lambda_distance(s1: str, s2: str) -> int:
    """Number of positions where the two equal-length strings differ."""
    if len(s1) != len(s2):
        raise LengthMismatchError(f"lengths differ: {len(s1)} vs {len(s2)}")
    return sum(a != b for a, b in zip(s1, s2))


def random_sequence(length: int, d: int, rng: random.Random) -> str:
    """Uniform random option sequence over the first d option letters."""
    if length < 1:
        raise ValueError("length must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    letters = option_letters(d)
    return "".join(rng.choice(letters) for _ in range(length))


@dataclass
class SweetwordList:
    """k sequences in storage order; exactly one is the real credential.

    true_index is kept only until it is handed to the honeychecker.
    """

    sequences: list[str]
    true_index: int
    lam: int

    @property
    def k(self) -> int:
        return len(self.sequences)

    @property
    def true_sequence(self) -> str:
        return self.sequences[self.true_index]

    def honeywords(self) -> list[str]:
        return [s for i, s in enumerate(self.sequences) if i != self.true_index]


def generate_sweetwords(
    k: int,
    lam: int,
    act_ops: str,
    length: int,
    rng: random.Random,
    d: int = 4,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> SweetwordList:
    """Fill the list up to k sequences, then shuffle so the real one's
    position carries no information.

    Raises AttemptsExhaustedError when a single acceptance needs more than
    max_attempts proposals -- the (k, lam, length, d) combination is too
    tight for rejection sampling.
    """
    if len(act_ops) != length:
        raise LengthMismatchError(f"act_ops length {len(act_ops)} != {length}")
    if k < 2:
        raise ValueError("k must be >= 2")
    if not 1 <= lam <= length:
        raise ValueError("lam must be in 1..length")

    sequences = [act_ops]
    while len(sequences) < k:
        for _ in range(max_attempts):
            candidate = random_sequence(length, d, rng)
            if all(lambda_distance(candidate, s) >= lam for s in sequences):
                sequences.append(candidate)
                break
        else:
            raise AttemptsExhaustedError(
                f"no acceptable sequence after {max_attempts} proposals "
                f"(k={k}, lam={lam}, length={length}, d={d})"
            )
    rng.shuffle(sequences)
    return SweetwordList(sequences, sequences.index(act_ops), lam)


def typo_safety_bound(alphabet_size: int, lam: int) -> Fraction:
    """Worst-case chance that mistyping one sequence produces another one
    at distance lam: (1/(alphabet_size-1))**lam, exact.
    """
    if alphabet_size < 2:
        raise ValueError("alphabet_size must be >= 2")
    if lam < 0:
        raise ValueError("lam must be >= 0")
    return Fraction(1, (alphabet_size - 1) ** lam)


def feasibility_advice(k: int, lam: int, length: int, d: int) -> float:
    """Probability that a uniform sequence is >= lam-different from one
    fixed sequence; the rejection loop stays cheap while k / this is small.
    """
    if lam <= 0:
        return 1.0
    if lam > length:
        return 0.0
    total = d ** length
    good = sum(math.comb(length, j) * (d - 1) ** j for j in range(lam, length + 1))
    return good / total
