"""Letter-frequency analysis and banded grouping.

For a corpus of names (or titles) we measure how often each letter occurs
at a chosen index position, then partition the alphabet into frequency
bands.  Letters inside one band occur at close-enough rates that, shown
side by side, no alternative stands out -- the band is the decoy pool for
that letter.

The banding loop walks the frequencies top-down: each group spans
[alpha% of its peak, peak]; the search point for the next peak is
beta% of the previous base plus a small eps_p; a base within eps_b of
zero is snapped to zero, making the final group absorb every remaining
letter (including ones the corpus never produced).
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .catalog import CorpusClass, IndexSelector
from .errors import DegenerateTableError, EmptyCorpusError, NoViableIndexError
from .text import normalize

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class Corpus:
    entries: tuple[str, ...]
    corpus_class: CorpusClass

    def __post_init__(self):
        if not self.entries:
            raise EmptyCorpusError("corpus has no usable entries")


def ingest_corpus(lines: str, corpus_class: CorpusClass) -> Corpus:
    """Parse one-entry-per-line text; '#' lines are comments.

    Entries are normalized to their A-Z skeleton; lines that normalize to
    nothing are dropped.
    """
    entries = []
    for raw in lines.splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        norm = normalize(stripped)
        if norm:
            entries.append(norm)
    if not entries:
        raise EmptyCorpusError("corpus has no usable entries")
    return Corpus(tuple(entries), corpus_class)


def load_corpus(path: str, corpus_class: CorpusClass) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        return ingest_corpus(fh.read(), corpus_class)


@dataclass
class FrequencyTable:
    """Per-letter percentage of entries whose selected letter is that letter.

    Tables computed by `letter_frequencies` always cover all 26 letters and
    sum to 100 (within 1e-9).  Hand-built tables (e.g. reconstructed from
    rounded group means) may not; the banding code only requires
    non-negative values.
    """

    freq: dict[str, float]
    index: IndexSelector
    n_used: int = 0
    n_skipped: int = 0

    def __post_init__(self):
        unknown = set(self.freq) - set(ALPHABET)
        if unknown:
            raise ValueError(f"non A-Z keys: {sorted(unknown)}")
        if any(v < 0 for v in self.freq.values()):
            raise ValueError("frequencies must be non-negative")
        self.freq = {c: float(self.freq.get(c, 0.0)) for c in ALPHABET}

    def positive_values(self) -> list[float]:
        return [v for v in self.freq.values() if v > 0]

    def check_normalized(self, tol: float = 1e-9) -> bool:
        return math.isclose(sum(self.freq.values()), 100.0, abs_tol=tol)

    def to_json(self) -> str:
        return json.dumps(
            {
                "index": self.index.value,
                "n_used": self.n_used,
                "n_skipped": self.n_skipped,
                "freq": {c: self.freq[c] for c in ALPHABET},
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "FrequencyTable":
        obj = json.loads(text)
        freq = {c: float(obj["freq"].get(c, 0.0)) for c in ALPHABET}
        return cls(
            freq=freq,
            index=IndexSelector(obj["index"]),
            n_used=int(obj.get("n_used", 0)),
            n_skipped=int(obj.get("n_skipped", 0)),
        )


def letter_frequencies(corpus: Corpus, index: IndexSelector) -> FrequencyTable:
    """Count the selected letter across all entries long enough for `index`."""
    counts = {c: 0 for c in ALPHABET}
    used = skipped = 0
    need = index.min_length()
    for entry in corpus.entries:
        if len(entry) < need:
            skipped += 1
            continue
        counts[index.pick(entry)] += 1
        used += 1
    if used == 0:
        raise EmptyCorpusError(f"every entry too short for index '{index.value}'")
    freq = {c: 100.0 * counts[c] / used for c in ALPHABET}
    return FrequencyTable(freq=freq, index=index, n_used=used, n_skipped=skipped)


@dataclass(frozen=True)
class GroupingParams:
    alpha: float  # group floor as % of its peak
    beta: float   # next search point as % of the previous floor
    eps_p: float  # small bump added to the search point
    eps_b: float  # floor-to-zero snap threshold

    def __post_init__(self):
        if not 0 < self.alpha <= 100 or not 0 < self.beta <= 100:
            raise ValueError("alpha and beta must be in (0, 100]")
        if not 0 < self.eps_p < 1 or not 0 < self.eps_b < 1:
            raise ValueError("eps_p and eps_b must be in (0, 1)")


# Defaults that band the bundled reference tables cleanly.
PERSON_PARAMS = GroupingParams(alpha=45, beta=85, eps_p=0.1, eps_b=0.6)
MOVIE_PARAMS = GroupingParams(alpha=65, beta=85, eps_p=0.1, eps_b=0.6)


@dataclass(frozen=True)
class Group:
    g_id: int
    letters: tuple[str, ...]  # sorted
    mean: float
    variance: float


@dataclass
class GroupTable:
    groups: list[Group]
    outliers: tuple[str, ...]
    params: GroupingParams

    def group_of(self, letter: str) -> Optional[Group]:
        for g in self.groups:
            if letter in g.letters:
                return g
        return None

    def letter_sets(self) -> list[set[str]]:
        return [set(g.letters) for g in self.groups]

    def to_json(self) -> str:
        return json.dumps(
            {
                "params": {
                    "alpha": self.params.alpha,
                    "beta": self.params.beta,
                    "eps_p": self.params.eps_p,
                    "eps_b": self.params.eps_b,
                },
                "groups": [
                    {
                        "g_id": g.g_id,
                        "elements": list(g.letters),
                        "mean": g.mean,
                        "variance": g.variance,
                    }
                    for g in self.groups
                ],
                "outliers": list(self.outliers),
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "GroupTable":
        obj = json.loads(text)
        p = obj["params"]
        return cls(
            groups=[
                Group(
                    g_id=int(g["g_id"]),
                    letters=tuple(g["elements"]),
                    mean=float(g["mean"]),
                    variance=float(g["variance"]),
                )
                for g in obj["groups"]
            ],
            outliers=tuple(obj.get("outliers", [])),
            params=GroupingParams(p["alpha"], p["beta"], p["eps_p"], p["eps_b"]),
        )


def next_highest_freq(curr: float, table: FrequencyTable) -> Optional[float]:
    """Largest positive frequency strictly below `curr` (inf = no ceiling)."""
    below = [v for v in table.freq.values() if 0 < v < curr]
    return max(below) if below else None


def elements_in_band(peak: float, base: float, table: FrequencyTable) -> set[str]:
    """Letters whose frequency falls in [base, peak], inclusive on both ends.

    With base > 0 zero-frequency letters fall outside the band; with
    base = 0 they are swept into it.
    """
    if not 0 <= base <= peak:
        raise ValueError("need 0 <= base <= peak")
    return {c for c, v in table.freq.items() if base <= v <= peak}


def _stats(values: list[float]) -> tuple[float, float]:
    return statistics.fmean(values), statistics.pvariance(values)


def form_groups(params: GroupingParams, table: FrequencyTable) -> GroupTable:
    """Partition the alphabet into descending frequency bands.

    Letters whose frequency lands in the gap between one group's floor and
    the next search point are left out of every band and reported as
    outliers.
    """
    if not table.positive_values():
        raise DegenerateTableError("no letter has positive frequency")

    groups: list[Group] = []
    assigned: set[str] = set()
    curr = math.inf
    g_id = 1
    while True:
        peak = next_highest_freq(curr, table)
        if peak is None:
            break
        base = params.alpha / 100.0 * peak
        if base - params.eps_b <= 0:
            base = 0.0
        members = elements_in_band(peak, base, table) - assigned
        values = [table.freq[c] for c in members]
        mean, var = _stats(values)
        groups.append(Group(g_id, tuple(sorted(members)), mean, var))
        assigned |= members
        if base == 0.0:
            break
        # Cap at base: keeps bands disjoint even when beta is close to 100.
        curr = min(params.beta / 100.0 * base + params.eps_p, base)
        g_id += 1

    outliers = {c for c, v in table.freq.items() if v > 0} - assigned
    return GroupTable(groups=groups, outliers=tuple(sorted(outliers)), params=params)


def group_stats(table: GroupTable) -> list[tuple[int, int, float, float]]:
    """(g_id, size, mean, variance) per group, in band order."""
    return [(g.g_id, len(g.letters), g.mean, g.variance) for g in table.groups]


@dataclass
class IndexScore:
    index: IndexSelector
    viable: bool
    group_sizes: list[int]
    n_outliers: int
    total_variance: float
    reason: Optional[str] = None


def select_index_position(
    corpus: Corpus,
    d: int,
    params: GroupingParams,
    candidates: Iterable[IndexSelector] = (
        IndexSelector.FIRST,
        IndexSelector.SECOND,
        IndexSelector.THIRD,
        IndexSelector.LAST,
    ),
) -> tuple[IndexSelector, list[IndexScore]]:
    """Pick the index position whose bands work best as decoy pools.

    A candidate is viable when every band holds at least d letters; among
    viable ones prefer fewer outliers, then lower summed within-band
    variance, then the earlier position.
    """
    scores: list[IndexScore] = []
    for idx in candidates:
        try:
            table = letter_frequencies(corpus, idx)
            gt = form_groups(params, table)
        except (EmptyCorpusError, DegenerateTableError) as exc:
            scores.append(IndexScore(idx, False, [], 0, math.inf, reason=str(exc)))
            continue
        sizes = [len(g.letters) for g in gt.groups]
        viable = all(s >= d for s in sizes)
        reason = None if viable else f"group smaller than d={d}"
        scores.append(
            IndexScore(idx, viable, sizes, len(gt.outliers),
                       sum(g.variance for g in gt.groups), reason=reason)
        )

    viable = [s for s in scores if s.viable]
    if not viable:
        raise NoViableIndexError(
            "no index position yields groups of size >= d; "
            + "; ".join(f"{s.index.value}: {s.reason}" for s in scores)
        )
    order = list(candidates)
    best = min(viable, key=lambda s: (s.n_outliers, s.total_variance, order.index(s.index)))
    return best.index, scores
