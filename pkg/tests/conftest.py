"""Shared fixtures: reference frequency tables and synthetic corpora."""

import pytest

from qhoney.catalog import CorpusClass, IndexSelector
from qhoney.grouping import (
    Corpus,
    FrequencyTable,
    GroupingParams,
    form_groups,
)

# Reference partitions for the two bundled datasets: every letter of a band
# carries the band's mean frequency.  Values reconstruct the published
# group means for person names (index: first letter) and movie titles
# (index: last letter).
POPULATION_BANDS = {
    11.9: "AMPRS",
    4.2: "BDGJKNV",
    1.57: "CHILT",
    0.34: "EFOQUWXYZ",
}
MOVIE_BANDS = {
    10.3: "AENRS",
    4.96: "DILMOTY",
    2.09: "GHKPU",
    0.29: "BCFJQVWXZ",
}

POPULATION_PARAMS = GroupingParams(45, 85, 0.1, 0.6)
MOVIE_PARAMS = GroupingParams(65, 85, 0.1, 0.6)


def means_table(bands: dict, index: IndexSelector) -> FrequencyTable:
    freq = {}
    for value, letters in bands.items():
        for c in letters:
            freq[c] = value
    assert len(freq) == 26
    return FrequencyTable(freq=freq, index=index)


@pytest.fixture(scope="session")
def population_table() -> FrequencyTable:
    return means_table(POPULATION_BANDS, IndexSelector.FIRST)


@pytest.fixture(scope="session")
def movie_table() -> FrequencyTable:
    return means_table(MOVIE_BANDS, IndexSelector.LAST)


@pytest.fixture(scope="session")
def person_groups(population_table):
    return form_groups(POPULATION_PARAMS, population_table)


@pytest.fixture(scope="session")
def movie_groups(movie_table):
    return form_groups(MOVIE_PARAMS, movie_table)


# Synthetic corpora with known banding: four bands of sizes 5/7/5/9.
UNIFORM_BAND_COUNTS = [
    ("AMPRS", 120),
    ("BDGJKNV", 40),
    ("CHILT", 15),
    ("EFOQUWXYZ", 3),
]

# Same shape but deliberately uneven inside the top band.
SKEWED_BAND_COUNTS = [
    ("A", 200), ("P", 150), ("R", 130), ("M", 110), ("S", 95),
    ("BDGJKNV", 40),
    ("CHILT", 15),
    ("EFOQUWXYZ", 3),
]


def corpus_from_counts(counts, corpus_class=CorpusClass.PERSON_NAME) -> Corpus:
    entries = []
    for letters, count in counts:
        for letter in letters:
            entries.extend([letter * 3] * count)
    return Corpus(tuple(entries), corpus_class)


@pytest.fixture(scope="session")
def uniform_corpus() -> Corpus:
    return corpus_from_counts(UNIFORM_BAND_COUNTS)


@pytest.fixture(scope="session")
def skewed_corpus() -> Corpus:
    return corpus_from_counts(SKEWED_BAND_COUNTS)
