"""Regenerate the bundled reference data under data/.

Writes the two reference frequency tables (letters carrying their band's
mean frequency), the group tables derived from them, two small synthetic
corpora whose banding matches the reference partitions, and a demo service
config.  Everything is deterministic; run from the repo root:

    python scripts/make_reference_data.py
"""

import json
import random
from pathlib import Path

from qhoney.catalog import CorpusClass, IndexSelector
from qhoney.grouping import (
    FrequencyTable,
    GroupingParams,
    form_groups,
    ingest_corpus,
)

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

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

# Name stems used to synthesize corpora with prescribed letter statistics.
SYLLABLES = ["ra", "vi", "ta", "ne", "ki", "sha", "mo", "lu", "de", "pa"]


def means_table(bands: dict, index: IndexSelector) -> FrequencyTable:
    freq = {c: value for value, letters in bands.items() for c in letters}
    return FrequencyTable(freq=freq, index=index)


def synth_corpus(bands: dict, position: str, per_percent: int, rng: random.Random) -> list[str]:
    """Entries whose letter at `position` follows the band frequencies."""
    entries = []
    for value, letters in bands.items():
        count = max(1, round(value * per_percent))
        for letter in letters:
            for _ in range(count):
                stem = "".join(rng.choice(SYLLABLES) for _ in range(2))
                if position == "first":
                    entries.append(letter + stem[1:])
                else:
                    entries.append(stem.title() + letter.lower())
    rng.shuffle(entries)
    return entries


def main() -> None:
    DATA.mkdir(exist_ok=True)
    rng = random.Random(20240901)

    pop_table = means_table(POPULATION_BANDS, IndexSelector.FIRST)
    mov_table = means_table(MOVIE_BANDS, IndexSelector.LAST)
    (DATA / "population-means.json").write_text(pop_table.to_json() + "\n")
    (DATA / "movie-means.json").write_text(mov_table.to_json() + "\n")

    pop_groups = form_groups(POPULATION_PARAMS, pop_table)
    mov_groups = form_groups(MOVIE_PARAMS, mov_table)
    (DATA / "person-groups.json").write_text(pop_groups.to_json() + "\n")
    (DATA / "movie-groups.json").write_text(mov_groups.to_json() + "\n")

    person_lines = synth_corpus(POPULATION_BANDS, "first", 6, rng)
    movie_lines = synth_corpus(MOVIE_BANDS, "last", 6, rng)
    (DATA / "person_names.txt").write_text(
        "# synthetic person names; first-letter statistics follow the reference bands\n"
        + "\n".join(person_lines) + "\n"
    )
    (DATA / "movie_names.txt").write_text(
        "# synthetic movie titles; last-letter statistics follow the reference bands\n"
        + "\n".join(movie_lines) + "\n"
    )

    # the synthetic corpora must band the same way as the reference tables
    for lines, cls, idx, params, want in (
        ((DATA / "person_names.txt").read_text(), CorpusClass.PERSON_NAME,
         IndexSelector.FIRST, POPULATION_PARAMS, pop_groups),
        ((DATA / "movie_names.txt").read_text(), CorpusClass.MOVIE_NAME,
         IndexSelector.LAST, MOVIE_PARAMS, mov_groups),
    ):
        from qhoney.grouping import letter_frequencies

        corpus = ingest_corpus(lines, cls)
        got = form_groups(params, letter_frequencies(corpus, idx))
        assert [set(g.letters) for g in got.groups] == [set(g.letters) for g in want.groups], (
            f"synthetic {cls.value} corpus bands differently"
        )

    config = {
        "q": 6,
        "d": 4,
        "k": 20,
        "policy": "lock-account",
        "checker": {"host": "127.0.0.1", "port": 7601},
        "vault_dir": "var/vault",
        "group_tables": {
            "person": "data/person-groups.json",
            "movie": "data/movie-groups.json",
        },
        "indexes": {"person": "first", "movie": "last"},
        "rate_limit": {"attempts": None, "window_s": 60},
    }
    (DATA / "service-config.json").write_text(json.dumps(config, indent=2) + "\n")
    print(f"wrote reference data to {DATA}")


if __name__ == "__main__":
    main()
