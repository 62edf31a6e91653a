"""Security and storage analysis harness.

Closed forms are computed exactly (as fractions where the inputs are
rational) and each probabilistic one has a Monte Carlo twin so the model
behind the formula can be checked empirically.  The attacker is always
assumed to hold the plaintext sweetword list: hash inversion is somebody
else's problem, identification and DoS advantage are ours.
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .alternatives import build_tuple_b
from .catalog import IndexSelector, get_question, option_letters
from .errors import InfeasibleParamsError, NoDigitTailError, RangeTooSmallError
from .grouping import Corpus, GroupTable, letter_frequencies
from .sweetwords import SweetwordList, generate_sweetwords, random_sequence, typo_safety_bound
from .vault import storage_cost_f1


# -- closed forms -------------------------------------------------------


def dos_probability(k: int, d: int, q: int) -> Fraction:
    """Chance that an adversary who knows the true option sequence hits a
    stored decoy with one deliberate guess: (k-1)/(d^q - 1), exact.
    """
    if k < 1 or d < 2 or q < 1:
        raise InfeasibleParamsError("need k >= 1, d >= 2, q >= 1")
    n = d**q
    if n <= k:
        raise InfeasibleParamsError(f"sequence space {n} must exceed k={k}")
    return Fraction(k - 1, n - 1)


def planted_appearance_prob(N: int, m: int, k: int) -> Fraction:
    """Probability that a password planted in m of N accounts shows up in a
    target account's sweetword list when honeywords are sampled, with
    replacement, from the user population: 1 - ((N-m)/N)^k.
    """
    if not 0 <= m < N:
        raise ValueError("need 0 <= m < N")
    if k < 0:
        raise ValueError("k must be >= 0")
    return 1 - Fraction(N - m, N) ** k


def popular_absence_prob(popular_fraction: float | Fraction, k: int) -> Fraction:
    """Probability that none of the k-1 sampled honeywords is a popular
    password, when `popular_fraction` of users pick popular ones:
    (1 - popular_fraction)^(k-1).
    """
    f = Fraction(popular_fraction)
    if not 0 <= f <= 1:
        raise ValueError("popular_fraction must be in [0, 1]")
    if k < 1:
        raise ValueError("k must be >= 1")
    return (1 - f) ** (k - 1)


def storage_qba(q: int, d: int) -> int:
    """Stored-string units for a conventional per-user questionnaire store:
    q questions + q*d alternatives + username + valid sequence.
    """
    if q < 1 or d < 2:
        raise ValueError("need q >= 1 and d >= 2")
    return q + q * d + 2


def storage_pqba() -> int:
    """Units for one F1 row here: username + question numbers + tuple string."""
    return storage_cost_f1(6, 4)


def storage_saved(q: int, d: int) -> Fraction:
    """Percent of storage saved relative to the conventional layout."""
    qba = storage_qba(q, d)
    return Fraction(qba - storage_pqba(), qba) * 100


# -- simulation plumbing ------------------------------------------------


def clopper_pearson(successes: int, trials: int, conf: float = 0.95) -> tuple[float, float]:
    """Exact binomial confidence interval."""
    from scipy.stats import beta

    alpha = 1.0 - conf
    lo = 0.0 if successes == 0 else float(beta.ppf(alpha / 2, successes, trials - successes + 1))
    hi = 1.0 if successes == trials else float(beta.ppf(1 - alpha / 2, successes + 1, trials - successes))
    return lo, hi


@dataclass
class SimulationReport:
    trials: int
    successes: int
    estimate: float
    ci95: tuple[float, float]
    seed: Optional[int]
    baseline: Optional[float] = None
    extras: dict = field(default_factory=dict)

    @classmethod
    def from_counts(
        cls,
        successes: int,
        trials: int,
        seed: Optional[int],
        baseline: Optional[float] = None,
        **extras,
    ) -> "SimulationReport":
        return cls(
            trials=trials,
            successes=successes,
            estimate=successes / trials,
            ci95=clopper_pearson(successes, trials),
            seed=seed,
            baseline=baseline,
            extras=extras,
        )

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "estimate": self.estimate,
            "ci95": list(self.ci95),
            "seed": self.seed,
            "baseline": self.baseline,
            "extras": self.extras,
        }


class GuessStrategy(Enum):
    UNIFORM = "uniform"
    FREQUENCY_WEIGHTED = "frequency"


@dataclass(frozen=True)
class AttackerModel:
    """What the adversary knows (beyond the plaintext sweetword list, which
    is always assumed) and how it guesses."""

    strategy: GuessStrategy = GuessStrategy.UNIFORM
    knows_group_table: bool = True
    knows_frequencies: bool = True
    knows_password: bool = False


class Scheme(Enum):
    PROPOSED_TUPLES = "proposed-tuples"
    PROPOSED_SWEETWORDS = "proposed-sweetwords"
    CHAFFING_DIGITS = "chaffing-digits"


# -- baseline generator --------------------------------------------------


def chaffing_tweak_digits(password: str, k: int, rng: random.Random) -> list[str]:
    """Decoys that replace the trailing digits of the true password, the
    classic weak baseline: the k sweetwords differ only in the digit tail.
    """
    match = re.search(r"([0-9]+)$", password)
    if match is None:
        raise NoDigitTailError("password has no trailing digits to tweak")
    tail = match.group(1)
    prefix = password[: match.start(1)]
    width = len(tail)
    space = 10**width
    if k - 1 > space - 1:
        raise RangeTooSmallError(
            f"cannot pick {k - 1} distinct tweaks from {space - 1} candidates"
        )
    others = [v for v in range(space) if str(v).zfill(width) != tail]
    picks = rng.sample(others, k - 1)
    words = [prefix + str(v).zfill(width) for v in picks] + [password]
    rng.shuffle(words)
    return words


# -- Monte Carlo twins ----------------------------------------------------


def simulate_peer_sampling(
    N: int,
    m: int,
    k: int,
    population: Sequence[str],
    trials: int,
    seed: Optional[int] = None,
    with_replacement: bool = True,
) -> SimulationReport:
    """Honeywords-from-other-users baseline.

    An adversary opens m accounts sharing one planted password, then
    registers a target account; per trial the system samples k-1 honeywords
    from the other users' passwords.  The report's estimate is the rate at
    which the planted password lands in the target's list.  Extras carry
    the duplicate statistics (a with-replacement list can repeat an entry,
    shrinking the effective list to k - khat) and an `eq_model_estimate`
    from k draws over all N accounts, the model behind the closed form.
    """
    if len(population) < N:
        raise ValueError("population must provide at least N passwords")
    if not 0 <= m < N:
        raise ValueError("need 0 <= m < N")
    planted = "\x00planted\x00"  # cannot collide with real passwords
    own = population[0]
    organic = list(population[1 : N - m])
    others = [planted] * m + organic  # every account except the target
    rng = random.Random(seed)

    hits = eq_hits = 0
    khat_counter: Counter[int] = Counter()
    crack_sum = 0.0
    for _ in range(trials):
        if with_replacement:
            draws = rng.choices(others, k=k - 1)
        else:
            draws = rng.sample(others, k - 1)
        if planted in draws:
            hits += 1
        sweetwords = [own] + draws
        khat = k - len(set(sweetwords))
        khat_counter[khat] += 1
        crack_sum += 1.0 / (k - khat)
        # Closed-form model: k independent draws across all N accounts.
        if any(rng.randrange(N) < m for _ in range(k)):
            eq_hits += 1

    return SimulationReport.from_counts(
        hits,
        trials,
        seed,
        baseline=float(planted_appearance_prob(N, m, k)),
        eq_model_estimate=eq_hits / trials,
        khat_distribution=dict(sorted(khat_counter.items())),
        mean_khat=sum(v * c for v, c in khat_counter.items()) / trials,
        mean_crack_probability=crack_sum / trials,
    )


def simulate_popular_absence(
    popular_fraction: float,
    k: int,
    trials: int,
    seed: Optional[int] = None,
) -> SimulationReport:
    """Twin of popular_absence_prob: k-1 honeyword draws, success when none
    of them falls in the popular set."""
    rng = random.Random(seed)
    absent = 0
    for _ in range(trials):
        if all(rng.random() >= popular_fraction for _ in range(k - 1)):
            absent += 1
    return SimulationReport.from_counts(
        absent, trials, seed, baseline=float(popular_absence_prob(popular_fraction, k))
    )


def simulate_dos(
    q: int,
    d: int,
    k: int,
    lam: int,
    trials: int,
    seed: Optional[int] = None,
) -> SimulationReport:
    """Twin of dos_probability: the adversary knows the true sequence and
    submits one uniformly chosen different sequence; success is a decoy hit.
    """
    rng = random.Random(seed)
    hits = 0
    for _ in range(trials):
        act = random_sequence(q, d, rng)
        sweet = generate_sweetwords(k, lam, act, q, rng, d=d)
        honeys = set(sweet.honeywords())
        while True:
            guess = random_sequence(q, d, rng)
            if guess != act:
                break
        if guess in honeys:
            hits += 1
    return SimulationReport.from_counts(
        hits, trials, seed, baseline=float(dos_probability(k, d, q))
    )


def _frequency_guess(
    alternatives: Sequence[str], freqs: dict[str, float], rng: random.Random
) -> int:
    """Index of the highest-prior alternative; ties broken uniformly."""
    best = max(freqs.get(a, 0.0) for a in alternatives)
    tied = [i for i, a in enumerate(alternatives) if freqs.get(a, 0.0) == best]
    return rng.choice(tied)


def simulate_flatness(
    scheme: Scheme,
    corpus: Optional[Corpus],
    group_table: Optional[GroupTable],
    attacker: AttackerModel,
    trials: int,
    seed: Optional[int] = None,
    *,
    d: int = 4,
    k: int = 20,
    lam: int = 3,
    length: int = 6,
    index: Optional[IndexSelector] = None,
) -> SimulationReport:
    """How often the attacker's best guess identifies the true element.

    proposed-tuples      guess the true alternative among d band letters
                         (baseline 1/d)
    proposed-sweetwords  guess the true sequence among k sweetwords
                         (baseline 1/k)
    chaffing-digits      guess a decoy of the digit-tweak baseline while
                         knowing the true password (DoS hit rate; baseline
                         is the proposed scheme's (k-1)/(d^length - 1))
    """
    rng = random.Random(seed)

    if scheme is Scheme.PROPOSED_TUPLES:
        if corpus is None or group_table is None:
            raise ValueError("proposed-tuples needs a corpus and a group table")
        question = get_question(2 if corpus.corpus_class.value == "movie" else 1)
        idx = index if index is not None else question.kind.index  # type: ignore[union-attr]
        table = letter_frequencies(corpus, idx)
        usable = [e for e in corpus.entries if len(e) >= idx.min_length()]
        hits = resampled = 0
        for _ in range(trials):
            while True:
                entry = usable[rng.randrange(len(usable))]
                letter = idx.pick(entry)
                group = group_table.group_of(letter)
                if group is not None and len(group.letters) >= d:
                    break
                resampled += 1
            tup = build_tuple_b(entry, question, group_table, d, rng, index=idx)
            if attacker.strategy is GuessStrategy.FREQUENCY_WEIGHTED and attacker.knows_frequencies:
                guess = _frequency_guess(tup.alternatives, table.freq, rng)
            else:
                guess = rng.randrange(d)
            if guess == tup.correct_position:
                hits += 1
        return SimulationReport.from_counts(
            hits, trials, seed, baseline=1.0 / d, resampled=resampled
        )

    if scheme is Scheme.PROPOSED_SWEETWORDS:
        hits = 0
        for _ in range(trials):
            act = random_sequence(length, d, rng)
            sweet = generate_sweetwords(k, lam, act, length, rng, d=d)
            # Sequences are uniform by construction; no prior helps, so
            # every strategy reduces to a uniform guess over k.
            guess = rng.randrange(k)
            if guess == sweet.true_index:
                hits += 1
        return SimulationReport.from_counts(hits, trials, seed, baseline=1.0 / k)

    if scheme is Scheme.CHAFFING_DIGITS:
        if not attacker.knows_password:
            raise ValueError("the digit-tweak scenario models a password-knowing attacker")
        if corpus is None:
            raise ValueError("chaffing-digits needs a corpus for password stems")
        hits = 0
        for _ in range(trials):
            stem = corpus.entries[rng.randrange(len(corpus.entries))].lower()
            password = stem + str(rng.randrange(10))
            words = chaffing_tweak_digits(password, k, rng)
            honeys = set(words) - {password}
            # Deliberate decoy submission: any tail but the true one.
            while True:
                guess_tail = rng.randrange(10)
                if str(guess_tail) != password[-1]:
                    break
            if stem + str(guess_tail) in honeys:
                hits += 1
        proposed = float(dos_probability(k, d, length)) if d**length > k else None
        return SimulationReport.from_counts(hits, trials, seed, baseline=proposed)

    raise ValueError(f"unknown scheme {scheme}")


def typo_accident_rate(
    sweet: SweetwordList,
    alphabet_size: int,
    trials: int,
    seed: Optional[int] = None,
    p: float = 0.0,
    exact_errors: Optional[int] = None,
) -> SimulationReport:
    """Rate at which a mistyped true sequence lands exactly on a decoy.

    With `exact_errors` set, every trial corrupts exactly that many
    positions; otherwise each position is corrupted independently with
    probability p.  The worst-case bound, (k-1) * (1/(alphabet_size-1))**lam,
    is reported in extras.
    """
    rng = random.Random(seed)
    true = sweet.true_sequence
    honeys = set(sweet.honeywords())
    letters = option_letters(alphabet_size)
    n = len(true)
    hits = 0
    for _ in range(trials):
        chars = list(true)
        if exact_errors is not None:
            for pos in rng.sample(range(n), exact_errors):
                chars[pos] = rng.choice([c for c in letters if c != chars[pos]])
        elif p > 0:
            for pos in range(n):
                if rng.random() < p:
                    chars[pos] = rng.choice([c for c in letters if c != chars[pos]])
        if "".join(chars) in honeys:
            hits += 1
    bound = float((sweet.k - 1) * typo_safety_bound(alphabet_size, sweet.lam))
    return SimulationReport.from_counts(hits, trials, seed, bound=bound)


# -- aggregate for the CLI -------------------------------------------------


def metrics_summary(
    q: int,
    d: int,
    k: int,
    lam: int,
    N: Optional[int] = None,
    m: Optional[int] = None,
    popular_fraction: Optional[float] = None,
) -> dict:
    """All closed forms for one parameter set, exact values included."""
    dos = dos_probability(k, d, q)
    typo = typo_safety_bound(d, lam)
    saved = storage_saved(q, d)
    out = {
        "params": {"q": q, "d": d, "k": k, "lam": lam},
        "dos_probability": dos,
        "typo_mistake_bound": typo,
        "typo_safety_percent": (1 - typo) * 100,
        "storage_qba_units": storage_qba(q, d),
        "storage_pqba_units": storage_pqba(),
        "storage_saved_percent": saved,
        "detection_probability": Fraction(k - 1, k),
    }
    if N is not None and m is not None:
        out["planted_appearance_prob"] = planted_appearance_prob(N, m, k)
    if popular_fraction is not None:
        out["popular_absence_prob"] = popular_absence_prob(popular_fraction, k)
    return out
