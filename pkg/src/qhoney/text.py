"""Text normalization applied to corpus entries and free-text answers.

Everything downstream works on uppercase A-Z strings: accents are folded,
digits are spelled out one digit at a time, and all other characters are
dropped.
"""

import unicodedata

DIGIT_WORDS = {
    "0": "ZERO",
    "1": "ONE",
    "2": "TWO",
    "3": "THREE",
    "4": "FOUR",
    "5": "FIVE",
    "6": "SIX",
    "7": "SEVEN",
    "8": "EIGHT",
    "9": "NINE",
}


def normalize(text: str) -> str:
    """Reduce arbitrary text to its uppercase A-Z skeleton.

    "alex 2004" -> "ALEXTWOZEROZEROFOUR"; may return "" (caller decides
    whether that is an error).
    """
    folded = unicodedata.normalize("NFKD", text)
    out: list[str] = []
    for ch in folded:
        if ch.isascii() and ch.isalpha():
            out.append(ch.upper())
        elif ch in DIGIT_WORDS:
            out.append(DIGIT_WORDS[ch])
    return "".join(out)
