"""Caption text analysis: sentence splitting, tokenization, lemmatization.

All public spans are byte offsets into the UTF-8 encoding of the caption,
half-open [start, end), so downstream consumers can highlight ranges in
any representation without re-deriving offsets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Dotted tokens that do not end a sentence.
_ABBREVIATIONS = {
    "e.g", "i.e", "etc", "vs", "cf", "fig", "no", "mr", "mrs", "ms", "dr", "prof",
    "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
    "u.s", "u.k", "u.n",
}

_TOKEN_RE = re.compile(
    r"\d{4}s"                            # decade: 1990s
    r"|\d{1,3}(?:,\d{3})+(?:\.\d+)?"     # grouped number: 1,200,000.5
    r"|\d+(?:\.\d+)?"                    # plain number: 1981 or 3.5
    r"|[Qq][1-4](?![A-Za-z0-9])"         # quarter shorthand: Q3
    r"|[A-Za-z]+(?:['’][A-Za-z]+)*" # word, possibly possessive
    r"|[^\sA-Za-z0-9]"                   # any other single mark
)


class _ByteOffsets:
    """Character-index to byte-offset conversion for one string."""

    def __init__(self, text: str):
        prefix = [0]
        total = 0
        for ch in text:
            total += len(ch.encode("utf-8"))
            prefix.append(total)
        self._prefix = prefix

    def at(self, char_index: int) -> int:
        return self._prefix[char_index]

    def span(self, start: int, end: int) -> tuple[int, int]:
        return self._prefix[start], self._prefix[end]


def _is_abbreviation(text: str, dot_index: int) -> bool:
    j = dot_index - 1
    chars = []
    while j >= 0 and (text[j].isalpha() or text[j] == "."):
        chars.append(text[j])
        j -= 1
    word = "".join(reversed(chars)).lower().rstrip(".")
    return word in _ABBREVIATIONS


def _sentence_char_spans(text: str) -> list[tuple[int, int]]:
    spans = []
    n = len(text)
    i = 0
    start = None
    while i < n:
        ch = text[i]
        if start is None and not ch.isspace():
            start = i
        if ch in ".!?":
            nxt = text[i + 1] if i + 1 < n else ""
            if ch == ".":
                if i > 0 and text[i - 1].isdigit() and nxt.isdigit():
                    i += 1
                    continue  # decimal point
                if _is_abbreviation(text, i):
                    i += 1
                    continue
            if nxt == "" or nxt.isspace():
                end = i + 1
                while end < n and text[end] in ".!?":
                    end += 1
                if start is not None:
                    spans.append((start, end))
                start = None
                i = end
                continue
        i += 1
    if start is not None:
        end = n
        while end > start and text[end - 1].isspace():
            end -= 1
        spans.append((start, end))
    return spans


def split_sentences(caption: str) -> list[tuple[int, int]]:
    """Byte spans of the sentences in a caption.

    Splits at ., ! and ? followed by whitespace or end of text; decimal
    points and common abbreviations do not split.  Returns [] for empty
    or all-whitespace input; an unterminated trailing sentence counts.
    """
    offsets = _ByteOffsets(caption)
    return [offsets.span(a, b) for a, b in _sentence_char_spans(caption)]


# ---------------------------------------------------------------------------
# Lemmatization: explicit inflection tables for the verbs the description
# lexicon cares about, plus generic suffix rules for everything else.

_INFLECTIONS = {
    "rise": ["rises", "rising", "rose", "risen"],
    "increase": ["increases", "increasing", "increased"],
    "grow": ["grows", "growing", "grew", "grown"],
    "climb": ["climbs", "climbing", "climbed"],
    "soar": ["soars", "soaring", "soared"],
    "skyrocket": ["skyrockets", "skyrocketing", "skyrocketed"],
    "spike": ["spikes", "spiking", "spiked"],
    "surge": ["surges", "surging", "surged"],
    "jump": ["jumps", "jumping", "jumped"],
    "fall": ["falls", "falling", "fell", "fallen"],
    "decline": ["declines", "declining", "declined"],
    "decrease": ["decreases", "decreasing", "decreased"],
    "drop": ["drops", "dropping", "dropped"],
    "dip": ["dips", "dipping", "dipped"],
    "plunge": ["plunges", "plunging", "plunged"],
    "plummet": ["plummets", "plummeting", "plummeted"],
    "sink": ["sinks", "sinking", "sank", "sunk", "sunken"],
    "slide": ["slides", "sliding", "slid"],
    "shrink": ["shrinks", "shrinking", "shrank", "shrunk", "shrunken"],
    "peak": ["peaks", "peaking", "peaked"],
    "top": ["tops", "topping", "topped"],
    "bottom": ["bottoms", "bottoming", "bottomed"],
    "record": ["records", "recording", "recorded"],
    "leap": ["leaps", "leaping", "leapt", "leaped"],
    "tumble": ["tumbles", "tumbling", "tumbled"],
    "slump": ["slumps", "slumping", "slumped"],
    "collapse": ["collapses", "collapsing", "collapsed"],
    "rally": ["rallies", "rallying", "rallied"],
    "maximum": ["maxima", "maximums"],
    "minimum": ["minima", "minimums"],
}

_IRREGULAR = {form: lemma for lemma, forms in _INFLECTIONS.items() for form in forms}
_KNOWN = set(_INFLECTIONS) | {"high", "low", "trough", "summit", "rocket",
                              "max", "min", "price", "rate", "value"}

# Function words the -s plural rule must leave alone.
_NO_STRIP = {
    "this", "his", "has", "was", "is", "its", "as", "us", "thus", "plus",
    "always", "perhaps", "across", "previous", "various", "less",
}

_VOWELS = set("aeiou")


def lemmatize(word: str) -> str:
    """Lowercased lemma via the irregular table and -s/-es/-ies/-ed/-ing rules."""
    return _rule_lemma(word.lower())


def _rule_lemma(w: str) -> str:
    # table lookup first so irregular pasts beat the suffix rules
    if w in _IRREGULAR:
        return _IRREGULAR[w]
    if w in _NO_STRIP or len(w) <= 3:
        return w
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith("es") and w[:-2].endswith(("s", "x", "z", "ch", "sh")):
        return w[:-2]
    if w.endswith("s") and not w.endswith(("ss", "us", "is")):
        return w[:-1]
    for suffix in ("ing", "ed"):
        if w.endswith(suffix) and len(w) - len(suffix) >= 2:
            stem = w[: -len(suffix)]
            if stem in _KNOWN:
                return stem
            if stem + "e" in _KNOWN:
                return stem + "e"
            if (len(stem) >= 2 and stem[-1] == stem[-2]
                    and stem[-1] not in _VOWELS and stem[:-1] in _KNOWN):
                return stem[:-1]  # doubled consonant: dipp -> dip
            # not a word we track; stripping would mangle -ing nouns
            return w
    return w


@dataclass(frozen=True)
class Token:
    """One caption token with its lowercased lemma and byte span."""

    text: str
    lemma: str
    byte_span: tuple[int, int]
    sentence_index: int

    @property
    def is_word(self) -> bool:
        return self.text[0].isalpha()

    @property
    def is_number(self) -> bool:
        return self.text[0].isdigit()


def tokenize_and_lemmatize(caption: str, sentence_span: tuple[int, int] | None = None,
                           sentence_index: int = 0) -> list[Token]:
    """Tokens (with lemmas and byte spans) for one sentence of a caption.

    sentence_span is a character span; when omitted the whole caption is
    treated as a single sentence.
    """
    offsets = _ByteOffsets(caption)
    if sentence_span is None:
        lo, hi = 0, len(caption)
    else:
        lo, hi = sentence_span
    tokens = []
    for m in _TOKEN_RE.finditer(caption, lo, hi):
        text = m.group()
        lemma = _rule_lemma(text.lower()) if text[0].isalpha() else text.lower()
        tokens.append(Token(text=text, lemma=lemma,
                            byte_span=offsets.span(m.start(), m.end()),
                            sentence_index=sentence_index))
    return tokens


@dataclass(frozen=True)
class Sentence:
    """A sentence's byte span plus its analyzed tokens."""

    index: int
    byte_span: tuple[int, int]
    tokens: tuple[Token, ...]


def analyze(caption: str) -> list[Sentence]:
    """Split a caption and tokenize every sentence in one pass."""
    offsets = _ByteOffsets(caption)
    out = []
    for idx, (a, b) in enumerate(_sentence_char_spans(caption)):
        toks = tokenize_and_lemmatize(caption, sentence_span=(a, b), sentence_index=idx)
        out.append(Sentence(index=idx, byte_span=offsets.span(a, b), tokens=tuple(toks)))
    return out
