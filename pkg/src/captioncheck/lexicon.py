"""Description lexicon and pluggable word-similarity providers.

The lexicon maps keyword lemmas to the four reference kinds.  Matching
beyond exact lemmas goes through a SimilarityProvider; the default one
scores curated synonyms 1.0 and everything else 0.0, and an alternative
loads static word vectors and scores by cosine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import Protocol

KINDS = ("rise", "fall", "localMax", "localMin")


@dataclass(frozen=True)
class LexiconEntry:
    kind: str
    lemma: str
    synonyms: tuple[str, ...] = ()


class Lexicon:
    """Ordered list of lexicon entries; order breaks match ties."""

    def __init__(self, entries: list[LexiconEntry]):
        if not entries:
            raise ValueError("lexicon has no entries")
        self.entries = list(entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @classmethod
    def parse(cls, text: str) -> "Lexicon":
        """Parse tab-separated lines: kind, lemma, optional synonyms.

        Synonyms may be split over several cells or packed into one cell
        separated by spaces.  Blank lines and lines starting with # are
        skipped.
        """
        entries = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cells = [c.strip().lower() for c in line.split("\t") if c.strip()]
            if len(cells) < 2:
                raise ValueError(f"lexicon line {lineno}: expected kind and lemma")
            kind = _canonical_kind(cells[0])
            if kind is None:
                raise ValueError(f"lexicon line {lineno}: unknown kind {cells[0]!r}")
            synonyms = tuple(w for cell in cells[2:] for w in cell.split())
            entries.append(LexiconEntry(kind=kind, lemma=cells[1],
                                        synonyms=synonyms))
        return cls(entries)

    @classmethod
    def load(cls, path: str) -> "Lexicon":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())

    @classmethod
    def default(cls) -> "Lexicon":
        data = resources.files("captioncheck.data").joinpath("lexicon.tsv").read_text("utf-8")
        return cls.parse(data)


def _canonical_kind(raw: str) -> str | None:
    for kind in KINDS:
        if raw.lower() == kind.lower():
            return kind
    return None


class SimilarityProvider(Protocol):
    """Symmetric word similarity in [0, 1]; identical words score 1."""

    def similarity(self, a: str, b: str) -> float: ...


class LexiconSimilarity:
    """Synonym-table similarity: 1.0 inside an entry's synonym group, else 0.0."""

    def __init__(self, lexicon: Lexicon):
        self._groups: dict[str, set[int]] = {}
        for gid, entry in enumerate(lexicon):
            for word in (entry.lemma, *entry.synonyms):
                self._groups.setdefault(word, set()).add(gid)

    def similarity(self, a: str, b: str) -> float:
        a, b = a.lower(), b.lower()
        if a == b:
            return 1.0
        if self._groups.get(a, set()) & self._groups.get(b, set()):
            return 1.0
        return 0.0


class WordVectorSimilarity:
    """Cosine similarity over a static word-vector table, clamped to [0, 1].

    Vector file format: one word per line followed by its float components,
    whitespace separated.  Unknown words score 0.
    """

    def __init__(self, vectors: dict[str, tuple[float, ...]]):
        self._vectors = {w.lower(): v for w, v in vectors.items()}

    @classmethod
    def load(cls, path: str) -> "WordVectorSimilarity":
        vectors = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                parts = raw.split()
                if not parts:
                    continue
                try:
                    vectors[parts[0]] = tuple(float(x) for x in parts[1:])
                except ValueError:
                    raise ValueError(f"vector file line {lineno}: bad component") from None
        return cls(vectors)

    def similarity(self, a: str, b: str) -> float:
        a, b = a.lower(), b.lower()
        if a == b:
            return 1.0
        va, vb = self._vectors.get(a), self._vectors.get(b)
        if va is None or vb is None or len(va) != len(vb):
            return 0.0
        dot = sum(x * y for x, y in zip(va, vb))
        na = math.sqrt(sum(x * x for x in va))
        nb = math.sqrt(sum(y * y for y in vb))
        if na == 0.0 or nb == 0.0:
            return 0.0
        return max(0.0, min(1.0, dot / (na * nb)))
