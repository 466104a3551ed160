"""Letter usage across a time-ordered sequence of documents."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import Corpus
from .distribution import rank_string, to_ranked

#: Era boundaries (first year of each new era) used when none are given.
DEFAULT_ERAS = {"english": (1800, 1902), "spanish": (1935, 1965)}
#: Letters plotted over time by default.
DEFAULT_LETTERS = {"english": ("t", "i", "a", "w"), "spanish": ("d", "l", "m")}
#: Letter pairs whose relative order is tracked by default.
DEFAULT_PAIRS = {"english": (("a", "i"),), "spanish": (("d", "l"),)}


@dataclass(frozen=True)
class TrendSeries:
    letter: str
    ids: tuple[str, ...]
    years: tuple[int, ...]
    frequencies: tuple[float, ...]

    @property
    def points(self):
        return list(zip(self.ids, self.years, self.frequencies))


def per_document_table(corpus: Corpus) -> np.ndarray:
    """Documents by symbols matrix of frequencies, in manifest and alphabet order."""
    return np.array([to_ranked(c).alphabetical() for c in corpus.counts])


def _order(corpus: Corpus):
    # stable: documents sharing a year keep manifest order
    return sorted(range(len(corpus)), key=lambda i: corpus.documents[i].year)


def letter_series(corpus: Corpus, letters: Sequence[str]) -> list[TrendSeries]:
    """Frequency of each letter per document, ordered by the document's first year."""
    table = per_document_table(corpus)
    symbols = corpus.profile.symbols
    order = _order(corpus)
    out = []
    for letter in letters:
        col = symbols.index(letter)
        out.append(TrendSeries(
            letter,
            tuple(corpus.documents[i].id for i in order),
            tuple(corpus.documents[i].year for i in order),
            tuple(float(table[i, col]) for i in order),
        ))
    return out


def rank_table(corpus: Corpus) -> list[tuple[str, str, tuple[int, ...], str, int]]:
    """``(id, label, years, rank string, letter total)`` per document."""
    return [(d.id, d.label, d.years, rank_string(to_ranked(c)), c.total)
            for d, c in zip(corpus.documents, corpus.counts)]


def rank_switches(corpus: Corpus, pair: Sequence[str]) -> list[tuple[str, bool, bool]]:
    """Which letter of ``pair`` ranks higher in each document.

    Returns ``(document id, first_leads, switched)`` in manifest order, where
    ``first_leads`` is true when ``pair[0]`` outranks ``pair[1]`` and
    ``switched`` marks a flip relative to the previous document.  Equal
    counts are resolved by alphabet order, as in the rank strings.
    """
    first, second = pair
    out = []
    prev = None
    for doc, counts in zip(corpus.documents, corpus.counts):
        dist = to_ranked(counts)
        lead = dist.rank_of(first) < dist.rank_of(second)
        out.append((doc.id, lead, prev is not None and lead != prev))
        prev = lead
    return out


def era_index(year: int, boundaries: Sequence[int]) -> int:
    return int(np.searchsorted(np.asarray(boundaries), year, side="right"))


def era_means(corpus: Corpus, boundaries: Sequence[int]) -> tuple[list[int], np.ndarray]:
    """Mean per-document frequency vector within each era.

    ``boundaries`` are the first years of eras 2, 3, ...  Returns the era
    index of each row and an ``eras x symbols`` matrix (NaN for empty eras).
    """
    table = per_document_table(corpus)
    idx = np.array([era_index(d.year, boundaries) for d in corpus.documents])
    eras = list(range(len(boundaries) + 1))
    means = np.full((len(eras), table.shape[1]), np.nan)
    for e in eras:
        if np.any(idx == e):
            means[e] = table[idx == e].mean(axis=0)
    return eras, means
