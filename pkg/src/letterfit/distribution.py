"""Ranked letter-frequency distributions and the Gusein-Zade ratio series."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .corpus import LanguageProfile, LetterCounts
from .errors import EmptyCounts, ProfileMismatch, SpaceNotTracked


@dataclass(frozen=True, eq=False)
class RankedDistribution:
    """Normalized frequencies sorted by descending frequency.

    ``letters[i]`` holds rank ``i + 1``.  ``counts`` is ``None`` when the
    distribution was built by averaging frequency vectors rather than from
    pooled counts.
    """

    profile: LanguageProfile
    letters: tuple[str, ...]
    frequencies: np.ndarray
    counts: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        freqs = np.array(self.frequencies, dtype=float)
        freqs.setflags(write=False)
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "letters", tuple(self.letters))
        if len(self.letters) != len(freqs):
            raise ValueError("letters and frequencies differ in length")

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def ranks(self) -> np.ndarray:
        return np.arange(1, self.n + 1)

    @property
    def entries(self):
        """List of ``(rank, letter, frequency)`` triples."""
        return [(r, l, float(f)) for r, l, f in zip(self.ranks, self.letters, self.frequencies)]

    def frequency_of(self, letter: str) -> float:
        return float(self.frequencies[self.letters.index(letter)])

    def rank_of(self, letter: str) -> int:
        return self.letters.index(letter) + 1

    def alphabetical(self) -> np.ndarray:
        """Frequencies re-sorted into the profile's symbol order."""
        order = {s: i for i, s in enumerate(self.profile.symbols)}
        out = np.zeros(self.n)
        for letter, f in zip(self.letters, self.frequencies):
            out[order[letter]] = f
        return out


def _symbol_values(counts: LetterCounts) -> list[int]:
    values = list(counts.values)
    if counts.profile.keep_space:
        values.append(counts.space_count)
    return values


def _rank(profile, values, counts=None) -> RankedDistribution:
    symbols = profile.symbols
    total = float(sum(values))
    # stable sort on -value keeps alphabet order among ties
    order = sorted(range(len(symbols)), key=lambda i: -values[i])
    freqs = np.array([values[i] for i in order], dtype=float) / total
    ranked_counts = tuple(counts[i] for i in order) if counts is not None else None
    return RankedDistribution(profile, tuple(symbols[i] for i in order), freqs, ranked_counts)


def to_ranked(counts: LetterCounts) -> RankedDistribution:
    """Rank every symbol of the profile by frequency, ties broken alphabetically.

    Zero-count letters stay in the distribution at the bottom.  With
    ``keep_space`` the separator joins as one extra symbol.
    """
    values = _symbol_values(counts)
    if sum(values) <= 0:
        raise EmptyCounts("cannot rank empty counts")
    return _rank(counts.profile, values, values)


def average_distribution(parts: Sequence[LetterCounts]) -> RankedDistribution:
    """Rank the mean of per-document frequency vectors.

    Each document weighs equally regardless of its length, unlike
    ``to_ranked(merge_counts(parts))`` which pools the counts.
    """
    parts = list(parts)
    if not parts:
        raise EmptyCounts("no documents to average")
    profile = parts[0].profile
    vectors = []
    for part in parts:
        if part.profile != profile:
            raise ProfileMismatch("cannot average counts from different profiles")
        values = np.array(_symbol_values(part), dtype=float)
        if values.sum() <= 0:
            raise EmptyCounts("cannot average empty counts")
        vectors.append(values / values.sum())
    mean = np.mean(vectors, axis=0)
    return _rank(profile, list(mean / mean.sum()))


def rank_string(dist: RankedDistribution) -> str:
    """Letters concatenated in rank order, e.g. ``'etoanrsih...'``."""
    return "".join(dist.letters)


def space_fraction(counts: LetterCounts) -> float:
    """Share of separators among all counted symbols, ``N_space / (N_space + N_letter)``."""
    if not counts.profile.keep_space:
        raise SpaceNotTracked("counts were made without keep_space")
    denom = counts.space_count + counts.total
    if denom == 0:
        raise EmptyCounts("no symbols counted")
    return counts.space_count / denom


def gusein_ratio(dist: RankedDistribution) -> np.ndarray:
    """Observed frequency over the Gusein-Zade shape ``ln((n+1)/r)``, per rank.

    A distribution that follows the Gusein-Zade law exactly gives a constant
    series equal to its scale ``C``.
    """
    r = dist.ranks
    return dist.frequencies / np.log((dist.n + 1) / r)


def group_means(values, breakpoints: Sequence[int]) -> list[float]:
    """Mean of a per-rank series over consecutive rank groups.

    ``breakpoints`` are the first ranks of groups 2, 3, ...; e.g. ``[22]``
    splits 26 ranks into 1-21 and 22-26.
    """
    values = np.asarray(values, dtype=float)
    edges = [0] + [b - 1 for b in breakpoints] + [len(values)]
    return [float(values[lo:hi].mean()) for lo, hi in zip(edges[:-1], edges[1:])]


def from_frequencies(frequencies, letters: Optional[Sequence[str]] = None) -> RankedDistribution:
    """Wrap a rank-ordered frequency vector, e.g. synthetic model output.

    The vector is used as given (no re-sorting), so curves that are not
    monotone in rank can still be handed to the fitter.
    """
    freqs = np.asarray(frequencies, dtype=float)
    if letters is None:
        letters = _placeholder_letters(len(freqs))
    profile = LanguageProfile("custom", tuple(letters))
    return RankedDistribution(profile, tuple(letters), freqs)


def _placeholder_letters(n):
    pool = "abcdefghijklmnopqrstuvwxyzαβγδεζηθικλμνξοπρστυφχψω"
    if n > len(pool):
        return tuple(chr(0x3041 + i) for i in range(n))
    return tuple(pool[:n])
