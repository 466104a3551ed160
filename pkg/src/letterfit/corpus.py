"""Corpus ingestion: language profiles, text normalization and letter counts.

A corpus is described by a manifest listing one document per row
(``id``, ``label``, ``years``, ``path``).  Each document is normalized under a
:class:`LanguageProfile` (lowercasing, accent folding, dropping everything
outside the alphabet) and reduced to a :class:`LetterCounts`.
"""
from __future__ import annotations

import csv
import json
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import EmptyDocument, ManifestError, ProfileMismatch

#: Display symbol for the word separator when it is treated as a letter.
SPACE = "␣"

_ENGLISH_ALPHABET = tuple("abcdefghijklmnopqrstuvwxyz")
_SPANISH_ALPHABET = tuple("abcdefghijklmnñopqrstuvwxyz")

_VOWEL_FOLDS = {
    "á": "a", "é": "e", "í": "i", "ó": "o", "ú": "u",
    "ü": "u",
}
_LATIN_FOLDS = {
    **_VOWEL_FOLDS,
    "à": "a", "â": "a", "ä": "a", "ã": "a", "å": "a",
    "è": "e", "ê": "e", "ë": "e",
    "ì": "i", "î": "i", "ï": "i",
    "ò": "o", "ô": "o", "ö": "o", "õ": "o",
    "ù": "u", "û": "u",
    "ç": "c", "ñ": "n", "ý": "y", "ÿ": "y",
}


@dataclass(frozen=True)
class LanguageProfile:
    """Alphabet plus the rules that map raw characters onto it."""

    id: str
    alphabet: tuple[str, ...]
    fold_map: Mapping[str, str] = field(default_factory=dict)
    keep_space: bool = False

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "fold_map", dict(self.fold_map))
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet entries must be unique")
        for letter in alphabet:
            if len(letter) != 1 or letter != letter.lower():
                raise ValueError(f"alphabet entry {letter!r} must be one lowercase character")
        members = set(alphabet)
        for key, value in self.fold_map.items():
            if value not in members:
                raise ValueError(f"fold_map sends {key!r} to {value!r}, not in alphabet")

    def __hash__(self):
        return hash((self.id, self.alphabet, tuple(sorted(self.fold_map.items())), self.keep_space))

    @property
    def n(self) -> int:
        return len(self.alphabet)

    @property
    def symbols(self) -> tuple[str, ...]:
        """Ranked symbol set: the alphabet, followed by the space symbol if kept."""
        return self.alphabet + ((SPACE,) if self.keep_space else ())

    def with_space(self, keep_space: bool = True) -> "LanguageProfile":
        return LanguageProfile(self.id, self.alphabet, self.fold_map, keep_space)


def english(keep_space: bool = False) -> LanguageProfile:
    """26-letter English profile; common Latin diacritics fold to the base letter."""
    return LanguageProfile("english", _ENGLISH_ALPHABET, _LATIN_FOLDS, keep_space)


def spanish(keep_space: bool = False) -> LanguageProfile:
    """27-letter Spanish profile.  Accented vowels and ü fold; ñ stays a letter."""
    return LanguageProfile("spanish", _SPANISH_ALPHABET, _VOWEL_FOLDS, keep_space)


def load_profile(path, keep_space: bool = False) -> LanguageProfile:
    """Read a custom profile from JSON: ``{"alphabet": "...", "fold_map": {...}}``."""
    with open(path, encoding="utf-8") as fh:
        spec = json.load(fh)
    alphabet = spec["alphabet"]
    if isinstance(alphabet, str):
        alphabet = list(alphabet)
    return LanguageProfile(
        spec.get("id", "custom"),
        tuple(alphabet),
        spec.get("fold_map", {}),
        keep_space or bool(spec.get("keep_space", False)),
    )


def get_profile(name: str, keep_space: bool = False) -> LanguageProfile:
    """Resolve ``en``/``english``, ``es``/``spanish`` or ``custom:<path>``."""
    if name in ("en", "english"):
        return english(keep_space)
    if name in ("es", "spanish"):
        return spanish(keep_space)
    if name.startswith("custom:"):
        return load_profile(name[len("custom:"):], keep_space)
    raise ValueError(f"unknown language profile {name!r}")


@dataclass(frozen=True)
class Document:
    id: str
    label: str
    years: tuple[int, ...]
    text: str

    @property
    def year(self) -> int:
        """Year anchor used for temporal ordering (the first listed year)."""
        return self.years[0]


@dataclass(frozen=True)
class LetterCounts:
    """Per-letter counts aligned with ``profile.alphabet``.

    ``total`` is the number of letters; the separator tally lives in
    ``space_count`` and never enters ``total``.  ``dropped`` counts characters
    that were discarded during normalization.
    """

    profile: LanguageProfile
    values: tuple[int, ...]
    space_count: int = 0
    dropped: int = 0

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if len(values) != self.profile.n:
            raise ValueError("counts must have one entry per alphabet letter")
        if any(v < 0 for v in values) or self.space_count < 0:
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, profile, counts: Mapping[str, int], space_count=0, dropped=0):
        unknown = set(counts) - set(profile.alphabet)
        if unknown:
            raise ValueError(f"letters outside the alphabet: {sorted(unknown)}")
        return cls(profile, tuple(counts.get(a, 0) for a in profile.alphabet), space_count, dropped)

    @property
    def counts(self) -> dict[str, int]:
        return dict(zip(self.profile.alphabet, self.values))

    @property
    def total(self) -> int:
        return sum(self.values)

    def __getitem__(self, letter):
        return self.counts[letter]


def _normalize(raw: str, profile: LanguageProfile) -> tuple[str, int]:
    members = set(profile.alphabet)
    out = []
    dropped = 0
    pending_space = False
    for ch in unicodedata.normalize("NFC", raw).lower():
        ch = profile.fold_map.get(ch, ch)
        if ch in members:
            if pending_space and out:
                out.append(" ")
            pending_space = False
            out.append(ch)
        elif ch.isspace():
            pending_space = True
        else:
            dropped += 1
    if pending_space and out:
        out.append(" ")
    return "".join(out), dropped


def normalize_text(raw: str, profile: LanguageProfile) -> str:
    """Reduce raw text to alphabet letters (and single spaces if ``keep_space``).

    Whitespace runs collapse to one space, leading whitespace is dropped and a
    trailing run is kept, so a text ending in a newline carries one separator
    per word.  Characters outside the alphabet are discarded.

    >>> normalize_text("We, the People!", english(keep_space=True))
    'we the people'
    """
    text, _ = _normalize(raw, profile)
    if not profile.keep_space:
        text = text.replace(" ", "")
    return text


def count_text(text: str, profile: LanguageProfile) -> LetterCounts:
    normalized, dropped = _normalize(text, profile)
    tally = Counter(normalized)
    space_count = tally.pop(" ", 0)
    if not tally:
        raise EmptyDocument("normalization left no letters")
    return LetterCounts.from_mapping(profile, tally, space_count, dropped)


def count_letters(doc: Document, profile: LanguageProfile) -> LetterCounts:
    try:
        return count_text(doc.text, profile)
    except EmptyDocument:
        raise EmptyDocument(f"document {doc.id!r} contains no letters") from None


def merge_counts(parts: Sequence[LetterCounts]) -> LetterCounts:
    """Letterwise sum of counts sharing one profile."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to merge")
    profile = parts[0].profile
    for part in parts[1:]:
        if part.profile != profile:
            raise ProfileMismatch(f"cannot merge {part.profile.id!r} counts into {profile.id!r}")

    def add(x, y):
        return LetterCounts(
            profile,
            tuple(a + b for a, b in zip(x.values, y.values)),
            x.space_count + y.space_count,
            x.dropped + y.dropped,
        )

    return reduce(add, parts)


# -- manifests ----------------------------------------------------------------

@dataclass(frozen=True)
class ManifestEntry:
    id: str
    label: str
    years: tuple[int, ...]
    path: Path


def _parse_years(value) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    return tuple(int(v) for v in str(value).replace(" ", "").split(",") if v)


def read_manifest(path) -> list[ManifestEntry]:
    """Read a TSV (``id label years path``) or JSON manifest.

    Relative document paths resolve against the manifest's directory.
    """
    path = Path(path)
    base = path.parent
    if path.suffix.lower() == ".json":
        with open(path, encoding="utf-8") as fh:
            rows = json.load(fh)
        if isinstance(rows, dict):
            rows = rows["documents"]
    else:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.DictReader(fh, delimiter="\t"))
    entries = []
    seen = set()
    for i, row in enumerate(rows, 1):
        try:
            entry = ManifestEntry(
                str(row["id"]), str(row.get("label", row["id"])),
                _parse_years(row["years"]), base / str(row["path"]),
            )
        except (KeyError, ValueError) as exc:
            raise ManifestError(f"{path}: bad manifest row {i}: {exc}") from None
        if not entry.years:
            raise ManifestError(f"{path}: row {i} has no years")
        if entry.id in seen:
            raise ManifestError(f"{path}: duplicate document id {entry.id!r}")
        seen.add(entry.id)
        entries.append(entry)
    return entries


def load_documents(manifest_path) -> list[Document]:
    docs = []
    for entry in read_manifest(manifest_path):
        text = entry.path.read_text(encoding="utf-8")
        docs.append(Document(entry.id, entry.label, entry.years, text))
    return docs


@dataclass(frozen=True)
class Corpus:
    """Documents in manifest order, with their counts under one profile."""

    profile: LanguageProfile
    documents: tuple[Document, ...]
    counts: tuple[LetterCounts, ...]

    @classmethod
    def from_documents(cls, documents: Iterable[Document], profile: LanguageProfile):
        documents = tuple(documents)
        return cls(profile, documents, tuple(count_letters(d, profile) for d in documents))

    @classmethod
    def from_manifest(cls, path, profile: LanguageProfile):
        return cls.from_documents(load_documents(path), profile)

    def __len__(self):
        return len(self.documents)

    def merged(self) -> LetterCounts:
        return merge_counts(self.counts)
