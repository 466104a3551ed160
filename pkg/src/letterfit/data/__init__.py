"""Small bundled corpora for tests and demos.

The English documents are short abridged excerpts of public-domain
inaugural addresses; the Spanish documents are original texts written for
testing.  Neither reproduces the full corpora letter counts are usually
computed from.
"""
from pathlib import Path

_HERE = Path(__file__).resolve().parent


def fixture_manifest(lang: str = "english") -> Path:
    """Path to the manifest of the bundled ``english`` or ``spanish`` corpus."""
    name = {"en": "english", "es": "spanish"}.get(lang, lang)
    path = _HERE / name / "manifest.tsv"
    if not path.exists():
        raise ValueError(f"no bundled corpus for {lang!r}")
    return path
