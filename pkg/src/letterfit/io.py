"""Reading and writing the TSV/JSON files exchanged between pipeline steps."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import SPACE, LanguageProfile, LetterCounts
from .distribution import RankedDistribution


def fmt(x) -> str:
    """Six significant digits for floats; everything else via ``str``."""
    if isinstance(x, float):
        if math.isnan(x):
            return "NA"
        return f"{x:.6g}"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def write_table(path, header: Sequence[str], rows: Iterable[Sequence], format: str = "tsv") -> Path:
    """Write rows as TSV, or as a JSON list of records when ``format='json'``.

    The file suffix is replaced to match the format.
    """
    path = Path(path)
    rows = [list(r) for r in rows]
    if format == "json":
        path = path.with_suffix(".json")
        records = [dict(zip(header, (_jsonable(v) for v in r))) for r in rows]
        write_json(path, records)
        return path
    path = path.with_suffix(".tsv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\t".join(header) + "\n")
        for r in rows:
            fh.write("\t".join(fmt(v) for v in r) + "\n")
    return path


def _jsonable(v):
    if isinstance(v, float) and (math.isnan(v) or math.isinf(v)):
        return None
    if hasattr(v, "item"):
        return v.item()
    return v


def write_json(path, obj) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_clean(obj), fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    return path


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return _jsonable(obj)


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_counts(path, counts: LetterCounts) -> Path:
    """``letter<TAB>count`` for every alphabet letter, then space and total rows."""
    rows = list(zip(counts.profile.alphabet, counts.values))
    if counts.profile.keep_space:
        rows.append((SPACE, counts.space_count))
    rows.append(("total", counts.total))
    return write_table(path, ("letter", "count"), rows)


def read_counts(path, profile: LanguageProfile) -> LetterCounts:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter="\t")
        if reader.fieldnames != ["letter", "count"]:
            raise ValueError(f"{path}: expected header letter<TAB>count")
        mapping, space = {}, 0
        total = None
        for row in reader:
            letter, count = row["letter"], int(row["count"])
            if letter == "total":
                total = count
            elif letter == SPACE:
                space = count
            else:
                mapping[letter] = count
    counts = LetterCounts.from_mapping(profile, mapping, space)
    if total is not None and total != counts.total:
        raise ValueError(f"{path}: total row {total} disagrees with letter sum {counts.total}")
    return counts


def write_ranked(path, dist: RankedDistribution, format: str = "tsv") -> Path:
    counts = dist.counts if dist.counts is not None else [math.nan] * dist.n
    rows = [(r, letter, c, float(f))
            for (r, letter, f), c in zip(dist.entries, counts)]
    return write_table(path, ("rank", "letter", "count", "frequency"), rows, format)
