"""Follow individual letters across documents ordered in time.

Run with ``python demos/04_trends.py``.
"""
from letterfit import Corpus, fixture_manifest, spanish
from letterfit.trends import era_means, letter_series, rank_switches

corpus = Corpus.from_manifest(fixture_manifest("es"), spanish())

for series in letter_series(corpus, ["d", "l", "m"]):
    points = "  ".join(f"{y}:{f:.4f}" for _, y, f in series.points)
    print(f"{series.letter}  {points}")

# Does "d" outrank "l"?  A switch marks a change from the previous document.
print()
for doc_id, d_leads, switched in rank_switches(corpus, ("d", "l")):
    print(f"{doc_id:<8} {'d before l' if d_leads else 'l before d'}{'  <- switch' if switched else ''}")

eras, means = era_means(corpus, (1935, 1965))
col = corpus.profile.symbols.index("d")
print("\nmean frequency of d per era:", [round(float(m), 4) for m in means[:, col]])
