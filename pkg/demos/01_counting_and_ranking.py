"""Count letters in the bundled English fixture and look at the ranking.

Run with ``python demos/01_counting_and_ranking.py``.
"""
from letterfit import Corpus, english, fixture_manifest, rank_string, space_fraction, to_ranked

profile = english(keep_space=True)
corpus = Corpus.from_manifest(fixture_manifest("en"), profile)

# One rank string per document. Ties between letters resolve alphabetically.
for doc, counts in zip(corpus.documents, corpus.counts):
    dist = to_ranked(counts)
    print(f"{doc.year}  {doc.id:<14} {rank_string(dist)}  letters={counts.total}"
          f"  space={space_fraction(counts):.3f}")

# Pool every document into a single distribution.
merged = to_ranked(corpus.merged())
print("\npooled ranking:", rank_string(merged))
for rank, letter, f in merged.entries[:5]:
    print(f"  {rank:>2}  {letter}  {f:.4f}")
