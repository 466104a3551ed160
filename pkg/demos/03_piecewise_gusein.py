"""Look for plateaus in f(r) / ln((n+1)/r) and fit a piecewise model.

If the logarithmic law held exactly the ratio would be flat.  A two-segment
fit places a breakpoint where the ratio changes level.

Run with ``python demos/03_piecewise_gusein.py``.
"""
import numpy as np

from letterfit import (Corpus, english, fit, fit_piecewise, fixture_manifest, group_means,
                       gusein_ratio, to_ranked)

dist = to_ranked(Corpus.from_manifest(fixture_manifest("en"), english()).merged())
ratio = gusein_ratio(dist)
for (rank, letter, _), q in zip(dist.entries, ratio):
    print(f"{rank:>2} {letter}  {q:.4f}  " + "#" * int(q * 800))

single = fit("gusein_zade", dist)
for k in (2, 3):
    spec, res = fit_piecewise(dist, segments=k)
    means = group_means(ratio, spec.breakpoints)
    print(f"\n{k} segments: breakpoints {spec.breakpoints}, SSE {res.sse:.3e} "
          f"(single curve {single.sse:.3e})")
    print("  plateau constants", np.round(spec.constants, 4), "group means", np.round(means, 4))
