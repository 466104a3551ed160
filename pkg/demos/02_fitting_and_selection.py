"""Fit all ten rank-frequency families and compare them by AIC and BIC.

Run with ``python demos/02_fitting_and_selection.py [en|es]``.
"""
import sys

from letterfit import Corpus, build_table, fit_all, fixture_manifest, get_profile, to_ranked

lang = sys.argv[1] if len(sys.argv) > 1 else "en"
corpus = Corpus.from_manifest(fixture_manifest(lang), get_profile(lang))
dist = to_ranked(corpus.merged())

fits = fit_all(dist)
for res in fits:
    shape = ", ".join(f"{k}={v:.4g}" for k, v in res.params.as_dict().items() if k != "C")
    print(f"{res.model:<18} SSE={res.sse:.3e}  iters={res.iterations:<3} {shape}")

# AIC and BIC only differ in how hard each free parameter is penalized.
table = build_table(fits)
print(f"\nbest by AIC: {table.best_aic}, best by BIC: {table.best_bic}")
for mid in table.ranking("aic"):
    row = table.row(mid)
    print(f"  {row.model:<18} p={row.p}  dAIC={row.delta_aic:6.2f}  dBIC={row.delta_bic:6.2f}")
