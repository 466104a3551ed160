"""Letter rank-frequency analysis.

Count letters in a corpus, rank them, fit ten rank-frequency families by
nonlinear least squares, compare the fits with AIC/BIC, fit piecewise
Gusein-Zade plateaus and follow individual letters over time.
"""
from .corpus import (SPACE, Corpus, Document, LanguageProfile, LetterCounts,
                     count_letters, count_text, english, get_profile, merge_counts,
                     normalize_text, spanish)
from .distribution import (RankedDistribution, average_distribution, from_frequencies,
                           group_means, gusein_ratio, rank_string, space_fraction, to_ranked)
from .fitter import FitOptions, FitResult, fit, fit_all, fit_piecewise
from .models import (MODEL_IDS, MODELS, ModelSpec, ParamVector, PiecewiseSpec, evaluate,
                     evaluate_piecewise, linearize, normalize_scale)
from .selection import SelectionTable, aic_from_sse, bic_from_sse, build_table, residual_table, sse
from .data import fixture_manifest

__version__ = "0.1.0"
