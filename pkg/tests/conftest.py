import numpy as np
import pytest

from letterfit import Corpus, Document, LetterCounts, english, spanish
from letterfit.data import fixture_manifest

# (label, years, rank string, letter total) per US president
US_RANKINGS = [
    ("Washington", (1789, 1793), "etinoashrcdlumfpybwgvxjqkz", 7710),
    ("Adams", (1797,), "etnioasrhdlcfumpgybvwxjkqz", 11281),
    ("Jefferson", (1801, 1805), "etoinasrhldcufmpwgybvkxjzq", 18701),
    ("Madison", (1809, 1813), "etoinasrhldcufpmgwbyvkxjzq", 11572),
    ("Monroe", (1817, 1821), "etinoarshdclufpmwygbvxkjzq", 37522),
    ("Adams", (1825,), "etoinasrhdlcfupmgybvwxjqkz", 14572),
    ("Jackson", (1829, 1833), "etoinarshldcufmpybgwvxkjqz", 11372),
    ("Van Buren", (1837,), "etoinasrhlducfpmywgvbxkjqz", 19215),
    ("Harrison", (1841,), "etoinarshcdlfumpygbwvxkjzq", 40526),
    ("Polk", (1845,), "etoniasrhdlcufmpygbwvxjqkz", 23475),
    ("Taylor", (1849,), "etoinasrhlcdufmpybgwvxkjzq", 5413),
    ("Pierce", (1853,), "etinoarshlducfmpygwbvkxjqz", 16406),
    ("Buchanan", (1857,), "etionasrhlcdufpmywgvbxqjkz", 13696),
    ("Lincoln", (1861, 1865), "etoinasrhldcufpmywbgvkxjqz", 19340),
    ("Grant", (1869, 1873), "etoinarshldcufmpgywbvxkqjz", 11476),
    ("Hayes", (1877,), "etoinasrhlcdufpmygbwvjqxkz", 12171),
    ("Garfield", (1881,), "etoniasrhlducfmpgwybvkxjqz", 14477),
    ("Cleveland", (1885,), "etoinasrhdlcufpmygbwvxkzjq", 18480),
    ("Harrison", (1889,), "etoniasrhldcufpmwygbvkxjqz", 21394),
    ("Mckinley", (1897, 1901), "etnoiarshlducfpmygbwvxkjzq", 30179),
    ("T.Roosevelt", (1905,), "etoainrshldufwcgbpmvykxjzq", 4480),
    ("Taft", (1909,), "etoinasrhdclfumpgywbvkxjqz", 26272),
    ("Wilson", (1913, 1917), "etoanisrhdlucfwpmgyvbkjqxz", 14360),
    ("Harding", (1921,), "etnioarsldhcufmwpgybvkxzjq", 16508),
    ("Coolidge", (1925,), "etonairshldcufmpwybgvxkjqz", 19482),
    ("Hoover", (1929,), "etoinarshldcufmpgywbvzxjkq", 19256),
    ("F.D.Roosevelt", (1933, 1937, 1941, 1945), "etoainrshldcfumpwygvbkjxzq", 25696),
    ("Truman", (1949,), "etoainrshldcfumpwgyvbkjqxz", 11070),
    ("Eisenhower", (1953, 1957), "etoainrshldfcumpwygbvkqjxz", 18313),
    ("Kennedy", (1961,), "etoanrsihldfuwcmgypbvkjxzq", 6003),
    ("Johnson", (1965,), "etanoirshdluwcfmgybpvkjxzq", 6468),
    ("Nixon", (1969, 1973), "etoanirshldcuwfmpgbyvkjqxz", 17142),
    ("Carter", (1977,), "etaonirshldumwcfpgbyvkjqxz", 5459),
    ("Reagan", (1981, 1985), "etonarishdlumwcfgpybvkjxzq", 22494),
    ("G.H.W.Bush", (1989,), "etaonrishdluwcmgfybpvkzjxq", 9781),
    ("Clinton", (1993, 1997), "eotanrishldcumwfpgybvkjzxq", 16915),
    ("G.W.Bush", (2001, 2005), "etonairsdhlcufmwygpbvkjzqx", 16759),
    ("Obama", (2009,), "etoanrsihdlucwfmgypbvkjqxz", 10632),
]

# (label, first year, rank string, letter total) per Mexican president
MX_RANKINGS = [
    ("Carranza", 1917, "eaosnirdlctupmbgyvfqhjxzñkw", 539107),
    ("De la Huerta", 1920, "eaosinrdlctupmbgfvyhqjzxñkw", 113057),
    ("Obregón", 1921, "eaosinrdlctupmbgyfvhqjxzñkw", 675552),
    ("Elías", 1925, "eaosinrdlctupmbgyfvqhjzxñkw", 700715),
    ("Portes Gil", 1929, "eaosinrdlctupmbgyvfqhjzxñkw", 231873),
    ("Ortiz", 1930, "eaoisnrdlctupmbgvfyqhjzxñkw", 664319),
    ("Rodríguez", 1933, "eaoisnrdlctupmbgyvfqhjzxñkw", 301745),
    ("Cárdenas", 1935, "eaosinrldctupmbgvyfqhjxzñkw", 402748),
    ("Ávila", 1941, "eaosinrlcdtumpbygvfqhjzxñkw", 734540),
    ("Alemán", 1947, "eaoisnrcltdumpbyvgfhqzjxñkw", 549980),
    ("Ruiz", 1953, "eaosinrldctumpbygvfqhjzxñkw", 592550),
    ("López", 1959, "eaosinrldctupmbgvyfhqzjxñkw", 712056),
    ("Díaz", 1965, "eaosinrldctupmbgvyfqhzjxñkw", 785528),
    ("Echeverría", 1971, "eaosinrldctumpbvgfyqhjzxñkw", 792338),
    ("López Portillo", 1977, "eaosinrlcdtumpbygvfqhzjxñkw", 684658),
    ("De la Madrid", 1983, "eaoisnrlcdtumpbyvgfhqzjxñkw", 761274),
    ("Salinas", 1989, "eaosinrlcdtumpbvygfhqzxjñkw", 624933),
    ("Zedillo", 1995, "eaosinrlcdtumpbgyvfqhzjxñkw", 282463),
    ("Fox", 2001, "eaosinrldctumpbgyvfqhzjxñkw", 311429),
]

# Published fit summary: model -> (p, English SSE, dAIC, dBIC, Spanish SSE, dAIC, dBIC)
PUBLISHED_FITS = {
    "gusein_zade": (0, 0.00106, 20.2, 17.7, 0.00670, 57.3, 54.8),
    "power_law": (1, 0.00461, 60.3, 59.0, 0.00721, 61.3, 60.0),
    "exponential": (1, 0.000814, 15.2, 14.0, 0.00118, 12.5, 11.2),
    "logarithmic": (1, 0.000635, 8.75, 7.49, 0.00115, 11.7, 10.4),
    "weibull": (2, 0.000559, 7.45, 7.45, 0.00136, 18.2, 18.2),
    "quadratic_log": (2, 0.000460, 2.40, 2.40, 0.000915, 7.59, 7.59),
    "yule": (2, 0.000788, 16.4, 16.4, 0.00117, 14.3, 14.3),
    "menzerath_altmann": (2, 0.00251, 46.5, 46.5, 0.00340, 43.0, 43.0),
    "cocho_beta": (2, 0.000420, 0, 0, 0.000691, 0, 0),
    "frappat": (3, 0.000587, 10.7, 12.0, 0.000838, 7.20, 8.49),
}

# Reference shape parameters for English rank-frequency fits
ENGLISH_REFERENCE_PARAMS = {
    "gusein_zade": (),
    "power_law": (0.616,),
    "exponential": (0.118,),
    "logarithmic": (0.0401,),
    "weibull": (0.935,),
    "quadratic_log": (0.0280, 0.00325),
    "yule": (0.0543, 0.897),
    "menzerath_altmann": (-1.05, -1.31),
    "cocho_beta": (0.210, 1.35),
    "frappat": (0.245, -0.00242, 0.0813),
}


def counts_from_rank_string(profile, ranking, total=None):
    """Counts whose ranking reproduces ``ranking`` (strictly decreasing).

    With ``total`` given, the counts are scaled so that they sum to it while
    keeping the order strict.
    """
    n = len(ranking)
    weights = np.arange(n, 0, -1, dtype=float) ** 2
    if total is None:
        values = weights.astype(int)
    else:
        values = np.floor(weights / weights.sum() * total).astype(int)
        values[0] += total - values.sum()
        assert np.all(np.diff(values) < 0)
    return LetterCounts.from_mapping(profile, dict(zip(ranking, values.tolist())))


def corpus_from_table(rows, profile):
    docs, counts = [], []
    for i, row in enumerate(rows):
        label, years, ranking, total = row
        years = years if isinstance(years, tuple) else (years,)
        docs.append(Document(f"d{i + 1:02d}", label, years, ""))
        counts.append(counts_from_rank_string(profile, ranking, total))
    return Corpus(profile, tuple(docs), tuple(counts))


@pytest.fixture
def us_corpus():
    return corpus_from_table(US_RANKINGS, english())


@pytest.fixture
def mx_corpus():
    return corpus_from_table(MX_RANKINGS, spanish())


@pytest.fixture(scope="session")
def english_fixture():
    return Corpus.from_manifest(fixture_manifest("english"), english())


@pytest.fixture(scope="session")
def spanish_fixture():
    return Corpus.from_manifest(fixture_manifest("spanish"), spanish())

# Reference shape parameters for Spanish rank-frequency fits
SPANISH_REFERENCE_PARAMS = {
    "gusein_zade": (),
    "power_law": (0.653,),
    "exponential": (0.130,),
    "logarithmic": (0.0443,),
    "weibull": (1.05,),
    "quadratic_log": (0.0306, 0.00362),
    "yule": (-0.0333, 0.873),
    "menzerath_altmann": (-1.22, -1.69),
    "cocho_beta": (0.115, 2.04),
    "frappat": (0.0592, 0.00315, 0.276),
}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
