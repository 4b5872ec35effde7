"""Rank statistics of unimodal sequences: exact counts, identities, asymptotics."""

from .enumeration import RankHistogram, enumerate_family
from .genfun import Family, check_identity, rank_count, rank_row
from .qseries import IntegrityError, LaurentPoly, QSeries, SeriesError

__version__ = "0.1.0"

__all__ = [
    "Family",
    "IntegrityError",
    "LaurentPoly",
    "QSeries",
    "RankHistogram",
    "SeriesError",
    "check_identity",
    "enumerate_family",
    "rank_count",
    "rank_row",
]
