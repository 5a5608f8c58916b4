"""Feature ranking and selection: Python front end to the fslib C++ library."""

from ._fslib import (
    ArgumentError,
    BoundRanking,
    DataError,
    FslibError,
    NumericalError,
    list_methods,
    rank,
    select_top,
)

__all__ = [
    "ArgumentError",
    "BoundRanking",
    "DataError",
    "FslibError",
    "NumericalError",
    "list_methods",
    "rank",
    "select_top",
]
