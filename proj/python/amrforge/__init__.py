"""AMR toolkit: PENMAN parsing, linearization, meta-AMR merging, smatch/sembleu."""

from ._amrforge import (
    AmrGraph,
    build_meta_amr,
    delinearize,
    extract_ngrams,
    linearize,
    parse,
    sembleu,
    serialize,
    smatch,
    smatch_oracle,
)

__all__ = [
    "AmrGraph",
    "build_meta_amr",
    "delinearize",
    "extract_ngrams",
    "linearize",
    "parse",
    "sembleu",
    "serialize",
    "smatch",
    "smatch_oracle",
]
