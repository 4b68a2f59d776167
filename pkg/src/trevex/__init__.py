"""Trevisan randomness extractor toolkit.

Weak designs composed with one-bit extractors, plus full parameter
derivation, file-based batch extraction, design caching, and brute-force
verification oracles.
"""

from .bitext import LuExtractor, RshExtractor, XorExtractor
from .params import (ExtractorParams, RKind, derive_params, lu_params,
                     max_output_len, rsh_params, xor_params)
from .trevisan import BitBuffer, ExtractionJob, extract_all, slice_subseed
from .weakdesign import (BasicDesign, BlockDesign, DesignVariant, design_d,
                         design_load, design_save, make_design)

__all__ = [
    "BasicDesign", "BitBuffer", "BlockDesign", "DesignVariant",
    "ExtractionJob", "ExtractorParams", "LuExtractor", "RKind",
    "RshExtractor", "XorExtractor", "derive_params", "design_d",
    "design_load", "design_save", "extract_all", "lu_params", "make_design",
    "max_output_len", "rsh_params", "slice_subseed", "xor_params",
]
