"""Audio front end for the alignment toolkit: DLNC0 and mfcc-mod features."""

from .audio import load_audio
from .features import (
    KINDS,
    FeatureConfig,
    dlnc0,
    extract_features,
    extract_pair,
    mfcc_mod,
)
from .fileformat import ExtractionError, write_feature_file

__version__ = "0.1.0"

__all__ = [
    "ExtractionError", "FeatureConfig", "KINDS", "dlnc0", "extract_features",
    "extract_pair", "load_audio", "mfcc_mod", "write_feature_file",
]
