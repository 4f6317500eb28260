"""Command-line surface: extract one audio file into a feature file."""

from __future__ import annotations

import argparse
import json
import sys

from .features import KINDS, FeatureConfig, extract_features
from .fileformat import ExtractionError, write_feature_file


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lmdtw-extract",
        description="Extract DLNC0 or mfcc-mod features from audio into a "
                    "feature file the alignment CLI can read")
    ap.add_argument("--kind", choices=KINDS, default="mfcc-mod")
    ap.add_argument("--in", dest="input", required=True, help="input WAV file")
    ap.add_argument("--out", required=True, help="output feature file")
    ap.add_argument("--manifest", help="also write the extraction manifest as JSON")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = FeatureConfig(feature_kind=args.kind)
    try:
        feats, manifest = extract_features(args.input, cfg)
        write_feature_file(feats, cfg.fps, args.out)
    except (ExtractionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.manifest:
        with open(args.manifest, "w") as f:
            json.dump(manifest, f, indent=2)
    print(f"wrote {args.out}: {manifest['frames']} frames x {manifest['dim']} dims "
          f"at {manifest['fps']:.4f} fps ({args.kind})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
