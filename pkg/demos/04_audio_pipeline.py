"""End-to-end: synthesize two performances of a melody, extract features, align.

Requires the companion ``lmdtw-extract`` package. The second rendition plays
the same notes with different timing; mfcc-mod features plus the exact
aligner recover the correspondence, and the warping path's slope exposes the
tempo difference.
"""

import tempfile
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from lmdtw import linmdtw, load_features
from lmdtw.cli import main as lmdtw_cli
from lmdtw_extract.cli import main as extract_cli

SR = 22050
NOTES = [220.0, 277.18, 329.63, 440.0, 329.63, 277.18, 220.0]


def render(durations, path):
    chunks = []
    for freq, dur in zip(NOTES, durations):
        t = np.arange(int(dur * SR)) / SR
        env = np.minimum(1.0, 20.0 * np.minimum(t, t[::-1] + 1e-9))
        chunks.append(0.4 * env * np.sin(2 * np.pi * freq * t))
    wavfile.write(path, SR, np.concatenate(chunks).astype(np.float32))


work = Path(tempfile.mkdtemp())
render([0.5] * len(NOTES), work / "steady.wav")
render([0.3, 0.45, 0.7, 0.9, 0.6, 0.35, 0.3], work / "rubato.wav")

for name in ("steady", "rubato"):
    rc = extract_cli(["--kind", "mfcc-mod", "--in", str(work / f"{name}.wav"),
                      "--out", str(work / f"{name}.lmdw")])
    assert rc == 0

A = load_features(work / "steady.lmdw")
B = load_features(work / "rubato.lmdw")
result = linmdtw(A, B, min_dim=16)
print(f"\naligned {len(A)} x {len(B)} frames, cost {result.cost:.4f}")

mid = result.path[len(result.path) // 2]
print(f"midway, frame {mid[0]} of the steady take matches frame {mid[1]} "
      f"of the rubato take")
quarters = np.array_split(result.path, 4)
ratios = [(seg[-1, 1] - seg[0, 1]) / max(seg[-1, 0] - seg[0, 0], 1) for seg in quarters]
print("local tempo ratio by quarter of the piece: "
      + ", ".join(f"{r:.2f}" for r in ratios))

print("\nthe same alignment via both command-line tools:")
rc = lmdtw_cli(["align", str(work / "steady.lmdw"), str(work / "rubato.lmdw"),
                "--algo", "linmdtw", "--min-dim", "16",
                "--out", str(work / "alignment.path")])
assert rc == 0
