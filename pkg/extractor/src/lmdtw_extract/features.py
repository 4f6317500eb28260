"""Audio feature sets for alignment: mfcc-mod and DLNC0.

mfcc-mod: high-order mel-cepstral coefficients (HTK mel scale, FFT length
2048, 120 coefficients with the first 20 dropped), which discards loudness
and broad spectral tilt and keeps timbral detail.

DLNC0: decaying locally adaptive normalized semitone-energy onsets. Spectral
energy is folded into an 88-semitone filterbank, each frame is normalized by
its own magnitude (with an adaptive floor so silence maps to ~0 instead of
noise), the positive temporal difference picks out note onsets, and a
decaying kernel smears each onset over the following frames. A CENS chroma
block scaled by 0.1 is appended for coarse stability.

All parameters live in FeatureConfig and are echoed into the manifest.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.fft import dct, rfft
from scipy.signal import get_window

from .audio import load_audio
from .fileformat import ExtractionError

KINDS = ("dlnc0", "mfcc-mod")


@dataclass(frozen=True)
class FeatureConfig:
    feature_kind: str = "mfcc-mod"
    sample_rate: int = 22050
    hop: int = 512
    # mfcc-mod parameters
    fft_length: int = 2048
    n_mels: int = 128
    n_mfcc: int = 120
    mfcc_drop: int = 20
    # dlnc0 parameters
    midi_low: int = 21
    midi_high: int = 108
    decay_frames: int = 10
    norm_floor_fraction: float = 1e-4
    cens_weight: float = 0.1
    cens_smooth_frames: int = 41

    def __post_init__(self):
        if self.feature_kind not in KINDS:
            raise ExtractionError(f"unknown feature kind {self.feature_kind!r}; expected one of {KINDS}")
        if self.hop < 1 or self.fft_length < self.hop:
            raise ExtractionError("need fft_length >= hop >= 1")
        if self.mfcc_drop >= self.n_mfcc or self.n_mfcc > self.n_mels:
            raise ExtractionError("need mfcc_drop < n_mfcc <= n_mels")

    @property
    def fps(self) -> float:
        return self.sample_rate / self.hop

    @property
    def dim(self) -> int:
        if self.feature_kind == "mfcc-mod":
            return self.n_mfcc - self.mfcc_drop
        return (self.midi_high - self.midi_low + 1) + 12


def _power_spectrogram(y: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """(fft_length//2 + 1, frames) power spectrogram; frames = 1 + len(y)//hop."""
    n = cfg.fft_length
    padded = np.concatenate([np.zeros(n // 2), y, np.zeros(n // 2)])
    frames = 1 + len(y) // cfg.hop
    idx = np.arange(n)[None, :] + cfg.hop * np.arange(frames)[:, None]
    window = get_window("hann", n, fftbins=True)
    spec = rfft(padded[idx] * window, axis=1)
    return (spec.real ** 2 + spec.imag ** 2).T


def _hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def _mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def _mel_filterbank(cfg: FeatureConfig) -> np.ndarray:
    n_bins = cfg.fft_length // 2 + 1
    bin_hz = np.arange(n_bins) * cfg.sample_rate / cfg.fft_length
    edges = _mel_to_hz(np.linspace(0.0, _hz_to_mel(cfg.sample_rate / 2.0), cfg.n_mels + 2))
    fb = np.zeros((cfg.n_mels, n_bins))
    for b in range(cfg.n_mels):
        lo, mid, hi = edges[b], edges[b + 1], edges[b + 2]
        up = (bin_hz - lo) / max(mid - lo, 1e-12)
        down = (hi - bin_hz) / max(hi - mid, 1e-12)
        fb[b] = np.clip(np.minimum(up, down), 0.0, None)
    return fb


def mfcc_mod(y: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """(frames, n_mfcc - mfcc_drop) high-order mel-cepstral coefficients."""
    P = _power_spectrogram(y, cfg)
    mel = _mel_filterbank(cfg) @ P
    logmel = np.log(np.maximum(mel, 1e-10))
    coeffs = dct(logmel, type=2, axis=0, norm="ortho")
    return coeffs[cfg.mfcc_drop:cfg.n_mfcc].T.astype(np.float32)


def _semitone_filterbank(cfg: FeatureConfig) -> np.ndarray:
    """Triangular filters, one per MIDI pitch, on the FFT bin frequencies.

    Low pitches are narrower than one FFT bin; those filters fall back to
    their single nearest bin so no pitch is silently dropped.
    """
    n_bins = cfg.fft_length // 2 + 1
    bin_hz = np.arange(n_bins) * cfg.sample_rate / cfg.fft_length
    pitches = np.arange(cfg.midi_low, cfg.midi_high + 1)
    centers = 440.0 * 2.0 ** ((pitches - 69) / 12.0)
    fb = np.zeros((len(pitches), n_bins))
    for r, f0 in enumerate(centers):
        lo = f0 * 2.0 ** (-1.0 / 12.0)
        hi = f0 * 2.0 ** (1.0 / 12.0)
        up = (bin_hz - lo) / max(f0 - lo, 1e-12)
        down = (hi - bin_hz) / max(hi - f0, 1e-12)
        tri = np.clip(np.minimum(up, down), 0.0, None)
        if tri.sum() <= 0.0:
            tri[np.argmin(np.abs(bin_hz - f0))] = 1.0
        fb[r] = tri / tri.sum()
    return fb


def _normalize_columns(E: np.ndarray, floor_fraction: float, ord=2) -> np.ndarray:
    norms = np.linalg.norm(E, ord=ord, axis=0)
    floor = floor_fraction * max(float(norms.max()), 1e-12)
    return E / np.maximum(norms, max(floor, 1e-12))


def _cens(semitone_energy: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """(12, frames) quantized smoothed chroma, scaled by cens_weight."""
    pitches = np.arange(cfg.midi_low, cfg.midi_high + 1)
    chroma = np.zeros((12, semitone_energy.shape[1]))
    for cls in range(12):
        chroma[cls] = semitone_energy[pitches % 12 == cls].sum(axis=0)
    chroma = _normalize_columns(chroma, cfg.norm_floor_fraction, ord=1)
    quant = np.zeros_like(chroma)
    for threshold in (0.05, 0.1, 0.2, 0.4):
        quant += 0.25 * (chroma >= threshold)
    win = get_window("hann", cfg.cens_smooth_frames, fftbins=False)
    win /= win.sum()
    pad = cfg.cens_smooth_frames // 2
    padded = np.pad(quant, ((0, 0), (pad, pad)), mode="edge")
    smooth = np.stack([np.convolve(row, win, mode="valid") for row in padded])
    return cfg.cens_weight * _normalize_columns(smooth, cfg.norm_floor_fraction)


def dlnc0(y: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """(frames, 88 + 12) decaying normalized onset features plus weighted CENS."""
    P = _power_spectrogram(y, cfg)
    E = _semitone_filterbank(cfg) @ P
    N = _normalize_columns(np.sqrt(E), cfg.norm_floor_fraction)
    onset = np.maximum(np.diff(N, axis=1, prepend=N[:, :1]), 0.0)
    kernel = np.sqrt(1.0 / (1.0 + np.arange(cfg.decay_frames)))
    padded = np.pad(onset, ((0, 0), (cfg.decay_frames - 1, 0)))
    decayed = np.stack([np.convolve(row, kernel, mode="valid") for row in padded])
    out = np.concatenate([decayed, _cens(E, cfg)], axis=0)
    return out.T.astype(np.float32)


def extract_features(audio_path, cfg: FeatureConfig | None = None):
    """Returns (features as (frames, dim) float32, manifest dict)."""
    cfg = cfg or FeatureConfig()
    y = load_audio(audio_path, cfg.sample_rate)
    if cfg.feature_kind == "mfcc-mod":
        feats = mfcc_mod(y, cfg)
    else:
        feats = dlnc0(y, cfg)
    if not np.all(np.isfinite(feats)):
        raise ExtractionError("extraction produced non-finite features")
    manifest = {
        "input": str(audio_path),
        "samples": int(len(y)),
        "duration_seconds": len(y) / cfg.sample_rate,
        "frames": int(feats.shape[0]),
        "dim": int(feats.shape[1]),
        "fps": cfg.fps,
        "config": asdict(cfg),
    }
    return feats, manifest


def extract_pair(audio_a, audio_b, cfg_a: FeatureConfig | None = None,
                 cfg_b: FeatureConfig | None = None):
    """Extract two files under one configuration; returns a combined manifest.

    A differing feature kind between the two configs is rejected up front:
    alignments between different feature spaces are meaningless.
    """
    cfg_a = cfg_a or FeatureConfig()
    cfg_b = cfg_b or cfg_a
    if cfg_a.feature_kind != cfg_b.feature_kind:
        raise ExtractionError(
            f"feature kinds differ: {cfg_a.feature_kind!r} vs {cfg_b.feature_kind!r}")
    feats_a, man_a = extract_features(audio_a, cfg_a)
    feats_b, man_b = extract_features(audio_b, cfg_b)
    return feats_a, feats_b, {"a": man_a, "b": man_b, "fps": cfg_a.fps}
