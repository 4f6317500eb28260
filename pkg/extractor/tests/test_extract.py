import numpy as np
import pytest
from scipy.io import wavfile

from lmdtw_extract import (
    ExtractionError,
    FeatureConfig,
    extract_features,
    extract_pair,
    load_audio,
    write_feature_file,
)
from lmdtw_extract.cli import main

SR = 22050


def write_tone(path, seconds=10.0, freq=440.0, sr=SR, dtype=np.float32):
    t = np.arange(int(seconds * sr)) / sr
    y = 0.5 * np.sin(2 * np.pi * freq * t)
    if dtype == np.int16:
        y = (y * 32767).astype(np.int16)
    else:
        y = y.astype(dtype)
    wavfile.write(path, sr, y)
    return path


@pytest.fixture()
def tone_wav(tmp_path):
    return write_tone(tmp_path / "tone.wav")


class TestAudioLoading:
    def test_float_and_pcm_agree(self, tmp_path):
        a = write_tone(tmp_path / "f.wav", seconds=1.0, dtype=np.float32)
        b = write_tone(tmp_path / "i.wav", seconds=1.0, dtype=np.int16)
        ya, yb = load_audio(a), load_audio(b)
        assert ya.shape == yb.shape
        assert np.max(np.abs(ya - yb)) < 1e-3

    def test_stereo_downmix(self, tmp_path):
        y = 0.5 * np.sin(2 * np.pi * 440 * np.arange(SR) / SR).astype(np.float32)
        wavfile.write(tmp_path / "st.wav", SR, np.stack([y, -y], axis=1))
        out = load_audio(tmp_path / "st.wav")
        assert np.max(np.abs(out)) < 1e-6  # opposite-phase channels cancel

    def test_resampling(self, tmp_path):
        sr = 44100
        y = 0.5 * np.sin(2 * np.pi * 440 * np.arange(sr) / sr).astype(np.float32)
        wavfile.write(tmp_path / "hi.wav", sr, y)
        out = load_audio(tmp_path / "hi.wav", SR)
        assert abs(len(out) - SR) <= 2

    def test_empty_rejected(self, tmp_path):
        wavfile.write(tmp_path / "e.wav", SR, np.zeros(0, np.float32))
        with pytest.raises(ExtractionError):
            load_audio(tmp_path / "e.wav")

    def test_garbage_rejected(self, tmp_path):
        p = tmp_path / "g.wav"
        p.write_bytes(b"not a wav at all")
        with pytest.raises(ExtractionError):
            load_audio(p)


class TestFeatureConfig:
    def test_fps(self):
        assert FeatureConfig().fps == pytest.approx(43.0664, abs=1e-4)

    def test_dims(self):
        assert FeatureConfig(feature_kind="mfcc-mod").dim == 100
        assert FeatureConfig(feature_kind="dlnc0").dim == 88 + 12

    def test_bad_kind(self):
        with pytest.raises(ExtractionError):
            FeatureConfig(feature_kind="chroma")


class TestExtraction:
    def test_frame_count_formula(self, tmp_path):
        # frames = 1 + samples // hop, matching ~43.0664 frames per second.
        for seconds, expected in ((1.0, 1 + 22050 // 512), (3.5, 1 + 77175 // 512)):
            wav = write_tone(tmp_path / f"{seconds}.wav", seconds=seconds)
            feats, man = extract_features(wav)
            assert feats.shape[0] == expected
            assert man["frames"] == expected

    def test_mfcc_mod_dimension_exactly_100(self, tone_wav):
        feats, _ = extract_features(tone_wav, FeatureConfig(feature_kind="mfcc-mod"))
        assert feats.shape[1] == 100

    def test_dlnc0_dimension(self, tone_wav):
        feats, _ = extract_features(tone_wav, FeatureConfig(feature_kind="dlnc0"))
        assert feats.shape[1] == 100  # 88 semitones + 12 chroma

    def test_silence_is_finite_and_near_zero(self, tmp_path):
        wavfile.write(tmp_path / "s.wav", SR, np.zeros(SR, np.float32))
        feats, _ = extract_features(tmp_path / "s.wav", FeatureConfig(feature_kind="dlnc0"))
        assert np.all(np.isfinite(feats))
        assert np.abs(feats).max() < 1e-6

    def test_tone_concentrates_energy_at_a4(self, tone_wav):
        cfg = FeatureConfig(feature_kind="dlnc0")
        feats, _ = extract_features(tone_wav, cfg)
        semis = feats[:, :88]
        hot = np.argmax(semis.sum(axis=0))
        assert cfg.midi_low + hot == 69  # A4 = MIDI 69 = 440 Hz

    def test_extract_pair_manifest(self, tmp_path):
        a = write_tone(tmp_path / "a.wav", seconds=2.0)
        b = write_tone(tmp_path / "b.wav", seconds=3.0, freq=660.0)
        fa, fb, man = extract_pair(a, b)
        assert fa.shape[1] == fb.shape[1] == 100
        assert man["a"]["duration_seconds"] == pytest.approx(2.0)
        assert man["b"]["duration_seconds"] == pytest.approx(3.0)
        assert man["fps"] == pytest.approx(43.0664, abs=1e-4)

    def test_extract_pair_rejects_mismatched_kinds(self, tmp_path):
        a = write_tone(tmp_path / "a.wav", seconds=1.0)
        with pytest.raises(ExtractionError):
            extract_pair(a, a, FeatureConfig(feature_kind="dlnc0"),
                         FeatureConfig(feature_kind="mfcc-mod"))

    def test_extraction_deterministic(self, tone_wav):
        f1, _ = extract_features(tone_wav)
        f2, _ = extract_features(tone_wav)
        assert np.array_equal(f1, f2)


class TestWriter:
    def test_rejects_nonfinite(self, tmp_path):
        bad = np.array([[1.0, np.nan]], dtype=np.float32)
        with pytest.raises(ExtractionError):
            write_feature_file(bad, 43.0664, tmp_path / "bad.lmdw")

    def test_header_layout(self, tmp_path):
        f = tmp_path / "x.lmdw"
        write_feature_file(np.ones((2, 3), np.float32), 50.0, f)
        raw = f.read_bytes()
        assert raw[:4] == b"LMDW"
        assert int.from_bytes(raw[4:6], "little") == 1
        assert int.from_bytes(raw[6:10], "little") == 2
        assert int.from_bytes(raw[10:14], "little") == 3
        assert len(raw) == 18 + 2 * 3 * 4


class TestCli:
    def test_missing_input_exit_2(self, tmp_path, capsys):
        rc = main(["--in", str(tmp_path / "no.wav"), "--out", str(tmp_path / "o.lmdw")])
        assert rc == 2

    def test_manifest_output(self, tone_wav, tmp_path, capsys):
        out = tmp_path / "t.lmdw"
        man = tmp_path / "t.json"
        assert main(["--kind", "mfcc-mod", "--in", str(tone_wav),
                     "--out", str(out), "--manifest", str(man)]) == 0
        import json
        data = json.loads(man.read_text())
        assert data["dim"] == 100


class TestSecondaryAcceptance:
    """Feature extractor acceptance: frame count, dimension, interop, determinism."""

    def test_criterion_feature_extractor(self, tone_wav, tmp_path, capsys):
        out1 = tmp_path / "r1.lmdw"
        out2 = tmp_path / "r2.lmdw"
        assert main(["--kind", "mfcc-mod", "--in", str(tone_wav), "--out", str(out1)]) == 0
        assert main(["--kind", "mfcc-mod", "--in", str(tone_wav), "--out", str(out2)]) == 0

        # 10 s of 22050 Hz audio with hop 512 -> ~431 frames; dim exactly 100.
        from lmdtw import load_features
        s = load_features(out1)
        assert abs(len(s) - 431) <= 1
        assert s.dim == 100

        # Byte-deterministic across runs.
        assert out1.read_bytes() == out2.read_bytes()

        # Usable end to end by the aligner's CLI.
        from lmdtw.cli import main as align_main
        capsys.readouterr()
        assert align_main(["align", str(out1), str(out2), "--algo", "linmdtw",
                           "--min-dim", "16"]) == 0
        assert "cost:             0.000000" in capsys.readouterr().out
