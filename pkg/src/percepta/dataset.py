"""Corpus ingestion: manifests, splits, spectrogram IO and normalization.

Spectrograms travel as 2-D matrices (mel bands x time frames). The corpus
layout is one directory per genre; files may be precomputed spectrograms
(binary ``.spc`` or ``.csv``) or 16-bit PCM ``.wav`` clips, in which case
a log-mel spectrogram is computed as a fallback.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import struct
import wave
from dataclasses import dataclass, field
from hashlib import sha256
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    DataError,
    DegenerateInputError,
    FormatError,
    IngestionError,
    InputError,
)
from .rng import labeled_rng

log = logging.getLogger(__name__)

GENRES = ("blues", "classical", "country", "disco", "hiphop", "jazz",
          "metal", "pop", "reggae", "rock")

# Filtered class sizes per genre: (total, train, valid, test).
CLASS_SIZES = {
    "blues": (100, 46, 23, 31),
    "classical": (99, 48, 20, 31),
    "country": (98, 45, 23, 30),
    "disco": (93, 42, 22, 29),
    "hiphop": (92, 47, 18, 27),
    "jazz": (87, 43, 17, 27),
    "metal": (91, 44, 20, 27),
    "pop": (84, 41, 13, 30),
    "reggae": (86, 43, 17, 26),
    "rock": (100, 44, 24, 32),
}

SPLIT_NAMES = ("train", "valid", "test")
EPS_PAD = 1e-10
SPEC_MAGIC = b"SPC1"
AUDIO_SUFFIXES = (".spc", ".csv", ".wav")


@dataclass
class Spectrogram:
    id: str
    genre: str | None
    data: np.ndarray  # rows = mel bands, cols = time frames


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    genre: str
    path: str


@dataclass
class DatasetManifest:
    entries: list
    excluded_ids: set
    value_range: tuple | None = None

    def ids(self):
        return [e.id for e in self.entries]

    def genre_of(self):
        return {e.id: e.genre for e in self.entries}

    def genre_counts(self):
        counts = {}
        for e in self.entries:
            counts[e.genre] = counts.get(e.genre, 0) + 1
        return counts


@dataclass
class SplitAssignment:
    assignment: dict  # id -> "train" | "valid" | "test"
    seed: int
    counts: dict  # genre -> (train, valid, test)

    def ids_in(self, split: str):
        return [i for i, s in self.assignment.items() if s == split]


# ---------------------------------------------------------------------------
# spectrogram file formats
# ---------------------------------------------------------------------------

def save_spectrogram(spec: Spectrogram, path) -> None:
    """Write the binary format: magic, u32 rows/cols, f32 values row-major."""
    data = np.asarray(spec.data, dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(SPEC_MAGIC)
        fh.write(struct.pack("<II", data.shape[0], data.shape[1]))
        fh.write(data.tobytes(order="C"))


def _load_spc(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if raw[:4] != SPEC_MAGIC:
        raise FormatError(f"{path}: bad magic at byte 0 "
                          f"(got {raw[:4]!r}, want {SPEC_MAGIC!r})")
    if len(raw) < 12:
        raise FormatError(f"{path}: truncated header at byte {len(raw)}")
    rows, cols = struct.unpack_from("<II", raw, 4)
    if rows < 1 or cols < 1:
        raise FormatError(f"{path}: degenerate dimensions {rows}x{cols}")
    expected = 12 + rows * cols * 4
    if len(raw) != expected:
        raise FormatError(
            f"{path}: payload ends at byte {len(raw)}, expected {expected} "
            f"for {rows}x{cols}")
    values = np.frombuffer(raw, dtype="<f4", offset=12)
    return values.reshape(rows, cols).astype(np.float64)


def _load_csv(path) -> np.ndarray:
    rows = []
    width = None
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from exc
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise FormatError(
                    f"{path}:{lineno}: ragged row ({len(row)} values, "
                    f"expected {width})")
    if not rows:
        raise FormatError(f"{path}: no rows")
    return np.asarray(rows, dtype=np.float64)


def load_spectrogram(path) -> Spectrogram:
    """Load a precomputed spectrogram (.spc binary or .csv)."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".spc":
        data = _load_spc(path)
    elif suffix == ".csv":
        data = _load_csv(path)
    else:
        raise FormatError(f"{path}: unsupported spectrogram format {suffix!r}")
    if not np.isfinite(data).all():
        raise DataError(f"{path}: non-finite values in payload")
    return Spectrogram(id=path.stem, genre=None, data=data)


# ---------------------------------------------------------------------------
# mel fallback for raw audio
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MelParams:
    sample_rate: int = 22050
    n_fft: int = 2048
    hop: int = 512
    n_mels: int = 128
    eps_log: float = 1e-10

    def to_json(self):
        return {"sample_rate": self.sample_rate, "n_fft": self.n_fft,
                "hop": self.hop, "n_mels": self.n_mels,
                "eps_log": self.eps_log}


def mel_filterbank(n_mels: int, n_fft: int, sample_rate: float) -> np.ndarray:
    """Triangular filters with centers equally spaced on the mel scale."""
    def hz_to_mel(f):
        return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=float) / 700.0)

    def mel_to_hz(m):
        return 700.0 * (10.0 ** (np.asarray(m, dtype=float) / 2595.0) - 1.0)

    n_bins = n_fft // 2 + 1
    freqs = np.arange(n_bins) * (sample_rate / n_fft)
    pts = mel_to_hz(np.linspace(hz_to_mel(0.0), hz_to_mel(sample_rate / 2.0),
                                n_mels + 2))
    bank = np.zeros((n_mels, n_bins))
    for m in range(n_mels):
        lo, center, hi = pts[m], pts[m + 1], pts[m + 2]
        rising = (freqs - lo) / (center - lo)
        falling = (hi - freqs) / (hi - center)
        bank[m] = np.clip(np.minimum(rising, falling), 0.0, None)
    return bank


def mel_band_centers(params: MelParams) -> np.ndarray:
    def hz_to_mel(f):
        return 2595.0 * np.log10(1.0 + f / 700.0)

    def mel_to_hz(m):
        return 700.0 * (10.0 ** (np.asarray(m) / 2595.0) - 1.0)

    pts = mel_to_hz(np.linspace(hz_to_mel(0.0),
                                hz_to_mel(params.sample_rate / 2.0),
                                params.n_mels + 2))
    return pts[1:-1]


def compute_mel(waveform, params: MelParams = MelParams()) -> Spectrogram:
    """STFT magnitude -> triangular mel filterbank -> log(1 + s/eps)."""
    waveform = np.asarray(waveform, dtype=np.float64).ravel()
    if waveform.size == 0:
        raise InputError("empty waveform")
    frames = -(-waveform.size // params.hop)
    padded = np.zeros((frames - 1) * params.hop + params.n_fft)
    padded[:waveform.size] = waveform
    window = np.hanning(params.n_fft)
    idx = np.arange(params.n_fft)[None, :] + \
        (np.arange(frames) * params.hop)[:, None]
    mag = np.abs(np.fft.rfft(padded[idx] * window, axis=1)).T
    bank = mel_filterbank(params.n_mels, params.n_fft, params.sample_rate)
    mel = bank @ mag
    return Spectrogram(id="", genre=None,
                       data=np.log1p(mel / params.eps_log))


def read_wav(path) -> tuple:
    """Read 16-bit PCM WAV; stereo is averaged to mono. Returns (signal, sr)."""
    with wave.open(str(path), "rb") as fh:
        if fh.getsampwidth() != 2:
            raise FormatError(f"{path}: only 16-bit PCM WAV is supported")
        n = fh.getnframes()
        raw = fh.readframes(n)
        channels = fh.getnchannels()
        rate = fh.getframerate()
    samples = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    if channels > 1:
        samples = samples.reshape(-1, channels).mean(axis=1)
    return samples, rate


def load_any(path, mel_params: MelParams = MelParams()) -> Spectrogram:
    path = Path(path)
    if path.suffix.lower() == ".wav":
        signal, _ = read_wav(path)
        spec = compute_mel(signal, mel_params)
        spec.id = path.stem
        return spec
    return load_spectrogram(path)


# ---------------------------------------------------------------------------
# trimming and normalization
# ---------------------------------------------------------------------------

def trim_padding(spec: Spectrogram, eps: float = EPS_PAD) -> Spectrogram:
    """Drop leading/trailing frames whose max |value| <= eps."""
    col_peak = np.abs(spec.data).max(axis=0)
    live = np.flatnonzero(col_peak > eps)
    if live.size == 0:
        raise DegenerateInputError(f"{spec.id or 'spectrogram'}: all frames "
                                   f"are below the padding threshold")
    return Spectrogram(id=spec.id, genre=spec.genre,
                       data=spec.data[:, live[0]:live[-1] + 1].copy())


def normalize(spec: Spectrogram, lo: float, hi: float) -> Spectrogram:
    """Affine map lo->0, hi->1, clamped to [0, 1]."""
    if not hi > lo:
        raise ConfigError(f"normalize requires hi > lo, got lo={lo} hi={hi}")
    data = np.clip((spec.data - lo) / (hi - lo), 0.0, 1.0)
    return Spectrogram(id=spec.id, genre=spec.genre, data=data)


# ---------------------------------------------------------------------------
# manifest
# ---------------------------------------------------------------------------

def read_exclusion_list(path) -> list:
    ids = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            ids.append(line)
    return ids


def default_exclusion_file() -> Path:
    return Path(__file__).parent / "data" / "gtzan_exclusions.txt"


def build_manifest(root_path, exclusion_list=None) -> DatasetManifest:
    """Scan one-directory-per-genre corpus, dropping excluded ids.

    Exclusion ids that are absent from the corpus produce a warning only,
    so a partial corpus can still be prepared.
    """
    root = Path(root_path)
    if not root.is_dir():
        raise ConfigError(f"corpus root {root} does not exist")
    excluded = list(read_exclusion_list(exclusion_list)) if exclusion_list else []
    excluded_set = set(excluded)

    entries = []
    seen = {}
    for sub in sorted(p for p in root.iterdir() if p.is_dir()):
        if sub.name.startswith("."):
            continue
        if sub.name not in GENRES:
            raise IngestionError(f"unknown genre directory {sub.name!r} "
                                 f"under {root}")
        for f in sorted(sub.iterdir()):
            if f.suffix.lower() not in AUDIO_SUFFIXES or not f.is_file():
                continue
            sid = f.stem
            if sid in seen:
                raise IngestionError(f"duplicate id {sid!r}: {f} and {seen[sid]}")
            seen[sid] = f
            if sid in excluded_set:
                continue
            entries.append(ManifestEntry(id=sid, genre=sub.name, path=str(f)))
    missing = excluded_set - set(seen)
    if missing:
        log.warning("%d exclusion ids not found in corpus (e.g. %s)",
                    len(missing), sorted(missing)[0])
    entries.sort(key=lambda e: e.id)
    return DatasetManifest(entries=entries, excluded_ids=excluded_set & set(seen))


def scan_value_range(manifest: DatasetManifest,
                     mel_params: MelParams = MelParams()) -> tuple:
    lo = np.inf
    hi = -np.inf
    for entry in manifest.entries:
        data = load_any(entry.path, mel_params).data
        lo = min(lo, float(data.min()))
        hi = max(hi, float(data.max()))
    if not np.isfinite(lo) or not np.isfinite(hi):
        raise DataError("could not determine corpus value range")
    return lo, hi


def manifest_to_json(manifest: DatasetManifest) -> dict:
    doc = {
        "entries": [{"id": e.id, "genre": e.genre, "path": e.path}
                    for e in manifest.entries],
        "excluded": sorted(manifest.excluded_ids),
    }
    if manifest.value_range is not None:
        doc["value_range"] = {"lo": manifest.value_range[0],
                              "hi": manifest.value_range[1]}
    else:
        doc["value_range"] = None
    return doc


def manifest_hash(manifest: DatasetManifest) -> str:
    blob = json.dumps(manifest_to_json(manifest), sort_keys=True,
                      separators=(",", ":"))
    return sha256(blob.encode()).hexdigest()[:16]


def save_manifest(manifest: DatasetManifest, path) -> None:
    Path(path).write_text(json.dumps(manifest_to_json(manifest), indent=2,
                                     sort_keys=True) + "\n")


def load_manifest(path) -> DatasetManifest:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    try:
        entries = [ManifestEntry(id=e["id"], genre=e["genre"], path=e["path"])
                   for e in doc["entries"]]
        excluded = set(doc.get("excluded", []))
        vr = doc.get("value_range")
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: missing manifest field {exc}") from exc
    value_range = (vr["lo"], vr["hi"]) if vr else None
    return DatasetManifest(entries=entries, excluded_ids=excluded,
                           value_range=value_range)


def load_entry(entry: ManifestEntry,
               mel_params: MelParams = MelParams()) -> Spectrogram:
    spec = load_any(entry.path, mel_params)
    spec.id = entry.id
    spec.genre = entry.genre
    return spec


# ---------------------------------------------------------------------------
# splits
# ---------------------------------------------------------------------------

def canonical_split_counts() -> dict:
    return {g: (t, v, s) for g, (_, t, v, s) in CLASS_SIZES.items()}


def proportional_split_counts(manifest: DatasetManifest) -> dict:
    """Canonical counts when the corpus matches the published class sizes,
    otherwise a largest-remainder split at the published global ratio."""
    counts = manifest.genre_counts()
    if counts == {g: c[0] for g, c in CLASS_SIZES.items()}:
        return canonical_split_counts()
    totals = np.array([[c[1], c[2], c[3]] for c in CLASS_SIZES.values()])
    fractions = totals.sum(axis=0) / totals.sum()
    out = {}
    for genre in sorted(counts):
        n = counts[genre]
        raw = fractions * n
        base = np.floor(raw).astype(int)
        rem = n - base.sum()
        order = np.argsort(-(raw - base))
        for i in range(rem):
            base[order[i]] += 1
        out[genre] = tuple(int(x) for x in base)
    return out


def assign_splits(manifest: DatasetManifest, target_counts: dict,
                  seed: int) -> SplitAssignment:
    """Shuffle ids within each genre and deal them train -> valid -> test."""
    genre_ids = {}
    for e in manifest.entries:
        genre_ids.setdefault(e.genre, []).append(e.id)
    for genre, ids in genre_ids.items():
        if genre not in target_counts:
            raise ConfigError(f"no split counts for genre {genre!r}")
        want = target_counts[genre]
        if sum(want) != len(ids):
            raise ConfigError(
                f"split counts for {genre!r} sum to {sum(want)} but the "
                f"manifest has {len(ids)} entries")
    assignment = {}
    for genre in sorted(genre_ids):
        ids = sorted(genre_ids[genre])
        rng = labeled_rng(seed, f"split:{genre}")
        order = rng.permutation(len(ids))
        shuffled = [ids[i] for i in order]
        n_train, n_valid, n_test = target_counts[genre]
        for i, sid in enumerate(shuffled):
            if i < n_train:
                assignment[sid] = "train"
            elif i < n_train + n_valid:
                assignment[sid] = "valid"
            else:
                assignment[sid] = "test"
    return SplitAssignment(assignment=assignment, seed=seed,
                           counts={g: tuple(target_counts[g])
                                   for g in sorted(genre_ids)})


def save_splits(splits: SplitAssignment, path, manifest_hash_hex: str) -> None:
    doc = {
        "seed": splits.seed,
        "manifest_hash": manifest_hash_hex,
        "counts": {g: list(c) for g, c in splits.counts.items()},
        "assignments": splits.assignment,
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_splits(path) -> tuple:
    """Returns (SplitAssignment, manifest_hash)."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    try:
        splits = SplitAssignment(
            assignment=dict(doc["assignments"]),
            seed=int(doc["seed"]),
            counts={g: tuple(c) for g, c in doc["counts"].items()})
        return splits, doc["manifest_hash"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: missing splits field {exc}") from exc
