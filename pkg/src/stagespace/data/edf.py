"""Reader and writer for EDF files (16-bit PSG container format).

Layout: a 256-byte fixed header, then 256 bytes of header per signal,
then data records of interleaved 16-bit little-endian two's-complement
samples. Digital values map to physical units through the per-channel
affine scaling declared in the header:

    physical = (digital - dig_min) * (phys_max - phys_min) / (dig_max - dig_min) + phys_min

Only plain EDF signals are handled; 'EDF Annotations' channels are
skipped. Hypnograms come from a sidecar text file (see data.stages).
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field

import numpy as np

from .stages import RawStageLabel


class MalformedHeader(ValueError):
    """EDF header is structurally invalid (bad magic, inconsistent sizes)."""


class ScalingDegenerate(ValueError):
    """Channel declares dig_max == dig_min; physical scaling undefined."""


@dataclass
class ChannelSignal:
    name: str
    sample_rate: float
    physical_unit: str
    physical: np.ndarray  # float64, physical units
    digital: np.ndarray | None = None  # int16, as stored on disk
    phys_min: float = -32768.0
    phys_max: float = 32767.0
    dig_min: int = -32768
    dig_max: int = 32767

    def digitize(self) -> np.ndarray:
        """Quantize the physical signal back into stored digital values."""
        if self.digital is not None:
            return self.digital
        gain = (self.phys_max - self.phys_min) / (self.dig_max - self.dig_min)
        dig = np.round((self.physical - self.phys_min) / gain) + self.dig_min
        return np.clip(dig, self.dig_min, self.dig_max).astype(np.int16)


@dataclass
class RawRecording:
    recording_id: str
    patient_id: str
    channels: list[ChannelSignal]
    hypnogram: list[RawStageLabel] = field(default_factory=list)
    epoch_duration: float = 30.0

    @property
    def duration(self) -> float:
        ch = self.channels[0]
        return len(ch.physical) / ch.sample_rate

    @property
    def num_epochs(self) -> int:
        return int(self.duration // self.epoch_duration)

    def channel(self, name: str) -> ChannelSignal:
        for ch in self.channels:
            if ch.name == name:
                return ch
        raise KeyError(f"no channel named {name!r}")

    def validate(self) -> None:
        durations = {len(c.physical) / c.sample_rate for c in self.channels}
        if len(durations) > 1:
            raise ValueError(f"channels disagree on duration: {sorted(durations)}")
        if self.hypnogram and len(self.hypnogram) != self.num_epochs:
            raise ValueError(
                f"hypnogram has {len(self.hypnogram)} entries for {self.num_epochs} epochs"
            )


def _field(raw: bytes, start: int, width: int) -> str:
    return raw[start : start + width].decode("ascii", errors="replace").strip()


def _int_field(raw: bytes, start: int, width: int, what: str) -> int:
    text = _field(raw, start, width)
    try:
        return int(text)
    except ValueError:
        raise MalformedHeader(f"non-integer {what}: {text!r}") from None


def parse_edf(source, on_degenerate: str = "drop") -> RawRecording:
    """Parse an EDF byte stream, path, or file object into a RawRecording.

    Channels with dig_max == dig_min cannot be scaled; with
    on_degenerate='drop' (default) they are rejected with a warning,
    with 'raise' a ScalingDegenerate error is raised.
    """
    if isinstance(source, bytes):
        data = source
    elif hasattr(source, "read"):
        data = source.read()
    else:
        with open(source, "rb") as f:
            data = f.read()

    if len(data) < 256:
        raise MalformedHeader("file shorter than the 256-byte fixed header")
    head = data[:256]
    if head[:8] != b"0       ":
        raise MalformedHeader(f"bad version field: {head[:8]!r}")

    patient_id = _field(head, 8, 80)
    recording_id = _field(head, 88, 80)
    header_bytes = _int_field(head, 184, 8, "header byte count")
    n_records = _int_field(head, 236, 8, "record count")
    record_duration = float(_field(head, 244, 8) or "0")
    ns = _int_field(head, 252, 4, "signal count")
    if ns <= 0:
        raise MalformedHeader(f"signal count must be positive, got {ns}")
    if header_bytes != 256 * (ns + 1):
        raise MalformedHeader(
            f"header byte count {header_bytes} inconsistent with {ns} signals"
        )
    if len(data) < header_bytes:
        raise MalformedHeader("file truncated inside the signal headers")
    if n_records < 0:
        raise MalformedHeader("record count is negative (streaming EDF unsupported)")
    if record_duration <= 0:
        raise MalformedHeader(f"non-positive record duration: {record_duration}")

    sig = data[256:header_bytes]
    # Signal header columns at cumulative offsets: label 16, transducer 80,
    # unit 8, phys_min 8, phys_max 8, dig_min 8, dig_max 8, prefilter 80,
    # samples_per_record 8, reserved 32.

    def column(offset: int, width: int) -> list[str]:
        base = offset * ns
        return [
            sig[base + i * width : base + (i + 1) * width].decode("ascii", "replace").strip()
            for i in range(ns)
        ]

    labels = column(0, 16)
    units = column(96, 8)
    phys_min = [float(v) for v in column(104, 8)]
    phys_max = [float(v) for v in column(112, 8)]
    dig_min = [int(v) for v in column(120, 8)]
    dig_max = [int(v) for v in column(128, 8)]
    samples_per_rec = [int(v) for v in column(216, 8)]

    rec_size = 2 * sum(samples_per_rec)
    expected = header_bytes + n_records * rec_size
    if len(data) < expected:
        raise MalformedHeader(
            f"file holds {len(data)} bytes but header declares {expected}"
        )

    raw = np.frombuffer(data, dtype="<i2", offset=header_bytes, count=n_records * rec_size // 2)
    raw = raw.reshape(n_records, rec_size // 2)

    channels: list[ChannelSignal] = []
    pos = 0
    for i in range(ns):
        n = samples_per_rec[i]
        block = raw[:, pos : pos + n]
        pos += n
        if labels[i] == "EDF Annotations":
            continue
        if dig_max[i] == dig_min[i]:
            msg = (
                f"channel {labels[i]!r} has degenerate digital range "
                f"[{dig_min[i]}, {dig_max[i]}]; cannot scale"
            )
            if on_degenerate == "raise":
                raise ScalingDegenerate(msg)
            warnings.warn(msg + "; channel rejected")
            continue
        digital = np.ascontiguousarray(block).reshape(-1)
        gain = (phys_max[i] - phys_min[i]) / (dig_max[i] - dig_min[i])
        physical = (digital.astype(np.float64) - dig_min[i]) * gain + phys_min[i]
        channels.append(
            ChannelSignal(
                name=labels[i],
                sample_rate=n / record_duration,
                physical_unit=units[i],
                physical=physical,
                digital=digital,
                phys_min=phys_min[i],
                phys_max=phys_max[i],
                dig_min=dig_min[i],
                dig_max=dig_max[i],
            )
        )

    return RawRecording(recording_id=recording_id, patient_id=patient_id, channels=channels)


def _pad(text: str, width: int) -> bytes:
    b = text.encode("ascii")
    if len(b) > width:
        raise ValueError(f"field {text!r} exceeds {width} ascii bytes")
    return b.ljust(width)


def _num(value, width: int) -> bytes:
    text = repr(value) if isinstance(value, float) else str(value)
    if len(text) > width:
        text = f"{value:.{max(0, width - 6)}g}"[:width]
    return _pad(text, width)


def write_edf(recording: RawRecording, path=None) -> bytes:
    """Serialize a RawRecording to EDF bytes, optionally writing to path.

    Uses stored digital samples when present so that a parse -> write
    round trip is bit-exact; otherwise quantizes the physical signal.
    """
    if not recording.channels:
        raise ValueError("recording has no channels")
    duration = recording.duration
    # Smallest record duration giving an integer sample count per channel.
    record_duration = None
    for d in range(1, 61):
        if all(
            abs(c.sample_rate * d - round(c.sample_rate * d)) < 1e-9
            for c in recording.channels
        ) and abs(duration / d - round(duration / d)) < 1e-9:
            record_duration = d
            break
    if record_duration is None:
        raise ValueError("no record duration <= 60 s fits all channel rates")
    n_records = int(round(duration / record_duration))

    ns = len(recording.channels)
    header_bytes = 256 * (ns + 1)

    out = io.BytesIO()
    out.write(b"0       ")
    out.write(_pad(recording.patient_id, 80))
    out.write(_pad(recording.recording_id, 80))
    out.write(_pad("01.01.00", 8))
    out.write(_pad("00.00.00", 8))
    out.write(_num(header_bytes, 8))
    out.write(_pad("", 44))
    out.write(_num(n_records, 8))
    out.write(_num(record_duration, 8))
    out.write(_num(ns, 4))

    samples_per_rec = [int(round(c.sample_rate * record_duration)) for c in recording.channels]
    for getter, width in [
        (lambda c: c.name, 16),
        (lambda c: "", 80),
        (lambda c: c.physical_unit, 8),
        (lambda c: _num(c.phys_min, 8).decode(), 8),
        (lambda c: _num(c.phys_max, 8).decode(), 8),
        (lambda c: str(c.dig_min), 8),
        (lambda c: str(c.dig_max), 8),
        (lambda c: "", 80),
    ]:
        for ch in recording.channels:
            out.write(_pad(str(getter(ch)).strip(), width))
    for n in samples_per_rec:
        out.write(_num(n, 8))
    for _ in range(ns):
        out.write(_pad("", 32))

    digitals = [c.digitize() for c in recording.channels]
    for i, (dig, n) in enumerate(zip(digitals, samples_per_rec)):
        if len(dig) != n * n_records:
            raise ValueError(
                f"channel {recording.channels[i].name!r}: {len(dig)} samples, "
                f"expected {n * n_records}"
            )
    for r in range(n_records):
        for dig, n in zip(digitals, samples_per_rec):
            out.write(dig[r * n : (r + 1) * n].astype("<i2").tobytes())

    payload = out.getvalue()
    if path is not None:
        with open(path, "wb") as f:
            f.write(payload)
    return payload
