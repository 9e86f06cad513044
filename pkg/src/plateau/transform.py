"""Exact Walsh-Hadamard and Fourier spectra.

Both spectra come from the same in-place butterfly: the Walsh-Hadamard
spectrum transforms the sign vector ``(-1)^f(x)``, the Fourier spectrum
transforms the 0/1 truth table.  They are tied together by

    fourier[w] = 2^(n-1) * [w == 0] - wht[w] / 2

which :func:`check_fourier_relation` verifies exactly.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .boolfun import BooleanFunction
from .errors import CertificateFailure, InputError, KindMismatch


class SpectrumKind(str, enum.Enum):
    WALSH_HADAMARD = "walsh_hadamard"
    FOURIER = "fourier"


@dataclass(frozen=True, eq=False)
class SpectrumVector:
    n: int
    kind: SpectrumKind
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.int64)
        if vals.shape != (1 << self.n,):
            raise InputError(f"spectrum for n={self.n} needs {1 << self.n} values")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "kind", SpectrumKind(self.kind))

    def __eq__(self, other):
        if not isinstance(other, SpectrumVector):
            return NotImplemented
        return (self.n, self.kind) == (other.n, other.kind) and bool(
            np.array_equal(self.values, other.values)
        )

    def __len__(self):
        return self.values.shape[0]

    def __getitem__(self, w: int) -> int:
        return int(self.values[w])

    def tolist(self) -> list[int]:
        return self.values.tolist()

    def multiplicities(self) -> dict[int, int]:
        vals, counts = np.unique(self.values, return_counts=True)
        return dict(zip(vals.tolist(), counts.tolist()))


def walsh_hadamard(f: BooleanFunction) -> SpectrumVector:
    signs = 1 - 2 * f.truth_table.astype(np.int64)
    return SpectrumVector(f.n, SpectrumKind.WALSH_HADAMARD, kernels.wht(signs))


def fourier(f: BooleanFunction) -> SpectrumVector:
    return SpectrumVector(f.n, SpectrumKind.FOURIER, kernels.wht(f.truth_table.astype(np.int64)))


def parseval_check(s: SpectrumVector) -> bool:
    if s.kind is not SpectrumKind.WALSH_HADAMARD:
        raise KindMismatch("Parseval's identity applies to the Walsh-Hadamard spectrum")
    total = sum(v * v for v in s.tolist())
    return total == 1 << (2 * s.n)


def check_fourier_relation(four: SpectrumVector, wht: SpectrumVector) -> None:
    """Raise CertificateFailure unless fourier = 2^(n-1)*delta - wht/2 everywhere."""
    if four.kind is not SpectrumKind.FOURIER or wht.kind is not SpectrumKind.WALSH_HADAMARD:
        raise KindMismatch("expected (Fourier, Walsh-Hadamard) spectra")
    if four.n != wht.n:
        raise InputError("spectra have different n")
    expected = -wht.values // 2
    if np.any(wht.values % 2):
        raise CertificateFailure("Walsh-Hadamard spectrum has an odd entry")
    expected[0] += 1 << (four.n - 1)
    bad = np.flatnonzero(expected != four.values)
    if bad.size:
        w = int(bad[0])
        raise CertificateFailure(
            f"Fourier/Walsh relation fails at w={w}: {four[w]} != {int(expected[w])}"
        )


# --- export -----------------------------------------------------------------

def to_csv(s: SpectrumVector) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["w_index", "value"])
    for w, value in enumerate(s.tolist()):
        writer.writerow([w, value])
    return buf.getvalue()


def to_json_dict(s: SpectrumVector) -> dict:
    return {"n": s.n, "kind": s.kind.value, "values": s.tolist()}


def to_json(s: SpectrumVector) -> str:
    return json.dumps(to_json_dict(s))


def from_json(text: str) -> SpectrumVector:
    data = json.loads(text)
    try:
        return SpectrumVector(int(data["n"]), SpectrumKind(data["kind"]), data["values"])
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed spectrum JSON: {exc}") from exc
