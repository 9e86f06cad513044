"""Plateaued / bent / semibent classification from the Walsh-Hadamard spectrum."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from .errors import (
    InputError,
    KindMismatch,
    PaperConsistencyViolation,
    ParityError,
    PreconditionViolation,
    SpecialWeight,
)
from .transform import SpectrumKind, SpectrumVector


class Sign(str, enum.Enum):
    ZERO = "zero"
    PLUS = "plus"
    MINUS = "minus"

    @classmethod
    def of(cls, value: int) -> "Sign":
        if value == 0:
            return cls.ZERO
        return cls.PLUS if value > 0 else cls.MINUS


def special_weight_value(n: int, s: int) -> int:
    """2^((n+s-2)/2): the weight at which the graph becomes complete bipartite."""
    if (n + s) % 2:
        raise ParityError(f"n+s = {n + s} is odd")
    return 1 << ((n + s - 2) // 2)


@dataclass(frozen=True)
class PlateauReport:
    n: int
    weight: int
    f0: int
    is_plateaued: bool
    s: int | None
    k: int | None
    balanced: bool
    w0_sign: Sign
    wht_multiplicities: dict[int, int] = field(hash=False)
    fourier_multiplicities: dict[int, int] = field(hash=False)
    special_weight: bool
    degenerate: bool
    bent: bool
    semibent: bool

    @property
    def half_k(self) -> int | None:
        return None if self.k is None else self.k // 2

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "weight": self.weight,
            "is_plateaued": self.is_plateaued,
            "s": self.s,
            "k": self.k,
            "balanced": self.balanced,
            "w0_sign": self.w0_sign.value,
            "bent": self.bent,
            "semibent": self.semibent,
            "wht_multiplicities": _json_counts(self.wht_multiplicities),
            "fourier_multiplicities": _json_counts(self.fourier_multiplicities),
            "special_weight": self.special_weight,
            "degenerate": self.degenerate,
        }


def _json_counts(counts: dict[int, int]) -> dict[str, int]:
    return {str(value): counts[value] for value in sorted(counts)}


def classify_plateaued(w: SpectrumVector) -> PlateauReport:
    if w.kind is not SpectrumKind.WALSH_HADAMARD:
        raise KindMismatch("classification needs the Walsh-Hadamard spectrum")
    n = w.n
    size = 1 << n
    values = w.tolist()
    w0 = values[0]
    weight = (size - w0) // 2
    # sum_w W(w) = 2^n * (-1)^f(0)
    f0 = 0 if sum(values) > 0 else 1

    wht_counts = dict(sorted(Counter(values).items()))
    fourier_vals = [-v // 2 for v in values]
    fourier_vals[0] += size // 2
    fourier_counts = dict(sorted(Counter(fourier_vals).items()))

    magnitudes = {abs(v) for v in values} - {0}
    s = k = None
    plateaued = False
    if len(magnitudes) == 1:
        k = magnitudes.pop()
        if k & (k - 1) == 0:
            s = 2 * (k.bit_length() - 1) - n
            plateaued = 0 <= s <= n
        if not plateaued:
            s = k = None

    special = plateaued and weight == special_weight_value(n, s)
    return PlateauReport(
        n=n,
        weight=weight,
        f0=f0,
        is_plateaued=plateaued,
        s=s,
        k=k,
        balanced=2 * weight == size,
        w0_sign=Sign.of(w0),
        wht_multiplicities=wht_counts,
        fourier_multiplicities=fourier_counts,
        special_weight=special,
        degenerate=weight in (0, size),
        bent=plateaued and s == 0,
        semibent=plateaued and s == (1 if n % 2 else 2),
    )


def predicted_multiplicities(
    n: int, s: int, balanced: bool, w0_sign: Sign | str, wt: int, f0: int = 0,
    allow_special: bool = False,
) -> tuple[int, int, int]:
    """Counts of the Walsh-Hadamard values (0, +k, -k) for an s-plateaued function.

    The pair count follows from Parseval; the +/- split from
    ``sum_w W(w) = 2^n (-1)^f(0)``.  The remaining arguments are checked
    for mutual consistency.  Neither constraint depends on the weight, so
    ``allow_special=True`` lifts the special-weight refusal.
    """
    if (n + s) % 2:
        raise ParityError(f"n+s = {n + s} is odd")
    if not 0 <= s <= n:
        raise PreconditionViolation(f"s={s} outside 0..{n}")
    if wt == special_weight_value(n, s) and not allow_special:
        raise SpecialWeight(f"wt={wt} equals 2^((n+s-2)/2); use the complete-bipartite path")
    w0_sign = Sign(w0_sign)
    k = 1 << ((n + s) // 2)
    w0 = (1 << n) - 2 * wt
    if balanced != (w0 == 0):
        raise InputError(f"balanced={balanced} contradicts wt={wt} for n={n}")
    if Sign.of(w0) is not w0_sign or abs(w0) not in (0, k):
        raise InputError(f"W(0) = {w0} is inconsistent with w0_sign={w0_sign.value}, k={k}")
    pairs = 1 << (n - s)
    diff = (1 << ((n - s) // 2)) * (1 if f0 == 0 else -1)
    m_plus = (pairs + diff) // 2
    m_minus = (pairs - diff) // 2
    return (1 << n) - pairs, m_plus, m_minus


def graph_eigenvalue_report(fourier: SpectrumVector, report: PlateauReport) -> dict[int, int]:
    """Tally the Cayley-graph eigenvalues and cross-check the plateau counting.

    ``fourier[0]`` is the degree ``wt(f)``; the remaining 2^n - 1 values
    lie in {0, +k/2, -k/2}.  With P = 2^(2n)/k^2 nonzero Walsh values,
    the balanced case has 2^n - P - 1 further zeros and P values +-k/2;
    the unbalanced case has 2^n - P zeros and P - 1 values +-k/2.
    """
    if fourier.kind is not SpectrumKind.FOURIER:
        raise KindMismatch("expected a Fourier spectrum")
    if not report.is_plateaued:
        raise PreconditionViolation("eigenvalue cross-check needs a plateaued function")
    values = fourier.tolist()
    tally = dict(sorted(Counter(values).items()))
    n = fourier.n
    if values[0] != report.weight:
        raise PaperConsistencyViolation(f"eigenvalue at w=0 is {values[0]}, expected wt={report.weight}")

    rest = Counter(values[1:])
    half = report.k // 2
    pairs = (1 << (2 * n)) // (report.k * report.k)
    if report.balanced:
        zeros, signed = (1 << n) - pairs - 1, pairs
    else:
        zeros, signed = (1 << n) - pairs, pairs - 1
    stray = set(rest) - {0, half, -half}
    if stray:
        raise PaperConsistencyViolation(f"eigenvalues {sorted(stray)} outside {{0, +-{half}}}")
    if rest[0] != zeros or rest[half] + rest[-half] != signed:
        raise PaperConsistencyViolation(
            f"tally {dict(rest)} contradicts predicted zeros={zeros}, +-{half} total={signed}"
        )
    return tally
