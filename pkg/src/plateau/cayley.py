"""Cayley graphs G_f on F_2^n with connection set the support of f.

Vertices are the integers 0..2^n-1 (module-wide index convention) and
``i ~ j`` iff ``f(i xor j) = 1``.
"""

from __future__ import annotations

import enum
import os
import random
from dataclasses import dataclass

import numpy as np

from . import kernels
from .boolfun import BooleanFunction, support, weight
from .errors import CertificateFailure, InputError, LoopedGraph, TooLargeForDense
from .matrix import ExactMatrix
from .transform import SpectrumKind, SpectrumVector

DEFAULT_DENSE_LIMIT = 8
MAX_DENSE_LIMIT = 12
DOT_LIMIT = 10


def dense_limit() -> int:
    raw = os.environ.get("PLATEAU_DENSE_LIMIT")
    if raw is None:
        return DEFAULT_DENSE_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"PLATEAU_DENSE_LIMIT={raw!r} is not an integer") from None
    if not 0 <= value <= MAX_DENSE_LIMIT:
        raise InputError(f"dense limit must lie in 0..{MAX_DENSE_LIMIT}")
    return value


@dataclass(frozen=True)
class CayleyGraph:
    n: int
    support: frozenset[int]
    degree: int

    @property
    def order(self) -> int:
        return 1 << self.n

    def adjacent(self, i: int, j: int) -> bool:
        return (i ^ j) in self.support

    def neighbors(self, i: int) -> list[int]:
        return sorted(i ^ s for s in self.support)

    def connection_function(self) -> BooleanFunction:
        tt = np.zeros(self.order, dtype=np.uint8)
        tt[list(self.support)] = 1
        return BooleanFunction(self.n, tt)


def build(f: BooleanFunction) -> CayleyGraph:
    if f(0):
        raise LoopedGraph("f(0) = 1 puts a loop at every vertex; analyse f xor 1 or a translate")
    supp = support(f)
    return CayleyGraph(f.n, frozenset(supp), weight(f))


def from_support(n: int, vectors) -> CayleyGraph:
    supp = frozenset(int(v) for v in vectors)
    if any(not 0 <= v < 1 << n for v in supp):
        raise InputError("support vector out of range")
    if 0 in supp:
        raise LoopedGraph("0 in the connection set")
    return CayleyGraph(n, supp, len(supp))


def _check_dense(n: int, limit: int | None) -> None:
    limit = dense_limit() if limit is None else limit
    if n > limit:
        raise TooLargeForDense(f"n={n} exceeds the dense-matrix limit {limit}")


def adjacency_array(g: CayleyGraph) -> np.ndarray:
    tt = np.zeros(g.order, dtype=np.int64)
    tt[list(g.support)] = 1
    idx = np.arange(g.order)
    return tt[idx[:, None] ^ idx[None, :]]


def adjacency_matrix(g: CayleyGraph, limit: int | None = None) -> ExactMatrix:
    _check_dense(g.n, limit)
    return ExactMatrix(adjacency_array(g))


def adjacency_csv(g: CayleyGraph, limit: int | None = None) -> str:
    rows = adjacency_matrix(g, limit).tolist()
    return "".join(",".join(str(x) for x in row) + "\n" for row in rows)


# --- connectivity -----------------------------------------------------------

def span_basis(vectors) -> list[int]:
    """Echelon basis of the F_2-span; each basis vector has a distinct leading bit."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def span(basis: list[int]) -> list[int]:
    elems = [0]
    for b in basis:
        elems += [e ^ b for e in elems]
    return sorted(elems)


def rank(g: CayleyGraph) -> int:
    return len(span_basis(sorted(g.support)))


def is_connected(g: CayleyGraph) -> bool:
    return rank(g) == g.n


def connected_components(g: CayleyGraph) -> list[list[int]]:
    """Cosets of span(support), each sorted, ordered by smallest vertex."""
    subgroup = span(span_basis(sorted(g.support)))
    seen = np.zeros(g.order, dtype=bool)
    components = []
    for v in range(g.order):
        if seen[v]:
            continue
        coset = sorted(v ^ h for h in subgroup)
        seen[coset] = True
        components.append(coset)
    return components


def translation_isomorphism(g: CayleyGraph, a: list[int], b: list[int]) -> int:
    """Return c with x -> x xor c an adjacency-preserving bijection from a onto b."""
    c = a[0] ^ b[0]
    image = sorted(x ^ c for x in a)
    if image != sorted(b):
        raise CertificateFailure(f"translation by {c} does not map component onto component")
    for x in a:
        for y in a:
            if g.adjacent(x, y) != g.adjacent(x ^ c, y ^ c):
                raise CertificateFailure(f"translation by {c} breaks adjacency at ({x}, {y})")
    return c


# --- spectrum ---------------------------------------------------------------

def _parity(vals: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(vals)
    for b in range(n):
        out ^= (vals >> b) & 1
    return out


def character_matrix(n: int) -> np.ndarray:
    """H[x, w] = (-1)^(w.x); column w is the character chi_w."""
    idx = np.arange(1 << n, dtype=np.int64)
    return 1 - 2 * _parity(idx[:, None] & idx[None, :], n)


def character(n: int, w: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return 1 - 2 * _parity(idx & w, n)


class CertificateMethod(str, enum.Enum):
    DENSE = "dense"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class SpectrumCertificate:
    eigenvalues: dict[int, int]
    method: CertificateMethod
    characters_checked: int


def spectrum(
    g: CayleyGraph,
    fourier: SpectrumVector,
    limit: int | None = None,
    samples: int = 64,
    seed: int = 0,
) -> SpectrumCertificate:
    """Eigenvalue multiset of G_f, certified by A chi_w = fourier[w] chi_w.

    Within the dense limit every character is checked through one exact
    matrix product; above it a seeded random sample of characters is
    checked by applying the adjacency operator without materialising A.
    """
    if fourier.kind is not SpectrumKind.FOURIER or fourier.n != g.n:
        raise InputError("need the Fourier spectrum of the same function")
    if fourier[0] != g.degree:
        raise CertificateFailure(f"fourier[0]={fourier[0]} is not the degree {g.degree}")
    limit = dense_limit() if limit is None else limit
    vals = fourier.values
    if g.n <= limit:
        H = character_matrix(g.n)
        lhs = kernels.matmul_checked(adjacency_array(g), H)
        rhs = H * vals[None, :]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            x, w = (int(t) for t in bad[0])
            raise CertificateFailure(f"A chi_{w} != {int(vals[w])} chi_{w} at vertex {x}")
        method, checked = CertificateMethod.DENSE, g.order
    else:
        rng = random.Random(seed)
        ws = sorted(set([0] + [rng.randrange(g.order) for _ in range(samples)]))
        idx = np.arange(g.order)
        for w in ws:
            chi = character(g.n, w)
            image = np.zeros(g.order, dtype=np.int64)
            for s in g.support:
                image += chi[idx ^ s]
            if not np.array_equal(image, vals[w] * chi):
                raise CertificateFailure(f"A chi_{w} != {int(vals[w])} chi_{w}")
        method, checked = CertificateMethod.SAMPLED, len(ws)
    return SpectrumCertificate(fourier.multiplicities(), method, checked)


# --- export -----------------------------------------------------------------

def export_dot(g: CayleyGraph, labels: str = "binary") -> str:
    if g.n > DOT_LIMIT:
        raise TooLargeForDense(f"DOT export is limited to n <= {DOT_LIMIT}")
    if labels not in ("binary", "integer"):
        raise InputError(f"unknown label style {labels!r}")

    def name(v: int) -> str:
        return format(v, f"0{g.n}b") if labels == "binary" else str(v)

    lines = ["graph G_f {", f"  // n={g.n} degree={g.degree}"]
    for v in range(g.order):
        lines.append(f'  "{name(v)}";')
    for i in range(g.order):
        for j in g.neighbors(i):
            if i < j:
                lines.append(f'  "{name(i)}" -- "{name(j)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
