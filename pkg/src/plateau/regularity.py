"""Strong regularity and strong walk-regularity certificates for Cayley graphs.

Parameters come from closed forms; each certificate records which
independent checks confirmed it:

* ``matrix_identity``: the exact polynomial identity in A, evaluated on
  the dense adjacency matrix;
* ``spectral_roots``: the same identity evaluated on every eigenvalue;
* ``walk_count_oracle`` / ``neighbor_count``: walks (or common neighbours)
  counted by propagation along adjacency lists, independent of the matrix
  code path;
* ``counting_identity``: r(r-e-1) = d(v-r-1).
"""

from __future__ import annotations

import enum
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import cayley
from .boolfun import BooleanFunction
from .cayley import CayleyGraph
from .classify import (
    PlateauReport,
    classify_plateaued,
    graph_eigenvalue_report,
    special_weight_value,
)
from .errors import (
    CertificateFailure,
    DegreeEquationFailure,
    DenominatorZero,
    IdentityFailure,
    InputError,
    NonIntegerParameters,
    NotThreeEigenvalues,
    ParityError,
    PreconditionViolation,
    RootFailure,
    SpecialWeight,
    TheoremViolation,
    TooLargeForDense,
)
from .matrix import ExactMatrix
from .transform import check_fourier_relation, fourier, parseval_check, walsh_hadamard

log = logging.getLogger(__name__)

MAX_WALK_ELL = 9
EXHAUSTIVE_N = 4


class Evidence(str, enum.Enum):
    MATRIX_IDENTITY = "matrix_identity"
    COUNTING_IDENTITY = "counting_identity"
    NEIGHBOR_COUNT = "neighbor_count"
    SPECTRAL_ROOTS = "spectral_roots"
    WALK_COUNT_ORACLE = "walk_count_oracle"


def _evidence_list(items) -> list[str]:
    return sorted(Evidence(e).value for e in items)


@dataclass(frozen=True)
class SrgCertificate:
    v: int
    r: int
    e: int
    d: int
    eigenvalues: tuple[int, ...]
    verified_by: frozenset[Evidence] = frozenset()

    def to_json_dict(self) -> dict:
        return {
            "type": "srg",
            "params": {"v": self.v, "r": self.r, "e": self.e, "d": self.d,
                       "eigenvalues": list(self.eigenvalues)},
            "verified_by": _evidence_list(self.verified_by),
            "witness": None,
        }


@dataclass(frozen=True)
class WalkRegCertificate:
    ell: int
    sigma: int
    mu: int
    nu: int
    verified_by: frozenset[Evidence] = frozenset()
    witness: dict | None = field(default=None, compare=False)

    @property
    def a_coefficient(self) -> int:
        """x_t in A^(2t+1) = x_t A + y_t J (y_t is mu)."""
        return self.sigma - self.mu

    def with_evidence(self, *extra: Evidence) -> "WalkRegCertificate":
        return WalkRegCertificate(self.ell, self.sigma, self.mu, self.nu,
                                  self.verified_by | frozenset(extra), self.witness)

    def to_json_dict(self) -> dict:
        return {
            "type": "walkreg",
            "params": {"ell": self.ell, "sigma": self.sigma, "mu": self.mu, "nu": self.nu},
            "verified_by": _evidence_list(self.verified_by),
            "witness": self.witness,
        }


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise NonIntegerParameters(f"{what} = {value} is not a nonnegative integer")
    return int(value)


def _distinct(spec) -> list[int]:
    if isinstance(spec, Mapping):
        return sorted(spec, reverse=True)
    return sorted(set(int(x) for x in spec), reverse=True)


# --- strongly regular -------------------------------------------------------

def srg_parameters(r: int, lam1: int, lam2: int) -> tuple[int, int]:
    """(e, d) of an srg with restricted eigenvalues lam1, lam2."""
    return r + lam1 * lam2 + lam1 + lam2, r + lam1 * lam2


def _pairs(order: int, samples: int | None, seed: int) -> Iterable[tuple[int, int]]:
    if samples is None:
        for i in range(order):
            for j in range(i + 1, order):
                yield i, j
        return
    rng = random.Random(seed)
    for _ in range(samples):
        i, j = rng.sample(range(order), 2)
        yield i, j


def verify_srg(
    g: CayleyGraph, e: int, d: int, limit: int | None = None, samples: int = 256, seed: int = 0
) -> frozenset[Evidence]:
    """Check (v, r, e, d) three ways; raises IdentityFailure on the first miss."""
    v, r = g.order, g.degree
    evidence = set()
    if r * (r - e - 1) != d * (v - r - 1):
        raise IdentityFailure(f"r(r-e-1) = {r * (r - e - 1)} != d(v-r-1) = {d * (v - r - 1)}")
    evidence.add(Evidence.COUNTING_IDENTITY)

    try:
        A = cayley.adjacency_matrix(g, limit)
    except TooLargeForDense:
        A = None
    if A is not None:
        lhs = A @ A
        rhs = A.scale(e - d) + ExactMatrix.identity(v).scale(r - d) + ExactMatrix.ones(v).scale(d)
        _require_equal(lhs, rhs, "A^2 = (e-d)A + (r-d)I + dJ")
        evidence.add(Evidence.MATRIX_IDENTITY)

    neigh = [set(g.neighbors(x)) for x in range(v)] if v <= 4096 else None
    for x, y in _pairs(v, None if g.n <= EXHAUSTIVE_N else samples, seed):
        nx_ = neigh[x] if neigh else set(g.neighbors(x))
        ny_ = neigh[y] if neigh else set(g.neighbors(y))
        common = len(nx_ & ny_)
        want = e if g.adjacent(x, y) else d
        if common != want:
            raise IdentityFailure(f"vertices {x},{y} share {common} neighbours, expected {want}",
                                  entry=(x, y))
    evidence.add(Evidence.NEIGHBOR_COUNT)
    return frozenset(evidence)


def check_strongly_regular(
    g: CayleyGraph, spectrum: Mapping[int, int] | Iterable[int], limit: int | None = None,
    seed: int = 0,
) -> SrgCertificate:
    if not cayley.is_connected(g):
        raise PreconditionViolation("strong regularity test needs a connected graph")
    values = _distinct(spectrum)
    if len(values) != 3:
        raise NotThreeEigenvalues(f"spectrum has {len(values)} distinct eigenvalues: {values}")
    r = g.degree
    if values[0] != r:
        raise PreconditionViolation(f"largest eigenvalue {values[0]} is not the degree {r}")
    if isinstance(spectrum, Mapping) and spectrum[r] != 1:
        raise PreconditionViolation("degree eigenvalue is not simple")
    lam1, lam2 = values[1], values[2]
    e, d = srg_parameters(r, lam1, lam2)
    if e < 0 or d < 0:
        raise NonIntegerParameters(f"(e, d) = ({e}, {d}) is negative")
    evidence = verify_srg(g, e, d, limit, seed=seed)
    return SrgCertificate(g.order, r, e, d, (r, lam1, lam2), evidence)


# --- complete bipartite -----------------------------------------------------

@dataclass(frozen=True)
class BipartiteComponent:
    vertices: tuple[int, ...]
    sides: tuple[tuple[int, ...], tuple[int, ...]]
    support_side: int | None  # index of the side equal to the support, None if it misses it


@dataclass(frozen=True)
class Theorem1Verdict:
    connected: bool
    components: tuple[BipartiteComponent, ...]
    e: int
    d: int
    srg: SrgCertificate | None

    def to_json_dict(self) -> dict:
        return {
            "connected": self.connected,
            "component_count": len(self.components),
            "complete_bipartite": True,
            "part_sizes": [[len(c.sides[0]), len(c.sides[1])] for c in self.components],
            "e": self.e,
            "d": self.d,
            "srg": None if self.srg is None else self.srg.to_json_dict(),
        }


def _two_colour(g: CayleyGraph, component: list[int]) -> tuple[list[int], list[int]]:
    colour = {component[0]: 0}
    queue = [component[0]]
    for x in queue:
        for y in g.neighbors(x):
            if y not in colour:
                colour[y] = 1 - colour[x]
                queue.append(y)
            elif colour[y] == colour[x]:
                raise TheoremViolation(f"odd cycle through {x}-{y}: component is not bipartite")
    if len(colour) != len(component):
        raise CertificateFailure("graph search disagrees with the span-coset component")
    left = sorted(v for v, c in colour.items() if c == 0)
    right = sorted(v for v, c in colour.items() if c == 1)
    return left, right


def check_theorem1(
    g: CayleyGraph, report: PlateauReport, limit: int | None = None, seed: int = 0
) -> Theorem1Verdict:
    if not (report.is_plateaued and report.special_weight):
        raise PreconditionViolation("needs an s-plateaued function with wt = 2^((n+s-2)/2)")
    if g.degree != report.weight or g.n != report.n:
        raise InputError("graph and plateau report describe different functions")
    d_expected = special_weight_value(report.n, report.s)
    supp = set(g.support)
    comps = []
    for comp in cayley.connected_components(g):
        left, right = _two_colour(g, comp)
        left_set = set(left)
        for x in comp:
            for y in comp:
                if g.adjacent(x, y) != ((x in left_set) != (y in left_set)):
                    raise TheoremViolation(f"component at {comp[0]} is not complete bipartite at ({x}, {y})")
        side = None
        if set(right) == supp:
            side = 1
        elif set(left) == supp:
            side = 0
        elif 0 in comp:
            raise TheoremViolation("support is not a side of the bipartition at 0")
        comps.append(BipartiteComponent(tuple(comp), (tuple(left), tuple(right)), side))

    connected = len(comps) == 1
    srg = None
    if connected:
        if set(comps[0].sides[comps[0].support_side ^ 1]) != set(range(g.order)) - supp:
            raise TheoremViolation("parts are not the support and its complement")
        evidence = verify_srg(g, 0, d_expected, limit, seed=seed)
        lam = (g.degree, 0, -g.degree) if g.order > 2 else (g.degree, -g.degree)
        srg = SrgCertificate(g.order, g.degree, 0, d_expected, lam, evidence)
    return Theorem1Verdict(connected, tuple(comps), 0, d_expected, srg)


# --- walk regularity --------------------------------------------------------

def _walk3_exact(n: int, s: int, r: int) -> tuple[Fraction, Fraction, Fraction]:
    if (n + s) % 2:
        raise ParityError(f"n+s = {n + s} is odd")
    if r == special_weight_value(n, s):
        raise SpecialWeight(f"r = {r} is the complete-bipartite weight 2^((n+s-2)/2)")
    mu = Fraction(r**3, 1 << n) - Fraction(2) ** (s - 2) * r
    sigma = mu + 2 ** (n + s - 2)
    return sigma, mu, mu


def theorem2_parameters(n: int, s: int, r: int) -> tuple[int, int, int]:
    """(sigma, mu, nu) of the strongly 3-walk-regular graph of an s-plateaued f of weight r."""
    sigma, mu, nu = _walk3_exact(n, s, r)
    return _as_int(sigma, "sigma"), _as_int(mu, "mu"), _as_int(nu, "nu")


def theorem3_parameters(n: int, s: int, r: int, t: int) -> WalkRegCertificate:
    """Parameters for ell = 2t+1, from the closed form and the recurrence (must agree)."""
    if t < 1:
        raise InputError("t must be at least 1")
    if (n + s) % 2:
        raise ParityError(f"n+s = {n + s} is odd")
    x1 = 2 ** (n + s - 2)
    if x1 == r * r:
        raise DenominatorZero("2^(n+s-2) = r^2")
    _, y1, _ = _walk3_exact(n, s, r)

    closed_y = y1 * Fraction(x1**t - r ** (2 * t), x1 - r * r)
    closed_x = x1**t

    xt, yt = x1, y1
    for _ in range(t - 1):
        xt, yt = xt * x1, xt * y1 + yt * r * r
    if (xt, yt) != (closed_x, closed_y):
        raise CertificateFailure(f"recurrence ({xt}, {yt}) != closed form ({closed_x}, {closed_y})")

    mu = _as_int(closed_y, "mu")
    sigma = _as_int(closed_y + closed_x, "sigma")
    return WalkRegCertificate(2 * t + 1, sigma, mu, mu)


def _require_equal(lhs: ExactMatrix, rhs: ExactMatrix, label: str) -> None:
    a, b = lhs._as_object(), rhs._as_object()
    bad = np.argwhere(a != b)
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise IdentityFailure(f"{label} fails at entry ({i}, {j}): {a[i, j]} != {b[i, j]}",
                              entry=(i, j))


def verify_strong_walk_regular(A: ExactMatrix, ell: int, sigma: int, mu: int, nu: int) -> bool:
    """A^ell + (mu-sigma)A + (mu-nu)I = mu J, exactly; raises IdentityFailure otherwise."""
    if ell < 1:
        raise InputError("ell must be positive")
    v = A.dimension
    lhs = A.power(ell) + A.scale(mu - sigma) + ExactMatrix.identity(v).scale(mu - nu)
    _require_equal(lhs, ExactMatrix.ones(v).scale(mu), f"strong {ell}-walk identity")
    return True


def spectral_walkreg_check(
    spectrum: Mapping[int, int] | Iterable[int], v: int, r: int, ell: int,
    sigma: int, mu: int, nu: int,
) -> bool:
    """Eigenvalue form of the walk identity (connected r-regular graph on v vertices)."""
    def poly(x):
        return x**ell + (mu - sigma) * x + mu - nu

    values = _distinct(spectrum)
    if r not in values:
        raise InputError(f"degree {r} is not an eigenvalue")
    for lam in values:
        if lam != r and poly(lam) != 0:
            raise RootFailure(f"eigenvalue {lam} is not a root: p({lam}) = {poly(lam)}", eigenvalue=lam)
    if poly(r) != mu * v:
        raise DegreeEquationFailure(f"p(r) = {poly(r)} != mu*v = {mu * v}")
    return True


@dataclass(frozen=True)
class WalkCounts:
    ell: int
    adjacent: int | None
    nonadjacent: int | None
    identical: int | None
    witness: dict | None = None

    @property
    def is_constant(self) -> bool:
        return self.witness is None

    def as_tuple(self) -> tuple[int | None, int | None, int | None]:
        return self.adjacent, self.nonadjacent, self.identical


def brute_force_walk_counts(
    A: ExactMatrix | np.ndarray, ell: int, starts: Iterable[int] | None = None
) -> WalkCounts:
    """Count length-ell walks by propagation along adjacency lists.

    Uses Python integers and no matrix products, so it is independent of
    the identity checks.  Classes with no pair are reported as None.  If a
    class is not constant, ``witness`` names the two disagreeing pairs.
    """
    if not 1 <= ell <= MAX_WALK_ELL:
        raise InputError(f"ell must lie in 1..{MAX_WALK_ELL}")
    rows = A.tolist() if isinstance(A, ExactMatrix) else np.asarray(A).tolist()
    v = len(rows)
    adj = [[j for j, a in enumerate(row) if a] for row in rows]
    found: dict[str, tuple[int, tuple[int, int]]] = {}
    for u in (range(v) if starts is None else starts):
        counts = [0] * v
        counts[u] = 1
        for _ in range(ell):
            nxt = [0] * v
            for x, c in enumerate(counts):
                if c:
                    for y in adj[x]:
                        nxt[y] += c
            counts = nxt
        for w, c in enumerate(counts):
            kind = "identical" if w == u else ("adjacent" if rows[u][w] else "nonadjacent")
            if kind not in found:
                found[kind] = (c, (u, w))
            elif found[kind][0] != c:
                first_c, first_pair = found[kind]
                return WalkCounts(ell, None, None, None, witness={
                    "class": kind, "pair": list(first_pair), "walks": first_c,
                    "other_pair": [u, w], "other_walks": c,
                })
    return WalkCounts(
        ell,
        found["adjacent"][0] if "adjacent" in found else None,
        found["nonadjacent"][0] if "nonadjacent" in found else None,
        found["identical"][0] if "identical" in found else None,
    )


def walk_counts_match(counts: WalkCounts, cert: WalkRegCertificate) -> bool:
    expected = (cert.sigma, cert.mu, cert.nu)
    return counts.is_constant and all(
        got is None or got == want for got, want in zip(counts.as_tuple(), expected)
    )


# --- end-to-end -------------------------------------------------------------

class Path(str, enum.Enum):
    DEGENERATE = "degenerate"
    COMPLETE_BIPARTITE = "complete_bipartite"
    WALK_REGULAR = "walk_regular"
    NOT_PLATEAUED = "not_plateaued"
    PER_COMPONENT = "per_component"


@dataclass
class Characterization:
    n: int
    report: PlateauReport
    path: Path
    connected: bool
    components: int
    eigenvalues: dict[int, int]
    spectrum_method: str
    bipartite: Theorem1Verdict | None = None
    srg: SrgCertificate | None = None
    walkreg: list[WalkRegCertificate] = field(default_factory=list)
    converse: dict | None = None
    component_reports: list["Characterization"] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def certificates(self) -> list[dict]:
        certs = []
        if self.srg is not None:
            certs.append(self.srg.to_json_dict())
        if self.bipartite is not None and self.bipartite.srg is not None and self.bipartite.srg is not self.srg:
            certs.append(self.bipartite.srg.to_json_dict())
        certs.extend(c.to_json_dict() for c in self.walkreg)
        return certs

    def to_json_dict(self) -> dict:
        return {
            "path": self.path.value,
            "connected": self.connected,
            "components": self.components,
            "eigenvalues": {str(k): self.eigenvalues[k] for k in sorted(self.eigenvalues)},
            "spectrum_certificate": self.spectrum_method,
            "complete_bipartite": None if self.bipartite is None else self.bipartite.to_json_dict(),
            "certificates": self.certificates(),
            "converse": self.converse,
            "component_reports": [c.to_json_dict() for c in self.component_reports],
            "warnings": list(self.warnings),
        }


def induced_function(f: BooleanFunction, basis: list[int]) -> BooleanFunction:
    """f restricted to span(basis), in coordinates c -> sum_j c_j basis[j]."""
    rho = len(basis)
    tt = []
    for c in range(1 << rho):
        vec = 0
        for j in range(rho):
            if c >> (rho - 1 - j) & 1:
                vec ^= basis[j]
        tt.append(f(vec))
    return BooleanFunction(rho, tt)


def _walk_oracle_starts(n: int, seed: int, samples: int = 4) -> list[int] | None:
    if n <= EXHAUSTIVE_N:
        return None
    rng = random.Random(seed)
    return sorted({0, *(rng.randrange(1 << n) for _ in range(samples - 1))})


def walk_regular_certificates(
    g: CayleyGraph, eigenvalues: Mapping[int, int], n: int, s: int,
    ell_max: int = 7, limit: int | None = None, seed: int = 0,
) -> list[WalkRegCertificate]:
    """Walk-regular certificates for ell = 3, 5, ..., ell_max with all applicable evidence."""
    r = g.degree
    try:
        A = cayley.adjacency_matrix(g, limit)
    except TooLargeForDense:
        A = None
    base = theorem2_parameters(n, s, r)
    certs = []
    for ell in range(3, ell_max + 1, 2):
        cert = theorem3_parameters(n, s, r, (ell - 1) // 2)
        if ell == 3 and (cert.sigma, cert.mu, cert.nu) != base:
            raise CertificateFailure(f"t=1 recurrence {cert} disagrees with {base}")
        spectral_walkreg_check(eigenvalues, g.order, r, ell, cert.sigma, cert.mu, cert.nu)
        cert = cert.with_evidence(Evidence.SPECTRAL_ROOTS)
        if A is not None:
            verify_strong_walk_regular(A, ell, cert.sigma, cert.mu, cert.nu)
            cert = cert.with_evidence(Evidence.MATRIX_IDENTITY)
            if ell <= MAX_WALK_ELL:
                counts = brute_force_walk_counts(A, ell, _walk_oracle_starts(n, seed))
                if not walk_counts_match(counts, cert):
                    raise TheoremViolation(
                        f"walk counts {counts.as_tuple()} (witness {counts.witness}) "
                        f"contradict ({cert.sigma}, {cert.mu}, {cert.nu}) at ell={ell}"
                    )
                cert = cert.with_evidence(Evidence.WALK_COUNT_ORACLE)
        certs.append(cert)
    return certs


def converse_check(
    g: CayleyGraph, eigenvalues: Mapping[int, int], limit: int | None = None
) -> dict:
    """For a non-plateaued f: no plateau walk-regular parameter set may fit a 4-eigenvalue graph.

    Every admissible s is tried.  A fit on a graph with four distinct
    eigenvalues would contradict the characterization and raises TheoremViolation;
    fits on graphs with fewer eigenvalues, or on disconnected graphs, are
    only reported (both fall outside its hypotheses).  When the dense matrix
    is available, the eigenvalue-sum criterion for strong 3-walk-regularity
    is cross-checked against brute-force walk counts.
    """
    n, r = g.n, g.degree
    connected = cayley.is_connected(g)
    values = _distinct(eigenvalues)
    fits = []
    for s in range(n % 2, n + 1, 2):
        if r == special_weight_value(n, s):
            continue
        try:
            params = theorem2_parameters(n, s, r)
            spectral_walkreg_check(eigenvalues, g.order, r, 3, *params)
        except (NonIntegerParameters, RootFailure, DegreeEquationFailure):
            continue
        fits.append(s)
    if fits and len(values) == 4 and connected:
        raise TheoremViolation(f"non-plateaued 4-eigenvalue graph fits plateau walk-regular parameters for s={fits}")

    out = {"distinct_eigenvalues": len(values), "fitting_s": fits}
    if len(values) == 4 and connected:
        lam_sum = sum(values[1:])
        out["restricted_eigenvalue_sum"] = lam_sum
        try:
            A = cayley.adjacency_matrix(g, limit)
        except TooLargeForDense:
            A = None
        if A is not None and g.n <= EXHAUSTIVE_N + 2:
            walk3 = brute_force_walk_counts(A, 3).is_constant
            out["strongly_3_walk_regular"] = walk3
            if walk3 != (lam_sum == 0):
                raise TheoremViolation(
                    f"3-walk-regularity {walk3} disagrees with eigenvalue sum {lam_sum}"
                )
    return out


def full_characterization(
    f: BooleanFunction, ell_max: int = 7, limit: int | None = None, seed: int = 0
) -> Characterization:
    if ell_max < 3 or ell_max % 2 == 0:
        raise InputError("ell_max must be an odd integer >= 3")
    wht = walsh_hadamard(f)
    four = fourier(f)
    if not parseval_check(wht):
        raise CertificateFailure("Parseval's identity fails")
    check_fourier_relation(four, wht)
    report = classify_plateaued(wht)

    g = cayley.build(f)
    spec = cayley.spectrum(g, four, limit, seed=seed)
    comps = cayley.connected_components(g)
    result = Characterization(
        n=f.n, report=report, path=Path.NOT_PLATEAUED, connected=len(comps) == 1,
        components=len(comps), eigenvalues=spec.eigenvalues, spectrum_method=spec.method.value,
    )
    if report.degenerate:
        result.path = Path.DEGENERATE
        result.warnings.append("constant function: empty graph, graph checks skipped")
        return result
    if report.is_plateaued:
        graph_eigenvalue_report(four, report)

    if report.is_plateaued and report.special_weight:
        result.path = Path.COMPLETE_BIPARTITE
        result.bipartite = check_theorem1(g, report, limit, seed)
        result.srg = result.bipartite.srg
        return result

    if not report.is_plateaued:
        result.converse = converse_check(g, spec.eigenvalues, limit)

    if not result.connected:
        result.path = Path.PER_COMPONENT
        result.warnings.append(
            f"G_f has {len(comps)} components; analysing the induced function on span(support)"
        )
        log.info("disconnected Cayley graph (%d components)", len(comps))
        for a, b in zip(comps, comps[1:]):
            cayley.translation_isomorphism(g, a, b)
        sub = induced_function(f, cayley.span_basis(sorted(g.support)))
        result.component_reports.append(full_characterization(sub, ell_max, limit, seed))
        return result

    if report.is_plateaued:
        result.path = Path.WALK_REGULAR
        result.walkreg = walk_regular_certificates(
            g, spec.eigenvalues, f.n, report.s, ell_max, limit, seed
        )
        if len(spec.eigenvalues) == 3:
            result.srg = check_strongly_regular(g, spec.eigenvalues, limit, seed)
        return result
    return result
