"""Report assembly and certificate sweeps used by the command-line front end."""

from __future__ import annotations

import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Iterator

import numpy as np

from . import cayley
from .boolfun import AnfPolynomial, BooleanFunction, anf_to_function, degree, function_to_anf
from .classify import classify_plateaued, predicted_multiplicities
from .errors import CertificateFailure, InputError
from .regularity import Path, full_characterization
from .transform import check_fourier_relation, fourier, parseval_check, walsh_hadamard

EXHAUSTIVE_MAX_N = 4
SAMPLED_MAX_N = 8
GENERATORS = ("quadratic", "uniform", "mixed")


def _input_block(f: BooleanFunction) -> dict:
    block = {"n": f.n, "truth_table": f.to_bitstring(), "anf": str(function_to_anf(f)),
             "degree": degree(f)}
    if f.n >= 2:
        block["hex"] = f.to_hex()
    return block


def analyze(f: BooleanFunction, ell_max: int = 7, dense_limit: int | None = None,
            seed: int = 0) -> dict:
    """Full JSON-ready report for one function.

    Parseval and the Fourier/Walsh relation are asserted on every call.
    """
    wht = walsh_hadamard(f)
    four = fourier(f)
    if not parseval_check(wht):
        raise CertificateFailure("Parseval's identity fails")
    check_fourier_relation(four, wht)
    char = full_characterization(f, ell_max=ell_max, limit=dense_limit, seed=seed)
    g = cayley.build(f)
    report = char.report.to_json_dict()
    return {
        "input": _input_block(f),
        "transforms": {
            "walsh_hadamard": wht.tolist(),
            "fourier": four.tolist(),
            "parseval": True,
            "fourier_relation": True,
        },
        "plateau": report,
        "degenerate": report["degenerate"],
        "graph": {
            "vertices": g.order,
            "degree": g.degree,
            "rank": cayley.rank(g),
            "connected": char.connected,
            "components": char.components,
        },
        "characterization": char.to_json_dict(),
    }


def load_schema() -> dict:
    text = resources.files("plateau").joinpath("schemas/analyze.schema.json").read_text("utf-8")
    return json.loads(text)


def validate_report(doc: dict) -> None:
    """Raise jsonschema.ValidationError if ``doc`` does not match the shipped schema."""
    import jsonschema

    jsonschema.validate(doc, load_schema())


# --- sweeps -----------------------------------------------------------------

def random_quadratic(n: int, rng: random.Random) -> BooleanFunction:
    """Random ANF of degree <= 2 without constant term (so f(0) = 0)."""
    monomials = [(i,) for i in range(1, n + 1) if rng.getrandbits(1)]
    monomials += [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.getrandbits(1)]
    return anf_to_function(AnfPolynomial(n, monomials))


def random_uniform(n: int, rng: random.Random) -> BooleanFunction:
    bits = rng.getrandbits(1 << n)
    tt = [(bits >> i) & 1 for i in range(1 << n)]
    tt[0] = 0
    return BooleanFunction(n, tt)


def sample_functions(n: int, count: int, seed: int, generator: str = "mixed") -> list[BooleanFunction]:
    if generator not in GENERATORS:
        raise InputError(f"unknown generator {generator!r}")
    rng = random.Random(seed)
    out = []
    for i in range(count):
        kind = generator if generator != "mixed" else ("quadratic" if i % 2 == 0 else "uniform")
        out.append(random_quadratic(n, rng) if kind == "quadratic" else random_uniform(n, rng))
    return out


def all_functions(n: int, start: int = 0, stop: int | None = None) -> Iterator[BooleanFunction]:
    size = 1 << n
    stop = (1 << size) if stop is None else stop
    shifts = np.arange(size, dtype=np.uint64)
    for code in range(start, stop):
        tt = (np.uint64(code) >> shifts) & np.uint64(1)
        yield BooleanFunction(n, tt.astype(np.uint8))


@dataclass
class SweepTally:
    scanned: int = 0
    looped_skipped: int = 0
    paths: Counter = field(default_factory=Counter)
    plateaued_by_s: Counter = field(default_factory=Counter)
    bent: int = 0
    semibent: int = 0
    not_plateaued: int = 0
    bipartite_certified: int = 0
    walk_regular_certified: int = 0
    srg_certified: int = 0
    converse_checked: int = 0
    converse_fits_outside_hypothesis: int = 0
    multiplicity_checks: int = 0
    semibent_table_checks: int = 0
    failures: list = field(default_factory=list)

    def merge(self, other: "SweepTally") -> None:
        for name, value in vars(other).items():
            mine = getattr(self, name)
            if isinstance(value, Counter):
                mine.update(value)
            elif isinstance(value, list):
                mine.extend(value)
            else:
                setattr(self, name, mine + value)

    def to_json_dict(self) -> dict:
        return {
            "scanned": self.scanned,
            "looped_skipped": self.looped_skipped,
            "paths": {k: self.paths[k] for k in sorted(self.paths)},
            "classes": {
                "plateaued_by_s": {str(k): self.plateaued_by_s[k] for k in sorted(self.plateaued_by_s)},
                "bent": self.bent,
                "semibent": self.semibent,
                "not_plateaued": self.not_plateaued,
            },
            "certified": {
                "complete_bipartite": self.bipartite_certified,
                "walk_regular": self.walk_regular_certified,
                "srg": self.srg_certified,
                "converse": self.converse_checked,
                "converse_fits_outside_hypothesis": self.converse_fits_outside_hypothesis,
                "multiplicity_predictions": self.multiplicity_checks,
                "semibent_table": self.semibent_table_checks,
            },
            "failures": self.failures,
        }


def semibent_table(n: int) -> tuple[int, int, int]:
    """Walsh multiplicities (0, +2^((n+1)/2), -2^((n+1)/2)) of a semibent f, n odd, f(0)=0."""
    if n % 2 == 0 or n < 3:
        raise InputError("the semibent table is stated for odd n >= 3")
    half = 1 << ((n - 3) // 2)
    return 1 << (n - 1), (1 << (n - 2)) + half, (1 << (n - 2)) - half


def check_function(f: BooleanFunction, tally: SweepTally, ell_max: int, dense_limit: int | None,
                   seed: int) -> None:
    """Classify one function, run every applicable certificate, record the outcome."""
    tally.scanned += 1
    try:
        wht = walsh_hadamard(f)
        if not parseval_check(wht):
            raise CertificateFailure("Parseval's identity fails")
        check_fourier_relation(fourier(f), wht)
        report = classify_plateaued(wht)
        if report.is_plateaued:
            tally.plateaued_by_s[report.s] += 1
            tally.bent += report.bent
            tally.semibent += report.semibent
        else:
            tally.not_plateaued += 1
        if f(0):
            tally.looped_skipped += 1
            return

        if report.is_plateaued:
            k = report.k
            got = (report.wht_multiplicities.get(0, 0), report.wht_multiplicities.get(k, 0),
                   report.wht_multiplicities.get(-k, 0))
            want = predicted_multiplicities(f.n, report.s, report.balanced, report.w0_sign,
                                            report.weight, report.f0,
                                            allow_special=report.special_weight)
            if got != want:
                raise CertificateFailure(f"Walsh multiplicities {got} != predicted {want}")
            tally.multiplicity_checks += 1
            if report.semibent and f.n % 2 == 1 and f.n >= 3:
                if got != semibent_table(f.n):
                    raise CertificateFailure(f"semibent multiplicities {got} != table {semibent_table(f.n)}")
                tally.semibent_table_checks += 1

        char = full_characterization(f, ell_max=ell_max, limit=dense_limit, seed=seed)
        tally.paths[char.path.value] += 1
        _count_certificates(char, tally)
    except CertificateFailure as exc:
        tally.failures.append({"truth_table": f.to_bitstring(), "error": type(exc).__name__,
                               "message": str(exc)})


def _count_certificates(char, tally: SweepTally) -> None:
    if char.bipartite is not None:
        tally.bipartite_certified += 1
    if char.walkreg:
        tally.walk_regular_certified += 1
    if char.srg is not None and char.path is Path.WALK_REGULAR:
        tally.srg_certified += 1
    if char.converse is not None:
        tally.converse_checked += 1
        if char.converse["fitting_s"]:
            tally.converse_fits_outside_hypothesis += 1
    for sub in char.component_reports:
        _count_certificates(sub, tally)


def _exhaustive_chunk(args) -> SweepTally:
    n, start, stop, ell_max, dense_limit, seed = args
    tally = SweepTally()
    for f in all_functions(n, start, stop):
        check_function(f, tally, ell_max, dense_limit, seed)
    return tally


def _sample_chunk(args) -> SweepTally:
    functions, ell_max, dense_limit, seed = args
    tally = SweepTally()
    for tt in functions:
        check_function(BooleanFunction(len(tt).bit_length() - 1, tt), tally, ell_max, dense_limit, seed)
    return tally


def _run(chunks, worker, jobs: int) -> SweepTally:
    total = SweepTally()
    if jobs <= 1:
        results: Iterable[SweepTally] = map(worker, chunks)
    else:
        pool = ProcessPoolExecutor(max_workers=jobs)
        results = pool.map(worker, chunks)
    # map preserves chunk order, so the merged failure list is deterministic
    for part in results:
        total.merge(part)
    if jobs > 1:
        pool.shutdown()
    return total


def enumerate_sweep(
    n: int,
    exhaustive: bool = False,
    sample: int = 0,
    seed: int = 0,
    generator: str = "mixed",
    ell_max: int = 7,
    dense_limit: int | None = None,
    jobs: int = 1,
) -> dict:
    if exhaustive:
        if not 1 <= n <= EXHAUSTIVE_MAX_N:
            raise InputError(f"exhaustive enumeration supports 1 <= n <= {EXHAUSTIVE_MAX_N}")
        total = 1 << (1 << n)
        step = max(1, total // max(1, jobs * 8))
        chunks = [(n, a, min(a + step, total), ell_max, dense_limit, seed)
                  for a in range(0, total, step)]
        tally = _run(chunks, _exhaustive_chunk, jobs)
        mode = "exhaustive"
    else:
        if sample <= 0:
            raise InputError("give --exhaustive or --sample N")
        if not 1 <= n <= SAMPLED_MAX_N:
            raise InputError(f"sampled enumeration supports 1 <= n <= {SAMPLED_MAX_N}")
        funcs = [f.truth_table.tolist() for f in sample_functions(n, sample, seed, generator)]
        per = max(1, len(funcs) // max(1, jobs * 4))
        chunks = [(funcs[a:a + per], ell_max, dense_limit, seed) for a in range(0, len(funcs), per)]
        tally = _run(chunks, _sample_chunk, jobs)
        mode = "sampled"
    summary = {"n": n, "mode": mode, "ell_max": ell_max}
    if not exhaustive:
        summary.update(seed=seed, sample=sample, generator=generator)
    summary.update(tally.to_json_dict())
    summary["ok"] = not tally.failures
    return summary


def verify_functions(functions: Iterable[BooleanFunction], ell_max: int = 7,
                     dense_limit: int | None = None, seed: int = 0) -> dict:
    tally = SweepTally()
    for f in functions:
        check_function(f, tally, ell_max, dense_limit, seed)
    out = tally.to_json_dict()
    out["ok"] = not tally.failures
    return out

