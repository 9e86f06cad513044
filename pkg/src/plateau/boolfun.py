"""Boolean functions on F_2^n: truth tables, ANF polynomials and the ``.tt`` format.

Index convention, shared by every module in the package: bit ``j`` of an
index ``i`` (``j = 0`` least significant) holds variable ``x_{n-j}``.  So
``x1`` is the most significant bit and ``v_1 = (0, ..., 0, 1)``, which
lists F_2^n in lexicographic order.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import InputError, NonPowerOfTwoLength, ParseError, VariableOutOfRange

MAX_N = 24


def _log2_exact(length: int) -> int:
    if length < 2 or length & (length - 1):
        raise NonPowerOfTwoLength(f"truth table length {length} is not 2^n with n >= 1")
    n = length.bit_length() - 1
    if n > MAX_N:
        raise InputError(f"n={n} exceeds the supported maximum {MAX_N}")
    return n


class BooleanFunction:
    """Immutable truth table of a function F_2^n -> F_2."""

    __slots__ = ("n", "_tt", "_key")

    def __init__(self, n: int, truth_table):
        tt = np.array(truth_table, dtype=np.uint8)
        if tt.ndim != 1 or tt.shape[0] != 1 << n:
            raise NonPowerOfTwoLength(f"expected {1 << n} bits for n={n}, got {tt.size}")
        if tt.size and tt.max() > 1:
            raise InputError("truth table entries must be 0 or 1")
        tt.flags.writeable = False
        self.n = n
        self._tt = tt
        self._key = None

    @property
    def truth_table(self) -> np.ndarray:
        return self._tt

    @property
    def size(self) -> int:
        return self._tt.shape[0]

    def __call__(self, index: int) -> int:
        return int(self._tt[index])

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._tt, other._tt))

    def __hash__(self):
        if self._key is None:
            self._key = (self.n, self._tt.tobytes())
        return hash(self._key)

    def __repr__(self):
        text = self.to_bitstring()
        if len(text) > 64:
            text = text[:61] + "..."
        return f"BooleanFunction(n={self.n}, tt={text})"

    def __xor__(self, other: "BooleanFunction | int") -> "BooleanFunction":
        if isinstance(other, BooleanFunction):
            if other.n != self.n:
                raise InputError("cannot XOR functions of different arity")
            return BooleanFunction(self.n, self._tt ^ other._tt)
        return BooleanFunction(self.n, self._tt ^ np.uint8(other & 1))

    def complement(self) -> "BooleanFunction":
        return self ^ 1

    def to_bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self._tt.tolist())

    def to_hex(self) -> str:
        if self.n < 2:
            raise InputError("hex encoding needs at least 4 bits (n >= 2)")
        return f"{int(self.to_bitstring(), 2):0{self.size // 4}x}"

    def shift(self, c: int) -> "BooleanFunction":
        """The translate x -> f(x xor c)."""
        idx = np.arange(self.size) ^ c
        return BooleanFunction(self.n, self._tt[idx])


class AnfPolynomial:
    """XOR of monomials over x1..xn; a monomial is a frozenset of variable indices."""

    __slots__ = ("n", "monomials")

    def __init__(self, n: int, monomials: Iterable[Iterable[int]] = ()):
        if n < 1:
            raise InputError("n must be positive")
        terms: set[frozenset[int]] = set()
        for m in monomials:
            mono = frozenset(m)
            for var in mono:
                if not 1 <= var <= n:
                    raise VariableOutOfRange(f"x{var} is outside x1..x{n}")
            terms ^= {mono}
        self.n = n
        self.monomials = frozenset(terms)

    def __eq__(self, other):
        if not isinstance(other, AnfPolynomial):
            return NotImplemented
        return self.n == other.n and self.monomials == other.monomials

    def __hash__(self):
        return hash((self.n, self.monomials))

    def __xor__(self, other: "AnfPolynomial") -> "AnfPolynomial":
        if other.n != self.n:
            raise InputError("cannot XOR polynomials of different arity")
        return AnfPolynomial(self.n, self.monomials ^ other.monomials)

    def __len__(self):
        return len(self.monomials)

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def sorted_monomials(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(m)) for m in self.monomials), key=lambda t: (len(t), t))

    def __str__(self):
        if not self.monomials:
            return "0"
        parts = []
        for mono in self.sorted_monomials():
            parts.append("*".join(f"x{v}" for v in mono) if mono else "1")
        return " + ".join(parts)

    def __repr__(self):
        return f"AnfPolynomial(n={self.n}, {str(self)!r})"


def from_truth_table(bits: Sequence[int] | str) -> BooleanFunction:
    """Build a function from a bit sequence or a ``'0'``/``'1'`` string."""
    if isinstance(bits, str):
        text = bits.strip()
        if not text or set(text) - {"0", "1"}:
            raise InputError(f"not a bit string: {bits!r}")
        values = [1 if ch == "1" else 0 for ch in text]
    else:
        values = [int(b) for b in bits]
    n = _log2_exact(len(values))
    return BooleanFunction(n, values)


def from_hex(text: str) -> BooleanFunction:
    """Hex truth table, most significant nibble first (first bit = f(v_0))."""
    digits = text.strip().lower()
    if digits.startswith("0x"):
        digits = digits[2:]
    if not digits or not re.fullmatch(r"[0-9a-f]+", digits):
        raise InputError(f"not a hex string: {text!r}")
    bits = "".join(f"{int(ch, 16):04b}" for ch in digits)
    return from_truth_table(bits)


# --- ANF parser -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(\d+)|([+*()]))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        if m.group(1):
            tokens.append(("var", int(m.group(2)), m.start(1)))
        elif m.group(3) is not None:
            if m.group(3) not in ("0", "1"):
                raise ParseError(f"constant must be 0 or 1, got {m.group(3)}", m.start(3))
            tokens.append(("const", int(m.group(3)), m.start(3)))
        else:
            tokens.append((m.group(4), None, m.start(4)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _AnfParser:
    # sum := product ('+' product)*
    # product := factor ('*' factor)*
    # factor := 'x' INT | '0' | '1' | '(' product ')'

    def __init__(self, text: str, n: int):
        self.tokens = _tokenize(text)
        self.n = n
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            shown = "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else tok[1])
            raise ParseError(f"expected {kind!r}, found {shown}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> set[frozenset[int]]:
        terms: set[frozenset[int]] = set()
        term = self.product()
        if term is not None:
            terms ^= {term}
        while self.peek()[0] == "+":
            self.i += 1
            term = self.product()
            if term is not None:
                terms ^= {term}
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("var", "const", "("):
                raise ParseError("implicit multiplication is not allowed; use '*'", tok[2])
            raise ParseError(f"unexpected {tok[0]!r}", tok[2])
        return terms

    def product(self) -> frozenset[int] | None:
        # None encodes a product containing the constant 0
        variables: set[int] | None = set()
        factor = self.factor()
        variables = None if factor is None else variables | factor
        while self.peek()[0] == "*":
            self.i += 1
            factor = self.factor()
            if factor is None or variables is None:
                variables = None
            else:
                variables |= factor
        return None if variables is None else frozenset(variables)

    def factor(self) -> set[int] | None:
        kind, value, pos = self.peek()
        if kind == "var":
            self.i += 1
            if not 1 <= value <= self.n:
                raise VariableOutOfRange(f"x{value} at position {pos} is outside x1..x{self.n}")
            return {value}
        if kind == "const":
            self.i += 1
            return set() if value == 1 else None
        if kind == "(":
            self.i += 1
            inner = self.product()
            tok = self.peek()
            if tok[0] == "+":
                raise ParseError("parentheses may only group products", tok[2])
            self.take(")")
            return None if inner is None else set(inner)
        shown = "end of input" if kind == "end" else repr(kind if value is None else value)
        raise ParseError(f"expected a variable, constant or '(', found {shown}", pos)


def parse_anf(text: str, n: int) -> AnfPolynomial:
    """Parse ``x1*x2 + x3 + 1`` style text; ``+`` is XOR and products need ``*``."""
    if n < 1:
        raise InputError("n must be positive")
    return AnfPolynomial(n, _AnfParser(text, n).parse())


# --- conversions ------------------------------------------------------------

def _mask(mono: Iterable[int], n: int) -> int:
    m = 0
    for var in mono:
        m |= 1 << (n - var)
    return m


def anf_to_function(p: AnfPolynomial) -> BooleanFunction:
    coeffs = np.zeros(1 << p.n, dtype=np.uint8)
    for mono in p.monomials:
        coeffs[_mask(mono, p.n)] = 1
    return BooleanFunction(p.n, kernels.mobius(coeffs))


def function_to_anf(f: BooleanFunction) -> AnfPolynomial:
    coeffs = kernels.mobius(f.truth_table)
    n = f.n
    monomials = []
    for mask in np.flatnonzero(coeffs).tolist():
        monomials.append([n - j for j in range(n) if mask >> j & 1])
    return AnfPolynomial(n, monomials)


def weight(f: BooleanFunction) -> int:
    return int(f.truth_table.sum(dtype=np.int64))


def support(f: BooleanFunction) -> list[int]:
    return np.flatnonzero(f.truth_table).tolist()


def degree(f: BooleanFunction) -> int:
    coeffs = kernels.mobius(f.truth_table)
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return 0
    return max(int(m).bit_count() for m in nz.tolist())


def is_balanced(f: BooleanFunction) -> bool:
    return weight(f) * 2 == f.size


# --- .tt files --------------------------------------------------------------

def parse_function_spec(line: str) -> BooleanFunction:
    """One ``.tt`` record: ``tt:<bits>``, ``hex:<digits>`` or ``anf:<n>:<expr>``."""
    tag, sep, body = line.strip().partition(":")
    if not sep:
        raise InputError(f"missing encoding tag in {line.strip()!r}")
    tag = tag.strip().lower()
    if tag == "tt":
        return from_truth_table(body)
    if tag == "hex":
        return from_hex(body)
    if tag == "anf":
        n_text, sep, expr = body.partition(":")
        if not sep or not n_text.strip().isdigit():
            raise InputError(f"anf record needs 'anf:<n>:<expression>', got {line.strip()!r}")
        return anf_to_function(parse_anf(expr, int(n_text)))
    raise InputError(f"unknown encoding tag {tag!r}")


def iter_tt_lines(lines: Iterable[str]) -> Iterator[BooleanFunction]:
    for raw in lines:
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield parse_function_spec(stripped)


def read_tt_file(path: str | Path) -> list[BooleanFunction]:
    with open(path, encoding="utf-8") as fh:
        return list(iter_tt_lines(fh))


def write_tt_file(path: str | Path, functions: Iterable[BooleanFunction], encoding: str = "tt") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for f in functions:
            if encoding == "hex":
                fh.write(f"hex:{f.to_hex()}\n")
            elif encoding == "anf":
                fh.write(f"anf:{f.n}:{function_to_anf(f)}\n")
            else:
                fh.write(f"tt:{f.to_bitstring()}\n")
