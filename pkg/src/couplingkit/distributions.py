"""Alphabets and validated finite probability distributions.

All values are immutable after construction and all probabilities are
exact :class:`~fractions.Fraction` entries.  A :class:`Pmf` is a
distribution over an ordered alphabet of string labels; a :class:`Pmf2`
is a distribution over ordered pairs from one alphabet, stored as an
N x N matrix (row = first coordinate).  Matrix row/column order is the
alphabet order, fixed at construction, which keeps every table this
package emits deterministic and diff-able.

Zero-probability symbols are allowed: structural zeros are part of the
worked examples this package reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import AlphabetMismatchError, DistributionError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Alphabet:
    """Ordered, pairwise-distinct string labels; order defines matrix indexing."""

    symbols: tuple[str, ...]

    def __init__(self, symbols: Iterable[str]):
        syms = tuple(symbols)
        if not syms:
            raise DistributionError("alphabet must contain at least one symbol")
        if any(not isinstance(s, str) for s in syms):
            raise DistributionError("alphabet symbols must be strings")
        if len(set(syms)) != len(syms):
            raise DistributionError("alphabet symbols must be pairwise distinct")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def of_size(cls, n: int) -> "Alphabet":
        """Alphabet ``"1", "2", ..., "n"``."""
        if n < 1:
            raise DistributionError("alphabet size must be >= 1")
        return cls(str(i) for i in range(1, n + 1))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise KeyError(f"symbol {symbol!r} not in alphabet") from None

    def pair_label(self, first: str, second: str) -> str:
        return f"({first},{second})"

    def product(self) -> "Alphabet":
        """Alphabet of ordered pairs ``"(a,b)"`` in row-major order."""
        labels = tuple(self.pair_label(a, b) for a in self.symbols for b in self.symbols)
        if len(set(labels)) != len(labels):
            # Only possible when symbols themselves contain "," delimiters
            # that make distinct pairs collide.
            raise DistributionError("pair labels collide; rename alphabet symbols")
        return Alphabet(labels)


def require_same_alphabet(left: "Pmf | Pmf2", right: "Pmf | Pmf2") -> None:
    if left.alphabet != right.alphabet:
        raise AlphabetMismatchError(
            "distributions are defined on different alphabets: "
            f"{left.alphabet.symbols} vs {right.alphabet.symbols}"
        )


def _check_entry(value: Fraction, where: str) -> Fraction:
    if not isinstance(value, Fraction):
        raise DistributionError(f"{where} must be a Fraction, got {type(value).__name__}")
    if value < 0:
        raise DistributionError(f"{where} is negative: {value}")
    return value


@dataclass(frozen=True)
class Pmf:
    """Probability distribution over an alphabet: entries >= 0, exact sum 1."""

    alphabet: Alphabet
    p: tuple[Fraction, ...]

    def __init__(self, alphabet: Alphabet, probs: Sequence[Fraction]):
        entries = tuple(probs)
        if len(entries) != len(alphabet):
            raise DistributionError(
                f"expected {len(alphabet)} probabilities, got {len(entries)}"
            )
        for symbol, value in zip(alphabet, entries):
            _check_entry(value, f"p({symbol})")
        total = sum(entries, ZERO)
        if total != ONE:
            raise DistributionError(f"probabilities sum to {total}, expected 1")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "p", entries)

    @classmethod
    def uniform(cls, alphabet: Alphabet) -> "Pmf":
        n = len(alphabet)
        return cls(alphabet, (Fraction(1, n),) * n)

    @classmethod
    def point_mass(cls, alphabet: Alphabet, symbol: str) -> "Pmf":
        i = alphabet.index(symbol)
        return cls(alphabet, tuple(ONE if k == i else ZERO for k in range(len(alphabet))))

    def __getitem__(self, symbol: str) -> Fraction:
        return self.p[self.alphabet.index(symbol)]

    def mass(self, symbols: Iterable[str]) -> Fraction:
        """Total probability of a set of symbols (each counted once)."""
        idx = {self.alphabet.index(s) for s in symbols}
        return sum((self.p[i] for i in idx), ZERO)

    def support(self) -> tuple[str, ...]:
        return tuple(s for s, v in zip(self.alphabet, self.p) if v > 0)


@dataclass(frozen=True)
class Pmf2:
    """Distribution over ordered pairs, as an N x N matrix (row = first coordinate)."""

    alphabet: Alphabet
    p: tuple[tuple[Fraction, ...], ...]

    def __init__(self, alphabet: Alphabet, matrix: Sequence[Sequence[Fraction]]):
        n = len(alphabet)
        rows = tuple(tuple(row) for row in matrix)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise DistributionError(f"expected a {n}x{n} matrix of probabilities")
        for a, row in zip(alphabet, rows):
            for b, value in zip(alphabet, row):
                _check_entry(value, f"p({a},{b})")
        total = sum((v for row in rows for v in row), ZERO)
        if total != ONE:
            raise DistributionError(f"probabilities sum to {total}, expected 1")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "p", rows)

    @classmethod
    def diagonal(cls, pmf: Pmf) -> "Pmf2":
        """Two-dim distribution with both coordinates equal, weighted by ``pmf``."""
        n = len(pmf.alphabet)
        rows = tuple(
            tuple(pmf.p[i] if i == j else ZERO for j in range(n)) for i in range(n)
        )
        return cls(pmf.alphabet, rows)

    def __getitem__(self, pair: tuple[str, str]) -> Fraction:
        a, b = pair
        return self.p[self.alphabet.index(a)][self.alphabet.index(b)]

    def is_diagonal(self) -> bool:
        n = len(self.alphabet)
        return all(self.p[i][j] == 0 for i in range(n) for j in range(n) if i != j)

    def row_marginal(self) -> Pmf:
        return Pmf(self.alphabet, tuple(sum(row, ZERO) for row in self.p))

    def column_marginal(self) -> Pmf:
        n = len(self.alphabet)
        return Pmf(self.alphabet, tuple(sum((self.p[i][j] for i in range(n)), ZERO) for j in range(n)))

    def flatten(self) -> Pmf:
        """Same distribution over the product alphabet, entries in row-major order."""
        flat = tuple(v for row in self.p for v in row)
        return Pmf(self.alphabet.product(), flat)
