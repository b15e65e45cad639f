"""Couplings of two distributions on a shared alphabet.

A coupling is a joint distribution on A x A whose row marginal is the
left distribution and whose column marginal is the right one.  The
coupling inequality says the variational distance v(P, Q) lower-bounds
the mismatch probability Pr{x != y} under every coupling, with equality
attained by a maximal coupling.

:func:`coupling_maximal` builds the product-residual maximal coupling:
the diagonal keeps the pointwise overlap min{P(a), Q(a)}, and the
leftover row/column masses (the residuals) are spread off-diagonal in
product form, normalized by the total residual mass.  Maximal couplings
are not unique in general; this particular construction is fixed so that
its output matrices are reproducible entry-for-entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .distributions import ONE, ZERO, Alphabet, Pmf, require_same_alphabet
from .errors import CorruptedCouplingError, CouplingError
from .metrics import vdist_halfsum

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Coupling:
    """Validated joint distribution with cached marginals (row = x, column = y)."""

    alphabet: Alphabet
    j: Matrix
    left: Pmf
    right: Pmf

    def __init__(self, j: Sequence[Sequence[Fraction]], left: Pmf, right: Pmf):
        require_same_alphabet(left, right)
        alphabet = left.alphabet
        n = len(alphabet)
        rows = tuple(tuple(row) for row in j)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise CouplingError(f"joint matrix must be {n}x{n}", constraint="shape")
        for a, row in zip(alphabet, rows):
            for b, value in zip(alphabet, row):
                if not isinstance(value, Fraction):
                    raise CouplingError(
                        f"entry ({a},{b}) must be a Fraction", constraint="shape"
                    )
                if value < 0:
                    raise CouplingError(
                        f"entry ({a},{b}) is negative: {value}",
                        constraint="negative_entry",
                    )
        total = sum((v for row in rows for v in row), ZERO)
        if total != ONE:
            raise CouplingError(
                f"total mass is {total}, expected 1", constraint="total_mass"
            )
        for i, a in enumerate(alphabet):
            row_sum = sum(rows[i], ZERO)
            if row_sum != left.p[i]:
                raise CouplingError(
                    f"row marginal at {a!r} is {row_sum}, expected {left.p[i]}",
                    constraint="row_marginal",
                    symbol=a,
                )
        for jcol, b in enumerate(alphabet):
            col_sum = sum((rows[i][jcol] for i in range(n)), ZERO)
            if col_sum != right.p[jcol]:
                raise CouplingError(
                    f"column marginal at {b!r} is {col_sum}, expected {right.p[jcol]}",
                    constraint="column_marginal",
                    symbol=b,
                )
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "j", rows)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __getitem__(self, pair: tuple[str, str]) -> Fraction:
        a, b = pair
        return self.j[self.alphabet.index(a)][self.alphabet.index(b)]

    def diagonal_mass(self) -> Fraction:
        return sum((self.j[i][i] for i in range(len(self.alphabet))), ZERO)


def coupling_validate(j: Sequence[Sequence[Fraction]], p: Pmf, q: Pmf) -> Coupling:
    """Validate a candidate joint matrix against its intended marginals.

    Raises :class:`CouplingError` naming the first violated constraint.
    """
    return Coupling(j, p, q)


def coupling_independent(p: Pmf, q: Pmf) -> Coupling:
    """The product coupling j(a, b) = P(a) * Q(b)."""
    require_same_alphabet(p, q)
    rows = tuple(tuple(x * y for y in q.p) for x in p.p)
    return Coupling(rows, p, q)


@dataclass(frozen=True)
class Residuals:
    """Leftover marginal mass after removing the pointwise overlap.

    ``rx(a) = P(a) - min{P(a), Q(a)}`` and likewise ``ry`` for Q.  Both
    sum to the minimal mismatch probability, and ``rx(a) * ry(a) == 0``
    pointwise (at each symbol at most one marginal exceeds the overlap).
    """

    rx: tuple[Fraction, ...]
    ry: tuple[Fraction, ...]
    mismatch: Fraction


def residuals(p: Pmf, q: Pmf) -> Residuals:
    require_same_alphabet(p, q)
    overlap = [min(x, y) for x, y in zip(p.p, q.p)]
    rx = tuple(x - m for x, m in zip(p.p, overlap))
    ry = tuple(y - m for y, m in zip(q.p, overlap))
    mismatch = ONE - sum(overlap, ZERO)
    return Residuals(rx=rx, ry=ry, mismatch=mismatch)


def coupling_maximal(p: Pmf, q: Pmf) -> Coupling:
    """Product-residual maximal coupling; mismatch equals vdist_halfsum(p, q).

    Diagonal: j(a, a) = min{P(a), Q(a)}.  If the residual mass is zero
    (P == Q) every off-diagonal entry is zero; otherwise
    j(a, b) = rx(a) * ry(b) / mismatch for a != b.
    """
    require_same_alphabet(p, q)
    n = len(p.alphabet)
    res = residuals(p, q)
    rows = []
    for i in range(n):
        row = []
        for k in range(n):
            if i == k:
                row.append(min(p.p[i], q.p[i]))
            elif res.mismatch == 0:
                row.append(ZERO)
            else:
                row.append(res.rx[i] * res.ry[k] / res.mismatch)
        rows.append(tuple(row))
    return Coupling(tuple(rows), p, q)


def mismatch_prob(c: Coupling) -> Fraction:
    """Pr{x != y} under the coupling: one minus the diagonal mass."""
    return ONE - c.diagonal_mass()


@dataclass(frozen=True)
class LemmaAudit:
    """Comparison of a coupling's mismatch probability against v(left, right)."""

    v: Fraction
    mismatch: Fraction
    holds: bool
    maximal: bool
    gap: Fraction

    def to_json_dict(self) -> dict:
        return {
            "v": str(self.v),
            "mismatch": str(self.mismatch),
            "holds": self.holds,
            "maximal": self.maximal,
            "gap": str(self.gap),
        }


def lemma_audit(c: Coupling) -> LemmaAudit:
    """Check v <= mismatch for a validated coupling and report the gap.

    A violated inequality cannot come from user input (validation already
    passed), so it is raised as :class:`CorruptedCouplingError`.
    """
    v = vdist_halfsum(c.left, c.right)
    m = mismatch_prob(c)
    if v > m:
        raise CorruptedCouplingError(
            f"coupling inequality violated: v={v} > mismatch={m}"
        )
    return LemmaAudit(v=v, mismatch=m, holds=True, maximal=(v == m), gap=m - v)
