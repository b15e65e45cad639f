"""Key-distribution audit: what the variational distance does and does not say.

Given a real key distribution P_K, the ideal reference P_U is always the
uniform distribution over the same alphabet (any non-uniform ideal would
leak; a key symbol with probability 0 or 1 is unusable outright).  The
audit computes, all exactly:

* v = v(P_K, P_U), the variational distance;
* the mismatch probability Pr{k != u} under the independent coupling,
  under the product-residual maximal coupling, and the LP-certified
  minimum over all couplings;
* three verdict flags, each backed by those computed quantities:

  1. attaining Pr{k != u} = v requires correlation between real and
     ideal keys (the unique independent coupling does not attain it);
  2. v is a lower bound on Pr{k != u} over all couplings (certified by
     the LP oracle: minimum mismatch equals v);
  3. for independent keys with some symbol probability strictly inside
     (0, 1) on both sides, v < Pr{k != u} strictly.

An optional epsilon with v <= epsilon is accepted as a user-supplied
bound and only sanity-checked; the audit never equates epsilon with any
mismatch probability, and never claims more than the lower-bound
relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coupling import (
    coupling_independent,
    coupling_maximal,
    lemma_audit,
    mismatch_prob,
)
from .distributions import ONE, ZERO, Alphabet, Pmf
from .errors import CorruptedCouplingError, DistributionError
from .metrics import vdist_halfsum
from .rational import decimal_string
from .transport import TransportProblem, certify, lp_min_mismatch


@dataclass(frozen=True)
class EpsilonAuditInput:
    """Real key distribution plus an optional claimed bound v <= epsilon."""

    pk: Pmf
    epsilon: Fraction | None = None

    def __post_init__(self):
        if self.epsilon is not None and not (ZERO <= self.epsilon <= ONE):
            raise DistributionError(f"epsilon must lie in [0, 1], got {self.epsilon}")


@dataclass(frozen=True)
class EpsilonAuditReport:
    """Exact audit quantities and verdict flags.

    Invariant: v == maximal_mismatch == oracle_min_mismatch <=
    independent_mismatch.  ``strict_gap_holds`` is true when the
    interior-probability hypothesis is satisfied and the strict
    inequality v < independent_mismatch was observed.
    """

    v: Fraction
    independent_mismatch: Fraction
    maximal_mismatch: Fraction
    oracle_min_mismatch: Fraction
    interior_hypothesis: bool
    strict_gap_holds: bool
    fact_maximal_requires_correlation: bool
    fact_lower_bound_over_all_couplings: bool
    fact_independent_strict_gap: bool
    degenerate_key: bool
    epsilon: Fraction | None
    epsilon_consistent: bool | None
    notes: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "v": str(self.v),
            "independentMismatch": str(self.independent_mismatch),
            "maximalMismatch": str(self.maximal_mismatch),
            "oracleMinMismatch": str(self.oracle_min_mismatch),
            "interiorHypothesis": self.interior_hypothesis,
            "strictGapHolds": self.strict_gap_holds,
            "verdictFacts": {
                "maximalRequiresCorrelation": self.fact_maximal_requires_correlation,
                "lowerBoundOverAllCouplings": self.fact_lower_bound_over_all_couplings,
                "independentStrictGap": self.fact_independent_strict_gap,
            },
            "degenerateKey": self.degenerate_key,
            "epsilon": None if self.epsilon is None else str(self.epsilon),
            "epsilonConsistent": self.epsilon_consistent,
            "notes": list(self.notes),
        }

    def render_table(self, precision: int = 5) -> str:
        def show(x: Fraction) -> str:
            return f"{x} ({decimal_string(x, precision)})"

        lines = [
            f"v(P_K, P_U):             {show(self.v)}",
            f"mismatch, independent:   {show(self.independent_mismatch)}",
            f"mismatch, maximal:       {show(self.maximal_mismatch)}",
            f"mismatch, LP minimum:    {show(self.oracle_min_mismatch)}",
            f"interior hypothesis:     {self.interior_hypothesis}",
            f"strict gap holds:        {self.strict_gap_holds}",
            "verdict facts:",
            f"  1. equality v = Pr{{k!=u}} needs correlated keys:  {self.fact_maximal_requires_correlation}",
            f"  2. v is a certified lower bound over couplings:  {self.fact_lower_bound_over_all_couplings}",
            f"  3. independent keys give v < Pr{{k!=u}} strictly: {self.fact_independent_strict_gap}",
        ]
        if self.epsilon is not None:
            lines.append(
                f"epsilon:                 {show(self.epsilon)}; "
                f"consistent (v <= epsilon): {self.epsilon_consistent}"
            )
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)


def epsilon_audit(audit_input: EpsilonAuditInput) -> EpsilonAuditReport:
    """Audit a real key distribution against the uniform ideal key."""
    pk = audit_input.pk
    pu = Pmf.uniform(pk.alphabet)

    v = vdist_halfsum(pk, pu)
    independent = coupling_independent(pk, pu)
    maximal = coupling_maximal(pk, pu)
    independent_mismatch = mismatch_prob(independent)
    maximal_mismatch = mismatch_prob(maximal)
    lemma_audit(independent)
    lemma_audit(maximal)

    tp = TransportProblem.mismatch(pk, pu)
    optimal, certificate = lp_min_mismatch(pk, pu)
    oracle_ok = certify(optimal, certificate, tp)
    oracle_min = certificate.objective

    if not (oracle_ok and v == maximal_mismatch == oracle_min <= independent_mismatch):
        raise CorruptedCouplingError(
            "audit invariant failed: "
            f"v={v}, maximal={maximal_mismatch}, oracle={oracle_min}, "
            f"independent={independent_mismatch}, certified={oracle_ok}"
        )

    interior = any(0 < x < 1 and 0 < y < 1 for x, y in zip(pk.p, pu.p))
    strict_gap = interior and v < independent_mismatch
    degenerate = any(x == 0 or x == 1 for x in pk.p)

    notes = []
    if degenerate:
        notes.append(
            "some key symbol has probability 0 or 1; such a sequence cannot "
            "serve as a secret key, and the strict-gap flag is not asserted"
        )
    notes.append(
        "v is the minimum of Pr{k != u} over all couplings, attained only "
        "when real and ideal keys are correlated; it is not itself a "
        "failure probability"
    )

    epsilon = audit_input.epsilon
    epsilon_consistent = None if epsilon is None else v <= epsilon
    if epsilon_consistent is False:
        notes.append(
            f"claimed bound epsilon = {epsilon} is below v = {v}; "
            "the input is inconsistent with v <= epsilon"
        )

    return EpsilonAuditReport(
        v=v,
        independent_mismatch=independent_mismatch,
        maximal_mismatch=maximal_mismatch,
        oracle_min_mismatch=oracle_min,
        interior_hypothesis=interior,
        strict_gap_holds=strict_gap,
        fact_maximal_requires_correlation=(
            maximal_mismatch == v and independent_mismatch > v
        ),
        fact_lower_bound_over_all_couplings=(oracle_ok and oracle_min == v),
        fact_independent_strict_gap=strict_gap,
        degenerate_key=degenerate,
        epsilon=epsilon,
        epsilon_consistent=epsilon_consistent,
        notes=tuple(notes),
    )


def example4_report(n: int) -> EpsilonAuditReport:
    """Audit of an already-ideal key: P_K uniform over n >= 2 symbols.

    Yields v = 0 with independent mismatch 1 - 1/n: even a perfect key
    drawn independently of the ideal one almost always differs from it.
    """
    if n < 2:
        raise DistributionError(f"uniform-key audit needs n >= 2, got {n}")
    pk = Pmf.uniform(Alphabet.of_size(n))
    return epsilon_audit(EpsilonAuditInput(pk=pk))
