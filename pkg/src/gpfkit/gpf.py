"""Which products of primes arise as factorizations, and how to build them.

The factorization of N in M is the multiset of step primes of any regular
prime extension filtration of M over N; the multiset does not depend on
the filtration.  This module answers the inverse questions:

* for pairwise incomparable primes, the product p_1...p_n is a
  factorization of some submodule exactly when every p_i lies in Supp(M);
  the witness is carved out of a filtration over (p_1...p_n)M by pushing
  one step per target prime to the tail with interchanges.
* a prime power p^r is a factorization exactly when p is associated to
  p^{r-1}M/p^rM; the witness is the p-primary part of p^rM, computed by
  saturating with a single element chosen inside every other associated
  prime of M/p^rM but outside p.
* for a general product (ordered so that no earlier prime is contained in
  a later one) a telescoping sufficient condition on supports yields a
  witness built tail-first; the same products reduced at one exponent
  give necessary conditions when every associated prime is minimal.
* for the specific submodule aM there is an exact criterion: the colon
  chain (aM : a_i) by the partial products must have the single
  associated prime p_i at each stage.

Every construction re-verifies its postcondition with an independent
filtration run; nothing is trusted blind.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import HypothesisError, VerificationError
from .modops import (
    Submodule,
    SubquotientView,
    colon_module,
    ideal_power,
    ideal_product,
    module_scale,
    saturate,
    unit_ideal,
)
from .primes import (
    MONOMIAL,
    PrimeIdeal,
    PrimeSet,
    ass_enumerate,
    ass_membership,
    incomparable,
    supp_contains,
)
from .filtration import Filtration, interchange, rpe_filtration


class PrimeMultiset:
    """A multiset of primes with positive multiplicities, compared by
    canonical forms."""

    def __init__(self, pairs):
        entries = {}
        for p, r in pairs:
            r = int(r)
            if r < 1:
                raise ValueError("multiplicities must be positive")
            k = p.key()
            if k in entries:
                entries[k] = (entries[k][0], entries[k][1] + r)
            else:
                entries[k] = (p, r)
        self._entries = entries

    @classmethod
    def from_primes(cls, primes):
        return cls([(p, 1) for p in primes])

    def entries(self):
        """(prime, multiplicity) pairs sorted by canonical token."""
        return sorted(self._entries.values(), key=lambda e: e[0].token())

    def primes(self):
        return [p for p, _ in self.entries()]

    def prime_set(self):
        return PrimeSet(self.primes())

    def multiplicity(self, p):
        hit = self._entries.get(p.key())
        return hit[1] if hit else 0

    def total(self):
        return sum(r for _, r in self._entries.values())

    def key(self):
        return frozenset((k, r) for k, (_, r) in self._entries.items())

    def equals(self, other):
        return self.key() == other.key()

    def attestations(self):
        return sorted({p.attestation for p, _ in self._entries.values()})

    def __len__(self):
        return len(self._entries)

    def __str__(self):
        if not self._entries:
            return "(1)"
        parts = []
        for p, r in self.entries():
            parts.append(str(p) if r == 1 else "%s^%d" % (p, r))
        return " * ".join(parts)


def _check_ordering(pairs, mode):
    primes = [p for p, _ in pairs]
    if mode == "incomparable":
        for a, b in itertools.combinations(primes, 2):
            if not incomparable(a, b):
                raise ValueError(
                    "primes %s and %s are comparable" % (a, b)
                )
    elif mode in ("descending", "tail-maximal"):
        # For distinct primes both modes demand the same thing: no earlier
        # prime is contained in a later one.
        for i, a in enumerate(primes):
            for b in primes[i + 1 :]:
                if b.contains_ideal(a):
                    raise ValueError(
                        "ordering violated: %s is contained in the later "
                        "prime %s" % (a, b)
                    )
    else:
        raise ValueError("unknown ordering mode %r" % mode)


class FactorizationTarget:
    """An ordered product of distinct primes with positive exponents.

    The declared ordering mode is verified at construction: incomparable
    (pairwise), or descending / tail-maximal (no earlier prime contained
    in a later one; for distinct primes the two coincide).
    """

    def __init__(self, pairs, mode="descending"):
        pairs = [(p, int(r)) for p, r in pairs]
        if not pairs:
            raise ValueError("a factorization target needs at least one prime")
        for p, r in pairs:
            if r < 1:
                raise ValueError("exponent must be >= 1")
        seen = set()
        for p, _ in pairs:
            if p.key() in seen:
                raise ValueError("repeated prime %s in target" % p)
            seen.add(p.key())
        _check_ordering(pairs, mode)
        self.pairs = tuple(pairs)
        self.mode = mode

    @classmethod
    def reordered(cls, pairs, mode="descending"):
        """Reorder the pairs to satisfy the mode, largest primes first,
        breaking ties by canonical token."""
        remaining = [(p, int(r)) for p, r in pairs]
        ordered = []
        while remaining:
            maximal = [
                entry
                for entry in remaining
                if not any(
                    q.strictly_contains(entry[0])
                    for q, _ in remaining
                    if q is not entry[0]
                )
            ]
            maximal.sort(key=lambda entry: entry[0].token())
            pick = maximal[0]
            ordered.append(pick)
            remaining = [entry for entry in remaining if entry is not pick]
        return cls(ordered, mode)

    def primes(self):
        return [p for p, _ in self.pairs]

    def expanded(self):
        """The primes with repetition, in target order."""
        out = []
        for p, r in self.pairs:
            out.extend([p] * r)
        return out

    def product_ideal(self):
        ring = self.pairs[0][0].ring
        acc = unit_ideal(ring)
        for p, r in self.pairs:
            acc = ideal_product(acc, ideal_power(p.ideal, r))
        return acc

    def partial_ideals(self):
        """[(1), p1^r1, p1^r1 p2^r2, ...] along the target order."""
        ring = self.pairs[0][0].ring
        out = [unit_ideal(ring)]
        for p, r in self.pairs:
            out.append(ideal_product(out[-1], ideal_power(p.ideal, r)))
        return out

    def multiset(self):
        return PrimeMultiset(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        parts = []
        for p, r in self.pairs:
            parts.append(str(p) if r == 1 else "%s^%d" % (p, r))
        return " * ".join(parts)


def gpf(N, M, source=MONOMIAL, tie_break="lex", max_steps=None):
    """The factorization of N in M: the multiset of filtration primes."""
    filt = rpe_filtration(
        N, M, source=source, tie_break=tie_break, max_steps=max_steps
    )
    return PrimeMultiset.from_primes(filt.primes())


@dataclass
class SuppCondition:
    """One support test p in Supp(J M) with its evidence."""

    index: int
    prime: PrimeIdeal
    scaled: Submodule
    holds: bool
    module_is_zero: bool
    ann_witness: object = None

    def describe(self):
        verdict = "holds" if self.holds else "fails"
        extra = ""
        if not self.holds and self.module_is_zero:
            extra = " (the scaled module is zero)"
        elif not self.holds and self.ann_witness is not None:
            extra = " (annihilator element %s lies outside the prime)" % (
                self.ann_witness,
            )
        return "condition %d for %s %s%s" % (
            self.index,
            self.prime,
            verdict,
            extra,
        )


def _supp_condition(index, p, scaled, M):
    view = SubquotientView(scaled, M.span(()), check=False)
    zero = view.is_zero()
    if supp_contains(p, view):
        return SuppCondition(index, p, scaled, True, zero)
    witness = None
    for g in view.ann().canonical_gens():
        if not p.contains(g):
            witness = g
            break
    return SuppCondition(index, p, scaled, False, zero, witness)


@dataclass
class SuppReport:
    all_hold: bool
    conditions: list

    def first_failure(self):
        for c in self.conditions:
            if not c.holds:
                return c
        return None


def check_supp_conditions(target, M):
    """The telescoping support conditions sufficient for a witness.

    For each index i the module p_i^{r_i-1} p_{i+1}^{r_{i+1}} ... p_n^{r_n} M
    must have p_i in its support.  Needs no earlier prime contained in a
    later one, which every target ordering mode guarantees.
    """
    pairs = target.pairs
    conditions = []
    for i in range(len(pairs)):
        p, r = pairs[i]
        J = ideal_power(p.ideal, r - 1)
        for q, s in pairs[i + 1 :]:
            J = ideal_product(J, ideal_power(q.ideal, s))
        scaled = module_scale(J, M)
        conditions.append(_supp_condition(i + 1, p, scaled, M))
    return SuppReport(all(c.holds for c in conditions), conditions)


@dataclass
class ExistsReport:
    """Verdict of the incomparable-product existence test."""

    verdict: bool
    witness: Submodule | None
    conditions: list
    factors: PrimeMultiset | None = None


def exists_incomparable(primes, M, source=MONOMIAL, tie_break="lex"):
    """Whether the product of pairwise incomparable primes arises as a
    factorization in M, with a verified witness when it does.

    The criterion is support membership: every prime must contain the
    annihilator of M.  On success the witness is built over (p_1...p_n)M.
    """
    primes = list(primes)
    if not primes:
        raise ValueError("need at least one prime")
    for a, b in itertools.combinations(primes, 2):
        if not incomparable(a, b):
            raise ValueError("primes %s and %s are comparable" % (a, b))
    full = M.full()
    conditions = []
    for i, p in enumerate(primes, start=1):
        conditions.append(_supp_condition(i, p, full, M))
    if not all(c.holds for c in conditions):
        return ExistsReport(False, None, conditions)
    K = construct_incomparable(
        primes, M, source=source, tie_break=tie_break
    )
    factors = gpf(K, M, source=source, tie_break=tie_break)
    return ExistsReport(True, K, conditions, factors)


def construct_incomparable(primes, M, N0=None, source=MONOMIAL, tie_break="lex"):
    """A submodule K with factorization exactly the given primes, each once.

    Builds a filtration of M over N0 (by default the product of the primes
    times M), then pushes one step per target prime to the tail with
    interchanges; K is the module the tail block starts at.  Each target
    must be minimal in Ass(M/N0).
    """
    primes = list(primes)
    if not primes:
        raise ValueError("need at least one prime")
    keys = {p.key() for p in primes}
    if len(keys) != len(primes):
        raise ValueError("target primes must be distinct")
    if N0 is None:
        acc = unit_ideal(M.ring)
        for p in primes:
            acc = ideal_product(acc, p.ideal)
        N0 = module_scale(acc, M)
    filt = rpe_filtration(N0, M, source=source, tie_break=tie_break)
    found = PrimeSet(filt.primes())
    for p in primes:
        if not found.contains_prime(p):
            raise HypothesisError(
                "prime %s is not associated to M/N0" % p,
                evidence={"ass": str(found)},
            )
        if any(
            p.strictly_contains(q) for q in found if q.key() != p.key()
        ):
            raise HypothesisError(
                "prime %s is not minimal in Ass(M/N0)" % p,
                evidence={"ass": str(found)},
            )
    n = len(filt.steps)
    boundary = n
    for p in sorted(primes, key=PrimeIdeal.token, reverse=True):
        pos = None
        for j in range(boundary, 0, -1):
            if filt.steps[j - 1].prime.equals(p):
                pos = j
                break
        if pos is None:
            raise HypothesisError(
                "no unclaimed filtration step carries %s" % p,
                evidence={"primes": [str(q) for q in filt.primes()]},
            )
        while pos < boundary:
            if filt.steps[pos].prime.equals(p):
                pos += 1
                continue
            filt = interchange(filt, pos)
            pos += 1
        boundary -= 1
    K = filt.modules()[n - len(primes)]
    got = gpf(K, M, source=source, tie_break=tie_break)
    want = PrimeMultiset.from_primes(primes)
    if not got.equals(want):
        raise VerificationError(
            "constructed submodule factors as %s, not %s" % (got, want)
        )
    return K


def construct_prime_power(p, r, M, source=MONOMIAL, tie_break="lex"):
    """A submodule N of M with factorization p^r, when one exists.

    Requires p associated to p^{r-1}M / p^r M.  N is the saturation of
    p^r M by a single element f lying in every other associated prime of
    M / p^r M but outside p; when p is the only associated prime, N is
    p^r M itself.
    """
    r = int(r)
    if r < 1:
        raise ValueError("exponent must be >= 1")
    B = module_scale(ideal_power(p.ideal, r), M)
    A = module_scale(ideal_power(p.ideal, r - 1), M)
    Q = M.module_of(A).with_denominator(B)
    ev = ass_membership(p, Q)
    if not ev.member:
        raise HypothesisError(
            "%s is not associated to p^%d M / p^%d M" % (p, r - 1, r),
            evidence={"colon": ev.colon, "ann": ev.ann},
        )
    others = [
        q
        for q in ass_enumerate(M.with_denominator(B), source)
        if q.key() != p.key()
    ]
    if not others:
        N = B
    else:
        f = M.ring.one()
        for q in others:
            pick = None
            for g in q.ideal.canonical_gens():
                if not p.contains(g):
                    pick = g
                    break
            if pick is None:
                raise VerificationError(
                    "no witness for saturation: every generator of %s lies "
                    "in %s" % (q, p)
                )
            f = f * pick
        if p.contains(f):
            raise VerificationError(
                "witness product %s unexpectedly lies in %s" % (f, p)
            )
        N = saturate(B, f, M)
    got = gpf(N, M, source=source, tie_break=tie_break)
    want = PrimeMultiset([(p, r)])
    if not got.equals(want):
        raise VerificationError(
            "constructed submodule factors as %s, not %s" % (got, want)
        )
    return N


def construct_general(target, M, source=MONOMIAL, tie_break="lex"):
    """A submodule with the target factorization, built tail-first.

    Checks the telescoping support conditions, then walks the target from
    the last prime to the first, replacing the working module by the
    verified prime-power witness inside it.  The result is re-verified by
    an independent filtration run in M.
    """
    report = check_supp_conditions(target, M)
    if not report.all_hold:
        bad = report.first_failure()
        raise HypothesisError(
            "support condition fails at index %d: %s" % (
                bad.index,
                bad.describe(),
            ),
            index=bad.index,
            evidence={"condition": bad},
        )
    cur = M
    N = None
    for p, r in reversed(target.pairs):
        N = construct_prime_power(p, r, cur, source=source, tie_break=tie_break)
        cur = M.module_of(N)
    got = gpf(N, M, source=source, tie_break=tie_break)
    want = target.multiset()
    if not got.equals(want):
        raise VerificationError(
            "constructed submodule factors as %s, not %s" % (got, want)
        )
    return N


@dataclass
class NecessaryReport:
    """Necessary support conditions for an existing factorization."""

    applicable: bool
    reason: str
    factors: PrimeMultiset | None = None
    conditions: list = field(default_factory=list)
    all_hold: bool = True


def check_necessary_conditions(N, M, source=MONOMIAL, tie_break="lex"):
    """Support conditions every factorization must satisfy when all its
    primes are minimal in Ass(M/N).

    Computes the factorization, checks the primes are pairwise
    incomparable (otherwise the criterion does not apply), then tests for
    each i that p_i lies in the support of the full product with the i-th
    exponent reduced by one.
    """
    factors = gpf(N, M, source=source, tie_break=tie_break)
    pset = factors.prime_set()
    if not pset.is_antichain():
        return NecessaryReport(
            False,
            "not applicable: an associated prime is embedded, so the "
            "minimality hypothesis fails",
            factors,
        )
    entries = factors.entries()
    conditions = []
    for i, (p, r) in enumerate(entries):
        J = ideal_power(p.ideal, r - 1)
        for j, (q, s) in enumerate(entries):
            if j != i:
                J = ideal_product(J, ideal_power(q.ideal, s))
        scaled = module_scale(J, M)
        conditions.append(_supp_condition(i + 1, p, scaled, M))
    return NecessaryReport(
        True,
        "all primes minimal",
        factors,
        conditions,
        all(c.holds for c in conditions),
    )


@dataclass
class IffSegment:
    index: int
    prime: PrimeIdeal
    found: PrimeSet
    ok: bool


@dataclass
class IffReport:
    """Exact criterion for the product ideal times M."""

    verdict: bool
    segments: list
    filtration: Filtration | None = None
    failed_index: int | None = None


def check_iff_criterion(target, M, source=MONOMIAL):
    """Whether aM factors exactly as the target product a.

    With the primes in tail-maximal order and a_i the partial products,
    the criterion is that each subquotient (aM : a_i)/(aM : a_{i-1}) has
    the single associated prime p_i.  On success the refined colon chain
    is returned as a verified regular filtration.
    """
    aM = module_scale(target.product_ideal(), M)
    partials = target.partial_ideals()
    chain = [colon_module(aM, a, M) for a in partials]
    segments = []
    verdict = True
    failed = None
    for i, (p, _) in enumerate(target.pairs, start=1):
        lower, upper = chain[i - 1], chain[i]
        if upper.equals(lower):
            found = PrimeSet([])
        else:
            found = ass_enumerate(
                M.module_of(upper).with_denominator(lower), source
            )
        ok = len(found) == 1 and found.contains_prime(p)
        segments.append(IffSegment(i, p, found, ok))
        if not ok and verdict:
            verdict = False
            failed = i
    if not verdict:
        return IffReport(False, segments, failed_index=failed)
    filt = _refined_chain(target, aM, M, source)
    return IffReport(True, segments, filtration=filt)


def _refined_chain(target, aM, M, source):
    """The step-by-step colon chain for the expanded prime sequence,
    assembled into a filtration with every step re-verified."""
    from .filtration import PrimeExtensionStep, verify_step

    acc = unit_ideal(M.ring)
    steps = []
    prev = colon_module(aM, acc, M)
    base = prev
    for p in target.expanded():
        acc = ideal_product(acc, p.ideal)
        nxt = colon_module(aM, acc, M)
        flags, problems = verify_step(prev, nxt, p, M, source)
        if not flags.all_verified():
            raise VerificationError(
                "refined chain failed verification", report=problems
            )
        steps.append(
            PrimeExtensionStep(lower=prev, upper=nxt, prime=p, flags=flags)
        )
        prev = nxt
    if not M.with_denominator(prev).is_zero():
        raise VerificationError("refined chain does not reach the module")
    return Filtration(
        ambient=M,
        base=base,
        steps=tuple(steps),
        kind="RPE",
        ass_complete=(source is MONOMIAL or source is None),
        source=source,
    )
