"""Prime ideals with attestations, associated primes, and support tests.

Primality of an arbitrary ideal is not decided here.  Each `PrimeIdeal`
carries an attestation of how its primality is known:

* ``monomial-verified``: the reduced basis consists of distinct variables
  and every ring relation vanishes modulo those variables, so the residue
  ring is a polynomial ring and the ideal is prime.  Checked structurally
  at construction.
* ``finite-verified``: primality was confirmed by exhaustive products in
  a finite model; used by the brute-force oracle.
* ``assumed``: supplied by the caller, typically through a candidate
  registry.  Every result computed from assumed primes inherits the
  assumption and is flagged in output.

Membership of a prime p in Ass(M/N) is decided through the colon module
K = (N : p) inside M: p is associated exactly when the annihilator of
K/N lies inside p, which fails automatically when K = N.  Membership in
the support is the annihilator test alone.  Associated primes of
quotients presented by monomial generators over a plain polynomial ring
are enumerated exhaustively over all variable subsets; anything else
needs a registry of candidate primes and the result is flagged as
relative to those candidates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetError, IncompleteRegistryError, RingMismatchError
from .modops import (
    Ideal,
    QuotientModule,
    Submodule,
    SubquotientView,
    colon_ideal,
    colon_module,
)

ATTEST_MONOMIAL = "monomial-verified"
ATTEST_FINITE = "finite-verified"
ATTEST_ASSUMED = "assumed"


class _MonomialSource:
    """Sentinel for exhaustive variable-subset Ass enumeration."""

    def __repr__(self):
        return "MONOMIAL"


MONOMIAL = _MonomialSource()


def _variable_index(poly):
    """Index of the variable if the polynomial is a single variable."""
    if not poly.is_term():
        return None
    mono = next(iter(poly.monomials()))
    hit = None
    for i, e in enumerate(mono):
        if e == 1 and hit is None:
            hit = i
        elif e != 0:
            return None
    return hit


def _relations_vanish(ring, var_indices):
    """Every monomial of every relation is divisible by one of the
    variables, so the relations die in the residue ring."""
    for rel in ring.relations:
        for mono in rel.monomials():
            if not any(mono[i] > 0 for i in var_indices):
                return False
    return True


class PrimeIdeal:
    """An ideal together with an attestation of primality."""

    def __init__(self, ring, gens, attestation=None):
        self.ideal = Ideal(ring, gens)
        self.ring = ring
        if attestation is None:
            attestation = (
                ATTEST_MONOMIAL if self._monomial_check() else ATTEST_ASSUMED
            )
        elif attestation == ATTEST_MONOMIAL and not self._monomial_check():
            raise ValueError("generators do not pass the monomial prime check")
        self.attestation = attestation

    def _monomial_check(self):
        idxs = []
        for g in self.ideal.canonical_gens():
            i = _variable_index(g)
            if i is None:
                return False
            idxs.append(i)
        return _relations_vanish(self.ring, idxs)

    @classmethod
    def from_variables(cls, ring, indices):
        gens = [ring.gen(i) for i in sorted(set(indices))]
        return cls(ring, gens)

    @property
    def gens(self):
        return self.ideal.gens

    def key(self):
        return self.ideal.key()

    def token(self):
        """Deterministic sort token: canonical generator strings."""
        return tuple(str(g) for g in self.ideal.canonical_gens())

    def contains(self, f):
        return self.ideal.contains(f)

    def contains_ideal(self, other):
        inner = other.ideal if isinstance(other, PrimeIdeal) else other
        return self.ideal.contains_ideal(inner)

    def strictly_contains(self, other):
        inner = other.ideal if isinstance(other, PrimeIdeal) else other
        return self.ideal.strictly_contains(inner)

    def equals(self, other):
        inner = other.ideal if isinstance(other, PrimeIdeal) else other
        return self.ideal.equals(inner)

    def is_zero(self):
        return self.ideal.is_zero()

    def __str__(self):
        gens = self.ideal.canonical_gens()
        if not gens:
            return "(0)"
        return "(%s)" % ", ".join(str(g) for g in gens)

    def __repr__(self):
        return "PrimeIdeal%s[%s]" % (self, self.attestation)


def incomparable(p, q):
    return not p.contains_ideal(q) and not q.contains_ideal(p)


class PrimeSet:
    """A finite set of primes, sorted canonically, with a completeness flag.

    ``complete`` is False when the set came from testing a candidate
    registry, which can miss primes outside the registry.
    """

    def __init__(self, primes, complete=True):
        seen = {}
        for p in primes:
            seen.setdefault(p.key(), p)
        self.primes = tuple(sorted(seen.values(), key=PrimeIdeal.token))
        self.complete = complete

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __bool__(self):
        return bool(self.primes)

    def contains_prime(self, p):
        return any(q.key() == p.key() for q in self.primes)

    def key(self):
        return frozenset(p.key() for p in self.primes)

    def same_primes(self, other):
        return self.key() == other.key()

    def maximal_elements(self):
        out = []
        for p in self.primes:
            if not any(
                q.key() != p.key() and q.strictly_contains(p) for q in self.primes
            ):
                out.append(p)
        return out

    def minimal_elements(self):
        out = []
        for p in self.primes:
            if not any(
                q.key() != p.key() and p.strictly_contains(q) for q in self.primes
            ):
                out.append(p)
        return out

    def is_antichain(self):
        return all(
            incomparable(p, q)
            for p, q in itertools.combinations(self.primes, 2)
        )

    def __str__(self):
        return "{%s}" % ", ".join(str(p) for p in self.primes)


class CandidateRegistry:
    """An ordered, deduplicated list of candidate primes for Ass searches."""

    def __init__(self, primes):
        seen = set()
        out = []
        ring = None
        for p in primes:
            if ring is None:
                ring = p.ring
            elif p.ring != ring:
                raise RingMismatchError("registry candidates over different rings")
            if p.key() not in seen:
                seen.add(p.key())
                out.append(p)
        self.ring = ring
        self.primes = tuple(out)

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


def is_maximal_in(p, primes):
    """Whether no member of the set strictly contains p; p must belong."""
    members = list(primes)
    if not any(q.key() == p.key() for q in members):
        raise ValueError("prime is not a member of the set")
    return not any(
        q.key() != p.key() and q.strictly_contains(p) for q in members
    )


@dataclass
class AssEvidence:
    member: bool
    colon: Submodule
    ann: Ideal | None


def supp_contains(p, view):
    """Whether p lies in the support of the subquotient: Ann(A/B) <= p."""
    if p.ring != view.top.ring:
        raise RingMismatchError("prime over a different ring")
    return p.contains_ideal(view.ann())


def ass_membership(p, Q):
    """Evidence for whether p is an associated prime of the quotient Q.

    Q presents M/N with N as the denominator.  Computes K = (N : p) in M;
    p is associated exactly when K != N and Ann(K/N) <= p.
    """
    if p.ring != Q.ring:
        raise RingMismatchError("prime over a different ring")
    N = Q.span(())
    K = colon_module(N, p.ideal, Q)
    if K.equals(N):
        return AssEvidence(False, K, None)
    ann = colon_ideal(N, K)
    return AssEvidence(p.contains_ideal(ann), K, ann)


def ass_contains(p, Q):
    return ass_membership(p, Q).member


def _is_monomial_vector(v):
    return sum(len(p) for p in v) == 1


def monomial_eligible(Q):
    """Whether exhaustive monomial enumeration applies to the quotient."""
    if Q.ring.relations:
        return False
    gens = tuple(Q.top.gens) + tuple(Q.denom.gens)
    return all(_is_monomial_vector(v) for v in gens)


def ass_enumerate(Q, source=MONOMIAL, max_vars=14):
    """The associated primes of the quotient module Q.

    In MONOMIAL mode the generators must be monomial vectors over a plain
    polynomial ring; all variable-subset primes are tested and the result
    is complete.  With a CandidateRegistry only its candidates are tested
    and the result is flagged incomplete (relative to the candidates).
    """
    if isinstance(source, CandidateRegistry):
        found = [p for p in source if ass_contains(p, Q)]
        return PrimeSet(found, complete=False)
    if not (source is MONOMIAL or source is None):
        raise TypeError("ass source must be MONOMIAL or a CandidateRegistry")
    if not monomial_eligible(Q):
        raise IncompleteRegistryError(
            "associated prime enumeration needs monomial generators over a "
            "plain polynomial ring; supply a candidate registry otherwise"
        )
    m = len(Q.ring.names)
    if m > max_vars:
        raise BudgetError(
            "variable subset enumeration over %d variables exceeds the bound %d"
            % (m, max_vars)
        )
    found = []
    for size in range(m + 1):
        for combo in itertools.combinations(range(m), size):
            p = PrimeIdeal.from_variables(Q.ring, combo)
            if ass_contains(p, Q):
                found.append(p)
    return PrimeSet(found, complete=True)


def sort_primes(primes, tie_break="lex"):
    """Sort primes by token; revlex reverses the order."""
    out = sorted(primes, key=PrimeIdeal.token)
    if tie_break == "revlex":
        out.reverse()
    elif tie_break != "lex":
        raise ValueError("tie_break must be 'lex' or 'revlex'")
    return out
