"""Multivariate polynomials over exact fields, monomial orders, and rings.

Monomials are exponent tuples, polynomials are immutable term maps attached
to a `PolyRing`.  A ring may carry quotient relations; the reduced basis of
the relation ideal is computed once on first use and cached, and elements
can be put into a canonical representative form with `PolyRing.reduce`.

Monomial orders (`TermOrder`) cover lex, graded reverse lex, and block
elimination orders, and extend to terms of a free module position-over-term
with component 0 taking the highest precedence.
"""

from __future__ import annotations

from .errors import RingMismatchError
from .fields import QQ

Monomial = tuple

# ---------------------------------------------------------------------------
# monomial helpers


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    """Exponent vector of b / a; caller guarantees divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


def mono_is_one(a):
    return not any(a)


# ---------------------------------------------------------------------------
# orders


class TermOrder:
    """A total, multiplicative monomial order with 1 as least element.

    kind is "lex" or "grevlex"; an elimination order is built with
    `TermOrder.elimination(block)` and sorts any monomial touching the
    block above every block-free monomial (grevlex inside both parts).
    Keys for free-module terms insert the component between the
    elimination part and the base part, so eliminating a variable is
    sound for module computations and, absent a block, the order is
    plain position-over-term.
    """

    def __init__(self, kind="grevlex", elim=()):
        if kind not in ("lex", "grevlex", "elim"):
            raise ValueError("unknown order kind %r" % kind)
        if kind == "elim" and not elim:
            raise ValueError("elimination order needs a nonempty block")
        self.kind = kind
        self.elim = tuple(sorted(elim))

    @classmethod
    def elimination(cls, block):
        return cls("elim", tuple(block))

    def _grevlex_key(self, m):
        return (sum(m), tuple(-e for e in reversed(m)))

    def mono_key(self, m):
        if self.kind == "lex":
            return m
        if self.kind == "grevlex":
            return self._grevlex_key(m)
        block = set(self.elim)
        inner = tuple(e for i, e in enumerate(m) if i in block)
        outer = tuple(e for i, e in enumerate(m) if i not in block)
        return (self._grevlex_key(inner), self._grevlex_key(outer))

    def term_key(self, term):
        """Sort key for a module term (component, monomial)."""
        comp, m = term
        if self.kind == "elim":
            ik, ok = self.mono_key(m)
            return (ik, -comp, ok)
        return (-comp, self.mono_key(m))

    def key(self):
        return (self.kind, self.elim)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.kind == "elim":
            return "TermOrder(elim=%r)" % (self.elim,)
        return "TermOrder(%r)" % self.kind


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


# ---------------------------------------------------------------------------
# rings and polynomials


class PolyRing:
    """k[x_1..x_m], optionally modulo a tuple of quotient relations.

    Relations are stored as polynomials of the ring itself; all generating
    sets handed to basis computations are extended by them, which is how
    every operation downstream works modulo the relation ideal.
    """

    def __init__(self, field, names, relations=()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if not names:
            raise ValueError("need at least one variable")
        self.field = field
        self.names = names
        self.relations = tuple(
            Polynomial(self, dict(r._terms) if isinstance(r, Polynomial) else dict(r))
            for r in relations
            if (r._terms if isinstance(r, Polynomial) else r)
        )
        self._key = (
            repr(field),
            names,
            tuple(sorted(p.key() for p in self.relations)),
        )
        self._relation_basis = None
        self._pure = None

    @property
    def nvars(self):
        return len(self.names)

    @property
    def is_quotient(self):
        return bool(self.relations)

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        base = "%r[%s]" % (self.field, ",".join(self.names))
        if self.relations:
            return base + "/(%s)" % ", ".join(str(r) for r in self.relations)
        return base

    # construction helpers

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(self.field.one)

    def const(self, c):
        c = self.field.from_int(c) if isinstance(c, int) else c
        if c == self.field.zero:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return tuple(self.gen(i) for i in range(self.nvars))

    def var(self, name):
        return self.gen(self.names.index(name))

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector %r" % (exps,))
        c = self.field.from_int(coeff) if isinstance(coeff, int) else coeff
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {exps: c})

    def quotient(self, relations):
        if self.is_quotient:
            raise ValueError("ring is already a quotient")
        return PolyRing(self.field, self.names, [p._terms for p in relations])

    def pure(self):
        """The polynomial ring under this one (self when not a quotient)."""
        if not self.is_quotient:
            return self
        if self._pure is None:
            self._pure = PolyRing(self.field, self.names)
        return self._pure

    def relation_basis(self):
        """Reduced basis of the relation ideal, as vectors of rank 1."""
        if self._relation_basis is None:
            if not self.is_quotient:
                self._relation_basis = ()
            else:
                from .groebner import buchberger

                pure = self.pure()
                lifted = [(Polynomial(pure, dict(r._terms)),) for r in self.relations]
                gb = buchberger(lifted, ring=pure, rank=1)
                self._relation_basis = tuple(
                    Polynomial(self, dict(v[0]._terms)) for v in gb.vectors
                )
        return self._relation_basis

    def reduce(self, f):
        """Canonical representative of f modulo the relation ideal."""
        if not self.is_quotient:
            return f
        from .groebner import reduce_by_polys

        return reduce_by_polys(f, self.relation_basis())

    def element_equal(self, f, g):
        return self.reduce(f - g).is_zero()


class Polynomial:
    """An immutable polynomial: a map from exponent tuples to coefficients.

    Zero coefficients are never stored.  Arithmetic stays inside one ring;
    mixing rings raises RingMismatchError.
    """

    __slots__ = ("ring", "_terms", "_key")

    def __init__(self, ring, terms):
        self.ring = ring
        zero = ring.field.zero
        self._terms = {m: c for m, c in terms.items() if c != zero}
        self._key = None

    # inspection

    def terms(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, mono):
        return self._terms.get(mono, self.ring.field.zero)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_term(self):
        return len(self._terms) == 1

    def total_degree(self):
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def leading_term(self, order=GREVLEX):
        """The greatest (monomial, coefficient) pair under the order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=order.mono_key)
        return m, self._terms[m]

    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self._terms.items(), key=lambda t: t[0]))
        return self._key

    # arithmetic

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(
                "polynomials over %r and %r" % (self.ring, other.ring)
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        field = self.ring.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = field.add(out.get(m, field.zero), c)
            if s == field.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        field = self.ring.field
        return Polynomial(self.ring, {m: field.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.ring.field.from_int(other))
        self._check(other)
        field = self.ring.field
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = field.add(out.get(m, field.zero), field.mul(c1, c2))
                if s == field.zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(self.ring.field.from_int(other))
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c):
        field = self.ring.field
        if c == field.zero:
            return self.ring.zero()
        return Polynomial(self.ring, {m: field.mul(c, v) for m, v in self._terms.items()})

    def mono_scale(self, mono, coeff):
        """self * coeff * x^mono, in one pass."""
        field = self.ring.field
        if coeff == field.zero:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {mono_mul(m, mono): field.mul(coeff, c) for m, c in self._terms.items()},
        )

    def exact_div(self, divisor, order=GREVLEX):
        """Quotient self / divisor when division is exact, else ValueError."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        self._check(divisor)
        field = self.ring.field
        dm, dc = divisor.leading_term(order)
        rem = dict(self._terms)
        quot = {}
        while rem:
            m = max(rem, key=order.mono_key)
            if not mono_divides(dm, m):
                raise ValueError("division is not exact")
            q = mono_div(m, dm)
            qc = field.div(rem[m], dc)
            quot[q] = qc
            for m2, c2 in divisor._terms.items():
                mm = mono_mul(q, m2)
                s = field.sub(rem.get(mm, field.zero), field.mul(qc, c2))
                if s == field.zero:
                    rem.pop(mm, None)
                else:
                    rem[mm] = s
        return Polynomial(self.ring, quot)

    # comparison / display

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, int):
                return self == self.ring.const(other)
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring._key, self.key()))

    def _mono_str(self, m):
        parts = []
        for name, e in zip(self.ring.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        field = self.ring.field
        one = field.one
        items = sorted(self._terms.items(), key=lambda t: GREVLEX.mono_key(t[0]), reverse=True)
        chunks = []
        for i, (m, c) in enumerate(items):
            mono = self._mono_str(m)
            neg = False
            if field.char == 0 and c < 0:
                neg = True
                c = -c
            cs = field.coeff_str(c)
            if mono and c == one:
                body = mono
            elif mono:
                body = "%s*%s" % (cs, mono)
            else:
                body = cs
            if i == 0:
                chunks.append("-" + body if neg else body)
            else:
                chunks.append(("- " if neg else "+ ") + body)
        return " ".join(chunks)

    def __repr__(self):
        return "<%s>" % self
