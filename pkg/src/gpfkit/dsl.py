"""The input language: declarations of rings, primes, ideals and modules,
followed by commands.

A script declares exactly one ring and any number of named primes,
ideals, modules and submodules over it, then runs commands against
them.  Commands may also take inline literals wherever a name is
allowed.  Example:

    ring R = QQ[x,y,z] / (x*y - z^2, x^2 - y*z);
    prime p = (x, z);
    ideal a = p^2;
    module M = free(2) / ((x,0),(0,x));
    submodule N in M = ((y,0));
    candidates = { p, (x,y,z) };
    gpf N in M;
    check-iff a in R;

Coefficient fields are QQ or F<q> for a prime q.  Exponents in ideal
expressions must be at least 1; polynomial exponents may be any
nonnegative integer.  `#` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .arith import PolyRing
from .errors import ParseError
from .fields import GF, QQ
from .gpf import FactorizationTarget
from .modops import Ideal, QuotientModule, ideal_power, ideal_product
from .primes import CandidateRegistry, PrimeIdeal

COMMANDS = (
    "gpf",
    "filtration",
    "ass",
    "colon",
    "exists",
    "construct",
    "check-iff",
    "verify",
)
DECLS = ("ring", "prime", "ideal", "module", "submodule", "candidates")


@dataclass
class Token:
    kind: str
    value: object
    line: int
    col: int


_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUM = re.compile(r"[0-9]+")
_PUNCT = "(){}[],;=^*+-/:"


def tokenize(text):
    toks = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            j = text.find("\n", i)
            i = n if j < 0 else j
            continue
        m = _WORD.match(text, i)
        if m:
            word = m.group(0)
            if word == "check" and text[m.end() : m.end() + 4] == "-iff":
                word = "check-iff"
            toks.append(Token("name", word, line, col))
            i += len(word)
            col += len(word)
            continue
        m = _NUM.match(text, i)
        if m:
            toks.append(Token("int", int(m.group(0)), line, col))
            i = m.end()
            col += len(m.group(0))
            continue
        if ch in _PUNCT:
            toks.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    toks.append(Token("end", "", line, col))
    return toks


# --- AST ------------------------------------------------------------------
# Polynomials are nested tuples evaluated later against the script's ring:
#   ("var", name, line, col) | ("const", Fraction, line, col)
#   | ("pow", node, n) | ("mul", [nodes]) | ("sum", [(sign, node)])


@dataclass
class Item:
    """One entry of a generator list: a scalar or a vector of polynomials."""

    entries: list
    line: int
    col: int


@dataclass
class IdealFactor:
    base: object  # name string or list of poly nodes
    exponent: int
    line: int
    col: int


@dataclass
class RingDecl:
    name: str
    fieldspec: str
    variables: list
    relations: list
    line: int
    col: int


@dataclass
class PrimeDecl:
    name: str
    gens: list
    line: int
    col: int


@dataclass
class IdealDecl:
    name: str
    factors: list
    line: int
    col: int


@dataclass
class ModuleDecl:
    name: str
    rank: int
    denom: list
    line: int
    col: int


@dataclass
class SubmoduleDecl:
    name: str
    module: str
    items: list
    line: int
    col: int


@dataclass
class CandidatesDecl:
    entries: list  # names or gens lists
    line: int
    col: int


@dataclass
class Command:
    op: str
    args: dict
    line: int
    col: int


@dataclass
class Script:
    statements: list = dc_field(default_factory=list)


class Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.cur
        self.pos += 1
        return tok

    def accept(self, kind):
        if self.cur.kind == kind:
            return self.advance()
        return None

    def expect(self, kind, what=None):
        tok = self.cur
        if tok.kind != kind:
            raise ParseError(
                "expected %s, found %r" % (what or repr(kind), str(tok.value)),
                tok.line,
                tok.col,
            )
        return self.advance()

    def name(self, what="a name"):
        return self.expect("name", what)

    def script(self):
        out = Script()
        while self.cur.kind != "end":
            out.statements.append(self.statement())
        return out

    def statement(self):
        tok = self.cur
        if tok.kind != "name":
            raise ParseError(
                "expected a declaration or command, found %r"
                % str(tok.value),
                tok.line,
                tok.col,
            )
        word = tok.value
        if word in DECLS:
            stmt = getattr(self, "decl_" + word)()
        elif word in COMMANDS:
            stmt = self.command()
        else:
            raise ParseError(
                "unknown statement %r" % word, tok.line, tok.col
            )
        self.expect(";")
        return stmt

    # --- declarations ---

    def decl_ring(self):
        tok = self.advance()
        name = self.name("a ring name").value
        self.expect("=")
        spec = self.name("a coefficient field (QQ or F<q>)")
        self.expect("[")
        variables = [self.name("a variable name").value]
        while self.accept(","):
            variables.append(self.name("a variable name").value)
        self.expect("]")
        relations = []
        if self.accept("/"):
            relations = self.poly_list()
        return RingDecl(
            name, spec.value, variables, relations, tok.line, tok.col
        )

    def decl_prime(self):
        tok = self.advance()
        name = self.name("a prime name").value
        self.expect("=")
        gens = self.poly_list()
        return PrimeDecl(name, gens, tok.line, tok.col)

    def decl_ideal(self):
        tok = self.advance()
        name = self.name("an ideal name").value
        self.expect("=")
        factors = self.ideal_expr()
        return IdealDecl(name, factors, tok.line, tok.col)

    def decl_module(self):
        tok = self.advance()
        name = self.name("a module name").value
        self.expect("=")
        self.keyword("free")
        self.expect("(")
        rank = self.expect("int", "a rank").value
        self.expect(")")
        if rank < 1:
            raise ParseError("rank must be >= 1", tok.line, tok.col)
        denom = []
        if self.accept("/"):
            denom = self.item_list()
        return ModuleDecl(name, rank, denom, tok.line, tok.col)

    def decl_submodule(self):
        tok = self.advance()
        name = self.name("a submodule name").value
        self.keyword("in")
        module = self.name("a module name").value
        self.expect("=")
        items = self.item_list()
        return SubmoduleDecl(name, module, items, tok.line, tok.col)

    def decl_candidates(self):
        tok = self.advance()
        self.expect("=")
        entries = self.prime_set()
        return CandidatesDecl(entries, tok.line, tok.col)

    def command(self):
        tok = self.advance()
        op = tok.value
        if op in ("gpf", "filtration", "ass", "verify"):
            sub = self.subref()
            self.keyword("in")
            module = self.name("a module name").value
            args = {"sub": sub, "module": module}
        elif op == "colon":
            sub = self.subref()
            self.expect(":")
            factors = self.ideal_expr()
            self.keyword("in")
            module = self.name("a module name").value
            args = {"sub": sub, "factors": factors, "module": module}
        elif op == "exists":
            entries = self.prime_set()
            self.keyword("in")
            module = self.name("a module name").value
            args = {"entries": entries, "module": module}
        elif op in ("construct", "check-iff"):
            factors = self.ideal_expr()
            self.keyword("in")
            module = self.name("a module name").value
            args = {"factors": factors, "module": module}
        else:
            raise ParseError("unknown command %r" % op, tok.line, tok.col)
        return Command(op, args, tok.line, tok.col)

    def keyword(self, word):
        tok = self.cur
        if tok.kind != "name" or tok.value != word:
            raise ParseError(
                "expected %r, found %r" % (word, str(tok.value)),
                tok.line,
                tok.col,
            )
        return self.advance()

    # --- shared pieces ---

    def subref(self):
        if self.cur.kind == "name":
            return self.advance().value
        return self.item_list()

    def item_list(self):
        self.expect("(", "a generator list")
        items = []
        if self.cur.kind != ")":
            items.append(self.item())
            while self.accept(","):
                items.append(self.item())
        self.expect(")")
        return items

    def item(self):
        tok = self.cur
        if tok.kind == "(":
            save = self.pos
            self.advance()
            first = self.poly()
            if self.cur.kind == ",":
                entries = [first]
                while self.accept(","):
                    entries.append(self.poly())
                self.expect(")")
                return Item(entries, tok.line, tok.col)
            self.expect(")")
            if self.cur.kind in ("^", "*", "+", "-", "/"):
                self.pos = save
                return Item([self.poly()], tok.line, tok.col)
            return Item([first], tok.line, tok.col)
        return Item([self.poly()], tok.line, tok.col)

    def poly_list(self):
        self.expect("(", "a generator list")
        out = []
        if self.cur.kind != ")":
            out.append(self.poly())
            while self.accept(","):
                out.append(self.poly())
        self.expect(")")
        return out

    def prime_set(self):
        self.expect("{", "a prime set")
        entries = []
        entries.append(self.prime_ref())
        while self.accept(","):
            entries.append(self.prime_ref())
        self.expect("}")
        return entries

    def prime_ref(self):
        tok = self.cur
        if tok.kind == "name":
            return self.advance().value
        if tok.kind == "(":
            return self.poly_list()
        raise ParseError(
            "expected a prime name or generator list", tok.line, tok.col
        )

    def ideal_expr(self):
        factors = [self.ideal_factor()]
        while self.accept("*"):
            factors.append(self.ideal_factor())
        return factors

    def ideal_factor(self):
        tok = self.cur
        if tok.kind == "name":
            base = self.advance().value
        elif tok.kind == "(":
            base = self.poly_list()
        else:
            raise ParseError(
                "expected an ideal name or generator list",
                tok.line,
                tok.col,
            )
        exponent = 1
        if self.accept("^"):
            etok = self.expect("int", "an exponent")
            exponent = etok.value
            if exponent < 1:
                raise ParseError(
                    "exponent must be >= 1", etok.line, etok.col
                )
        return IdealFactor(base, exponent, tok.line, tok.col)

    # --- polynomials ---

    def poly(self):
        terms = []
        sign = 1
        if self.accept("-"):
            sign = -1
        terms.append((sign, self.poly_term()))
        while self.cur.kind in ("+", "-"):
            op = self.advance()
            terms.append((1 if op.kind == "+" else -1, self.poly_term()))
        return ("sum", terms)

    def poly_term(self):
        factors = [self.poly_factor()]
        while self.accept("*"):
            factors.append(self.poly_factor())
        return ("mul", factors)

    def poly_factor(self):
        node = self.poly_atom()
        if self.accept("^"):
            etok = self.expect("int", "an exponent")
            node = ("pow", node, etok.value)
        return node

    def poly_atom(self):
        tok = self.cur
        if tok.kind == "name":
            self.advance()
            return ("var", tok.value, tok.line, tok.col)
        if tok.kind == "int":
            self.advance()
            value = Fraction(tok.value)
            if self.accept("/"):
                dtok = self.expect("int", "a denominator")
                if dtok.value == 0:
                    raise ParseError(
                        "zero denominator", dtok.line, dtok.col
                    )
                value /= dtok.value
            return ("const", value, tok.line, tok.col)
        if tok.kind == "(":
            self.advance()
            node = self.poly()
            self.expect(")")
            return node
        raise ParseError(
            "expected a polynomial, found %r" % str(tok.value),
            tok.line,
            tok.col,
        )


def parse(text):
    """Parse script text; raises ParseError with line and column."""
    return Parser(tokenize(text)).script()


# --- evaluation -----------------------------------------------------------


def _field_of(spec, line, col):
    if spec == "QQ":
        return QQ
    m = re.fullmatch(r"F([0-9]+)", spec)
    if m:
        try:
            return GF(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc), line, col)
    raise ParseError(
        "unknown coefficient field %r (expected QQ or F<q>)" % spec,
        line,
        col,
    )


def parse_field_flag(value):
    """--field values: QQ, Fp:<q>, or F<q>."""
    if value == "QQ":
        return QQ
    m = re.fullmatch(r"(?:Fp:|F)([0-9]+)", value)
    if m:
        return GF(int(m.group(1)))
    raise ValueError("unknown field %r (expected QQ or Fp:<q>)" % value)


class Env:
    """Evaluates declarations and resolves command operands."""

    def __init__(self, field_override=None):
        self.field_override = field_override
        self.ring = None
        self.ring_name = None
        self.names = {}
        self.registry = None
        self._var_index = {}
        self._ring_module = None

    # -- declarations --

    def declare(self, stmt):
        if isinstance(stmt, RingDecl):
            self._declare_ring(stmt)
        elif isinstance(stmt, PrimeDecl):
            self._check_ring(stmt)
            self._bind(
                stmt.name,
                ("prime", PrimeIdeal(self.ring, self.polys(stmt.gens))),
                stmt,
            )
        elif isinstance(stmt, IdealDecl):
            self._check_ring(stmt)
            pairs = self.target_pairs(stmt.factors)
            self._bind(stmt.name, ("ideal", pairs), stmt)
        elif isinstance(stmt, ModuleDecl):
            self._check_ring(stmt)
            denom = [
                self.vector(item, stmt.rank) for item in stmt.denom
            ]
            module = QuotientModule.free(self.ring, stmt.rank, denom)
            self._bind(stmt.name, ("module", module), stmt)
        elif isinstance(stmt, SubmoduleDecl):
            self._check_ring(stmt)
            module = self.module(stmt.module, stmt.line, stmt.col)
            vectors = [
                self.vector(item, module.rank) for item in stmt.items
            ]
            self._bind(
                stmt.name, ("submodule", (module.span(vectors), stmt.module)), stmt
            )
        elif isinstance(stmt, CandidatesDecl):
            self._check_ring(stmt)
            primes = [
                self.prime_of(entry, stmt.line, stmt.col)
                for entry in stmt.entries
            ]
            self.registry = CandidateRegistry(primes)
        else:
            raise TypeError("not a declaration: %r" % (stmt,))

    def _declare_ring(self, stmt):
        if self.ring is not None:
            raise ParseError(
                "a script declares exactly one ring", stmt.line, stmt.col
            )
        field = self.field_override or _field_of(
            stmt.fieldspec, stmt.line, stmt.col
        )
        seen = set()
        for v in stmt.variables:
            if v in seen:
                raise ParseError(
                    "duplicate variable %r" % v, stmt.line, stmt.col
                )
            seen.add(v)
        pure = PolyRing(field, tuple(stmt.variables))
        self.ring = pure
        self._var_index = {v: i for i, v in enumerate(stmt.variables)}
        if stmt.relations:
            rels = tuple(self.polys(stmt.relations))
            self.ring = PolyRing(
                field, tuple(stmt.variables), relations=rels
            )
        self.ring_name = stmt.name

    def _check_ring(self, stmt):
        if self.ring is None:
            raise ParseError(
                "declare a ring before anything else", stmt.line, stmt.col
            )

    def _bind(self, name, entry, stmt):
        if name in self.names or name == self.ring_name:
            raise ParseError(
                "name %r is already declared" % name, stmt.line, stmt.col
            )
        self.names[name] = entry

    # -- polynomial evaluation --

    def poly(self, node):
        kind = node[0]
        if kind == "var":
            _, name, line, col = node
            idx = self._var_index.get(name)
            if idx is None:
                raise ParseError("unknown variable %r" % name, line, col)
            return self.ring.gen(idx)
        if kind == "const":
            _, value, line, col = node
            return self.ring.const(self._coeff(value, line, col))
        if kind == "pow":
            base = self.poly(node[1])
            out = self.ring.one()
            for _ in range(node[2]):
                out = out * base
            return out
        if kind == "mul":
            out = self.ring.one()
            for sub in node[1]:
                out = out * self.poly(sub)
            return out
        if kind == "sum":
            out = self.ring.zero()
            for sign, sub in node[1]:
                term = self.poly(sub)
                out = out + term if sign > 0 else out - term
            return out
        raise TypeError("bad polynomial node %r" % (node,))

    def _coeff(self, frac, line, col):
        field = self.ring.field
        if field is QQ:
            return frac
        num = field.from_int(frac.numerator)
        den = field.from_int(frac.denominator)
        if den == field.zero:
            raise ParseError(
                "denominator vanishes in %s" % field, line, col
            )
        return field.mul(num, field.invert(den))

    def polys(self, nodes):
        return [self.poly(n) for n in nodes]

    def vector(self, item, rank):
        polys = self.polys(item.entries)
        if len(polys) != rank:
            raise ParseError(
                "expected a vector of %d entries, got %d"
                % (rank, len(polys)),
                item.line,
                item.col,
            )
        return tuple(polys)

    # -- operand resolution --

    def module(self, name, line, col):
        if name == self.ring_name:
            if self._ring_module is None:
                self._ring_module = QuotientModule.of_ring(self.ring)
            return self._ring_module
        entry = self.names.get(name)
        if entry is None or entry[0] != "module":
            raise ParseError("unknown module %r" % name, line, col)
        return entry[1]

    def submodule(self, ref, module_name, line, col):
        """Resolve a command's submodule operand against a named module."""
        module = self.module(module_name, line, col)
        if isinstance(ref, str):
            if ref == module_name:
                return module.full()
            entry = self.names.get(ref)
            if entry is None or entry[0] != "submodule":
                raise ParseError("unknown submodule %r" % ref, line, col)
            sub, home = entry[1]
            if home != module_name:
                raise ParseError(
                    "submodule %r was declared in %r" % (ref, home),
                    line,
                    col,
                )
            return sub
        vectors = [self.vector(item, module.rank) for item in ref]
        return module.span(vectors)

    def prime_of(self, ref, line, col):
        if isinstance(ref, str):
            entry = self.names.get(ref)
            if entry is None or entry[0] != "prime":
                raise ParseError("unknown prime %r" % ref, line, col)
            return entry[1]
        return PrimeIdeal(self.ring, self.polys(ref))

    def target_pairs(self, factors):
        """Flatten an ideal expression to (prime, exponent) pairs."""
        pairs = []
        for f in factors:
            if isinstance(f.base, str):
                entry = self.names.get(f.base)
                if entry is None:
                    raise ParseError(
                        "unknown name %r" % f.base, f.line, f.col
                    )
                if entry[0] == "prime":
                    pairs.append((entry[1], f.exponent))
                elif entry[0] == "ideal":
                    for p, e in entry[1]:
                        pairs.append((p, e * f.exponent))
                else:
                    raise ParseError(
                        "%r is not an ideal or prime" % f.base,
                        f.line,
                        f.col,
                    )
            else:
                prime = PrimeIdeal(self.ring, self.polys(f.base))
                pairs.append((prime, f.exponent))
        return pairs

    def target(self, factors, line, col):
        pairs = self.target_pairs(factors)
        merged = []
        for p, e in pairs:
            for k, (q, _) in enumerate(merged):
                if q.equals(p):
                    merged[k] = (q, merged[k][1] + e)
                    break
            else:
                merged.append((p, e))
        try:
            return FactorizationTarget.reordered(merged, mode="descending")
        except ValueError as exc:
            raise ParseError(str(exc), line, col)

    def ideal_of_pairs(self, pairs):
        out = None
        for p, e in pairs:
            power = ideal_power(p.ideal, e)
            out = power if out is None else ideal_product(out, power)
        return out if out is not None else Ideal(self.ring, [])
