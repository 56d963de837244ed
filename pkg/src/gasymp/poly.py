"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials live over a fixed :class:`VariableTable` that records variable
names and their block (base coordinates ``x``, fiber coordinates ``alpha``,
and auxiliary parameters ``aux``).  Coefficients are ``fractions.Fraction``
throughout, monomials are plain exponent tuples, and every value is immutable
after construction, so objects can be shared freely between threads.

The module also houses the small amount of calculus the toolkit needs:
derivations (linear maps determined by variable images, extended by the
Leibniz rule) and polynomial maps with an optional cleared denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

Mono = tuple  # exponent vector aligned with a VariableTable
Scalar = Fraction

BLOCK_X = "x"
BLOCK_ALPHA = "alpha"
BLOCK_AUX = "aux"
_BLOCKS = (BLOCK_X, BLOCK_ALPHA, BLOCK_AUX)


class TableMismatch(ValueError):
    """Raised when two values over different variable tables are combined."""


def _as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


@dataclass(frozen=True)
class VariableTable:
    """Ordered variable names with block tags.

    The order of the tuple is the total variable order used everywhere:
    later positions are the *larger* variables for the monomial orders in
    :mod:`gasymp.groebner`.  Block tags partition the sequence.
    """

    names: tuple
    blocks: tuple
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        blocks = tuple(self.blocks)
        if len(names) != len(blocks):
            raise ValueError("names and blocks must have equal length")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for b in blocks:
            if b not in _BLOCKS:
                raise ValueError(f"unknown block tag {b!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    # -- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in table {self.names}") from None

    def positions(self, block: str) -> tuple:
        return tuple(i for i, b in enumerate(self.blocks) if b == block)

    def cotangent_pairs(self) -> tuple:
        """Positional base/fiber pairs (l-th x with l-th alpha variable)."""
        xs = self.positions(BLOCK_X)
        als = self.positions(BLOCK_ALPHA)
        if len(xs) != len(als):
            raise ValueError("x-block and alpha-block differ in size")
        return tuple(zip(xs, als))

    def fresh_name(self, base: str) -> str:
        if base not in self._index:
            return base
        i = 1
        while f"{base}{i}" in self._index:
            i += 1
        return f"{base}{i}"

    # -- constructors for values over this table --------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.scalar(1)

    def scalar(self, value) -> "Polynomial":
        c = _as_scalar(value)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * len(self.names): c})

    def var(self, name: str) -> "Polynomial":
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def monomial(self, exps: Sequence, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != len(self.names):
            raise ValueError("exponent vector has wrong length")
        return Polynomial(self, {exps: _as_scalar(coeff)})

    # -- derived tables ----------------------------------------------------

    def extend(self, new_names: Sequence, block: str = BLOCK_AUX) -> "VariableTable":
        return VariableTable(self.names + tuple(new_names), self.blocks + (block,) * len(tuple(new_names)))

    def subtable(self, keep: Sequence) -> "VariableTable":
        keep = tuple(keep)
        pos = [self.index(n) for n in keep]
        return VariableTable(tuple(self.names[i] for i in pos), tuple(self.blocks[i] for i in pos))

    def lift(self, poly: "Polynomial", target: "VariableTable") -> "Polynomial":
        """Re-express ``poly`` on ``target``, which must contain all its names."""
        if poly.table == target:
            return poly
        pos = [target.index(n) for n in poly.table.names]
        n = len(target.names)
        terms = {}
        for m, c in poly.terms.items():
            e = [0] * n
            for i, ei in enumerate(m):
                if ei:
                    e[pos[i]] = ei
            terms[tuple(e)] = c
        return Polynomial(target, terms)

    def project(self, poly: "Polynomial", target: "VariableTable") -> "Polynomial":
        """Re-express ``poly`` on a subtable; fails if other variables occur."""
        pos = {self.index(n): j for j, n in enumerate(target.names)}
        n = len(target.names)
        terms = {}
        for m, c in poly.terms.items():
            e = [0] * n
            for i, ei in enumerate(m):
                if not ei:
                    continue
                if i not in pos:
                    raise ValueError(f"polynomial mentions eliminated variable {self.names[i]}")
                e[pos[i]] = ei
            terms[tuple(e)] = c
        return Polynomial(target, terms)


def table(names: Sequence, blocks: Sequence) -> VariableTable:
    return VariableTable(tuple(names), tuple(blocks))


def aux_table(names: Sequence) -> VariableTable:
    names = tuple(names)
    return VariableTable(names, (BLOCK_AUX,) * len(names))


# ---------------------------------------------------------------------------
# monomial helpers


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: Mono) -> int:
    return sum(a)


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Total order on monomials, compatible with multiplication, 1 minimal."""

    def key(self, m: Mono):
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError


def _grevlex_key(m: Mono):
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    """Graded reverse lexicographic order; later table positions are larger."""

    def key(self, m: Mono):
        return _grevlex_key(m)

    def descriptor(self) -> str:
        return "grevlex"


@dataclass(frozen=True)
class Lex(MonomialOrder):
    """Lexicographic order; later table positions are larger."""

    def key(self, m: Mono):
        return tuple(reversed(m))

    def descriptor(self) -> str:
        return "lex"


@dataclass(frozen=True)
class BlockElim(MonomialOrder):
    """Elimination (product) order: the dominant positions are compared
    first by grevlex, then the remaining positions by grevlex.  Any monomial
    involving a dominant variable beats every monomial that avoids them, so
    the order eliminates the dominant block."""

    dominant: tuple
    _rest: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dominant", tuple(sorted(set(self.dominant))))
        object.__setattr__(self, "_rest", {})

    def key(self, m: Mono):
        dom = self.dominant
        rest = self._rest.get(len(m))
        if rest is None:
            dset = set(dom)
            rest = tuple(i for i in range(len(m)) if i not in dset)
            self._rest[len(m)] = rest
        sd = 0
        for i in dom:
            sd += m[i]
        sr = 0
        for i in rest:
            sr += m[i]
        return (sd, tuple(-m[i] for i in reversed(dom)), sr, tuple(-m[i] for i in reversed(rest)))

    def descriptor(self) -> str:
        return "elim" + ",".join(str(i) for i in self.dominant)


GREVLEX = GrevLex()
LEX = Lex()


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse exact polynomial: map from exponent tuple to nonzero Fraction."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VariableTable, terms: Mapping):
        clean = {}
        for m, c in terms.items():
            c = _as_scalar(c)
            if c != 0:
                clean[m] = c
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.table.names), Fraction(0))

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(i)
        return out

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.table != other.table:
            raise TableMismatch("polynomials over different variable tables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.table.scalar(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            elif m in terms:
                del terms[m]
        return Polynomial(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.table.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_scalar(other)
            if c == 0:
                return self.table.zero()
            return Polynomial(self.table, {m: cc * c for m, cc in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Polynomial(self.table, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.table.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.table.scalar(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        return hash((self.table.names, tuple(sorted(self.terms.items()))))

    # -- structure -----------------------------------------------------------

    def leading(self, order: MonomialOrder = GREVLEX) -> tuple:
        """(monomial, coefficient) of the largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading(order)
        return self * (Fraction(1) / c)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def homogeneous_parts(self) -> dict:
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: Polynomial(self.table, t) for d, t in parts.items()}

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def partial(self, pos: int) -> "Polynomial":
        terms = {}
        for m, c in self.terms.items():
            e = m[pos]
            if not e:
                continue
            mm = list(m)
            mm[pos] = e - 1
            mm = tuple(mm)
            s = terms.get(mm, 0) + c * e
            if s:
                terms[mm] = s
            elif mm in terms:
                del terms[mm]
        return Polynomial(self.table, terms)

    def evaluate(self, values: Mapping) -> Fraction:
        """Evaluate at a rational point given as name -> value (full support)."""
        point = [None] * len(self.table.names)
        for name, v in values.items():
            point[self.table.index(name)] = _as_scalar(v)
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    if point[i] is None:
                        raise ValueError(f"no value for {self.table.names[i]}")
                    t *= point[i] ** e
            total += t
        return total

    def substitute(self, assignment: Mapping) -> "Polynomial":
        """Substitute polynomials (same table) for a subset of the variables."""
        images = {}
        for name, p in assignment.items():
            if isinstance(p, (int, Fraction)):
                p = self.table.scalar(p)
            self._check(p)
            images[self.table.index(name)] = p
        out = self.table.zero()
        pow_cache = {i: {0: self.table.one()} for i in images}
        for m, c in self.terms.items():
            rest = list(m)
            factor = self.table.scalar(c)
            for i in images:
                e = m[i]
                if e:
                    rest[i] = 0
                    cache = pow_cache[i]
                    if e not in cache:
                        q = max(k for k in cache if k <= e)
                        acc = cache[q]
                        while q < e:
                            acc = acc * images[i]
                            q += 1
                            cache[q] = acc
                    factor = factor * cache[e]
            out = out + factor * Polynomial(self.table, {tuple(rest): Fraction(1)})
        return out

    # -- printing --------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)})"


def format_mono(table: VariableTable, m: Mono) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(table.names[i])
        elif e > 1:
            parts.append(f"{table.names[i]}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical human-readable form: terms descending in the given order,
    `^` powers, explicit `*`, rational coefficients as num/den."""
    if p.is_zero():
        return "0"
    chunks = []
    for m, c in p.sorted_terms(order):
        mono = format_mono(p.table, m)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(chunks)


def poly_key(p: Polynomial, order: MonomialOrder = GREVLEX) -> tuple:
    """Deterministic sort key for polynomial sequences."""
    return tuple((order.key(m), c.numerator, c.denominator) for m, c in p.sorted_terms(order))


def binom(n: int, k: int) -> Fraction:
    return Fraction(math.comb(n, k))


# ---------------------------------------------------------------------------
# derivations


class Derivation:
    """Derivation of the polynomial ring, determined by variable images and
    extended by linearity and the Leibniz rule."""

    __slots__ = ("table", "images")

    def __init__(self, table: VariableTable, images: Mapping):
        imgs = {}
        for name, p in images.items():
            idx = table.index(name)
            if isinstance(p, (int, Fraction)):
                p = table.scalar(p)
            if p.table != table:
                raise TableMismatch("derivation image over wrong table")
            if not p.is_zero():
                imgs[idx] = p
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "images", imgs)

    def __setattr__(self, name, value):
        raise AttributeError("Derivation is immutable")

    def image(self, name: str) -> Polynomial:
        return self.images.get(self.table.index(name), self.table.zero())

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.table != self.table:
            raise TableMismatch("derivation applied across tables")
        out = self.table.zero()
        for i, img in self.images.items():
            out = out + f.partial(i) * img
        return out

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.table != other.table:
            raise TableMismatch("derivations over different tables")
        images = {}
        for i in set(self.images) | set(other.images):
            name = self.table.names[i]
            images[name] = self.images.get(i, self.table.zero()) + other.images.get(i, self.table.zero())
        return Derivation(self.table, images)

    def __mul__(self, c) -> "Derivation":
        return Derivation(self.table, {self.table.names[i]: p * c for i, p in self.images.items()})

    __rmul__ = __mul__

    def bracket(self, other: "Derivation") -> "Derivation":
        """Commutator [self, other] as a derivation."""
        if self.table != other.table:
            raise TableMismatch("derivations over different tables")
        images = {}
        for name in self.table.names:
            v = self.table.var(name)
            images[name] = self(other(v)) - other(self(v))
        return Derivation(self.table, images)

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.table == other.table and self.images == other.images

    def __repr__(self):
        body = ", ".join(f"{self.table.names[i]} -> {format_poly(p)}" for i, p in sorted(self.images.items()))
        return f"Derivation({body})"


@dataclass(frozen=True)
class NilpotencyVerdict:
    nilpotent: bool
    order: int | None  # least k with D^k(v) = 0 for every variable, when found
    bound: int

    def __bool__(self) -> bool:
        return self.nilpotent


def is_locally_nilpotent(d: Derivation, bound: int) -> NilpotencyVerdict:
    """Check D^k kills every variable for some k <= bound.

    Sufficient for local nilpotency on the whole ring by the Leibniz rule.
    Returns an inconclusive verdict (not a refutation) when the bound is hit.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    worst = 0
    for name in d.table.names:
        p = d.table.var(name)
        k = 0
        while not p.is_zero():
            p = d(p)
            k += 1
            if k > bound:
                return NilpotencyVerdict(False, None, bound)
        worst = max(worst, k)
    return NilpotencyVerdict(True, max(worst, 1), bound)


# ---------------------------------------------------------------------------
# polynomial maps


class PolyMap:
    """Polynomial map source -> target, stored as one component per target
    variable (each a polynomial on the source table), with an optional
    declared denominator: the actual map is component/denominator."""

    __slots__ = ("source", "target", "components", "denominator")

    def __init__(self, source: VariableTable, target: VariableTable,
                 components: Sequence, denominator: Polynomial | None = None):
        components = tuple(components)
        if len(components) != len(target.names):
            raise ValueError("one component per target variable required")
        comps = []
        for p in components:
            if isinstance(p, (int, Fraction)):
                p = source.scalar(p)
            if p.table != source:
                raise TableMismatch("component over wrong source table")
            comps.append(p)
        if denominator is None:
            denominator = source.one()
        if denominator.table != source:
            raise TableMismatch("denominator over wrong source table")
        if denominator.is_zero():
            raise ValueError("zero denominator")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", tuple(comps))
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMap is immutable")

    @property
    def polynomial(self) -> bool:
        return self.denominator.is_constant() and self.denominator.constant_term() == 1

    def component(self, name: str) -> Polynomial:
        return self.components[self.target.index(name)]

    def pull(self, f: Polynomial) -> Polynomial:
        """Pullback f -> f o self for a denominator-free map."""
        if not self.polynomial:
            raise ValueError("pull on a map with a nontrivial denominator; use pull_cleared")
        if f.table != self.target:
            raise TableMismatch("pullback of a function on the wrong table")
        return self._substitute(f, None)

    def pull_cleared(self, f: Polynomial) -> tuple:
        """(numerator, k) with f o self = numerator / denominator**k, k = deg f."""
        if f.table != self.target:
            raise TableMismatch("pullback of a function on the wrong table")
        k = max(f.degree(), 0)
        return self._substitute(f, k), k

    def _substitute(self, f: Polynomial, clear_power: int | None) -> Polynomial:
        src = self.source
        out = src.zero()
        pow_cache = [{0: src.one()} for _ in self.components]
        den_cache = {0: src.one()}

        def power(cache, base, e):
            if e not in cache:
                q = max(k for k in cache if k <= e)
                acc = cache[q]
                while q < e:
                    acc = acc * base
                    q += 1
                    cache[q] = acc
            return cache[e]

        for m, c in f.terms.items():
            term = src.scalar(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(pow_cache[i], self.components[i], e)
            if clear_power is not None:
                pad = clear_power - sum(m)
                if pad:
                    term = term * power(den_cache, self.denominator, pad)
            out = out + term
        return out

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """self o inner; both maps must be denominator-free."""
        if not (self.polynomial and inner.polynomial):
            raise ValueError("compose requires denominator-free maps")
        if inner.target != self.source:
            raise TableMismatch("composition across mismatched tables")
        return PolyMap(inner.source, self.target, [inner.pull(c) for c in self.components])

    @staticmethod
    def identity(table: VariableTable) -> "PolyMap":
        return PolyMap(table, table, [table.var(n) for n in table.names])

    def __eq__(self, other):
        return (isinstance(other, PolyMap) and self.source == other.source
                and self.target == other.target and self.components == other.components
                and self.denominator == other.denominator)

    def __repr__(self):
        body = ", ".join(f"{n} -> {format_poly(c)}" for n, c in zip(self.target.names, self.components))
        if not self.polynomial:
            body += f" | den {format_poly(self.denominator)}"
        return f"PolyMap({body})"
