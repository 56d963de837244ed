"""Invariant rings of additive actions on coordinate rings and their quotients.

Two independent routes to the invariants are implemented and played against
each other:

* ``graded_kernel`` computes the invariants of one total degree by exact
  linear algebra on normal forms (valid whenever the defining ideal is
  homogeneous, which holds for every zero level here);
* ``essen_derksen`` runs the local-slice algorithm: invariants of the
  localization via the exponential (Dixmier) substitution with cleared
  denominators, then intersection with the coordinate ring by iterated
  divide-by-slice-image steps, certified through Groebner subalgebra
  membership.

Finite generation is undecidable in general, so reports carry an honest
termination status plus the degree up to which completeness was certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import cache as cache_mod
from .groebner import (DEFAULT_CAPS, BlockElim, GroebnerCaps, Ideal,
                       NotCompleted, exact_divide, lift_membership)
from .linalg import SparseEchelon, solve, sparse_nullspace
from .moments import Verdict, ga_moment
from .poly import (Derivation, GREVLEX, Polynomial, VariableTable,
                   format_poly, poly_key)
from .reps import GaRep, ga_derivation


class QuotientRing:
    """Ambient polynomial ring modulo a derivation-stable ideal."""

    __slots__ = ("table", "ideal", "derivation", "caps")

    def __init__(self, table: VariableTable, ideal: Ideal, derivation: Derivation,
                 caps: GroebnerCaps = DEFAULT_CAPS, check: bool = True):
        if ideal.table != table or derivation.table != table:
            raise ValueError("quotient data over mismatched tables")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "derivation", derivation)
        object.__setattr__(self, "caps", caps)
        if check:
            for g in ideal.gens:
                if not ideal.member(derivation(g), caps=caps):
                    raise ValueError(
                        f"derivation does not preserve the ideal: D({format_poly(g)}) escapes")

    def __setattr__(self, name, value):
        raise AttributeError("QuotientRing is immutable")

    @staticmethod
    def ambient_tv(rep: GaRep, caps: GroebnerCaps = DEFAULT_CAPS) -> "QuotientRing":
        table = rep.table_tv()
        return QuotientRing(table, Ideal(table, []), ga_derivation(rep, table), caps)

    @staticmethod
    def level_set(rep: GaRep, level, caps: GroebnerCaps = DEFAULT_CAPS) -> "QuotientRing":
        table = rep.table_tv()
        mu = ga_moment(rep)
        return QuotientRing(table, Ideal(table, [mu - table.scalar(level)]),
                            ga_derivation(rep, table), caps)

    def nf(self, f: Polynomial) -> Polynomial:
        return self.ideal.normal_form(f, caps=self.caps)

    def is_invariant(self, f: Polynomial) -> bool:
        return self.ideal.member(self.derivation(f), caps=self.caps)

    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.ideal.gens)

    def derivation_preserves_degree(self) -> bool:
        return all(img.is_homogeneous() and img.degree() == 1
                   for img in self.derivation.images.values())

    def nilpotency_order(self, bound: int | None = None) -> int:
        """Least k with D^k(v) in the ideal for every variable."""
        if bound is None:
            bound = 2 * len(self.table.names) + 2
        worst = 1
        for name in self.table.names:
            p = self.nf(self.table.var(name))
            k = 0
            while not p.is_zero():
                p = self.nf(self.derivation(p))
                k += 1
                if k > bound:
                    raise NotCompleted(f"derivation not locally nilpotent within bound {bound}")
            worst = max(worst, k if k else 1)
        return worst


@dataclass(frozen=True)
class InvariantReport:
    generators: tuple
    certified_degree: int
    termination: str  # "Terminated" | "CapReached"
    notes: tuple = ()

    def generator_strings(self) -> tuple:
        return tuple(format_poly(g) for g in self.generators)


# ---------------------------------------------------------------------------
# graded kernels


def _degree_monomials(table: VariableTable, degree: int) -> list:
    n = len(table.names)
    out = []

    def rec(prefix, remaining, pos):
        if pos == n - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, pos + 1)

    if n == 0:
        return [()] if degree == 0 else []
    rec([], degree, 0)
    return out


def _quotient_basis(q: QuotientRing, degree: int) -> list:
    """Monomials of the given total degree outside the leading-term ideal."""
    basis = q.ideal.groebner(caps=q.caps)
    leads = [g.leading(GREVLEX)[0] for g in basis]
    out = []
    for m in _degree_monomials(q.table, degree):
        if not any(all(l <= e for l, e in zip(lm, m)) for lm in leads):
            out.append(m)
    return out


def _kernel_cached(q: QuotientRing, derivations: tuple, degree: int) -> list:
    disk = cache_mod.get_active_cache()
    key = None
    if disk is not None:
        payload = {
            "kind": "graded-kernel",
            "table": [list(q.table.names), list(q.table.blocks)],
            "ideal": [format_poly(g) for g in sorted(q.ideal.gens, key=poly_key)],
            "derivations": [[f"{d.table.names[i]}:{format_poly(p)}"
                             for i, p in sorted(d.images.items())] for d in derivations],
            "degree": degree,
        }
        key = cache_mod.content_key(payload)
        stored = disk.get(key)
        if stored is not None:
            return [Polynomial(q.table, {tuple(m): Fraction(num, den) for m, num, den in entry})
                    for entry in stored]
    result = _kernel_compute(q, derivations, degree)
    if disk is not None and key is not None:
        disk.put(key, [[[list(m), c.numerator, c.denominator]
                        for m, c in sorted(p.terms.items())] for p in result])
    return result


def _kernel_compute(q: QuotientRing, derivations: tuple, degree: int) -> list:
    mons = _quotient_basis(q, degree)
    equations = []
    # rows are indexed by (derivation, image monomial); build sparse columns
    for d in derivations:
        rows: dict = {}
        for col, m in enumerate(mons):
            image = q.nf(d(Polynomial(q.table, {m: Fraction(1)})))
            for mm, c in image.terms.items():
                rows.setdefault(mm, {})[col] = c
        equations.extend(rows.values())
    kernel = sparse_nullspace(equations, len(mons))
    out = []
    for vec in kernel:
        terms = {mons[i]: c for i, c in vec.items()}
        p = Polynomial(q.table, terms)
        lead = p.leading(GREVLEX)[1]
        out.append(p * (Fraction(1) / lead))
    out.sort(key=poly_key)
    return out


def graded_kernel(q: QuotientRing, degree: int,
                  derivations: Sequence | None = None) -> list:
    """Basis of the invariants of one total degree in the quotient ring.

    Requires a homogeneous defining ideal and degree-preserving derivations
    so that the graded piece is well defined.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if not q.homogeneous():
        raise ValueError("graded kernel needs a homogeneous defining ideal")
    ders = tuple(derivations) if derivations is not None else (q.derivation,)
    for d in ders:
        if not all(img.is_homogeneous() and img.degree() == 1 for img in d.images.values()):
            raise ValueError("graded kernel needs degree-preserving derivations")
    if degree == 0:
        return [q.table.one()]
    return _kernel_cached(q, ders, degree)


# ---------------------------------------------------------------------------
# subalgebra spans by degree (linear-algebra certification)


def _nf_vector(q: QuotientRing, p: Polynomial) -> dict:
    nf = q.nf(p)
    return {m: c for m, c in nf.terms.items()}


class DegreeSpan:
    """Span of normal forms of generator products, organized by total degree.

    Only meaningful for homogeneous data: products of homogeneous generators
    modulo a homogeneous ideal stay homogeneous, so membership of a degree-d
    invariant can be decided inside the degree-d piece alone.  Products that
    are linearly dependent on earlier ones are pruned from the enumeration;
    their multiples stay in the span of the survivors, so the spans are
    unchanged.
    """

    def __init__(self, q: QuotientRing, gens: Sequence, max_degree: int):
        self.q = q
        self.max_degree = max_degree
        self.echelons = {d: SparseEchelon() for d in range(max_degree + 1)}
        self.rows_by_degree = {d: [] for d in range(max_degree + 1)}
        table = q.table
        self.echelons[0].insert({(0,) * len(table.names): Fraction(1)})
        gens = [q.nf(g) for g in gens]
        gens = [g for g in gens if not g.is_zero() and not g.is_constant()]
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError("degree spans need homogeneous generators")
        degs = [g.degree() for g in gens]

        def rec(start: int, product: Polynomial, degree: int):
            for i in range(start, len(gens)):
                d2 = degree + degs[i]
                if d2 > max_degree:
                    continue
                nxt = self.q.nf(product * gens[i])
                if nxt.is_zero():
                    continue
                if not self.echelons[d2].insert(dict(nxt.terms)):
                    continue  # dependent: its multiples stay spanned by survivors
                self.rows_by_degree[d2].append(nxt)
                rec(i, nxt, d2)

        rec(0, table.one(), 0)

    def contains(self, p: Polynomial) -> bool:
        nf = self.q.nf(p)
        if nf.is_zero():
            return True
        if not nf.is_homogeneous():
            return False
        d = nf.degree()
        if d > self.max_degree:
            raise ValueError("degree above the span bound")
        return self.echelons[d].contains(dict(nf.terms))


def _single_variable(p: Polynomial) -> int | None:
    """Position of v when p is a nonzero scalar multiple of a variable."""
    if len(p.terms) != 1:
        return None
    (mono, _), = p.terms.items()
    support = [i for i, e in enumerate(mono) if e]
    if len(support) == 1 and mono[support[0]] == 1:
        return support[0]
    return None


def _peel_candidates(q: QuotientRing, span: DegreeSpan, div: Polynomial) -> list:
    """Degreewise peeling: a reduced echelon of each graded span piece with
    the div-free monomials leading exposes exactly span n div*B as the rows
    pivoted in the divisible block; dividing them by the divisor yields new
    invariants without any Groebner computation."""
    pos = _single_variable(div)
    if pos is None:
        return []
    found = []
    for d in range(2, span.max_degree + 1):
        rows = span.rows_by_degree.get(d, [])
        if not rows:
            continue
        ech = SparseEchelon()
        for p in rows:
            keyed = {(0 if m[pos] == 0 else 1, m): c for m, c in p.terms.items()}
            ech.insert(keyed)
        for pivot, row in ech.rows.items():
            if pivot[0] == 0:
                continue  # pivot in the divisor-free block
            terms = {}
            for (_, m), c in row.items():
                mm = list(m)
                if mm[pos] < 1:
                    raise AssertionError("divisible block row with a free monomial")
                mm[pos] -= 1
                terms[tuple(mm)] = c
            found.append(Polynomial(q.table, terms))
    return found


def verify_generators(q: QuotientRing, gens: Sequence, degree_bound: int,
                      derivations: Sequence | None = None) -> tuple:
    """Check a proposed generating set: every generator must be killed by the
    derivation(s) modulo the ideal, and through the degree bound every graded
    invariant must lie in the subalgebra the generators span.

    Returns (verdict, certified_degree); a non-invariant generator fails
    immediately and is named in the verdict.
    """
    ders = tuple(derivations) if derivations is not None else (q.derivation,)
    for g in gens:
        for d in ders:
            if not q.ideal.member(d(g), caps=q.caps):
                return (Verdict(False, (g,), (f"not invariant: {format_poly(g)}",)), 0)
    span = DegreeSpan(q, list(gens), degree_bound)
    certified = 0
    for deg in range(1, degree_bound + 1):
        for p in graded_kernel(q, deg, ders):
            if not span.contains(p):
                return (Verdict(False, (p,),
                                (f"degree {deg} invariant outside the subalgebra",)), certified)
        certified = deg
    return (Verdict(True), certified)


def algebra_equal_up_to_degree(q: QuotientRing, gens_a: Sequence, gens_b: Sequence,
                               degree_bound: int) -> bool:
    """Degree-certified equality of two generated subalgebras."""
    span_a = DegreeSpan(q, list(gens_a), degree_bound)
    span_b = DegreeSpan(q, list(gens_b), degree_bound)
    for d in range(1, degree_bound + 1):
        ech_a = span_a.echelons[d]
        ech_b = span_b.echelons[d]
        for row in ech_a.rows.values():
            if not ech_b.contains(row):
                return False
        for row in ech_b.rows.values():
            if not ech_a.contains(row):
                return False
    return True


def restriction_misses(q: QuotientRing, f: Polynomial, degree_bound: int,
                       ambient: QuotientRing | None = None) -> bool:
    """True iff the quotient invariant f is not congruent modulo the ideal to
    any ambient invariant of degree <= degree_bound."""
    if not q.is_invariant(f):
        raise ValueError("f is not invariant in the quotient")
    if ambient is None:
        ambient = QuotientRing(q.table, Ideal(q.table, []), q.derivation, q.caps, check=False)
    target = _nf_vector(q, f)
    span = SparseEchelon()
    for d in range(0, degree_bound + 1):
        for p in graded_kernel(ambient, d):
            span.insert(_nf_vector(q, p))
    return not span.contains(target)


# ---------------------------------------------------------------------------
# the local-slice (exponential + intersection) algorithm


@dataclass(frozen=True)
class EssenConfig:
    max_rounds: int = 10
    caps: GroebnerCaps = DEFAULT_CAPS
    certify_degree: int = 6
    mine_degree: int = 4
    max_generator_degree: int = 12  # candidates above this are skipped (honestly capping)
    max_slices: int = 3  # distinct peeling divisors used for discovery
    saturate_degree: int = 8  # degreewise discovery works below this bound


class NoSliceError(ValueError):
    """No variable has an invariant nonzero image (trivial action)."""


def _find_slices(q: QuotientRing) -> list:
    """All (slice variable s, image f = D(s), f non-zerodivisor?) triples.

    The image is kept exactly as D(s); rescaling it would break the
    exponential substitution."""
    out = []
    for name in q.table.names:
        image = q.nf(q.derivation(q.table.var(name)))
        if image.is_zero():
            continue
        second = q.nf(q.derivation(image))
        if not second.is_zero():
            continue
        nzd = q.ideal.colon(image, q.caps).same_ideal(q.ideal, q.caps)
        out.append((name, image, nzd))
    return out


def _find_slice(q: QuotientRing) -> tuple:
    """(slice variable s, invariant image f) with f nonzero mod the ideal.

    Prefers a slice whose image is a non-zerodivisor modulo the ideal; falls
    back to the first slice otherwise (flagged by the third component).
    """
    slices = _find_slices(q)
    if not slices:
        raise NoSliceError("no local slice: the induced action is trivial")
    for entry in slices:
        if entry[2]:
            return entry
    return slices[0]


def _find_unit_slice(q: QuotientRing, max_degree: int = 2) -> Polynomial | None:
    """A polynomial s of small degree with D(s) = 1 modulo the ideal.

    Such an s trivializes the action as a torsor: the exponential map along
    it needs no localization at all.  Solved by linear algebra over the
    normal-form monomials of bounded degree."""
    from .linalg import solve

    candidates = []
    for d in range(1, max_degree + 1):
        candidates.extend(_quotient_basis(q, d))
    if not candidates:
        return None
    images = [q.nf(q.derivation(Polynomial(q.table, {m: Fraction(1)}))) for m in candidates]
    one = q.nf(q.table.one())
    monos = sorted({m for img in images for m in img.terms} | set(one.terms))
    rows = [[img.terms.get(m, Fraction(0)) for img in images] for m in monos]
    rhs = [one.terms.get(m, Fraction(0)) for m in monos]
    sol, _ = solve(rows, rhs)
    if sol is None:
        return None
    return Polynomial(q.table, {m: c for m, c in zip(candidates, sol) if c})


def _dixmier_cleared(q: QuotientRing, s_name: str, f: Polynomial,
                     strip_f: bool = False) -> list:
    """Cleared exponential images f^nu * exp(-(s/f) D)(v) for every variable.

    With ``strip_f`` (sound when f is a non-zerodivisor) spurious f factors
    left over from the clearing are divided out, which keeps the generators
    minimal."""
    table = q.table
    s = table.var(s_name)
    out = []
    for name in table.names:
        chain = [q.nf(table.var(name))]
        while not chain[-1].is_zero():
            chain.append(q.nf(q.derivation(chain[-1])))
        chain.pop()
        nu = len(chain) - 1
        total = table.zero()
        factorial = Fraction(1)
        for i, elem in enumerate(chain):
            if i:
                factorial *= i
            total = total + (Fraction(1) / factorial) * elem * ((-s) ** i) * (f ** (nu - i))
        total = q.nf(total)
        if strip_f:
            while not (total.is_zero() or total.is_constant()):
                quot = exact_divide(total, f)
                if quot is None:
                    break
                total = q.nf(quot)
        if total.is_zero() or total.is_constant():
            continue
        out.append(total.monic(GREVLEX))
    return out


def _graph_data(q: QuotientRing, gens: list) -> tuple:
    """Extended table with tag variables, the graph ideal generators, and the
    elimination order that makes the ambient block dominant."""
    table = q.table
    n = len(table.names)
    tags = [f"Y{i+1}@" for i in range(len(gens))]
    ext = table.extend(tags)
    graph = [table.lift(g, ext) for g in q.ideal.gens]
    for tag, g in zip(tags, gens):
        graph.append(ext.var(tag) - table.lift(g, ext))
    order = BlockElim(tuple(range(n)))
    return ext, tags, graph, order


def _divide_by_f(q: QuotientRing, w: Polynomial, f: Polynomial,
                 caps: GroebnerCaps) -> Polynomial | None:
    """b with w = f*b modulo the ideal, or None when w is not in (f) + I."""
    nf = q.nf(w)
    if nf.is_zero():
        return q.table.zero()
    direct = exact_divide(nf, f)
    if direct is not None:
        return direct
    cof = lift_membership(nf, [f] + list(q.ideal.gens), caps=caps)
    if cof is None:
        return None
    return cof[0]


def _strip_f(q: QuotientRing, b: Polynomial, f: Polynomial, f_ideal: Ideal,
             caps: GroebnerCaps) -> Polynomial:
    """Divide out the maximal power of f (sound for a non-zerodivisor f:
    every quotient of an invariant by f stays invariant)."""
    if f_ideal.is_unit_ideal(caps):
        return q.nf(b)  # f is invertible modulo the ideal; stripping is vacuous
    while True:
        nf = q.nf(b)
        if nf.is_zero() or nf.is_constant():
            return nf
        if not f_ideal.member(nf, caps=caps):
            return nf
        nxt = _divide_by_f(q, nf, f, caps)
        if nxt is None:
            return nf
        b = nxt


class _FilteredSpan:
    """Span of normal forms of generator products of bounded nominal degree.

    Sound membership certificate for inhomogeneous quotients: a hit proves
    membership; a miss may be a false negative, which only costs a redundant
    generator downstream, never a wrong answer."""

    def __init__(self, q: QuotientRing, gens: Sequence, max_degree: int):
        self.q = q
        self.max_degree = max_degree
        self.echelon = SparseEchelon()
        table = q.table
        self.echelon.insert({(0,) * len(table.names): Fraction(1)})
        gens = [q.nf(g) for g in gens]
        gens = [g for g in gens if not g.is_zero() and not g.is_constant()]
        degs = [max(g.degree(), 1) for g in gens]

        def rec(start: int, product: Polynomial, degree: int):
            for i in range(start, len(gens)):
                d2 = degree + degs[i]
                if d2 > max_degree:
                    continue
                nxt = self.q.nf(product * gens[i])
                if nxt.is_zero():
                    continue
                if not self.echelon.insert(dict(nxt.terms)):
                    continue
                rec(i, nxt, d2)

        rec(0, table.one(), 0)

    def contains(self, p: Polynomial) -> bool:
        nf = self.q.nf(p)
        if nf.is_zero():
            return True
        return self.echelon.contains(dict(nf.terms))


class _Membership:
    """Subalgebra membership oracle: exact degree spans in the graded case,
    a filtered product span otherwise.  Rebuilt when the generators change."""

    def __init__(self, q: QuotientRing, gens: list, caps: GroebnerCaps, graded: bool):
        self.q = q
        self.gens = gens
        self.caps = caps
        self.graded = graded
        self._span = None

    def contains(self, b: Polynomial) -> bool:
        degree = max(self.q.nf(b).degree(), 1)
        if self.graded:
            if self._span is None or self._span.max_degree < degree:
                self._span = DegreeSpan(self.q, self.gens, degree)
            return self._span.contains(b)
        budget = degree + 2
        if self._span is None or self._span.max_degree < budget:
            self._span = _FilteredSpan(self.q, self.gens, budget)
        return self._span.contains(b)


def _poly_blob(p: Polynomial) -> list:
    return [[list(m), c.numerator, c.denominator] for m, c in sorted(p.terms.items())]


def _poly_unblob(table, data) -> Polynomial:
    return Polynomial(table, {tuple(m): Fraction(num, den) for m, num, den in data})


def _essen_cache_key(q: QuotientRing, config: EssenConfig) -> str:
    payload = {
        "kind": "essen-derksen",
        "table": [list(q.table.names), list(q.table.blocks)],
        "ideal": [_poly_blob(g) for g in sorted(q.ideal.gens, key=poly_key)],
        "derivation": [[i, _poly_blob(p)] for i, p in sorted(q.derivation.images.items())],
        "config": [config.max_rounds, config.certify_degree, config.mine_degree,
                   config.max_generator_degree, config.max_slices, config.saturate_degree,
                   config.caps.max_degree, config.caps.max_pairs, config.caps.max_basis],
    }
    return cache_mod.content_key(payload)


def essen_derksen(q: QuotientRing, config: EssenConfig = EssenConfig()) -> InvariantReport:
    """Generators of the invariant ring by the local-slice algorithm.

    The cleared exponential images generate the invariants of the
    localization at a slice image f; the chain A_0, A_1, ... adjoins b with
    f*b in A_m until nothing new appears.  Discovery is accelerated by using
    every available slice image as a peeling divisor (any quotient of an
    invariant by an invariant non-zerodivisor is again invariant), but the
    termination certificate rests on the primary slice alone.  When that
    chain stabilizes and f is a non-zerodivisor the output generates the full
    invariant ring (Terminated); otherwise the honest status is CapReached
    with partial generators.

    Results are cached on disk when a cache is active; entries are keyed by
    the full content of the quotient data and the configuration.
    """
    disk = cache_mod.get_active_cache()
    key = None
    if disk is not None:
        key = _essen_cache_key(q, config)
        stored = disk.get(key)
        if stored is not None:
            return InvariantReport(
                tuple(_poly_unblob(q.table, blob) for blob in stored["generators"]),
                stored["certified_degree"], stored["termination"], tuple(stored["notes"]))
    report = _essen_derksen_compute(q, config)
    if disk is not None and key is not None:
        disk.put(key, {
            "generators": [_poly_blob(g) for g in report.generators],
            "certified_degree": report.certified_degree,
            "termination": report.termination,
            "notes": list(report.notes),
        })
    return report


def _essen_derksen_compute(q: QuotientRing, config: EssenConfig) -> InvariantReport:
    caps = config.caps
    q.nilpotency_order()
    notes = []

    unit_slice = _find_unit_slice(q)
    if unit_slice is not None:
        return _torsor_invariants(q, unit_slice, config, notes)

    s_name, f, nzd = _find_slice(q)

    if not nzd:
        gens = _dedup(_dixmier_cleared(q, s_name, f) + [f.monic(GREVLEX)])
        for g in gens:
            if not q.is_invariant(g):
                raise AssertionError(f"exponential image not invariant: {format_poly(g)}")
        graded = (q.homogeneous() and q.derivation_preserves_degree()
                  and all(q.nf(g).is_homogeneous() for g in gens))
        # localizing at a zerodivisor loses the components it kills, so the
        # chain cannot certify completeness; report partial generators only
        notes.append(f"slice image {format_poly(f)} is a zerodivisor modulo the ideal; "
                     "completeness cannot be certified")
        if graded:
            span = DegreeSpan(q, gens, config.mine_degree)
            for d in range(1, config.mine_degree + 1):
                for p in graded_kernel(q, d):
                    if not span.contains(p):
                        gens.append(p)
                        span = DegreeSpan(q, gens, config.mine_degree)
            notes.append(f"generators mined from graded kernels through degree {config.mine_degree}")
        certified = _certify_degree(q, gens, config)
        return InvariantReport(tuple(gens), certified, "CapReached", tuple(notes))

    # distinct non-zerodivisor slice images, primary first
    divisors = [(s_name, f)]
    seen = {format_poly(f.monic(GREVLEX))}
    for name, image, ok in _find_slices(q):
        key = format_poly(image.monic(GREVLEX))
        if ok and key not in seen:
            seen.add(key)
            divisors.append((name, image))
    divisors = divisors[:config.max_slices]

    gens = []
    for name, image in divisors:
        gens.extend(_dixmier_cleared(q, name, image, strip_f=True))
        gens.append(image.monic(GREVLEX))
    gens = _dedup(gens)
    for g in gens:
        if not q.is_invariant(g):
            raise AssertionError(f"exponential image not invariant: {format_poly(g)}")
    graded = (q.homogeneous() and q.derivation_preserves_degree()
              and all(q.nf(g).is_homogeneous() for g in gens))
    if graded:
        gens = _minimalize(q, gens, caps)

    status = "CapReached"
    f_ideal = Ideal(q.table, list(q.ideal.gens) + [f])
    if f_ideal.is_unit_ideal(caps):
        # the slice image is invertible modulo the ideal, so the localization
        # is the ring itself: the exponential images plus the inverse of f
        # already generate the full invariant ring
        cof = lift_membership(q.table.one(), [f] + list(q.ideal.gens), caps=caps)
        inverse = q.nf(cof[0])
        if not q.is_invariant(inverse):
            raise AssertionError("inverse of the slice image is not invariant")
        if not (inverse.is_constant() or any(inverse == g for g in gens)):
            gens.append(inverse.monic(GREVLEX))
        notes.append(f"slice image {format_poly(f)} is invertible modulo the ideal; "
                     "the localization step is trivial")
        certified = _certify_degree(q, gens, config)
        return InvariantReport(tuple(_dedup(gens)), certified, "Terminated", tuple(notes))
    peel_degree = max(config.saturate_degree, config.certify_degree + 1)
    try:
        for _round in range(config.max_rounds):
            # cheap discovery: degreewise peeling by every slice image
            if graded:
                span = DegreeSpan(q, gens, peel_degree)
                new = []
                for _, div in divisors:
                    for cand in _peel_candidates(q, span, div):
                        b = _strip_f(q, cand, f, f_ideal, caps)
                        if b.is_zero() or b.is_constant():
                            continue
                        if not q.is_invariant(b):
                            raise AssertionError(
                                f"peeled candidate not invariant: {format_poly(b)}")
                        b = b.monic(GREVLEX)
                        if any(b == g2 for g2 in gens + new) or span.contains(b):
                            continue
                        new.append(b)
                if new:
                    gens = _minimalize(q, _dedup(gens + new), caps)
                    continue
            # discovery stabilized: run the full preimage certificate on the
            # primary slice
            new, skipped = _certificate_round(q, gens, f, f_ideal, caps, config, graded)
            if not new:
                if skipped:
                    notes.append(
                        f"candidates above degree {config.max_generator_degree} were skipped")
                    break
                status = "Terminated"
                break
            gens = _dedup(gens + new)
            if graded:
                gens = _minimalize(q, gens, caps)
        else:
            notes.append(f"round cap {config.max_rounds} reached")
    except NotCompleted as exc:
        notes.append(f"resource cap hit: {exc.message}")
    certified = _certify_degree(q, gens, config)
    return InvariantReport(tuple(gens), certified, status, tuple(notes))


def _torsor_invariants(q: QuotientRing, s: Polynomial, config: EssenConfig,
                       notes: list) -> InvariantReport:
    """Invariants when a global section s with D(s) = 1 exists.

    The action is then a trivial torsor and the exponential map along s is a
    ring retraction onto the invariants, so its variable images generate the
    whole ring; no localization or intersection chain is needed."""
    table = q.table
    gens = []
    for name in table.names:
        chain = [q.nf(table.var(name))]
        while not chain[-1].is_zero():
            chain.append(q.nf(q.derivation(chain[-1])))
        chain.pop()
        total = table.zero()
        factorial = Fraction(1)
        for i, elem in enumerate(chain):
            if i:
                factorial *= i
            total = q.nf(total + (Fraction(1) / factorial) * elem * ((-s) ** i))
        if total.is_zero() or total.is_constant():
            continue
        if not q.is_invariant(total):
            raise AssertionError(f"torsor image not invariant: {format_poly(total)}")
        gens.append(total.monic(GREVLEX))
    gens = _dedup(gens)
    notes.append(f"global section {format_poly(s)} with derivation one: the action is a "
                 "trivial torsor and the exponential images generate the invariants")
    certified = _certify_degree(q, gens, config)
    return InvariantReport(tuple(gens), certified, "Terminated", tuple(notes))


def _certificate_round(q: QuotientRing, gens: list, f: Polynomial, f_ideal: Ideal,
                       caps: GroebnerCaps, config: EssenConfig, graded: bool) -> tuple:
    """One full colon-by-f round through the tag-elimination preimage ideal.

    An empty result certifies that the generated algebra is f-saturated, the
    stabilization condition of the intersection chain."""
    new = []
    skipped = False
    ext, tags, graph, order = _graph_data(q, gens)
    with_f = graph + [q.table.lift(f, ext)]
    basis = Ideal(ext, with_f).groebner(order, caps)
    ambient_pos = range(len(q.table.names))
    tag_only = [g for g in basis
                if all(all(m[i] == 0 for i in ambient_pos) for m in g.terms)]
    if graded:
        weights = {ext.index(tag): u.degree() for tag, u in zip(tags, gens)}

        def predicted_degree(g: Polynomial) -> int:
            return max(sum(weights[i] * e for i, e in enumerate(m) if e)
                       for m in g.terms)

        tag_only.sort(key=predicted_degree)
        low = [g for g in tag_only
               if predicted_degree(g) - f.degree() <= config.max_generator_degree]
        if len(low) != len(tag_only):
            skipped = True
            tag_only = low
    member = _Membership(q, gens, caps, graded)
    for g in tag_only:
        # w = g at the generators, a subalgebra element of (f) + I
        w = _eval_tags(q, ext, tags, gens, g)
        b = _divide_by_f(q, w, f, caps)
        if b is None:
            raise AssertionError("preimage element not divisible by the slice image")
        b = _strip_f(q, b, f, f_ideal, caps)
        if b.is_zero() or b.is_constant():
            continue
        if not q.is_invariant(b):
            raise AssertionError(f"colon step produced a non-invariant: {format_poly(b)}")
        b = b.monic(GREVLEX)
        if any(b == g2 for g2 in gens + new):
            continue
        if member.contains(b):
            continue
        new.append(b)
        member = _Membership(q, gens + new, caps, graded)
    return new, skipped


def _minimalize(q: QuotientRing, gens: list, caps: GroebnerCaps) -> list:
    """Drop generators lying in the subalgebra of the remaining ones.

    Exact for homogeneous generators: membership of a degree-d element is
    decided inside the degree-d product span."""
    ordered = sorted(gens, key=lambda g: (g.degree(), poly_key(g)))
    kept: list = []
    for g in ordered:
        if kept and DegreeSpan(q, kept, max(g.degree(), 1)).contains(g):
            continue
        kept.append(g)
    return _dedup(kept)


def _eval_tags(q: QuotientRing, ext, tags, gens, g: Polynomial) -> Polynomial:
    assignment = {tag: q.table.lift(u, ext) for tag, u in zip(tags, gens)}
    value = g.substitute(assignment)
    return ext.project(value, q.table)


def _dedup(gens: list) -> list:
    seen = {}
    for g in gens:
        seen.setdefault(format_poly(g), g)
    return [seen[k] for k in sorted(seen)]


def _certify_degree(q: QuotientRing, gens: list, config: EssenConfig) -> int:
    if not (q.homogeneous() and q.derivation_preserves_degree()):
        return 0
    if not all(q.nf(g).is_homogeneous() for g in gens):
        return 0
    try:
        span = DegreeSpan(q, gens, config.certify_degree)
    except ValueError:
        return 0
    certified = 0
    for d in range(1, config.certify_degree + 1):
        for p in graded_kernel(q, d):
            if not span.contains(p):
                return certified
        certified = d
    return certified


# ---------------------------------------------------------------------------
# special certificates


def standard_sym1_invariants(rep: GaRep) -> list:
    """The separating invariant list for sym1^n: the moved coordinates, the
    two families of 2x2 minors, and the mixed pairings."""
    if any(k != 1 for k in rep.summands):
        raise ValueError("the standard list applies to sym1^n representations")
    table = rep.table_tv()
    n = rep.multiplicity
    y = [table.var(rep.x_name(j + 1, 1)) for j in range(n)]
    x = [table.var(rep.x_name(j + 1, 2)) for j in range(n)]
    b = [table.var(rep.a_name(j + 1, 1)) for j in range(n)]
    a = [table.var(rep.a_name(j + 1, 2)) for j in range(n)]
    invs = list(x) + list(b)
    for i in range(n):
        for j in range(n):
            if i < j:
                invs.append(x[i] * y[j] - x[j] * y[i])
                invs.append(b[i] * a[j] - b[j] * a[i])
            invs.append(x[i] * a[j] + y[i] * b[j])
    return invs


def nullcone_equals_fixed(rep: GaRep, caps: GroebnerCaps = DEFAULT_CAPS) -> Verdict:
    """For sym1^n: the common zero locus of the standard invariant list equals
    the fixed locus, via radical membership in both directions."""
    from .levelsets import fixed_locus  # local import to avoid a cycle

    table = rep.table_tv()
    nullcone = Ideal(table, standard_sym1_invariants(rep))
    fixed = fixed_locus(rep, certify=False)
    for g in fixed.gens:
        if not nullcone.radical_member(g, caps):
            return Verdict(False, (g,), ("fixed generator misses the nullcone",))
    for g in nullcone.gens:
        if not fixed.radical_member(g, caps):
            return Verdict(False, (g,), ("nullcone generator misses the fixed locus",))
    return Verdict(True)


@dataclass(frozen=True)
class SectionSolution:
    coefficients: tuple  # one lambda per T*V coordinate pair, in table order
    solution_dim: int
    sigma: Polynomial


def section_sigma(rep: GaRep) -> SectionSolution:
    """Solve D(sum lambda_i x_i a_i) = mu exactly.

    Returns one solution (free variables set to zero), the dimension of the
    solution space, and the section polynomial itself.  Inconsistency is a
    hard failure.
    """
    if rep.is_trivial:
        raise ValueError("trivial action has mu = 0; no section is needed")
    table = rep.table_tv()
    d = ga_derivation(rep, table)
    mu = ga_moment(rep)
    pairs = []
    for j, k in enumerate(rep.summands):
        for i in range(k + 1):
            pairs.append(table.var(rep.x_name(j + 1, i + 1)) * table.var(rep.a_name(j + 1, i + 1)))
    images = [d(p) for p in pairs]
    monos = sorted({m for p in images for m in p.terms} | set(mu.terms))
    rows = [[img.terms.get(m, Fraction(0)) for img in images] for m in monos]
    rhs = [mu.terms.get(m, Fraction(0)) for m in monos]
    sol, null = solve(rows, rhs)
    if sol is None:
        raise AssertionError("section system is inconsistent")
    sigma = table.zero()
    for lam, p in zip(sol, pairs):
        sigma = sigma + lam * p
    residual = d(sigma) - mu
    if not residual.is_zero():
        raise AssertionError("section verification failed")
    return SectionSolution(tuple(sol), len(null), sigma)
