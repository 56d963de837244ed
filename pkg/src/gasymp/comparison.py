"""Embeddings of additive level sets into the enveloping zero level and the
identities relating the two symplectic pictures.

Level-set equalities are implemented as ideal congruences modulo the moment
generator after clearing the declared denominator; a symbolic family
parameter is adjoined as an invertible auxiliary variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .forms import liouville, pullback
from .groebner import DEFAULT_CAPS, GroebnerCaps, Ideal, exact_divide
from .levelsets import Hypersurface, components
from .moments import Verdict, ga_moment, moment_triple, sl2_moment_w
from .poly import PolyMap, Polynomial, VariableTable, format_poly
from .reps import GaRep, cotangent_lift, cotangent_lift_w


@dataclass(frozen=True)
class EmbeddingMap:
    """One member of the i/j family of level-set embeddings T*V -> T*W.

    For the i family the (u, v) slot is the constant (a, 0) and the dual slot
    carries (-Phi_H/a, -Phi_F/a); the j family mirrors this on (lam, eta).
    With a rational parameter the map is polynomial; with a symbolic one the
    components are stored denominator-cleared.
    """

    kind: str  # "i" | "j"
    parameter: object  # Fraction or aux variable name
    map: PolyMap

    @property
    def symbolic(self) -> bool:
        return isinstance(self.parameter, str)


def build_embedding(rep: GaRep, kind: str = "i", parameter=Fraction(1)) -> EmbeddingMap:
    if kind not in ("i", "j"):
        raise ValueError("kind must be 'i' or 'j'")
    tv = rep.table_tv()
    tw = rep.table_tw()
    triple = moment_triple(rep)
    if isinstance(parameter, str):
        source = tv.extend([parameter])
        par = source.var(parameter)
        phi_h = tv.lift(triple.phi_h, source)
        phi_f = tv.lift(triple.phi_f, source)
        den = par
    else:
        parameter = Fraction(parameter)
        if parameter == 0:
            raise ValueError("embedding parameter must be nonzero")
        source = tv
        par = source.scalar(parameter)
        phi_h = triple.phi_h
        phi_f = triple.phi_f
        den = source.one()

    comps = {}
    for name in tv.names:
        comps[name] = den * source.var(name)
    if kind == "i":
        if isinstance(parameter, str):
            comps["u"], comps["v"] = par * par, source.zero()
            comps["lam"], comps["eta"] = -phi_h, -phi_f
        else:
            comps["u"], comps["v"] = par, source.zero()
            comps["lam"], comps["eta"] = -phi_h * (1 / parameter), -phi_f * (1 / parameter)
    else:
        if isinstance(parameter, str):
            comps["u"], comps["v"] = -phi_f, phi_h
            comps["lam"], comps["eta"] = source.zero(), par * par
        else:
            comps["u"], comps["v"] = -phi_f * (1 / parameter), phi_h * (1 / parameter)
            comps["lam"], comps["eta"] = source.zero(), par

    pmap = PolyMap(source, tw, [comps[n] for n in tw.names],
                   None if not isinstance(parameter, str) else den)
    return EmbeddingMap(kind, parameter, pmap)


def naive_embedding(rep: GaRep, a=Fraction(1), b=Fraction(1)) -> EmbeddingMap:
    """The constant-fiber inclusion (x, (a,0), alpha, (0,b)); it does not land
    in the enveloping zero level (negative control)."""
    tv = rep.table_tv()
    tw = rep.table_tw()
    comps = {name: tv.var(name) for name in tv.names}
    comps["u"], comps["v"] = tv.scalar(Fraction(a)), tv.zero()
    comps["lam"], comps["eta"] = tv.zero(), tv.scalar(Fraction(b))
    return EmbeddingMap("naive", Fraction(a), PolyMap(tv, tw, [comps[n] for n in tw.names]))


def _mu_ideal(emb_source: VariableTable, rep: GaRep) -> Ideal:
    mu = rep.table_tv().lift(ga_moment(rep), emb_source)
    return Ideal(emb_source, [mu])


def verify_embedding_into_zero_level(rep: GaRep, emb: EmbeddingMap,
                                     caps: GroebnerCaps = DEFAULT_CAPS) -> Verdict:
    """On the level set the three enveloping moment equations must vanish:
    their cleared pullbacks are members of (mu).  The negative direction is
    certified too: over (mu - xi) with a fresh level variable, each residual
    reduces to a multiple of xi, nonzero overall, so only the zero level maps.
    """
    source = emb.map.source
    ideal = _mu_ideal(source, rep)
    residuals = []
    for comp in sl2_moment_w(rep):
        cleared, _ = emb.map.pull_cleared(comp)
        if not ideal.member(cleared, caps=caps):
            residuals.append(ideal.normal_form(cleared, caps=caps))
    if residuals:
        return Verdict(False, tuple(residuals))

    # level obstruction: residuals over (mu - xi) are multiples of xi
    ext = source.extend(["xi"])
    mu = rep.table_tv().lift(ga_moment(rep), ext)
    level_ideal = Ideal(ext, [mu - ext.var("xi")])
    xi = ext.var("xi")
    nonzero_multiple = False
    for comp in sl2_moment_w(rep):
        cleared, _ = emb.map.pull_cleared(comp)
        res = level_ideal.normal_form(source.lift(cleared, ext), caps=caps)
        if res.is_zero():
            continue
        quot = exact_divide(res, xi)
        if quot is None:
            return Verdict(False, (res,), ("obstruction residual is not a multiple of xi",))
        nonzero_multiple = True
    if not nonzero_multiple:
        return Verdict(False, (), ("no level obstruction found: map lands in every level",))
    return Verdict(True)


def verify_equivariance_of_embedding(rep: GaRep, emb: EmbeddingMap,
                                     caps: GroebnerCaps = DEFAULT_CAPS) -> Verdict:
    """lift_W(c) o emb = emb o lift_V(c) as a congruence modulo (mu), with the
    group parameter symbolic."""
    if emb.symbolic:
        raise ValueError("equivariance check expects a rational-parameter embedding")
    tv = rep.table_tv()
    tw = rep.table_tw()
    lift_v = cotangent_lift(rep)
    lift_w = cotangent_lift_w(rep)
    src = lift_v.source  # T*V + c

    # lift_W(c) o emb: substitute the embedding components for the T*W block
    emb_assignment = {name: tv.lift(emb.map.component(name), src) for name in tw.names}
    emb_then_lift = [_substitute_block(comp, lift_w.source, src, emb_assignment)
                     for comp in lift_w.components]

    # emb o lift_V(c): substitute the lifted coordinates into the embedding
    lift_assignment = {name: lift_v.component(name) for name in tv.names}
    lift_then_emb = [_substitute_block(comp, tv, src, lift_assignment)
                     for comp in emb.map.components]

    ideal = _mu_ideal(src, rep)
    residuals = []
    for a, b in zip(emb_then_lift, lift_then_emb):
        diff = a - b
        if not ideal.member(diff, caps=caps):
            residuals.append(ideal.normal_form(diff, caps=caps))
    return Verdict(not residuals, tuple(residuals))


def _substitute_block(p: Polynomial, from_table: VariableTable, to_table: VariableTable,
                      assignment: dict) -> Polynomial:
    """Substitute polynomials (on to_table) for the named variables of p and
    map the remaining variables across by name."""
    remaining = {}
    for name in from_table.names:
        if name not in assignment:
            remaining[name] = to_table.var(name)
    full = dict(assignment)
    full.update(remaining)
    lifted = {n: v for n, v in full.items()}
    # evaluate term by term on the target table
    out = to_table.zero()
    pow_cache = {n: {0: to_table.one()} for n in full}
    for m, c in p.terms.items():
        term = to_table.scalar(c)
        for i, e in enumerate(m):
            if e:
                name = from_table.names[i]
                cache = pow_cache[name]
                if e not in cache:
                    q = max(k for k in cache if k <= e)
                    acc = cache[q]
                    while q < e:
                        acc = acc * full[name]
                        q += 1
                        cache[q] = acc
                term = term * cache[e]
        out = out + term
    return out


def verify_liouville_pullback(rep: GaRep, emb: EmbeddingMap,
                              caps: GroebnerCaps = DEFAULT_CAPS) -> Verdict:
    """Pullback of the enveloping Liouville form equals the base one as a
    congruence modulo (mu): every coefficient of the difference is a member."""
    if emb.symbolic:
        raise ValueError("form pullback expects a rational-parameter embedding")
    tw = rep.table_tw()
    tv = rep.table_tv()
    omega_w = liouville(tw)
    omega_v = liouville(tv)
    pulled = pullback(omega_w, emb.map)
    diff = pulled - omega_v
    ideal = Ideal(tv, [ga_moment(rep)])
    residuals = []
    for idx, coeff in diff.terms.items():
        if not ideal.member(coeff, caps=caps):
            residuals.append(coeff)
    return Verdict(not residuals, tuple(residuals))


def scaling_map(rep: GaRep, param: str = "C") -> PolyMap:
    """Base coordinates scaled by the parameter, fiber fixed."""
    tv = rep.table_tv()
    src = tv.extend([param])
    c = src.var(param)
    comps = []
    xset = set(tv.positions("x"))
    for i, name in enumerate(tv.names):
        v = src.var(name)
        comps.append(c * v if i in xset else v)
    return PolyMap(src, tv, comps)


def verify_family_scaling(rep: GaRep) -> Verdict:
    """(a) mu o phi_C = C * mu exactly; (b) phi_C^* omega = C * omega exactly."""
    phi = scaling_map(rep)
    src = phi.source
    c = src.var("C")
    tv = rep.table_tv()
    mu = ga_moment(rep)
    res_mu = phi.pull(mu) - c * tv.lift(mu, src)
    omega = liouville(tv)
    pulled = pullback(omega, phi, params={"C"})
    lifted_omega = _lift_form(omega, src)
    diff_form = pulled - (c * lifted_omega)
    residuals = []
    if not res_mu.is_zero():
        residuals.append(res_mu)
    for coeff in diff_form.terms.values():
        residuals.append(coeff)
    return Verdict(not residuals, tuple(residuals))


def _lift_form(form, target):
    from .forms import DifferentialForm

    src = form.table
    pos = [target.index(n) for n in src.names]
    terms = {}
    for idx, coeff in form.terms.items():
        terms[tuple(pos[i] for i in idx)] = src.lift(coeff, target)
    return DifferentialForm(target, form.degree, terms)


def verify_boundary_unit(rep: GaRep) -> Verdict:
    """Substituting (u, v) = (0, 0) into u^2 Phi_E - u v Phi_H - v^2 Phi_F - xi
    leaves exactly -xi, a unit for every nonzero level."""
    from .moments import sl2_invariant_of_ga_moment

    f = sl2_invariant_of_ga_moment(rep)
    ext0 = f.table
    ext = ext0.extend(["xi"])
    xi = ext.var("xi")
    g = ext0.lift(f, ext) - xi
    sub = g.substitute({"u": 0, "v": 0})
    res = sub + xi
    return Verdict(res.is_zero(), () if res.is_zero() else (res,))


def verify_stabiliser_column(caps: GroebnerCaps = DEFAULT_CAPS) -> Verdict:
    """A determinant-one 2x2 matrix fixing (a, 0) with invertible a is upper
    unitriangular: p = 1, r = 0, s = 1 follow from the fixing equations."""
    t = VariableTable(("p", "q", "r", "s", "a", "ai"), ("aux",) * 6)
    p, q, r, s, a, ai = (t.var(n) for n in t.names)
    ideal = Ideal(t, [p * a - a, r * a, p * s - q * r - 1, a * ai - 1])
    want = [p - 1, r, s - 1]
    residuals = [w for w in want if not ideal.member(w, caps=caps)]
    return Verdict(not residuals, tuple(residuals))


# ---------------------------------------------------------------------------
# golden comparisons for the two smallest irreducible cases


def sym1_enveloping_invariants(rep: GaRep) -> list:
    """The six generators of the enveloping invariant ring for the smallest
    irreducible case, on T*W."""
    t = rep.table_tw()
    x1, x2, u, v = t.var("x1"), t.var("x2"), t.var("u"), t.var("v")
    a1, a2, lam, eta = t.var("a1"), t.var("a2"), t.var("lam"), t.var("eta")
    return [
        x2 * u - x1 * v,
        a1 * u + a2 * v,
        x1 * a1 + x2 * a2,
        a1 * eta - a2 * lam,
        x1 * lam + x2 * eta,
        u * lam + v * eta,
    ]


def sym2_enveloping_invariants(rep: GaRep) -> list:
    """The ten generators of the enveloping invariant ring for the weight-two
    irreducible case, on T*W."""
    t = rep.table_tw()
    x1, x2, x3 = t.var("x1"), t.var("x2"), t.var("x3")
    a1, a2, a3 = t.var("a1"), t.var("a2"), t.var("a3")
    u, v, lam, eta = t.var("u"), t.var("v"), t.var("lam"), t.var("eta")
    return [
        x1 * v * v - 2 * x2 * u * v + x3 * u * u,
        x1 * x3 - x2 * x2,
        a1 * u * u + a2 * u * v + a3 * v * v,
        x1 * a1 + x2 * a2 + x3 * a3,
        4 * a1 * a3 - a2 * a2,
        u * lam + v * eta,
        a1 * eta * eta - a2 * eta * lam + a3 * lam * lam,
        x1 * lam * lam + 2 * x2 * eta * lam + x3 * eta * eta,
        x1 * v * lam - x2 * (u * lam - v * eta) - x3 * u * eta,
        2 * a1 * u * eta - a2 * (u * lam - v * eta) - 2 * a3 * lam * v,
    ]


def sym2_levelset_invariants(rep: GaRep) -> list:
    """The eight-generator table for the invariants of the zero level of the
    weight-two case, on T*V."""
    t = rep.table_tv()
    x1, x2, x3 = t.var("x1"), t.var("x2"), t.var("x3")
    a1, a2, a3 = t.var("a1"), t.var("a2"), t.var("a3")
    return [
        x3,
        x1 * x3 - x2 * x2,
        a1,
        x1 * a1 + x2 * a2 + x3 * a3,
        4 * a1 * a3 - a2 * a2,
        x1 * a1 - x3 * a3,
        4 * x3 * a3 * a3 + 2 * x2 * a2 * a3 - 4 * x1 * a1 * a3 + x1 * a2 * a2,
        2 * x3 * x1 * a3 - 2 * x2 * x2 * a3 - 2 * x1 * x1 * a1 - x1 * x2 * a2,
    ]


def induced_quotient_maps_sym1(caps: GroebnerCaps = DEFAULT_CAPS) -> Verdict:
    """Golden test: on each component of the reducible zero level of the
    smallest case, composing the embedding with the six enveloping invariants
    gives the two expected six-tuples, and the quadric relation pulls back to
    zero."""
    rep = GaRep((1,))
    tv = rep.table_tv()
    emb = build_embedding(rep, "i", Fraction(1))
    hs = sym1_enveloping_invariants(rep)
    x1, x2 = tv.var("x1"), tv.var("x2")
    a1, a2 = tv.var("a1"), tv.var("a2")
    expected = {
        "x2": [tv.zero(), a1, a1 * x1, tv.zero(), -a1 * x1 * x1, -a1 * x1],
        "a1": [x2, tv.zero(), x2 * a2, -x2 * a2 * a2, tv.zero(), x2 * a2],
    }
    surface = Hypersurface.at(rep, 0)
    residuals = []
    notes = []
    for ideal, _ in components(surface, caps):
        key = next(iter(ideal.gens))
        name = format_poly(key)
        if name not in expected:
            return Verdict(False, (key,), ("unexpected component ideal",))
        for slot, (h, want) in enumerate(zip(hs, expected[name]), start=1):
            got = ideal.normal_form(emb.map.pull(h), caps=caps)
            want_nf = ideal.normal_form(want, caps=caps)
            if got != want_nf:
                residuals.append(got - want_nf)
                notes.append(f"component ({name}), slot {slot}")
        rel = hs[0] * hs[3] - hs[1] * hs[4] + hs[2] * hs[5]
        pulled = ideal.normal_form(emb.map.pull(rel), caps=caps)
        if not pulled.is_zero():
            residuals.append(pulled)
            notes.append(f"component ({name}), relation")
    return Verdict(not residuals, tuple(residuals), tuple(notes))


def induced_quotient_map_sym2(caps: GroebnerCaps = DEFAULT_CAPS) -> Verdict:
    """Golden test: each enveloping generator composed with the embedding
    matches its expression in the eight level-set generators, as a congruence
    modulo (mu)."""
    rep = GaRep((2,))
    tv = rep.table_tv()
    emb = build_embedding(rep, "i", Fraction(1))
    hs = sym2_enveloping_invariants(rep)
    fs = sym2_levelset_invariants(rep)
    f1, f2, f3, f4, f5, f6, f7, f8 = fs
    expected = [f1, f2, f3, f4, f5, -2 * f6, -f6 * f7, -2 * f6 * f8, tv.zero(), tv.zero()]
    ideal = Ideal(tv, [ga_moment(rep)])
    residuals = []
    notes = []
    for slot, (h, want) in enumerate(zip(hs, expected), start=1):
        diff = emb.map.pull(h) - want
        if not ideal.member(diff, caps=caps):
            residuals.append(ideal.normal_form(diff, caps=caps))
            notes.append(f"slot {slot}")
    return Verdict(not residuals, tuple(residuals), tuple(notes))
