"""Representation bookkeeping for linear additive-group actions.

A representation is a multiset of irreducible pieces ``sym k`` (dimension
k+1).  The module builds the coordinate tables for T*V and T*W (W = V + one
extra standard 2-dimensional piece with reserved names u, v, lam, eta), the
one-parameter unipotent action, its cotangent lift, the three standard
infinitesimal sl2 derivations, and the Jordan decomposition of an arbitrary
nilpotent matrix into this normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .poly import (BLOCK_ALPHA, BLOCK_X, Derivation, PolyMap, VariableTable,
                   binom)


class RepSpecError(ValueError):
    """Malformed representation specification; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class GaRep:
    """Multiset of sym^k summands, stored sorted descending."""

    summands: tuple

    def __post_init__(self):
        ks = tuple(sorted((int(k) for k in self.summands), reverse=True))
        if not ks:
            raise ValueError("a representation needs at least one summand")
        if any(k < 0 for k in ks):
            raise ValueError("summand indices must be non-negative")
        object.__setattr__(self, "summands", ks)

    @property
    def dim(self) -> int:
        return sum(k + 1 for k in self.summands)

    @property
    def is_trivial(self) -> bool:
        return all(k == 0 for k in self.summands)

    @property
    def multiplicity(self) -> int:
        return len(self.summands)

    def spec(self) -> str:
        parts = []
        i = 0
        ks = self.summands
        while i < len(ks):
            j = i
            while j < len(ks) and ks[j] == ks[i]:
                j += 1
            mult = j - i
            parts.append(f"sym{ks[i]}" + (f"^{mult}" if mult > 1 else ""))
            i = j
        return "+".join(parts)

    # -- naming ------------------------------------------------------------

    def _single(self) -> bool:
        return len(self.summands) == 1

    def x_name(self, j: int, i: int) -> str:
        return f"x{i}" if self._single() else f"x{j}_{i}"

    def a_name(self, j: int, i: int) -> str:
        return f"a{i}" if self._single() else f"a{j}_{i}"

    # -- tables ------------------------------------------------------------

    def table_v(self) -> VariableTable:
        names = [self.x_name(j + 1, i + 1)
                 for j, k in enumerate(self.summands) for i in range(k + 1)]
        return VariableTable(tuple(names), (BLOCK_X,) * len(names))

    def table_tv(self) -> VariableTable:
        xs = [self.x_name(j + 1, i + 1)
              for j, k in enumerate(self.summands) for i in range(k + 1)]
        als = [self.a_name(j + 1, i + 1)
               for j, k in enumerate(self.summands) for i in range(k + 1)]
        return VariableTable(tuple(xs + als), (BLOCK_X,) * len(xs) + (BLOCK_ALPHA,) * len(als))

    def table_tw(self) -> VariableTable:
        xs = [self.x_name(j + 1, i + 1)
              for j, k in enumerate(self.summands) for i in range(k + 1)]
        als = [self.a_name(j + 1, i + 1)
               for j, k in enumerate(self.summands) for i in range(k + 1)]
        names = xs + ["u", "v"] + als + ["lam", "eta"]
        blocks = (BLOCK_X,) * (len(xs) + 2) + (BLOCK_ALPHA,) * (len(als) + 2)
        return VariableTable(tuple(names), blocks)

    def summand_positions(self, table: VariableTable) -> list:
        """Per summand: (x positions, alpha positions) in the given table."""
        out = []
        for j, k in enumerate(self.summands):
            xs = [table.index(self.x_name(j + 1, i + 1)) for i in range(k + 1)]
            als = [table.index(self.a_name(j + 1, i + 1)) for i in range(k + 1)]
            out.append((xs, als))
        return out

    def cox_renaming(self) -> dict:
        """std -> Cox-style names (y_i, x_i, b_i, a_i); only for sym1 + sym0 sums."""
        if any(k not in (0, 1) for k in self.summands) or all(k == 0 for k in self.summands):
            raise ValueError("cox naming applies to sums of sym1 (plus trivial) summands")
        ren = {}
        idx = 0
        for j, k in enumerate(self.summands):
            if k != 1:
                continue
            idx += 1
            ren[self.x_name(j + 1, 1)] = f"y{idx}"
            ren[self.x_name(j + 1, 2)] = f"x{idx}"
            ren[self.a_name(j + 1, 1)] = f"b{idx}"
            ren[self.a_name(j + 1, 2)] = f"a{idx}"
        return ren


def parse_rep(text: str) -> GaRep:
    """Parse a representation spec: ``sym<k>`` terms joined by ``+`` with an
    optional ``^<mult>``, e.g. ``sym1^2+sym3``; whitespace is ignored."""
    stripped = []
    positions = []
    for i, ch in enumerate(text):
        if not ch.isspace():
            stripped.append(ch)
            positions.append(i)
    s = "".join(stripped)

    def err(msg: str, pos: int):
        original = positions[pos] if pos < len(positions) else len(text)
        raise RepSpecError(msg, original)

    summands = []
    i = 0
    if not s:
        err("empty representation spec", 0)
    while True:
        if not s.startswith("sym", i):
            err("expected 'sym<k>'", i)
        i += 3
        j = i
        while j < len(s) and s[j].isdigit():
            j += 1
        if j == i:
            err("expected an integer after 'sym'", i)
        k = int(s[i:j])
        i = j
        mult = 1
        if i < len(s) and s[i] == "^":
            i += 1
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            if j == i:
                err("expected an integer multiplicity after '^'", i)
            mult = int(s[i:j])
            if mult < 1:
                err("multiplicity must be positive", i)
            i = j
        summands.extend([k] * mult)
        if i == len(s):
            break
        if s[i] != "+":
            err("expected '+' between summands", i)
        i += 1
        if i == len(s):
            err("trailing '+'", i)
    return GaRep(tuple(summands))


# ---------------------------------------------------------------------------
# actions


def ga_action(rep: GaRep, param: str = "c") -> PolyMap:
    """Unipotent one-parameter action on V: per summand the binomial matrix
    exp(c * E).  At c = 0 it is the identity."""
    target = rep.table_v()
    source = target.extend([param])
    c = source.var(param)
    comps = {}
    for j, k in enumerate(rep.summands):
        for i in range(k + 1):
            total = source.zero()
            for d in range(k + 1 - i):
                total = total + binom(k - i, d) * (c ** d) * source.var(rep.x_name(j + 1, i + 1 + d))
            comps[rep.x_name(j + 1, i + 1)] = total
    return PolyMap(source, target, [comps[n] for n in target.names])


def _lift_components(rep: GaRep, table: VariableTable, source: VariableTable, param: str) -> dict:
    c = source.var(param)
    comps = {}
    for j, k in enumerate(rep.summands):
        for i in range(k + 1):
            xi = source.zero()
            for d in range(k + 1 - i):
                xi = xi + binom(k - i, d) * (c ** d) * source.var(rep.x_name(j + 1, i + 1 + d))
            comps[rep.x_name(j + 1, i + 1)] = xi
            # fiber block transforms by right multiplication with the inverse
            ai = source.zero()
            for d in range(i + 1):
                ai = ai + binom(k - i + d, d) * ((-c) ** d) * source.var(rep.a_name(j + 1, i + 1 - d))
            comps[rep.a_name(j + 1, i + 1)] = ai
    return comps


def cotangent_lift(rep: GaRep, param: str = "c") -> PolyMap:
    """Lift of the action to T*V: base block by rho(c), fiber block by
    rho(c)^{-1} acting on the right (= rho(-c))."""
    target = rep.table_tv()
    source = target.extend([param])
    comps = _lift_components(rep, target, source, param)
    return PolyMap(source, target, [comps[n] for n in target.names])


def cotangent_lift_w(rep: GaRep, param: str = "c") -> PolyMap:
    """Lift on T*W, the extra standard summand carrying (u, v, lam, eta)."""
    target = rep.table_tw()
    source = target.extend([param])
    comps = _lift_components(rep, target, source, param)
    c = source.var(param)
    comps["u"] = source.var("u") + c * source.var("v")
    comps["v"] = source.var("v")
    comps["lam"] = source.var("lam")
    comps["eta"] = source.var("eta") - c * source.var("lam")
    return PolyMap(source, target, [comps[n] for n in target.names])


_H_DIAG = "H"
_SL2_BASES = ("H", "E", "F")


def _sl2_images(k: int, basis: str, xs: list, als: list, table: VariableTable) -> dict:
    """Images of one summand's variables under the chosen sl2 basis element,
    including the dual (negated transpose) action on the fiber block."""
    images = {}
    n = k + 1
    xv = [table.var(name) for name in xs]
    av = [table.var(name) for name in als]
    for i in range(n):
        if basis == "H":
            w = k - 2 * i
            images[xs[i]] = w * xv[i]
            images[als[i]] = -w * av[i]
        elif basis == "E":
            images[xs[i]] = (k - i) * xv[i + 1] if i + 1 < n else table.zero()
            images[als[i]] = -(k + 1 - i) * av[i - 1] if i >= 1 else table.zero()
        elif basis == "F":
            images[xs[i]] = i * xv[i - 1] if i >= 1 else table.zero()
            images[als[i]] = -(i + 1) * av[i + 1] if i + 1 < n else table.zero()
        else:
            raise ValueError(f"unknown sl2 basis element {basis!r}")
    return images


def sl2_infinitesimal(rep: GaRep, basis: str, table: VariableTable | None = None,
                      include_w: bool = False) -> Derivation:
    """Derivation of the sl2 basis element on T*V (or T*W with include_w)."""
    if basis not in _SL2_BASES:
        raise ValueError(f"basis must be one of {_SL2_BASES}")
    if table is None:
        table = rep.table_tw() if include_w else rep.table_tv()
    images = {}
    for j, k in enumerate(rep.summands):
        xs = [rep.x_name(j + 1, i + 1) for i in range(k + 1)]
        als = [rep.a_name(j + 1, i + 1) for i in range(k + 1)]
        images.update(_sl2_images(k, basis, xs, als, table))
    if include_w:
        images.update(_sl2_images(1, basis, ["u", "v"], ["lam", "eta"], table))
    return Derivation(table, images)


def ga_derivation(rep: GaRep, table: VariableTable | None = None,
                  include_w: bool = False) -> Derivation:
    """Infinitesimal generator of the additive action on T*V (the E element)."""
    return sl2_infinitesimal(rep, "E", table, include_w)


def verify_sl2_brackets(rep: GaRep, include_w: bool = False) -> bool:
    """Structural constants of the three derivations.

    Acting on functions reverses composition, so the commutators realize the
    bracket with swapped arguments: [D_E, D_H] = 2 D_E, [D_F, D_H] = -2 D_F,
    [D_F, D_E] = D_H.
    """
    h = sl2_infinitesimal(rep, "H", include_w=include_w)
    e = sl2_infinitesimal(rep, "E", include_w=include_w)
    f = sl2_infinitesimal(rep, "F", include_w=include_w)
    return (e.bracket(h) == 2 * e) and (f.bracket(h) == (-2) * f) and (f.bracket(e) == h)


# ---------------------------------------------------------------------------
# Jordan decomposition of a nilpotent matrix


@dataclass(frozen=True)
class NilpotentInput:
    """Square rational matrix required to be nilpotent (checked)."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must be non-empty")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "matrix", rows)
        power = rows
        for _ in range(n):
            if all(x == 0 for r in power for x in r):
                break
            power = _mat_mul(power, rows)
        if not all(x == 0 for r in power for x in r):
            raise ValueError("matrix is not nilpotent")

    @property
    def size(self) -> int:
        return len(self.matrix)


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _mat_vec(a, v):
    return [sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def jordan_decompose(nil: NilpotentInput) -> tuple:
    """(rep, P) with P^-1 N P the block sum of the standard superdiagonal
    matrices with entries k, k-1, ..., 1 (the E normal form).

    The block multiset comes from the rank filtration; chains are built from
    the top of each block and rescaled so that N maps the basis exactly onto
    the normal-form images.
    """
    n = nil.size

    def mat_power(d):
        acc = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        for _ in range(d):
            acc = _mat_mul(acc, nil.matrix)
        return acc

    ranks = []
    d = 0
    while True:
        ranks.append(linalg.rank([list(r) for r in mat_power(d)]))
        if ranks[-1] == 0:
            break
        d += 1
    depth = len(ranks) - 1  # smallest d with N^d = 0 (0 for the zero matrix)
    # number of blocks of size >= s equals rank(N^{s-1}) - rank(N^s)
    block_counts = {}
    for s in range(1, depth + 1):
        ge_s = ranks[s - 1] - ranks[s]
        gt_s = (ranks[s] - ranks[s + 1]) if s + 1 < len(ranks) else 0
        count = ge_s - gt_s
        if count:
            block_counts[s] = count
    if depth == 0:
        block_counts = {1: n}
    sizes = sorted((s for s, c in block_counts.items() for _ in range(c)), reverse=True)
    rep = GaRep(tuple(s - 1 for s in sizes))

    def nvec(v):
        return _mat_vec(nil.matrix, v)

    chains = []
    for s in sizes:
        # candidate top w: independent of ker N^{s-1} plus the vectors of
        # height >= s already produced by longer chains
        blockers = linalg.SparseEchelon()
        for v in _kernel_of_power(nil.matrix, s - 1, n):
            blockers.insert(_dense_to_sparse(v))
        for chain in chains:
            for idx, vec in enumerate(chain):
                if len(chain) - idx >= s:
                    blockers.insert(_dense_to_sparse(vec))
        top = None
        for v in _kernel_of_power(nil.matrix, s, n):
            if blockers.insert(_dense_to_sparse(v)):
                top = v
                break
        if top is None:
            raise AssertionError("rank data and chain search disagree")
        chain = [list(top)]
        for _ in range(s - 1):
            chain.append(nvec(chain[-1]))
        chains.append(chain)

    columns = []
    for chain, s in zip(chains, sizes):
        # basis b_i = N^(s-i) w / (s-i)! gives N b_(i+1) = (s-i) b_i
        for i in range(1, s + 1):
            j = s - i
            scale = Fraction(1)
            for t in range(1, j + 1):
                scale /= t
            columns.append([x * scale for x in chain[j]])

    p_matrix = [[columns[j][i] for j in range(n)] for i in range(n)]
    return rep, tuple(tuple(r) for r in p_matrix)


def standard_nilpotent_matrix(rep: GaRep) -> tuple:
    """Block sum of the superdiagonal (k, k-1, ..., 1) normal forms."""
    n = rep.dim
    mat = [[Fraction(0)] * n for _ in range(n)]
    offset = 0
    for k in rep.summands:
        for i in range(k):
            mat[offset + i][offset + i + 1] = Fraction(k - i)
        offset += k + 1
    return tuple(tuple(r) for r in mat)


def _dense_to_sparse(v) -> dict:
    return {i: x for i, x in enumerate(v) if x != 0}


def _kernel_of_power(matrix, d: int, n: int) -> list:
    if d == 0:
        return []
    acc = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    for _ in range(d):
        acc = _mat_mul(acc, matrix)
    return [v for v in linalg.nullspace([list(r) for r in acc])]
