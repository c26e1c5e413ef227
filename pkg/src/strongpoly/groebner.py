"""Buchberger Groebner bases over Q in graded lexicographic order.

The engine works on integer-primitive term dicts (pseudo-reduction keeps
every intermediate coefficient an int); Fractions only appear when the
reduced basis is made monic at the boundary.  Pair selection is the normal
strategy (smallest lcm first) with Buchberger's coprimality and chain
criteria.  All entry points honor a step budget and raise
ResourceBudgetExceeded instead of running away.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ring import (
    QQ,
    LaurentPoly,
    Ring,
    grlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


from .errors import ResourceBudgetExceeded


@dataclass(frozen=True)
class GBOptions:
    max_pairs: int = 20_000
    max_basis: int = 500


DEFAULT_OPTIONS = GBOptions()


@dataclass(frozen=True)
class IdealBasis:
    """Finite generator list in an ordinary polynomial ring."""

    ring: Ring
    generators: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if self.ring.laurent:
            raise ValueError("IdealBasis lives in an ordinary ring; normalize first")
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generator ring mismatch")
            if g.is_zero():
                raise ValueError("zero generator not allowed; drop it instead")

    @classmethod
    def from_polys(cls, polys, ring: Ring | None = None) -> "IdealBasis":
        polys = list(polys)
        if ring is None:
            if not polys:
                raise ValueError("cannot infer ring from an empty list")
            ring = polys[0].ring
        return cls(ring, tuple(p for p in polys if not p.is_zero()))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic over Q, pairwise tail-reduced, sorted."""

    ring: Ring
    polys: tuple[LaurentPoly, ...]
    order: str = "grlex"
    _reducers: tuple = field(default=(), compare=False, repr=False)

    def reducers(self):
        return self._reducers

    def is_unit_ideal(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()


# -- integer term-dict plumbing ------------------------------------------


def _prim(d: dict) -> dict:
    """Divide out the integer content and make the leading coefficient > 0."""
    if not d:
        return d
    g = 0
    for c in d.values():
        g = math.gcd(g, c)
    if d[max(d, key=grlex_key)] < 0:
        g = -g
    if g == 1:
        return d
    return {m: c // g for m, c in d.items()}


def _to_int_dict(p: LaurentPoly) -> dict:
    """Clear denominators, returning a primitive integer term dict."""
    terms = p.term_dict()
    if p.ring.domain == QQ:
        den = 1
        for c in terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        terms = {m: int(c * den) for m, c in terms.items()}
    return _prim(dict(terms))


def _reducer(d: dict):
    lm = max(d, key=grlex_key)
    return (lm, d[lm], d)


def _normal_form(fdict: dict, reducers) -> dict:
    """Full normal form by pseudo-reduction; result is primitive."""
    f = dict(fdict)
    rem: dict = {}
    while f:
        lm = max(f, key=grlex_key)
        lc = f[lm]
        hit = None
        for g_lm, g_lc, g_terms in reducers:
            if mono_divides(g_lm, lm):
                hit = (g_lm, g_lc, g_terms)
                break
        if hit is None:
            rem[lm] = lc
            del f[lm]
            continue
        g_lm, g_lc, g_terms = hit
        g = math.gcd(lc, g_lc)
        a = g_lc // g
        b = lc // g
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for k in f:
                f[k] *= a
            for k in rem:
                rem[k] *= a
        shift = mono_div(lm, g_lm)
        for m, c in g_terms.items():
            key = mono_mul(m, shift)
            s = f.get(key, 0) - b * c
            if s:
                f[key] = s
            else:
                f.pop(key, None)
    return _prim(rem)


def _spoly(f: dict, g: dict) -> dict:
    f_lm, f_lc, _ = _reducer(f)
    g_lm, g_lc, _ = _reducer(g)
    L = mono_lcm(f_lm, g_lm)
    m = abs(f_lc * g_lc) // math.gcd(f_lc, g_lc)
    af, sf = m // f_lc, mono_div(L, f_lm)
    ag, sg = m // g_lc, mono_div(L, g_lm)
    out: dict = {}
    for mono, c in f.items():
        key = mono_mul(mono, sf)
        out[key] = out.get(key, 0) + af * c
    for mono, c in g.items():
        key = mono_mul(mono, sg)
        s = out.get(key, 0) - ag * c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return {m: c for m, c in out.items() if c}


def _interreduce(basis: list[dict]) -> list[dict]:
    # drop elements whose leading monomial another one divides
    kept: list[dict] = []
    lms = [max(b, key=grlex_key) for b in basis]
    for i, b in enumerate(basis):
        lm = lms[i]
        redundant = False
        for j, other_lm in enumerate(lms):
            if i == j:
                continue
            if mono_divides(other_lm, lm) and (other_lm != lm or j < i):
                redundant = True
                break
        if not redundant:
            kept.append(b)
    # tail-reduce every survivor against the others
    out = []
    for i, b in enumerate(kept):
        others = [_reducer(o) for j, o in enumerate(kept) if j != i]
        reduced = _normal_form(b, others) if others else _prim(dict(b))
        if reduced:
            out.append(reduced)
    out.sort(key=lambda d: grlex_key(max(d, key=grlex_key)))
    return out


def buchberger(I: IdealBasis, options: GBOptions = DEFAULT_OPTIONS) -> GroebnerBasis:
    """Reduced Groebner basis of I, graded lex order.

    Raises ResourceBudgetExceeded when the pair queue or basis outgrows
    the configured budget.  The output is independent of generator order
    (reduced bases are unique), which regression tests rely on.
    """
    ring = Ring(I.ring.nvars, False, QQ)
    basis = [d for d in (_to_int_dict(g) for g in I.generators) if d]
    if not basis:
        return GroebnerBasis(ring, (), _reducers=())

    pairs: list = []
    handled: set[tuple[int, int]] = set()

    def push_pair(i: int, j: int):
        lm_i = max(basis[i], key=grlex_key)
        lm_j = max(basis[j], key=grlex_key)
        L = mono_lcm(lm_i, lm_j)
        heapq.heappush(pairs, (grlex_key(L), i, j, L))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push_pair(i, j)

    popped = 0
    while pairs:
        _, i, j, L = heapq.heappop(pairs)
        handled.add((i, j))
        popped += 1
        if popped > options.max_pairs:
            raise ResourceBudgetExceeded(
                "gb-pairs", f"S-pair budget {options.max_pairs} exceeded"
            )
        lm_i = max(basis[i], key=grlex_key)
        lm_j = max(basis[j], key=grlex_key)
        if mono_lcm(lm_i, lm_j) != L:
            continue
        # coprime-leads criterion
        if all(min(a, b) == 0 for a, b in zip(lm_i, lm_j)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            lm_k = max(basis[k], key=grlex_key)
            if mono_divides(lm_k, L):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 in handled and p2 in handled:
                    skip = True
                    break
        if skip:
            continue
        reducers = [_reducer(b) for b in basis]
        r = _normal_form(_spoly(basis[i], basis[j]), reducers)
        if not r:
            continue
        basis.append(r)
        if len(basis) > options.max_basis:
            raise ResourceBudgetExceeded(
                "gb-basis", f"basis size budget {options.max_basis} exceeded"
            )
        new = len(basis) - 1
        for k in range(new):
            push_pair(k, new)

    reduced = _interreduce(basis)
    polys = []
    for d in reduced:
        lc = d[max(d, key=grlex_key)]
        polys.append(LaurentPoly(ring, {m: Fraction(c, lc) for m, c in d.items()}))
    reducers = tuple(_reducer(d) for d in reduced)
    # sanity: every input generator must reduce to zero against the output
    for g in I.generators:
        if _normal_form(_to_int_dict(g), reducers):
            raise AssertionError("input generator does not reduce to zero")
    return GroebnerBasis(ring, tuple(polys), _reducers=reducers)


def normal_form(f: LaurentPoly, G: GroebnerBasis) -> LaurentPoly:
    """Primitive integer normal form of f against the reduced basis."""
    if f.ring.laurent:
        raise ValueError("normal form expects an ordinary polynomial")
    if f.ring.nvars != G.ring.nvars:
        raise ValueError("variable count mismatch")
    rem = _normal_form(_to_int_dict(f), G.reducers())
    return LaurentPoly(G.ring, {m: Fraction(c) for m, c in rem.items()})


def ideal_member(f: LaurentPoly, G: GroebnerBasis) -> bool:
    return normal_form(f, G).is_zero()


def _embed(d: dict, extra: int) -> dict:
    pad = (0,) * extra
    return {m + pad: c for m, c in d.items()}


def radical_member(
    f: LaurentPoly,
    I: IdealBasis,
    options: GBOptions = DEFAULT_OPTIONS,
) -> bool:
    """Membership in the radical via the localization trick.

    f is in rad(I) iff 1 lies in the ideal generated by I and 1 - y*f in
    one extra variable y.
    """
    if f.ring.nvars != I.ring.nvars:
        raise ValueError("variable count mismatch")
    n = I.ring.nvars
    ext = Ring(n + 1, False, QQ)
    gens = [LaurentPoly(ext, _embed(_to_int_dict(g), 1)) for g in I.generators]
    fd = _embed(_to_int_dict(f), 1)
    aux = {m[:n] + (m[n] + 1,): -c for m, c in fd.items()}
    one = (0,) * (n + 1)
    aux[one] = aux.get(one, 0) + 1
    if not any(aux.values()):
        aux = {}
    gens.append(LaurentPoly(ext, aux))
    G = buchberger(IdealBasis(ext, tuple(g for g in gens if not g.is_zero())), options)
    return G.is_unit_ideal()


def only_trivial_solution(
    I: IdealBasis,
    method: str = "finiteness",
    options: GBOptions = DEFAULT_OPTIONS,
) -> bool:
    """Whether the homogeneous system I has no nonzero complex solution.

    Both methods compute Groebner bases; "finiteness" reads the answer off
    one basis (a pure power of every variable must appear among the leading
    monomials, the standard zero-dimensionality test, which for a
    homogeneous ideal pins the zero set inside the origin), while "radical"
    checks radical membership of every variable separately.  The two agree;
    tests exercise that.
    """
    for g in I.generators:
        if not g.is_homogeneous():
            raise ValueError("only_trivial_solution requires homogeneous generators")
    n = I.ring.nvars
    if n == 0:
        return True
    if not I.generators:
        return False
    if method == "radical":
        return all(
            radical_member(LaurentPoly.variable(I.ring, i), I, options) for i in range(n)
        )
    if method != "finiteness":
        raise ValueError(f"unknown method {method!r}")
    G = buchberger(I, options)
    if G.is_unit_ideal():
        return True
    covered = [False] * n
    for d in G.reducers():
        lm = d[0]
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 1:
            covered[nz[0]] = True
    return all(covered)


def laurent_member(f: LaurentPoly, gens: list[LaurentPoly]) -> bool:
    """Membership of f in the Laurent ideal generated by gens, over Q.

    Reduces to ordinary membership saturated at the product of variables:
    with one auxiliary variable u, f lies in the Laurent ideal iff f lies
    in <normalized gens, 1 - u*x1*...*xn> as an ordinary ideal.
    """
    from .ring import laurent_normalize

    if f.is_zero():
        return True
    n = f.ring.nvars
    fq, _ = laurent_normalize(f)
    norm_gens = []
    for g in gens:
        if g.ring.nvars != n:
            raise ValueError("variable count mismatch")
        if g.is_zero():
            continue
        gq, _ = laurent_normalize(g)
        norm_gens.append(gq)
    if not norm_gens:
        return False
    ext = Ring(n + 1, False, QQ)
    ideal_gens = [LaurentPoly(ext, _embed(_to_int_dict(g), 1)) for g in norm_gens]
    sat = {(0,) * (n + 1): 1, (1,) * (n + 1): -1}
    ideal_gens.append(LaurentPoly(ext, sat))
    G = buchberger(IdealBasis(ext, tuple(ideal_gens)))
    return ideal_member(LaurentPoly(ext, _embed(_to_int_dict(fq), 1)), G)


def linear_rank(polys, nvars: int) -> int:
    """Exact rank of a system of linear forms, by Fraction elimination."""
    rows = []
    for p in polys:
        if p.is_zero():
            continue
        if p.total_degree() != 1 or not p.is_homogeneous():
            raise ValueError("linear_rank expects homogeneous linear forms")
        row = [Fraction(0)] * nvars
        for m, c in p.term_dict().items():
            row[m.index(1)] = Fraction(c)
        rows.append(row)
    rank = 0
    col = 0
    while rank < len(rows) and col < nvars:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank
