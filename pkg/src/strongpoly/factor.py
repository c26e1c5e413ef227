"""Desk-scale exact factorization and irreducibility oracle over Z.

Univariate factorization is the classical chain: content, Yun squarefree
decomposition, Berlekamp at the smallest odd prime that preserves degree
and squarefreeness, quadratic Hensel lifting past a Mignotte-style bound,
then subset recombination with exact trial division.  Multivariate
irreducibility combines three exact routes:

  * a non-unit content with respect to one variable is itself a factor;
  * a degree-preserving integer specialization that is irreducible over Q
    certifies irreducibility (any split with both factors of positive
    main-variable degree would survive the specialization, and a factor
    free of the main variable divides the unit content);
  * deterministic Kronecker substitution x_i -> y^(D^i), D > 2*maxdeg,
    factoring the image and lifting exponent patterns back with exact
    division, which is complete and therefore can also certify
    irreducibility when the subset search is exhausted.

The specialization route exists because Kronecker images blow up in degree
past three or four variables; it can only ever prove irreducibility, never
claim a factorization, so the two routes cannot contradict each other.
Everything returns an honest UNDECIDED("resource-...") verdict when its
budget runs out.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import verdict
from .errors import ResourceBudgetExceeded
from .ring import (
    ZZ,
    LaurentPoly,
    Ring,
    exact_divide,
    grlex_key,
    laurent_normalize,
    mono_div,
)
from .verdict import Verdict


@dataclass(frozen=True)
class FactorOptions:
    max_uv_degree: int = 320
    max_kron_degree: int = 240
    max_kron_items: int = 14
    max_kron_trials: int = 20_000
    spec_points: int = 30


DEFAULT_OPTIONS = FactorOptions()


@dataclass(frozen=True)
class Factorization:
    """unit * prod(poly^mult); factors are primitive with positive lead."""

    unit: int
    factors: tuple[tuple[LaurentPoly, int], ...]

    def expand(self, ring: Ring) -> LaurentPoly:
        out = LaurentPoly.constant(ring, self.unit)
        for f, m in self.factors:
            out = out * f ** m
        return out


# -- dense univariate integer polynomials (ascending coefficients) -----


def _uv_trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f

def _uv_deg(f: list) -> int:
    return len(f) - 1

def _uv_add(f, g):
    n = max(len(f), len(g))
    return _uv_trim([ (f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n) ])

def _uv_neg(f):
    return [-c for c in f]

def _uv_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] += a * b
    return _uv_trim(out)

def _uv_scale(f, c):
    return [] if c == 0 else [a * c for a in f]

def _uv_content(f) -> int:
    g = 0
    for c in f:
        g = math.gcd(g, c)
    return g

def _uv_primitive(f) -> list:
    """Primitive part with positive leading coefficient."""
    if not f:
        return []
    g = _uv_content(f)
    if f[-1] < 0:
        g = -g
    return [c // g for c in f]

def _uv_deriv(f):
    return _uv_trim([i * f[i] for i in range(1, len(f))])

def _uv_exact_div(f, g):
    """f // g over Z when exact, else None."""
    if not g:
        raise ZeroDivisionError
    if not f:
        return []
    if len(f) < len(g):
        return None
    rem = list(f)
    out = [0] * (len(f) - len(g) + 1)
    glc = g[-1]
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(g) - 1]
        if c % glc:
            return None
        q = c // glc
        out[k] = q
        if q:
            for j, b in enumerate(g):
                rem[k + j] -= q * b
    return _uv_trim(out) if not any(rem) else None

def _uv_prem(f, g):
    """Pseudo-remainder of f by g (up to a power of lc(g))."""
    df, dg = _uv_deg(f), _uv_deg(g)
    r = list(f)
    glc = g[-1]
    while r and _uv_deg(r) >= dg:
        shift = _uv_deg(r) - dg
        rlc = r[-1]
        r = _uv_scale(r, glc)
        for j, b in enumerate(g):
            r[shift + j] -= rlc * b
        r = _uv_trim(r)
    return r

def _uv_gcd(f, g) -> list:
    """gcd over Z via the primitive pseudo-remainder sequence."""
    f, g = _uv_trim(list(f)), _uv_trim(list(g))
    if not f:
        return _uv_primitive(g) if g else []
    if not g:
        return _uv_primitive(f)
    cf, cg = _uv_content(f), _uv_content(g)
    a, b = _uv_primitive(f), _uv_primitive(g)
    if _uv_deg(a) < _uv_deg(b):
        a, b = b, a
    while b:
        r = _uv_prem(a, b)
        a, b = b, _uv_primitive(r)
    return _uv_scale(_uv_primitive(a), math.gcd(cf, cg))


# -- GF(p) arithmetic ---------------------------------------------------


def _gf_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f

def _gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _gf_trim(out)

def _gf_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError
    inv = pow(g[-1], p - 2, p)
    rem = [c % p for c in f]
    _gf_trim(rem)
    if len(rem) < len(g):
        return [], rem
    out = [0] * (len(rem) - len(g) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(g) - 1] % p
        q = c * inv % p
        out[k] = q
        if q:
            for j, b in enumerate(g):
                rem[k + j] = (rem[k + j] - q * b) % p
    return _gf_trim(out), _gf_trim(rem)

def _gf_gcd(f, g, p):
    a = _gf_trim([c % p for c in f])
    b = _gf_trim([c % p for c in g])
    while b:
        _, r = _gf_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a

def _gf_monic(f, p):
    f = _gf_trim([c % p for c in f])
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]

def _gf_pow_mod(base, e, mod, p):
    result = [1]
    b = list(base)
    while e:
        if e & 1:
            result = _gf_divmod(_gf_mul(result, b, p), mod, p)[1]
        e >>= 1
        if e:
            b = _gf_divmod(_gf_mul(b, b, p), mod, p)[1]
    return result

def _gf_xgcd(f, g, p):
    """(d, s, t) monic d = s*f + t*g over GF(p)."""
    r0, r1 = _gf_trim([c % p for c in f]), _gf_trim([c % p for c in g])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_trim([(a - b) % p for a, b in itertools.zip_longest(s0, _gf_mul(q, s1, p), fillvalue=0)])
        t0, t1 = t1, _gf_trim([(a - b) % p for a, b in itertools.zip_longest(t0, _gf_mul(q, t1, p), fillvalue=0)])
    if r0:
        inv = pow(r0[-1], p - 2, p)
        r0 = [c * inv % p for c in r0]
        s0 = [c * inv % p for c in s0]
        t0 = [c * inv % p for c in t0]
    return r0, s0, t0


def _berlekamp(f, p) -> list:
    """Monic irreducible factors of a monic squarefree f over GF(p)."""
    n = _uv_deg(f)
    if n <= 1:
        return [list(f)]
    # rows of the Frobenius matrix: x^(i*p) mod f
    xp = _gf_pow_mod([0, 1], p, f, p)
    rows = []
    cur = [1]
    for _ in range(n):
        rows.append(cur + [0] * (n - len(cur)))
        cur = _gf_divmod(_gf_mul(cur, xp, p), f, p)[1]
    # nullspace of (Q - I)^T is not needed; Berlekamp uses v*Q = v, i.e.
    # nullspace of (Q^T - I); with rows[i] = x^(ip) the matrix acting on
    # coefficient columns is Q^T, so eliminate M = Q - I column-style.
    M = [[(rows[i][j] - (1 if i == j else 0)) % p for j in range(n)] for i in range(n)]
    # row-reduce M^T to find vectors v with v*M = 0
    T = [[M[i][j] for i in range(n)] for j in range(n)]
    basis = _gf_nullspace(T, p)
    r = len(basis)
    if r == 1:
        return [list(f)]
    factors = [list(f)]
    for v in basis:
        vpoly = _gf_trim(list(v))
        if _uv_deg(vpoly) < 1:
            continue
        new_factors = []
        for u in factors:
            if _uv_deg(u) <= 1:
                new_factors.append(u)
                continue
            pieces = []
            rest = u
            for c in range(p):
                if _uv_deg(rest) < 1:
                    break
                shifted = _gf_trim([(vpoly[0] - c) % p] + vpoly[1:]) if vpoly else []
                g = _gf_gcd(rest, shifted, p)
                if 0 < _uv_deg(g) <= _uv_deg(rest):
                    pieces.append(g)
                    rest = _gf_divmod(rest, g, p)[0]
            if _uv_deg(rest) >= 1:
                pieces.append(_gf_monic(rest, p))
            new_factors.extend(pieces if pieces else [u])
        factors = new_factors
        if len(factors) == r:
            break
    return sorted(factors, key=lambda g: (len(g), g))


def _gf_nullspace(M, p):
    """Basis of the right nullspace of square matrix M over GF(p)."""
    n = len(M)
    A = [row[:] for row in M]
    pivot_col_of_row = []
    row = 0
    pivots = {}
    for col in range(n):
        piv = next((r for r in range(row, n) if A[r][col] % p), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = pow(A[row][col], p - 2, p)
        A[row] = [c * inv % p for c in A[row]]
        for r in range(n):
            if r != row and A[r][col]:
                f = A[r][col]
                A[r] = [(a - f * b) % p for a, b in zip(A[r], A[row])]
        pivots[col] = row
        row += 1
        if row == n:
            break
    basis = []
    free_cols = [c for c in range(n) if c not in pivots]
    for fc in free_cols:
        v = [0] * n
        v[fc] = 1
        for col, r in pivots.items():
            v[col] = (-A[r][fc]) % p
        basis.append(v)
    return basis


def _hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step: all invariants mod m lift to mod m*m."""
    mm = m * m
    def red(a):
        return _uv_trim([c % mm for c in a])
    def sym(a):
        return _uv_trim([c - mm if c > mm // 2 else c for c in [x % mm for x in a]])
    e = red(_uv_add(f, _uv_neg(_uv_mul(g, h))))
    q, r = _uv_divmod_mod(_uv_mul(s, e), h, mm)
    g1 = red(_uv_add(g, _uv_add(_uv_mul(t, e), _uv_mul(q, g))))
    h1 = red(_uv_add(h, r))
    b = red(_uv_add(_uv_add(_uv_mul(s, g1), _uv_mul(t, h1)), [-1]))
    c, d = _uv_divmod_mod(_uv_mul(s, b), h1, mm)
    s1 = red(_uv_add(s, _uv_neg(d)))
    t1 = red(_uv_add(t, _uv_neg(_uv_add(_uv_mul(t, b), _uv_mul(c, g1)))))
    return sym(g1), sym(h1), sym(s1), sym(t1)


def _uv_divmod_mod(f, g, m):
    """Division with remainder mod m; g must be monic mod m."""
    rem = [c % m for c in f]
    _uv_trim(rem)
    assert g and g[-1] % m == 1, "divisor must be monic"
    if len(rem) < len(g):
        return [], rem
    out = [0] * (len(rem) - len(g) + 1)
    for k in range(len(out) - 1, -1, -1):
        q = rem[k + len(g) - 1] % m
        out[k] = q
        if q:
            for j, b in enumerate(g):
                rem[k + j] = (rem[k + j] - q * b) % m
    return _uv_trim(out), _uv_trim(rem)


def _hensel_lift_tree(f, factors, p, target):
    """Lift monic GF(p) factors of monic f to factors mod >= target.

    Returns (lifted_factors, modulus) with f = prod(lifted) mod modulus and
    every lifted factor monic with symmetric-range coefficients.
    """
    if len(factors) == 1:
        return [list(f)], None
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g = [1]
    for q in left:
        g = _gf_mul(g, q, p)
    h = [1]
    for q in right:
        h = _gf_mul(h, q, p)
    _, s, t = _gf_xgcd(g, h, p)
    m = p
    g, h = [c % p for c in g], [c % p for c in h]
    while m < target:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m = m * m
    out = []
    for part, sub in ((g, left), (h, right)):
        if len(sub) == 1:
            out.append(part)
        else:
            lifted, _ = _hensel_lift_tree(part, sub, p, target)
            out.extend(lifted)
    return out, m


def _mignotte_modulus(f, p) -> int:
    """p^k with p^k > 2 * factor-coefficient bound for monic f."""
    norm = math.isqrt(sum(c * c for c in f)) + 1
    bound = (1 << len(f)) * norm
    m = p
    while m <= 2 * bound:
        m *= p
    return m


def _pick_prime(f) -> int:
    """Smallest odd prime keeping monic f squarefree mod p."""
    d = _uv_deriv(f)
    cand = 3
    while True:
        if f[-1] % cand:
            g = _gf_gcd(f, d, cand)
            if _uv_deg(g) == 0:
                return cand
        cand += 2
        while not _is_prime(cand):
            cand += 2

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _zassenhaus_squarefree(f: list, options: FactorOptions) -> list:
    """Irreducible Z-factors of a primitive squarefree f with lc > 0."""
    n = _uv_deg(f)
    if n <= 1:
        return [list(f)]
    if n > options.max_uv_degree:
        raise ResourceBudgetExceeded(
            "factor-degree", f"univariate degree {n} exceeds budget {options.max_uv_degree}"
        )
    # monic transform F(y) = lc^(n-1) f(y/lc)
    lc = f[-1]
    if lc == 1:
        F = list(f)
    else:
        F = [f[k] * lc ** (n - 1 - k) for k in range(n)] + [1]
    p = _pick_prime(F)
    modular = _berlekamp(_gf_monic(F, p), p)
    if len(modular) == 1:
        return [list(f)]
    target = _mignotte_modulus(F, p)
    lifted, _ = _hensel_lift_tree([c % target for c in F], modular, p, target)

    def sym(a):
        return _uv_trim([c - target if c > target // 2 else c for c in [x % target for x in a]])

    items = [sym(q) for q in lifted]
    found_monic: list = []
    remaining = list(F)
    pool = list(range(len(items)))
    trials = 0
    size = 1
    while 2 * size <= len(pool):
        hit = False
        for combo in itertools.combinations(pool, size):
            trials += 1
            if trials > options.max_kron_trials:
                raise ResourceBudgetExceeded("factor-trials", "recombination budget exceeded")
            cand = [1]
            for idx in combo:
                cand = _uv_mul(cand, items[idx])
            cand = sym(cand)
            quo = _uv_exact_div(remaining, cand)
            if quo is not None:
                found_monic.append(cand)
                remaining = quo
                pool = [i for i in pool if i not in combo]
                hit = True
                break
        if not hit:
            size += 1
    if _uv_deg(remaining) >= 1:
        found_monic.append(remaining)
    if lc == 1:
        out = [list(g) for g in found_monic]
    else:
        # undo y = lc*x and restore primitivity
        out = []
        for g in found_monic:
            out.append(_uv_primitive([g[k] * lc ** k for k in range(len(g))]))
    acc = [1]
    for g in out:
        acc = _uv_mul(acc, g)
    if acc != list(f):
        raise AssertionError("recombination lost exactness")
    return sorted(out, key=lambda g: (len(g), g))


def _uv_factor_primitive(f: list, options: FactorOptions) -> list[tuple[list, int]]:
    """(factor, multiplicity) pairs for primitive f with lc > 0, deg >= 1."""
    out = []
    k = 0
    while f[0] == 0:
        k += 1
        f = f[1:]
    if k:
        out.append(([0, 1], k))
    if _uv_deg(f) >= 1:
        # Yun squarefree decomposition
        d = _uv_deriv(f)
        a = _uv_gcd(f, d)
        b = _uv_exact_div(f, a)
        c = _uv_exact_div(d, a)
        d = _uv_add(c, _uv_neg(_uv_deriv(b)))
        i = 1
        while _uv_deg(b) > 0:
            a = _uv_gcd(b, d)
            b2 = _uv_exact_div(b, a)
            c = _uv_exact_div(d, a)
            b = b2
            d = _uv_add(c, _uv_neg(_uv_deriv(b)))
            if _uv_deg(a) > 0:
                for irr in _zassenhaus_squarefree(a, options):
                    out.append((irr, i))
            i += 1
    return out


# -- boundary: LaurentPoly in, verdicts/factorizations out ---------------


def _require_zz(p: LaurentPoly):
    if p.ring.domain != ZZ:
        raise ValueError("factorization is implemented over ZZ")


def _dense_from(p: LaurentPoly, var: int) -> list:
    out = [0] * (p.degree_in(var) + 1)
    for m, c in p.term_dict().items():
        out[m[var]] += c
    return _uv_trim(out)


def _poly_from_dense(coeffs: list, ring: Ring, var: int) -> LaurentPoly:
    terms = {}
    for e, c in enumerate(coeffs):
        if c:
            mono = [0] * ring.nvars
            mono[var] = e
            terms[tuple(mono)] = c
    return LaurentPoly(ring, terms)


def univariate_factor(p: LaurentPoly, options: FactorOptions = DEFAULT_OPTIONS) -> Factorization:
    """Complete factorization of a univariate (one effective variable) p over Z."""
    _require_zz(p)
    if p.ring.laurent:
        raise ValueError("univariate_factor expects an ordinary polynomial")
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    used = p.used_vars()
    if len(used) > 1:
        raise ValueError(f"polynomial uses {len(used)} variables, expected at most 1")
    if not used:
        c = p.constant_value()
        sign = -1 if c < 0 else 1
        mag = abs(c)
        facs = []
        for q, m in _int_factor(mag):
            facs.append((LaurentPoly.constant(p.ring, q), m))
        return Factorization(sign, tuple(facs))
    var = used[0]
    dense = _dense_from(p, var)
    cont = _uv_content(dense)
    if dense[-1] < 0:
        cont = -cont
    prim = [c // cont for c in dense]
    pairs = _uv_factor_primitive(prim, options)
    facs = [(_poly_from_dense(g, p.ring, var), m) for g, m in pairs]
    facs.sort(key=lambda fm: (fm[0].total_degree(), fm[0].to_text()))
    unit = cont
    out = []
    for q, m in _int_factor(abs(cont)):
        out.append((LaurentPoly.constant(p.ring, q), m))
        unit //= q ** m
    return Factorization(unit, tuple(out) + tuple(facs))


def _int_factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            m = 0
            while n % d == 0:
                n //= d
                m += 1
            out.append((d, m))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


# -- multivariate gcd -----------------------------------------------------


def _dict_gcd(f: dict, g: dict) -> dict:
    """gcd of integer term dicts, primitive PRS recursion, sign-normalized."""
    if not f:
        return _gcd_normalize(g)
    if not g:
        return _gcd_normalize(f)
    used = set()
    for d in (f, g):
        for m in d:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
    if not used:
        z = next(iter(f))
        return {z: math.gcd(f[z], next(iter(g.values())))}
    v = min(used)
    fc, fp = _split_content(f, v)
    gc, gp = _split_content(g, v)
    cont = _dict_gcd(fc, gc)
    a, b = fp, gp
    if _deg_in(a, v) < _deg_in(b, v):
        a, b = b, a
    while b:
        r = _dict_prem(a, b, v)
        a, b = b, _primitive_in(r, v)
    a = _primitive_in(a, v)
    return _gcd_normalize(_dict_mul(cont, a))


def _deg_in(d: dict, v: int) -> int:
    return max((m[v] for m in d), default=-1)


def _coeff_in(d: dict, v: int, e: int) -> dict:
    out = {}
    for m, c in d.items():
        if m[v] == e:
            key = m[:v] + (0,) + m[v + 1:]
            out[key] = c
    return out


def _split_content(d: dict, v: int) -> tuple[dict, dict]:
    """(content, primitive part) of d viewed univariately in v."""
    cont: dict = {}
    for e in range(_deg_in(d, v) + 1):
        ce = _coeff_in(d, v, e)
        if ce:
            cont = _dict_gcd(cont, ce) if cont else _gcd_normalize(ce)
            if _is_dict_one(cont):
                break
    pp = _dict_exact_div(d, cont)
    assert pp is not None
    return cont, pp


def _is_dict_one(d: dict) -> bool:
    return len(d) == 1 and next(iter(d.values())) == 1 and not any(next(iter(d)))


def _gcd_normalize(d: dict) -> dict:
    if not d:
        return {}
    g = 0
    for c in d.values():
        g = math.gcd(g, c)
    if d[max(d, key=grlex_key)] < 0:
        g = -g
    if g == 1:
        return dict(d)
    return {m: c // g for m, c in d.items()}


def _dict_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            key = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(key, 0) + c1 * c2
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _dict_prem(f: dict, g: dict, v: int) -> dict:
    """Pseudo-remainder of f by g in the variable v."""
    dg = _deg_in(g, v)
    glc = _coeff_in(g, v, dg)
    r = dict(f)
    while r and _deg_in(r, v) >= dg:
        dr = _deg_in(r, v)
        rlc = _coeff_in(r, v, dr)
        shift = [0] * len(next(iter(r)))
        shift[v] = dr - dg
        shifted = {tuple(a + b for a, b in zip(m, shift)): c for m, c in g.items()}
        r = _dict_sub(_dict_mul_flat(r, glc, v), _dict_mul_flat(shifted, rlc, v))
    return r


def _dict_mul_flat(f: dict, g: dict, v: int) -> dict:
    # g has v-degree 0, so this cannot raise the v-degree of f
    return _dict_mul(f, g)


def _dict_sub(f: dict, g: dict) -> dict:
    out = dict(f)
    for m, c in g.items():
        s = out.get(m, 0) - c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _primitive_in(d: dict, v: int) -> dict:
    if not d:
        return {}
    _, pp = _split_content(d, v)
    return pp


def _dict_exact_div(f: dict, g: dict) -> dict | None:
    if not f:
        return {}
    rem = dict(f)
    out: dict = {}
    g_lm = max(g, key=grlex_key)
    g_lc = g[g_lm]
    while rem:
        lm = max(rem, key=grlex_key)
        lc = rem[lm]
        if any(a < b for a, b in zip(lm, g_lm)) or lc % g_lc:
            return None
        qm = mono_div(lm, g_lm)
        qc = lc // g_lc
        out[qm] = qc
        for m, c in g.items():
            key = tuple(a + b for a, b in zip(qm, m))
            s = rem.get(key, 0) - qc * c
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return out


def poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """gcd in the ambient ring, canonical representative.

    Over a Laurent ring, monomials are units, so they are stripped first
    and the result carries no monomial factor.  Over an ordinary ring the
    gcd keeps monomial factors.  Integer content is kept either way since
    integers other than +-1 are never units here.
    """
    if p.ring != q.ring:
        raise ValueError("ring mismatch")
    _require_zz(p)
    if p.is_zero() and q.is_zero():
        return LaurentPoly.zero(p.ring)
    def norm(h):
        if h.is_zero():
            return {}
        if p.ring.laurent:
            hq, _ = laurent_normalize(h)
            return hq.term_dict()
        return h.term_dict()
    d = _dict_gcd(norm(p), norm(q))
    return LaurentPoly(p.ring, d)


def coprime(p: LaurentPoly, q: LaurentPoly) -> bool:
    """True iff gcd(p, q) is a unit of the ambient ring."""
    return poly_gcd(p, q).is_unit()


# -- multivariate irreducibility ------------------------------------------


def _eval_partial(p: LaurentPoly, main: int, point: dict) -> list:
    """Dense coefficients of p in the main variable at an integer point."""
    out = [0] * (p.degree_in(main) + 1)
    for m, c in p.term_dict().items():
        val = c
        for i, e in enumerate(m):
            if i == main or not e:
                continue
            val *= point[i] ** e
        out[m[main]] += val
    return _uv_trim(out)


def _specialization_proved(p: LaurentPoly, options: FactorOptions) -> bool:
    """Try to certify irreducibility by a degree-preserving specialization."""
    used = p.used_vars()
    main = min(used, key=lambda v: (p.degree_in(v), v))
    others = [v for v in used if v != main]
    dmain = p.degree_in(main)
    values = (1, -1, 2, -2, 3, -3, 0)
    attempts = 0
    for combo in itertools.product(values, repeat=len(others)):
        if attempts >= options.spec_points:
            break
        point = dict(zip(others, combo))
        dense = _eval_partial(p, main, point)
        if _uv_deg(dense) != dmain:
            continue
        attempts += 1
        prim = _uv_primitive(dense)
        if prim[0] == 0:
            continue
        if _uv_deg(prim) == 1:
            return True
        try:
            pairs = _uv_factor_primitive(list(prim), options)
        except ResourceBudgetExceeded:
            continue
        if len(pairs) == 1 and pairs[0][1] == 1:
            return True
    return False


def _kronecker_split(p: LaurentPoly, options: FactorOptions):
    """('split', (g, h)) | ('irreducible', None) | ('resource', tag)."""
    used = p.used_vars()
    degs = {v: p.degree_in(v) for v in used}
    D = 2 * max(degs.values()) + 1
    weight = {}
    acc = 1
    for v in used:
        weight[v] = acc
        acc *= D
    total = sum(degs[v] * weight[v] for v in used)
    if total > options.max_kron_degree:
        return ("resource", f"kronecker image degree {total} exceeds budget")
    dense = [0] * (total + 1)
    for m, c in p.term_dict().items():
        dense[sum(m[v] * weight[v] for v in used)] += c
    dense = _uv_trim(dense)
    try:
        pairs = _uv_factor_primitive(_uv_primitive(dense), options)
    except ResourceBudgetExceeded as exc:
        return ("resource", str(exc))
    items = []
    for g, mult in pairs:
        items.extend([g] * mult)
    if len(items) == 1:
        return ("irreducible", None)
    if len(items) > options.max_kron_items:
        return ("resource", f"{len(items)} kronecker factors exceed budget")
    trials = 0
    nv = p.ring.nvars
    for size in range(1, len(items) // 2 + 1):
        for combo in itertools.combinations(range(len(items)), size):
            trials += 1
            if trials > options.max_kron_trials:
                return ("resource", "kronecker trial budget exceeded")
            gd = [1]
            for idx in combo:
                gd = _uv_mul(gd, items[idx])
            terms = {}
            ok = True
            for e, c in enumerate(gd):
                if not c:
                    continue
                mono = [0] * nv
                rest = e
                for v in reversed(used):
                    mono[v], rest = divmod(rest, weight[v])
                    if mono[v] > degs[v]:
                        ok = False
                        break
                if not ok:
                    break
                key = tuple(mono)
                terms[key] = terms.get(key, 0) + c
            if not ok:
                continue
            cand = LaurentPoly(p.ring, terms)
            if cand.is_constant() or cand.total_degree() == p.total_degree():
                continue
            quo = exact_divide(p, cand)
            if quo is not None:
                return ("split", (cand, quo))
    return ("irreducible", None)


def is_irreducible(
    p: LaurentPoly, mode: str = "ordinary", options: FactorOptions = DEFAULT_OPTIONS
) -> Verdict:
    """Three-valued irreducibility check over Z.

    mode="laurent" works up to Laurent units: monomial factors are divided
    out first and monomials themselves are rejected as units.  REFUTED
    verdicts carry factors whose product gives back the input exactly.
    """
    _require_zz(p)
    if p.is_zero():
        raise ValueError("zero polynomial has no irreducibility status")
    if mode not in ("ordinary", "laurent"):
        raise ValueError(f"unknown mode {mode!r}")
    if p.ring.laurent and mode != "laurent":
        raise ValueError("a Laurent-ring polynomial needs mode='laurent'")

    unit_mono = (0,) * p.ring.nvars
    if mode == "laurent":
        q, unit_mono = laurent_normalize(p)
    else:
        q = p

    def with_unit(factors: list[LaurentPoly]) -> list[LaurentPoly]:
        """Reattach the stripped monomial to the first factor; exact product."""
        out = [f.to_laurent() if p.ring.laurent else f for f in factors]
        if any(unit_mono):
            out[0] = out[0].mul_monomial(unit_mono)
        return out

    if q.is_constant():
        c = q.constant_value()
        if abs(c) == 1:
            raise ValueError("unit input: irreducibility is undefined for units")
        fs = _int_factor(abs(c))
        if len(fs) == 1 and fs[0][1] == 1:
            return verdict.proved("constant-prime", constant=c)
        parts = []
        sign = -1 if c < 0 else 1
        for prime, m in fs:
            parts.extend([LaurentPoly.constant(q.ring, prime)] * m)
        parts[0] = parts[0].scale(sign)
        return verdict.refuted({"factors": with_unit(parts)})

    cont = q.content()
    sign = -1 if q.leading_coefficient() < 0 else 1
    if cont > 1:
        pp = q.primitive_part()
        return verdict.refuted(
            {"factors": with_unit([LaurentPoly.constant(q.ring, cont * sign), pp.sign_normalized()])}
        )

    used = q.used_vars()
    if len(used) == 1:
        fact = univariate_factor(q, options)
        expanded = [f for f, m in fact.factors for _ in range(m)]
        if len(expanded) == 1:
            return verdict.proved("univariate")
        expanded[0] = expanded[0].scale(fact.unit)
        return verdict.refuted({"factors": with_unit(expanded)})

    if q.total_degree() == 1:
        return verdict.proved("degree-1")

    main = min(used, key=lambda v: (q.degree_in(v), v))
    cont_v = LaurentPoly(q.ring, _split_content(q.term_dict(), main)[0])
    if not cont_v.is_unit():
        quo = exact_divide(q, cont_v)
        return verdict.refuted({"factors": with_unit([cont_v, quo])})

    if _specialization_proved(q, options):
        return verdict.proved("specialization")

    status, payload = _kronecker_split(q, options)
    if status == "split":
        g, h = payload
        return verdict.refuted({"factors": with_unit([g, h])})
    if status == "irreducible":
        return verdict.proved("kronecker")
    return verdict.undecided("resource-kronecker", detail=payload)
