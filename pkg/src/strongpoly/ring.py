"""Exact multivariate polynomial and Laurent polynomial arithmetic.

Polynomials live in Z[x1..xn], Q[x1..xn] or their Laurent versions
Z[x1^-1..xn^-1], with integer exponent vectors as monomial keys and exact
coefficients (int over Z, Fraction over Q).  Everything is immutable and
hashable, so values can be shared freely across threads and used as dict
keys.  The graded lexicographic order (total degree first, then left-to-right
exponent comparison) fixes a canonical term order; equal polynomials always
produce byte-identical text via to_text().
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

ZZ = "ZZ"
QQ = "QQ"

#: degree of the zero polynomial; compares below every integer
NEG_INF = float("-inf")

Monomial = tuple  # exponent vector, one int per variable


@dataclass(frozen=True)
class Ring:
    """Descriptor of the ambient (Laurent) polynomial ring."""

    nvars: int
    laurent: bool = False
    domain: str = ZZ

    def __post_init__(self):
        if self.nvars < 0:
            raise ValueError("nvars must be >= 0")
        if self.domain not in (ZZ, QQ):
            raise ValueError(f"unknown domain {self.domain!r}")

    def laurent_version(self) -> "Ring":
        return Ring(self.nvars, True, self.domain)

    def ordinary_version(self) -> "Ring":
        return Ring(self.nvars, False, self.domain)

    def with_nvars(self, n: int) -> "Ring":
        return Ring(n, self.laurent, self.domain)

    def coerce(self, c):
        """Coerce a coefficient into the domain, rejecting lossy input."""
        if self.domain == ZZ:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"coefficient {c} is not an integer")
                return int(c)
            if isinstance(c, int):
                return int(c)
            raise ValueError(f"bad coefficient {c!r} for domain ZZ")
        if isinstance(c, (int, Fraction)):
            return Fraction(c)
        raise ValueError(f"bad coefficient {c!r} for domain QQ")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """a | b in the ordinary sense (componentwise <=)."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def grlex_key(m: Monomial):
    """Sort key for graded lex: total degree, then exponent vector."""
    return (sum(m), m)


class LaurentPoly:
    """Immutable sparse polynomial keyed by exponent tuples.

    The term dict is canonicalized on construction: zero coefficients are
    dropped, lengths checked against the ring, negative exponents rejected
    unless the ring is Laurent.
    """

    __slots__ = ("ring", "_terms", "_key")

    def __init__(self, ring: Ring, terms: dict):
        clean = {}
        n = ring.nvars
        for mono, coeff in terms.items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError(f"monomial {mono} has wrong arity for {n} variables")
            for e in mono:
                if not isinstance(e, int):
                    raise ValueError(f"non-integer exponent in {mono}")
                if e < 0 and not ring.laurent:
                    raise ValueError(f"negative exponent in {mono} outside a Laurent ring")
            c = ring.coerce(coeff)
            if c:
                clean[mono] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring) -> "LaurentPoly":
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: Ring, c) -> "LaurentPoly":
        return cls(ring, {(0,) * ring.nvars: c})

    @classmethod
    def one(cls, ring: Ring) -> "LaurentPoly":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: Ring, i: int) -> "LaurentPoly":
        if not 0 <= i < ring.nvars:
            raise ValueError(f"variable index {i} out of range")
        e = [0] * ring.nvars
        e[i] = 1
        return cls(ring, {tuple(e): 1})

    @classmethod
    def monomial(cls, ring: Ring, exps: Iterable[int], coeff=1) -> "LaurentPoly":
        return cls(ring, {tuple(exps): coeff})

    # -- canonical term access ----------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, object]]:
        """Terms in descending graded-lex order."""
        for m in sorted(self._terms, key=grlex_key, reverse=True):
            yield m, self._terms[m]

    def term_dict(self) -> dict:
        return dict(self._terms)

    def coeff(self, mono: Iterable[int]):
        c = self._terms.get(tuple(mono))
        if c is None:
            return 0 if self.ring.domain == ZZ else Fraction(0)
        return c

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        z = (0,) * self.ring.nvars
        return all(m == z for m in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.coeff((0,) * self.ring.nvars)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Unit test in the ambient ring.

        Over Z: +-1 (ordinary) or +-(monomial) (Laurent).  Over Q the
        coefficient only has to be nonzero.
        """
        if len(self._terms) != 1:
            return False
        (mono, c), = self._terms.items()
        if any(mono) and not self.ring.laurent:
            return False
        if self.ring.domain == QQ:
            return True
        return c in (1, -1)

    def total_degree(self):
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def degree_in(self, i: int):
        if not self._terms:
            return NEG_INF
        return max(m[i] for m in self._terms)

    def min_exponent(self, i: int) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(m[i] for m in self._terms)

    def used_vars(self) -> tuple[int, ...]:
        """Indices of variables that occur with a nonzero exponent."""
        used = set()
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return tuple(sorted(used))

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=grlex_key)

    def leading_coefficient(self):
        return self._terms[self.leading_monomial()]

    def coefficient_sum(self):
        """Evaluation at (1, ..., 1)."""
        z = 0 if self.ring.domain == ZZ else Fraction(0)
        return sum(self._terms.values(), z)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self._terms}
        return len(degs) <= 1

    # -- arithmetic ----------------------------------------------------

    def _check_ring(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other) -> "LaurentPoly":
        self._check_ring(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly(self.ring, out)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.ring, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        self._check_ring(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return LaurentPoly(self.ring, out)

    def __pow__(self, e: int) -> "LaurentPoly":
        if not isinstance(e, int):
            raise TypeError("exponent must be an int")
        if e < 0:
            if not (self.ring.laurent and self.is_unit()):
                raise ValueError("negative power requires a Laurent unit")
            (mono, c), = self._terms.items()
            coeff = (c if e % 2 else 1) if self.ring.domain == ZZ else Fraction(c) ** e
            return LaurentPoly(self.ring, {tuple(x * e for x in mono): coeff})
        result = LaurentPoly.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c) -> "LaurentPoly":
        c = self.ring.coerce(c)
        if not c:
            return LaurentPoly.zero(self.ring)
        return LaurentPoly(self.ring, {m: v * c for m, v in self._terms.items()})

    def mul_monomial(self, exps: Iterable[int], coeff=1) -> "LaurentPoly":
        exps = tuple(exps)
        return LaurentPoly(
            self.ring, {mono_mul(m, exps): v * coeff for m, v in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        key = self._key
        if key is None:
            key = hash((self.ring, tuple(self.terms())))
            object.__setattr__(self, "_key", key)
        return key

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r}, ring={self.ring})"

    # -- derived operations --------------------------------------------

    def bar(self) -> "LaurentPoly":
        """Bar involution: every variable is sent to its inverse."""
        out = {tuple(-e for e in m): c for m, c in self._terms.items()}
        ring = self.ring
        if not ring.laurent and any(any(e for e in m) for m in out):
            ring = ring.laurent_version()
        return LaurentPoly(ring, out)

    def derivative(self, i: int) -> "LaurentPoly":
        out: dict = {}
        for m, c in self._terms.items():
            e = m[i]
            if e == 0:
                continue
            d = list(m)
            d[i] = e - 1
            nm = tuple(d)
            s = out.get(nm, 0) + c * e
            if s:
                out[nm] = s
            else:
                out.pop(nm, None)
        return LaurentPoly(self.ring, out)

    def content(self) -> int:
        """gcd of integer coefficients (ZZ domain), 0 for the zero poly."""
        if self.ring.domain != ZZ:
            raise ValueError("content is defined over ZZ")
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def primitive_part(self) -> "LaurentPoly":
        g = self.content()
        if g in (0, 1):
            return self
        return LaurentPoly(self.ring, {m: c // g for m, c in self._terms.items()})

    def sign_normalized(self) -> "LaurentPoly":
        """Flip sign so the graded-lex leading coefficient is positive."""
        if self.is_zero() or self.leading_coefficient() > 0:
            return self
        return -self

    def to_domain(self, domain: str) -> "LaurentPoly":
        if domain == self.ring.domain:
            return self
        ring = Ring(self.ring.nvars, self.ring.laurent, domain)
        return LaurentPoly(ring, self._terms)

    def to_laurent(self) -> "LaurentPoly":
        if self.ring.laurent:
            return self
        return LaurentPoly(self.ring.laurent_version(), self._terms)

    def to_ordinary(self) -> "LaurentPoly":
        if not self.ring.laurent:
            return self
        return LaurentPoly(self.ring.ordinary_version(), self._terms)

    def exact_divide(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Return self / other when the division is exact, else None."""
        return exact_divide(self, other)

    # -- text form -------------------------------------------------------

    def to_text(self, var_prefix: str = "x") -> str:
        """Canonical text: descending graded-lex terms, '^' powers, '*' products.

        var_prefix 'x' names variables x1..xn, 'z' names them z0..zn,
        't' names them t (single variable) or t1..tn.
        """
        if not self._terms:
            return "0"
        parts = []
        for idx, (mono, coeff) in enumerate(self.terms()):
            neg = coeff < 0
            mag = -coeff if neg else coeff
            factors = []
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                name = _var_name(var_prefix, i, self.ring.nvars)
                factors.append(name if e == 1 else f"{name}^{e}")
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if idx == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)


def _var_name(prefix: str, i: int, nvars: int) -> str:
    if prefix == "z":
        return f"z{i}"
    if prefix == "t":
        return "t" if nvars == 1 else f"t{i + 1}"
    return f"{prefix}{i + 1}"


@dataclass(frozen=True)
class HomogPoly:
    """Homogeneous polynomial in n+1 variables z0..zn, with checked degree."""

    inner: LaurentPoly
    total_degree: int

    def __post_init__(self):
        if self.inner.ring.laurent:
            raise ValueError("homogeneous polynomials live in an ordinary ring")
        for m, _ in self.inner.terms():
            if sum(m) != self.total_degree:
                raise ValueError(
                    f"term {m} has degree {sum(m)}, expected {self.total_degree}"
                )

    @property
    def ring(self) -> Ring:
        return self.inner.ring

    def to_text(self) -> str:
        return self.inner.to_text(var_prefix="z")


def homogenize(p: LaurentPoly) -> HomogPoly:
    """Homogeneous counterpart in n+1 variables, z0 the added variable.

    Each term x^e of degree k picks up z0^(d-k) where d = deg p.  A
    homogeneous input embeds with z0 unused.  Laurent input is rejected;
    normalize first.
    """
    if p.ring.laurent:
        raise ValueError("homogenize expects an ordinary polynomial; laurent_normalize first")
    if p.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    d = p.total_degree()
    ring = Ring(p.ring.nvars + 1, False, p.ring.domain)
    out = {}
    for m, c in p.term_dict().items():
        out[(d - sum(m),) + m] = c
    return HomogPoly(LaurentPoly(ring, out), d)


def dehomogenize(P: HomogPoly) -> LaurentPoly:
    """Set z0 = 1 and drop it, inverse to homogenize on its image."""
    ring = Ring(P.ring.nvars - 1, False, P.ring.domain)
    out: dict = {}
    for m, c in P.inner.term_dict().items():
        key = m[1:]
        s = out.get(key, 0) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return LaurentPoly(ring, out)


def power_substitute(p: LaurentPoly, t: Iterable[int]) -> LaurentPoly:
    """Substitute x_i -> x_i^{t_i} with every t_i a nonzero integer."""
    t = tuple(t)
    if len(t) != p.ring.nvars:
        raise ValueError(f"expected {p.ring.nvars} exponents, got {len(t)}")
    for ti in t:
        if not isinstance(ti, int) or ti == 0:
            raise ValueError(f"substitution exponents must be nonzero integers, got {ti}")
    out = {}
    for m, c in p.term_dict().items():
        out[tuple(e * ti for e, ti in zip(m, t))] = c
    ring = p.ring
    if not ring.laurent and any(e < 0 for m in out for e in m):
        ring = ring.laurent_version()
    return LaurentPoly(ring, out)


def monomial_substitute(
    p: LaurentPoly, images: Iterable[Iterable[int]], nvars_out: int
) -> LaurentPoly:
    """Evaluate p at monomial images: x_i -> x^{images[i]} in nvars_out variables.

    Each image is an exponent vector; zero vectors are rejected since the
    images are meant to be group elements spanning something nontrivial.
    """
    imgs = [tuple(v) for v in images]
    if len(imgs) != p.ring.nvars:
        raise ValueError(f"expected {p.ring.nvars} images, got {len(imgs)}")
    for v in imgs:
        if len(v) != nvars_out:
            raise ValueError(f"image {v} has wrong arity for {nvars_out} variables")
        if not any(v):
            raise ValueError("monomial image must be a nonzero exponent vector")
    out: dict = {}
    for m, c in p.term_dict().items():
        acc = (0,) * nvars_out
        for e, v in zip(m, imgs):
            if e:
                acc = tuple(a + e * b for a, b in zip(acc, v))
        s = out.get(acc, 0) + c
        if s:
            out[acc] = s
        else:
            out.pop(acc, None)
    laurent = p.ring.laurent or any(e < 0 for m in out for e in m)
    return LaurentPoly(Ring(nvars_out, laurent, p.ring.domain), out)


def laurent_normalize(p: LaurentPoly) -> tuple[LaurentPoly, Monomial]:
    """Split p = q * x^u with q ordinary and no variable dividing q.

    Returns (q, u).  q keeps the domain of p and is an ordinary-ring
    polynomial; u is the exponent vector of the monomial unit.
    """
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    n = p.ring.nvars
    u = tuple(p.min_exponent(i) for i in range(n))
    out = {mono_div(m, u): c for m, c in p.term_dict().items()}
    q = LaurentPoly(Ring(n, False, p.ring.domain), out)
    return q, u


def exact_divide(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly | None:
    """f / g when g divides f exactly in the ambient ring, else None.

    Laurent inputs are normalized first; the monomial units divide out
    unconditionally.  Over ZZ every coefficient division must be exact.
    """
    if f.ring != g.ring:
        raise ValueError("ring mismatch")
    if g.is_zero():
        raise ValueError("division by zero polynomial")
    ring = f.ring
    if f.is_zero():
        return LaurentPoly.zero(ring)
    if ring.laurent:
        fq, fu = laurent_normalize(f)
        gq, gu = laurent_normalize(g)
        q = exact_divide(fq, gq)
        if q is None:
            return None
        return LaurentPoly(ring, q.term_dict()).mul_monomial(mono_div(fu, gu))
    # ordinary long division by leading terms; exactness forces progress
    rem = f.term_dict()
    out: dict = {}
    g_terms = g.term_dict()
    g_lm = g.leading_monomial()
    g_lc = g_terms[g_lm]
    while rem:
        lm = max(rem, key=grlex_key)
        lc = rem[lm]
        if not mono_divides(g_lm, lm):
            return None
        if ring.domain == ZZ:
            if lc % g_lc:
                return None
            qc = lc // g_lc
        else:
            qc = lc / g_lc
        qm = mono_div(lm, g_lm)
        out[qm] = qc
        for m, c in g_terms.items():
            key = mono_mul(qm, m)
            s = rem.get(key, 0) - qc * c
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return LaurentPoly(ring, out)


def divides(g: LaurentPoly, f: LaurentPoly) -> bool:
    return exact_divide(f, g) is not None
