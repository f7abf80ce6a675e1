"""Exact scalar arithmetic and the nilpotent dual-number algebra.

Values live in a commutative tower built from the rationals:

* ``Cyclo8``: the field Q(i, sqrt2), stored as four fractions over the
  basis {1, i, sqrt2, i*sqrt2}.
* ``ScalarExpr``: Laurent polynomials in a carrier ``s`` with ``s^2 = q``
  (so half-integer powers of q stay exact), polynomial in a deformation
  variable ``v``, coefficients in ``Cyclo8``.
* ``DualElement``: the algebra D_n with nilpotent commuting generators
  iota_1 .. iota_n, iota_k^2 = 0, coefficients in ``ScalarExpr``.
  Subsets of generators are bitmasks, so n is capped at 16.

``JSignature`` describes a contraction signature, one flag per slot, and
produces the subset-monomial group weights.  ``specialize_q`` implements
the substitution q^a -> 1 + a*J*v used to contract the deformed data.

Everything is immutable and exact.  Rendering (``__str__``) is canonical:
terms are emitted in a fixed sorted order, so equal values always print
identically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator


class DimensionError(ValueError):
    """Operands live over a different number of nilpotent generators."""


class NotInvertibleError(ArithmeticError):
    """The element has no inverse in its ring."""


class DegreeCapError(RuntimeError):
    """Internal guard: the v-degree exceeded the configured cap."""


_MAX_GENERATORS = 16

# Quadratic relations over contracted coefficients never exceed v-degree
# a little above 2; anything larger signals a bug upstream.
_V_CAP = 4


def set_v_degree_cap(cap: int) -> int:
    """Set the global v-degree guard, returning the previous value."""
    global _V_CAP
    old = _V_CAP
    _V_CAP = int(cap)
    return old


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected an int or Fraction, got %r" % (x,))


class Cyclo8:
    """An element a + b*i + c*sqrt2 + d*i*sqrt2 of Q(i, sqrt2)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = _frac(a)
        self.b = _frac(b)
        self.c = _frac(c)
        self.d = _frac(d)

    @classmethod
    def i(cls) -> "Cyclo8":
        return cls(0, 1)

    @classmethod
    def sqrt2(cls) -> "Cyclo8":
        return cls(0, 0, 1)

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclo8(other)
        if not isinstance(other, Cyclo8):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __add__(self, other) -> "Cyclo8":
        if isinstance(other, (int, Fraction)):
            other = Cyclo8(other)
        return Cyclo8(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other) -> "Cyclo8":
        if isinstance(other, (int, Fraction)):
            other = Cyclo8(other)
        return Cyclo8(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Cyclo8":
        return Cyclo8(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other) -> "Cyclo8":
        if isinstance(other, (int, Fraction)):
            return Cyclo8(self.a * other, self.b * other, self.c * other, self.d * other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        if not (b1 or c1 or d1) and not (b2 or c2 or d2):
            return Cyclo8(a1 * a2)
        return Cyclo8(
            a1 * a2 - b1 * b2 + 2 * (c1 * c2 - d1 * d2),
            a1 * b2 + b1 * a2 + 2 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def conj_i(self) -> "Cyclo8":
        return Cyclo8(self.a, -self.b, self.c, -self.d)

    def conj_sqrt2(self) -> "Cyclo8":
        return Cyclo8(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "Cyclo8":
        """Field inverse via the product of the three Galois conjugates."""
        if not self:
            raise NotInvertibleError("division by zero in Q(i, sqrt2)")
        cofactor = self.conj_i() * self.conj_sqrt2() * self.conj_i().conj_sqrt2()
        norm = self * cofactor
        if norm.b or norm.c or norm.d:  # pragma: no cover - norm is Galois invariant
            raise ArithmeticError("field norm left the rationals")
        return cofactor * (1 / norm.a)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def key(self):
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        parts = []
        for val, tag in ((self.a, ""), (self.b, "i"), (self.c, "sqrt2"), (self.d, "i*sqrt2")):
            if not val:
                continue
            if tag and abs(val) == 1:
                body = tag if val > 0 else "-" + tag
            else:
                body = str(val) + ("*" + tag if tag else "")
            parts.append(body)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += "+" + p if not p.startswith("-") else p
        return out

    def __repr__(self) -> str:
        return "Cyclo8(%s)" % self


_C_ZERO = Cyclo8()
_C_ONE = Cyclo8(1)


class ScalarExpr:
    """Sparse Laurent polynomial in s (s^2 = q) and polynomial in v."""

    __slots__ = ("terms", "_key")

    def __init__(self, terms: dict | None = None):
        clean: dict = {}
        if terms:
            for (se, ve), coef in terms.items():
                if not isinstance(coef, Cyclo8):
                    coef = Cyclo8(coef)
                if not coef:
                    continue
                if ve < 0:
                    raise ValueError("negative v-exponent")
                if ve > _V_CAP:
                    raise DegreeCapError("v-degree %d exceeds cap %d" % (ve, _V_CAP))
                clean[(se, ve)] = coef
        self.terms = clean
        self._key = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "ScalarExpr":
        return cls()

    @classmethod
    def one(cls) -> "ScalarExpr":
        return cls({(0, 0): _C_ONE})

    @classmethod
    def from_value(cls, x) -> "ScalarExpr":
        if isinstance(x, ScalarExpr):
            return x
        if isinstance(x, Cyclo8):
            return cls({(0, 0): x})
        return cls({(0, 0): Cyclo8(_frac(x))})

    @classmethod
    def s_power(cls, e: int, coef=1) -> "ScalarExpr":
        """coef * s^e, i.e. coef * q^(e/2)."""
        return cls({(e, 0): Cyclo8(coef) if not isinstance(coef, Cyclo8) else coef})

    @classmethod
    def q_power(cls, e: int, coef=1) -> "ScalarExpr":
        return cls.s_power(2 * e, coef)

    @classmethod
    def v_power(cls, e: int, coef=1) -> "ScalarExpr":
        return cls({(0, e): Cyclo8(coef) if not isinstance(coef, Cyclo8) else coef})

    @classmethod
    def lam(cls) -> "ScalarExpr":
        """The standard deformation factor q - q^(-1), kept expanded."""
        return cls({(2, 0): _C_ONE, (-2, 0): Cyclo8(-1)})

    # -- ring operations ----------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Cyclo8)):
            other = ScalarExpr.from_value(other)
        if not isinstance(other, ScalarExpr):
            return NotImplemented
        return self.terms == other.terms

    def key(self):
        if self._key is None:
            self._key = tuple(sorted((e, c.key()) for e, c in self.terms.items()))
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other) -> "ScalarExpr":
        if isinstance(other, (int, Fraction, Cyclo8)):
            other = ScalarExpr.from_value(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            s = c if acc is None else acc + c
            if s:
                out[e] = s
            elif acc is not None:
                del out[e]
        return ScalarExpr(out)

    __radd__ = __add__

    def __neg__(self) -> "ScalarExpr":
        return ScalarExpr({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ScalarExpr":
        if isinstance(other, (int, Fraction, Cyclo8)):
            other = ScalarExpr.from_value(other)
        return self + (-other)

    def __rsub__(self, other) -> "ScalarExpr":
        return ScalarExpr.from_value(other) - self

    def __mul__(self, other) -> "ScalarExpr":
        if isinstance(other, (int, Fraction, Cyclo8)):
            other = ScalarExpr.from_value(other)
        if not isinstance(other, ScalarExpr):
            return NotImplemented
        out: dict = {}
        for (s1, v1), c1 in self.terms.items():
            for (s2, v2), c2 in other.terms.items():
                e = (s1 + s2, v1 + v2)
                p = c1 * c2
                acc = out.get(e)
                s = p if acc is None else acc + p
                if s:
                    out[e] = s
                elif acc is not None:
                    del out[e]
        return ScalarExpr(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ScalarExpr":
        if k < 0:
            return self.inverse() ** (-k)
        out = ScalarExpr.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def inverse(self) -> "ScalarExpr":
        """Invert a unit: a single term with zero v-exponent."""
        if len(self.terms) != 1:
            raise NotInvertibleError("only monomials in s are units")
        ((se, ve), coef), = self.terms.items()
        if ve != 0:
            raise NotInvertibleError("v is not invertible")
        return ScalarExpr({(-se, 0): coef.inverse()})

    def exact_div(self, other: "ScalarExpr") -> "ScalarExpr | None":
        """Exact polynomial quotient self / other, or None.

        Laurent in s, so s-exponents may go negative; v-exponents may not.
        Division by a multi-term divisor runs a bounded long division.
        """
        if not other:
            return None
        if not self:
            return ScalarExpr.zero()
        lead = max(other.terms, key=lambda e: (e[1], e[0]))
        lead_c = other.terms[lead]
        lead_inv = lead_c.inverse()
        rem = self
        quo: dict = {}
        s_span = (max(e[0] for e in self.terms) - min(e[0] for e in self.terms)
                  + max(e[0] for e in other.terms) - min(e[0] for e in other.terms))
        budget = (s_span + 2) * (max(e[1] for e in self.terms) + 2) + 8
        while rem:
            (rs, rv) = max(rem.terms, key=lambda e: (e[1], e[0]))
            if rv < lead[1]:
                return None
            qe = (rs - lead[0], rv - lead[1])
            qc = rem.terms[(rs, rv)] * lead_inv
            quo[qe] = quo.get(qe, _C_ZERO) + qc
            rem = rem - ScalarExpr({qe: qc}) * other
            budget -= 1
            if budget < 0:
                return None
        return ScalarExpr(quo)

    # -- specializations ----------------------------------------------

    def at_q_one(self) -> "ScalarExpr":
        """Set s = 1 (hence q = 1)."""
        out: dict = {}
        for (se, ve), c in self.terms.items():
            e = (0, ve)
            acc = out.get(e)
            s = c if acc is None else acc + c
            if s:
                out[e] = s
            elif acc is not None:
                del out[e]
        return ScalarExpr(out)

    def at_v_zero(self) -> "ScalarExpr":
        return ScalarExpr({e: c for e, c in self.terms.items() if e[1] == 0})

    def constant_value(self) -> Cyclo8:
        """The coefficient of s^0 v^0."""
        return self.terms.get((0, 0), _C_ZERO)

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    # -- rendering ----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (se, ve) in sorted(self.terms):
            coef = self.terms[(se, ve)]
            factors = []
            if se == 2:
                factors.append("q")
            elif se:
                factors.append("q^%d" % (se // 2) if se % 2 == 0 else "q^(%d/2)" % se)
            if ve:
                factors.append("v" if ve == 1 else "v^%d" % ve)
            cs = str(coef)
            if factors and cs == "1":
                body = "*".join(factors)
            elif factors and cs == "-1":
                body = "-" + "*".join(factors)
            else:
                if ("+" in cs[1:]) or ("-" in cs[1:]):
                    cs = "(" + cs + ")"
                body = "*".join([cs] + factors)
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += "+" + p if not p.startswith("-") else p
        return out

    def __repr__(self) -> str:
        return "ScalarExpr[%s]" % self


_S_ZERO = ScalarExpr.zero()
_S_ONE = ScalarExpr.one()


def _coerce_scalar(x) -> ScalarExpr:
    if isinstance(x, ScalarExpr):
        return x
    if isinstance(x, (int, Fraction, Cyclo8)):
        return ScalarExpr.from_value(x)
    raise TypeError("cannot coerce %r into a scalar" % (x,))


class DualElement:
    """Element of D_n: a map from generator subsets (bitmasks) to scalars."""

    __slots__ = ("n", "terms", "_key")

    def __init__(self, n: int, terms: dict | None = None):
        if not (0 <= n <= _MAX_GENERATORS):
            raise ValueError("generator count out of range: %d" % n)
        self.n = n
        clean: dict = {}
        if terms:
            for mask, sc in terms.items():
                if mask >> n:
                    raise ValueError("subset %#x outside D_%d" % (mask, n))
                sc = _coerce_scalar(sc)
                if sc:
                    clean[mask] = sc
        self.terms = clean
        self._key = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "DualElement":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "DualElement":
        return cls(n, {0: _S_ONE})

    @classmethod
    def scalar(cls, n: int, x) -> "DualElement":
        return cls(n, {0: _coerce_scalar(x)})

    @classmethod
    def iota(cls, n: int, k: int) -> "DualElement":
        if not 1 <= k <= n:
            raise ValueError("iota_%d does not exist in D_%d" % (k, n))
        return cls(n, {1 << (k - 1): _S_ONE})

    @classmethod
    def monomial(cls, n: int, mask: int, x=1) -> "DualElement":
        return cls(n, {mask: _coerce_scalar(x)})

    # -- structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def body(self) -> ScalarExpr:
        """The coefficient of the empty subset."""
        return self.terms.get(0, _S_ZERO)

    def nil_part(self) -> "DualElement":
        return DualElement(self.n, {m: s for m, s in self.terms.items() if m})

    def is_unit(self) -> bool:
        b = self.body()
        if len(b.terms) != 1:
            return False
        ((se, ve), _), = b.terms.items()
        return ve == 0

    def key(self):
        if self._key is None:
            self._key = (self.n, tuple(sorted((m, s.key()) for m, s in self.terms.items())))
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Cyclo8, ScalarExpr)):
            other = DualElement.scalar(self.n, other)
        if not isinstance(other, DualElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def _check(self, other) -> "DualElement":
        if isinstance(other, (int, Fraction, Cyclo8, ScalarExpr)):
            return DualElement.scalar(self.n, other)
        if not isinstance(other, DualElement):
            raise TypeError("cannot combine DualElement with %r" % (other,))
        if other.n != self.n:
            raise DimensionError("mixing D_%d with D_%d" % (self.n, other.n))
        return other

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "DualElement":
        other = self._check(other)
        out = dict(self.terms)
        for m, s in other.terms.items():
            acc = out.get(m)
            t = s if acc is None else acc + s
            if t:
                out[m] = t
            elif acc is not None:
                del out[m]
        return DualElement(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "DualElement":
        return DualElement(self.n, {m: -s for m, s in self.terms.items()})

    def __sub__(self, other) -> "DualElement":
        return self + (-self._check(other))

    def __rsub__(self, other) -> "DualElement":
        return self._check(other) - self

    def __mul__(self, other) -> "DualElement":
        if isinstance(other, (int, Fraction, Cyclo8, ScalarExpr)):
            sc = _coerce_scalar(other)
            return DualElement(self.n, {m: s * sc for m, s in self.terms.items()})
        if not isinstance(other, DualElement):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError("mixing D_%d with D_%d" % (self.n, other.n))
        out: dict = {}
        for m1, s1 in self.terms.items():
            for m2, s2 in other.terms.items():
                if m1 & m2:
                    continue  # a squared nilpotent dies
                m = m1 | m2
                p = s1 * s2
                acc = out.get(m)
                t = p if acc is None else acc + p
                if t:
                    out[m] = t
                elif acc is not None:
                    del out[m]
        return DualElement(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DualElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = DualElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "DualElement":
        """Inverse via the finite geometric series over the nilpotent part."""
        b_inv = self.body().inverse()  # raises NotInvertibleError if not a unit
        u = self * b_inv - DualElement.one(self.n)
        acc = DualElement.one(self.n)
        p = DualElement.one(self.n)
        for _ in range(self.n):
            p = -(p * u)
            if not p:
                break
            acc = acc + p
        return acc * b_inv

    # -- specializations ----------------------------------------------

    def map_scalars(self, fn) -> "DualElement":
        return DualElement(self.n, {m: fn(s) for m, s in self.terms.items()})

    def at_q_one(self) -> "DualElement":
        return self.map_scalars(lambda s: s.at_q_one())

    def at_v_zero(self) -> "DualElement":
        return self.map_scalars(lambda s: s.at_v_zero())

    def specialize(self, j: "JSignature") -> "DualElement":
        """Apply q^a -> 1 + a*J*v to every scalar coefficient."""
        out = DualElement.zero(self.n)
        for m, s in self.terms.items():
            out = out + DualElement.monomial(self.n, m) * specialize_q(s, j)
        return out

    # -- rendering ----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda mm: (bin(mm).count("1"), mm)):
            sc = str(self.terms[m])
            gens = "*".join("iota%d" % (k + 1) for k in range(self.n) if m >> k & 1)
            if not gens:
                parts.append(sc)
            elif sc == "1":
                parts.append(gens)
            elif sc == "-1":
                parts.append("-" + gens)
            else:
                if ("+" in sc[1:]) or ("-" in sc[1:]):
                    sc = "(" + sc + ")"
                parts.append(sc + "*" + gens)
        out = parts[0]
        for p in parts[1:]:
            out += "+" + p if not p.startswith("-") else p
        return out

    def __repr__(self) -> str:
        return "DualElement[%s | D_%d]" % (self, self.n)


def dual_div(c: DualElement, r: DualElement) -> DualElement | None:
    """Find d with d*r == c, or None if no quotient is found.

    Handles the shapes that occur as relation coefficients: units of D_n,
    single-subset elements, and exact (anti)equality.  Partial by design;
    a None simply means a rewrite rule does not apply.
    """
    if c.n != r.n:
        raise DimensionError("mixing D_%d with D_%d" % (c.n, r.n))
    if not r:
        return None
    if not c:
        return DualElement.zero(c.n)
    try:
        return c * r.inverse()
    except NotInvertibleError:
        pass
    if len(r.terms) == 1:
        (mask, sr), = r.terms.items()
        out: dict = {}
        for m, s in c.terms.items():
            if m & mask != mask:
                return None
            q = s.exact_div(sr)
            if q is None:
                return None
            out[m & ~mask] = q
        d = DualElement(c.n, out)
        if d * r == c:
            return d
        return None
    if c == r:
        return DualElement.one(c.n)
    if c == -r:
        return -DualElement.one(c.n)
    return None


class JSignature:
    """A contraction signature: one slot per level, each 1 or iota_k."""

    __slots__ = ("flags",)

    def __init__(self, flags: Iterable[bool]):
        self.flags = tuple(bool(f) for f in flags)
        if len(self.flags) > _MAX_GENERATORS:
            raise ValueError("too many slots")

    @classmethod
    def parse(cls, text: str) -> "JSignature":
        flags = []
        for tok in text.split(","):
            tok = tok.strip()
            if tok == "1":
                flags.append(False)
            elif tok == "iota":
                flags.append(True)
            else:
                raise ValueError("bad signature token %r (want '1' or 'iota')" % tok)
        return cls(flags)

    @classmethod
    def trivial(cls, n: int) -> "JSignature":
        return cls([False] * n)

    @classmethod
    def all_signatures(cls, N: int) -> Iterator["JSignature"]:
        """All 2^(N-1) signatures for an N-dimensional space, in binary order."""
        n = N - 1
        for bits in range(1 << n):
            yield cls([(bits >> k) & 1 == 1 for k in range(n)])

    @property
    def n(self) -> int:
        return len(self.flags)

    @property
    def N(self) -> int:
        return len(self.flags) + 1

    @property
    def iota_mask(self) -> int:
        m = 0
        for k, f in enumerate(self.flags):
            if f:
                m |= 1 << k
        return m

    def has_iota(self) -> bool:
        return any(self.flags)

    def J(self, mu: int, nu: int) -> DualElement:
        """The group weight J(mu, nu): product of the slots mu..nu-1."""
        if not (1 <= mu <= self.N and 1 <= nu <= self.N):
            raise ValueError("indices out of range")
        if mu >= nu:
            return DualElement.one(self.n)
        mask = 0
        for r in range(mu, nu):
            if self.flags[r - 1]:
                mask |= 1 << (r - 1)
        return DualElement.monomial(self.n, mask)

    def weight(self, k: int, p: int) -> DualElement:
        """The matrix-entry weight: J(k,p) above the diagonal, J(p,k) below."""
        return self.J(k, p) if k < p else self.J(p, k)

    def full_J(self) -> DualElement:
        return self.J(1, self.N)

    def __eq__(self, other) -> bool:
        return isinstance(other, JSignature) and self.flags == other.flags

    def __hash__(self):
        return hash(self.flags)

    def __str__(self) -> str:
        return ",".join("iota" if f else "1" for f in self.flags)

    def __repr__(self) -> str:
        return "JSignature(%s)" % self


def specialize_q(x: ScalarExpr, j: JSignature) -> DualElement:
    """Contract a scalar: substitute q^a -> 1 + a*J*v, J the full slot product.

    With at least one nilpotent slot J^2 = 0, so the substitution is a ring
    homomorphism.  If every slot is 1 the scalar is returned unchanged
    (q stays formal).
    """
    n = j.n
    if not j.has_iota():
        return DualElement.scalar(n, x)
    mask = j.iota_mask
    body: dict = {}
    top: dict = {}
    for (se, ve), coef in x.terms.items():
        e0 = (0, ve)
        acc = body.get(e0)
        s = coef if acc is None else acc + coef
        if s:
            body[e0] = s
        elif acc is not None:
            del body[e0]
        if se:
            e1 = (0, ve + 1)
            add = coef * Fraction(se, 2)
            acc = top.get(e1)
            s = add if acc is None else acc + add
            if s:
                top[e1] = s
            elif acc is not None:
                del top[e1]
    return DualElement(n, {0: ScalarExpr(body), mask: ScalarExpr(top)})


def dual_mul(a: DualElement, b: DualElement) -> DualElement:
    """Product in D_n (operator form of ``a * b``)."""
    return a * b


def dual_inverse(a: DualElement) -> DualElement:
    """Inverse in D_n (operator form of ``a.inverse()``)."""
    return a.inverse()
