"""Exact scalars over Q and F_p, plus univariate and sparse multivariate
polynomials built on them.

Rational scalars are plain ``fractions.Fraction`` values: the stdlib type
already keeps them in lowest terms with a positive denominator, which is
exactly the canonical form the wire format wants.  Prime field scalars are
``Fp`` instances that carry their modulus.  Mixing an Fp with a Fraction,
or two Fp values with different moduli, raises TypeError; plain ints
coerce into either field so that tables and matrices can be written with
integer literals.

A "field" in this package is a small descriptor object (RationalField or
PrimeField) used for construction, parsing, printing and enumeration of
scalars.  It is threaded through every matrix, polynomial and algebra.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple, Union

Scalar = Union[Fraction, "Fp"]


class Fp:
    """An element of the prime field F_p, stored as a reduced residue."""

    __slots__ = ("r", "p")

    def __init__(self, r: int, p: int):
        self.r = r % p
        self.p = p

    def _check(self, other: "Fp") -> None:
        if self.p != other.p:
            raise TypeError(f"cannot mix F_{self.p} and F_{other.p} scalars")

    def __add__(self, other):
        if isinstance(other, Fp):
            self._check(other)
            return Fp(self.r + other.r, self.p)
        if isinstance(other, int):
            return Fp(self.r + other, self.p)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Fp):
            self._check(other)
            return Fp(self.r - other.r, self.p)
        if isinstance(other, int):
            return Fp(self.r - other, self.p)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return Fp(other - self.r, self.p)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Fp):
            self._check(other)
            return Fp(self.r * other.r, self.p)
        if isinstance(other, int):
            return Fp(self.r * other, self.p)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Fp):
            self._check(other)
            return self * other.inverse()
        if isinstance(other, int):
            return self * Fp(other, self.p).inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return Fp(other, self.p) * self.inverse()
        return NotImplemented

    def __neg__(self):
        return Fp(-self.r, self.p)

    def __pow__(self, k: int):
        return Fp(pow(self.r, k, self.p), self.p)

    def inverse(self) -> "Fp":
        if self.r == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(pow(self.r, self.p - 2, self.p), self.p)

    def __bool__(self) -> bool:
        return self.r != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Fp):
            return self.p == other.p and self.r == other.r
        if isinstance(other, int):
            return self.r == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.r, self.p))

    def __repr__(self) -> str:
        return f"Fp({self.r}, {self.p})"

    def __str__(self) -> str:
        return str(self.r)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """Descriptor for Q.  A single shared instance lives in ``QQ``."""

    kind = "Q"
    char = 0

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def of(self, n) -> Fraction:
        if isinstance(n, Fraction):
            return n
        if isinstance(n, int):
            return Fraction(n)
        raise TypeError(f"cannot coerce {n!r} into Q")

    def parse(self, s: str) -> Fraction:
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational scalar: {s!r}") from exc

    def to_str(self, x: Fraction) -> str:
        return str(x)

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """Descriptor for F_p with p prime, p < 2**31."""

    kind = "Fp"

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"modulus must be prime, got {p!r}")
        if p >= 2**31:
            raise ValueError(f"modulus too large: {p}")
        self.p = p
        self.char = p

    @property
    def zero(self) -> Fp:
        return Fp(0, self.p)

    @property
    def one(self) -> Fp:
        return Fp(1, self.p)

    def of(self, n) -> Fp:
        if isinstance(n, Fp):
            if n.p != self.p:
                raise TypeError(f"scalar from F_{n.p} used in F_{self.p}")
            return n
        if isinstance(n, int):
            return Fp(n, self.p)
        raise TypeError(f"cannot coerce {n!r} into F_{self.p}")

    def parse(self, s: str) -> Fp:
        try:
            return Fp(int(s.strip()), self.p)
        except ValueError as exc:
            raise ValueError(f"not an F_{self.p} scalar: {s!r}") from exc

    def to_str(self, x: Fp) -> str:
        return str(x.r)

    def contains(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def elements(self) -> Iterator[Fp]:
        for r in range(self.p):
            yield Fp(r, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


Field = Union[RationalField, PrimeField]

QQ = RationalField()

_GF_CACHE: Dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def field_to_json(field: Field) -> dict:
    if field.kind == "Q":
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}


def field_from_json(obj) -> Field:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"bad field descriptor: {obj!r}")
    if obj["kind"] == "Q":
        return QQ
    if obj["kind"] == "Fp":
        if "p" not in obj or not isinstance(obj["p"], int):
            raise ValueError(f"bad field descriptor: {obj!r}")
        return GF(obj["p"])
    raise ValueError(f"unknown field kind: {obj['kind']!r}")


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial over a fixed field.

    Coefficients are stored ascending (coeffs[i] is the t^i coefficient)
    with no trailing zeros; the zero polynomial has an empty tuple and
    degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence):
        cs = [field.of(c) if isinstance(c, int) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: Field) -> "UniPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "UniPoly":
        return cls(field, (1,))

    @classmethod
    def t(cls, field: Field) -> "UniPoly":
        return cls(field, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _same_field(self, other: "UniPoly") -> None:
        if self.field != other.field:
            raise TypeError("polynomials over different fields")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._same_field(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        self._same_field(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._same_field(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    def scale(self, s) -> "UniPoly":
        s = self.field.of(s) if isinstance(s, int) else s
        return UniPoly(self.field, [c * s for c in self.coeffs])

    def shift(self, k: int) -> "UniPoly":
        """Multiply by t^k."""
        if self.is_zero():
            return self
        return UniPoly(self.field, (self.field.zero,) * k + self.coeffs)

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        self._same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(self.field), self
        inv_lead = self.field.one / other.leading()
        quot = [self.field.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if not top:
                continue
            q = top * inv_lead
            quot[k] = q
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - q * b
        return UniPoly(self.field, quot), UniPoly(self.field, rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.one / self.leading())

    def derivative(self) -> "UniPoly":
        return UniPoly(self.field, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def eval_scalar(self, a):
        a = self.field.of(a) if isinstance(a, int) else a
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({self.field!r}, {list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = self.field.to_str(c)
            if i == 0:
                parts.append(cs)
            else:
                base = "t" if i == 1 else f"t^{i}"
                if cs == "1":
                    parts.append(base)
                elif cs == "-1":
                    parts.append(f"-{base}")
                else:
                    parts.append(f"{cs}*{base}")
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out


# --- gcd machinery --------------------------------------------------------


def _euclid_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def _int_content(v: List[int]) -> int:
    g = 0
    for c in v:
        g = math.gcd(g, c)
    return g


def _int_primitive(v: List[int]) -> List[int]:
    g = _int_content(v)
    if g == 0:
        return v
    if v[-1] < 0:
        g = -g
    return [c // g for c in v]


def _int_degree(v: List[int]) -> int:
    return len(v) - 1


def _int_prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder prem(a, b) = lc(b)^(da-db+1) * a mod b, all integer."""
    da, db = _int_degree(a), _int_degree(b)
    if da < db:
        return list(a)
    lb = b[-1]
    r = list(a)
    for k in range(da - db, -1, -1):
        # r <- lb * r - r[k+db] * t^k * b
        lead = r[k + db]
        r = [c * lb for c in r]
        for i in range(db + 1):
            r[k + i] -= lead * b[i]
        assert r[k + db] == 0
    del r[db:]
    while r and r[-1] == 0:
        r.pop()
    return r


def _int_gcd_subresultant(a: List[int], b: List[int]) -> List[int]:
    """Primitive gcd of nonzero integer polynomials by the subresultant PRS.

    The fraction-free remainder sequence keeps intermediate coefficients
    the size of Sylvester minors instead of letting them explode, and
    every division below is exact.
    """
    if _int_degree(a) < _int_degree(b):
        a, b = b, a
    a, b = _int_primitive(list(a)), _int_primitive(list(b))
    g, h = 1, 1
    while True:
        d = _int_degree(a) - _int_degree(b)
        r = _int_prem(a, b)
        if not r:
            return _int_primitive(b)
        if _int_degree(r) == 0:
            return [1]
        denom = g * h**d
        a, b = b, [c // denom for c in r]
        g = a[-1]
        if d > 0:
            h = g**d // h ** (d - 1) if d > 1 else g


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0.

    Over Q the work happens on denominator-cleared integer polynomials via
    the subresultant PRS; over F_p the plain Euclid loop is already exact
    and cheap.
    """
    if a.field != b.field:
        raise TypeError("gcd of polynomials over different fields")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.field.kind == "Fp":
        return _euclid_gcd(a, b)
    ia = _clear_denominators(a)
    ib = _clear_denominators(b)
    g = _int_gcd_subresultant(ia, ib)
    return UniPoly(a.field, [Fraction(c) for c in g]).monic()


def _clear_denominators(p: UniPoly) -> List[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in p.coeffs]


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() or b.is_zero():
        return UniPoly.zero(a.field)
    g = poly_gcd(a, b)
    return ((a * b).divmod(g)[0]).monic()


def poly_extended_gcd(a: UniPoly, b: UniPoly) -> Tuple[UniPoly, UniPoly, UniPoly]:
    """Return (g, u, v) with u*a + v*b = g, g monic (or zero)."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = UniPoly.one(field), UniPoly.zero(field)
    t0, t1 = UniPoly.zero(field), UniPoly.one(field)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.leading()
    inv = field.one / lead
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def _pth_root(p: UniPoly) -> UniPoly:
    """For f with f' = 0 over F_p, return the p-th root of f.

    Over the prime field the Frobenius fixes every scalar, so f = g(t^p)
    implies f = (g(t))^p with the same coefficients.
    """
    char = p.field.char
    root = [p.field.zero] * (p.degree // char + 1)
    for i, c in enumerate(p.coeffs):
        if c:
            if i % char:
                raise ValueError("polynomial is not a p-th power")
            root[i // char] = c
    return UniPoly(p.field, root)


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of p (p nonzero).

    Over F_p the derivative can vanish on factors whose multiplicity is
    divisible by p; those are peeled off by taking p-th roots, which is
    exact over a prime field.
    """
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return UniPoly.one(p.field)
    dp = p.derivative()
    if dp.is_zero():
        return squarefree_part(_pth_root(p))
    g = poly_gcd(p, dp)
    s = (p.divmod(g)[0]).monic()
    # factors with multiplicity divisible by char survive entirely inside g
    h = g
    d = poly_gcd(h, s)
    while d.degree > 0:
        h = h.divmod(d)[0]
        d = poly_gcd(h, s)
    if h.degree <= 0:
        return s
    return (s * squarefree_part(_pth_root(h))).monic()


def is_squarefree(p: UniPoly) -> bool:
    if p.is_zero():
        return False
    if p.degree == 0:
        return True
    if p.field.kind == "Q":
        return poly_gcd(p, p.derivative()).degree == 0
    dp = p.derivative()
    if dp.is_zero():
        return False
    return poly_gcd(p, dp).degree == 0


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


def _grlex_key(exps: Tuple[int, ...]):
    return (sum(exps), tuple(-e for e in exps))


class MultiPoly:
    """Sparse multivariate polynomial: exponent tuple -> nonzero scalar."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Dict[Tuple[int, ...], Scalar]):
        clean = {}
        for exps, c in terms.items():
            if len(exps) != nvars:
                raise ValueError(f"exponent tuple {exps} has wrong arity (nvars={nvars})")
            c = field.of(c) if isinstance(c, int) else c
            if c:
                clean[tuple(exps)] = c
        self.field = field
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "MultiPoly":
        return cls(field, nvars, {})

    @classmethod
    def const(cls, field: Field, nvars: int, c) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: Field, nvars: int, i: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(field, nvars, {tuple(exps): field.one})

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "MultiPoly") -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise TypeError("multivariate polynomials from different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._same(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            s = c if acc is None else acc + c
            if s:
                terms[e] = s
            elif acc is not None:
                del terms[e]
        return MultiPoly(self.field, self.nvars, terms)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._same(other)
        out: Dict[Tuple[int, ...], Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = out.get(e)
                s = prod if acc is None else acc + prod
                if s:
                    out[e] = s
                elif acc is not None:
                    del out[e]
        return MultiPoly(self.field, self.nvars, out)

    def scale(self, s) -> "MultiPoly":
        s = self.field.of(s) if isinstance(s, int) else s
        return MultiPoly(self.field, self.nvars, {e: c * s for e, c in self.terms.items()})

    def eval(self, point: Sequence) -> Scalar:
        """Evaluate at a point; arity mismatch is an error."""
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        pt = [self.field.of(x) if isinstance(x, int) else x for x in point]
        acc = self.field.zero
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(pt, exps):
                for _ in range(e):
                    term = term * x
            acc = acc + term
        return acc

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, degree: int = None) -> bool:
        if self.is_zero():
            return True
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.field, self.nvars, tuple(self.sorted_terms())))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exps, c in reversed(self.sorted_terms()):
            monom = "*".join(
                f"x{i+1}" if e == 1 else f"x{i+1}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            cs = self.field.to_str(c)
            if not monom:
                parts.append(cs)
            elif cs == "1":
                parts.append(monom)
            elif cs == "-1":
                parts.append(f"-{monom}")
            else:
                parts.append(f"{cs}*{monom}")
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.field!r}, {self.nvars}, {self.terms!r})"


def mv_eval(p: MultiPoly, point: Sequence) -> Scalar:
    return p.eval(point)
