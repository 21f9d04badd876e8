"""Exact dense linear algebra over Q and F_p.

Matrices are immutable lists of rows of scalars tagged with their field;
0x0 matrices are legal and show up as restrictions to the zero subspace.
Subspaces are kept in reduced row echelon form, so equality of subspaces
is equality of representations.

Characteristic polynomials come from a Hessenberg reduction (no division
by integer constants, so small characteristic is safe); over Q the matrix
is first scaled to integer entries so the reduction works on
denominator-free input.  Minimal polynomials are built by spinning Krylov
chains off the standard basis and taking lcms.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .fields import Field, Scalar, UniPoly, poly_lcm, poly_extended_gcd, squarefree_part

Vector = Tuple[Scalar, ...]


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))

def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))

def vec_scale(u: Sequence, s) -> Vector:
    return tuple(a * s for a in u)

def vec_is_zero(u: Sequence) -> bool:
    return not any(u)


class Matrix:
    """Immutable exact matrix over a fixed field."""

    __slots__ = ("field", "m", "n", "rows", "__dict__")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: Optional[int] = None):
        converted = []
        width = ncols
        for row in rows:
            r = tuple(field.of(c) if isinstance(c, int) else c for c in row)
            if width is None:
                width = len(r)
            elif len(r) != width:
                raise ValueError("ragged rows")
            converted.append(r)
        self.field = field
        self.m = len(converted)
        self.n = width if width is not None else 0
        self.rows = tuple(converted)

    @classmethod
    def zeros(cls, field: Field, m: int, n: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: Optional[int] = None) -> "Matrix":
        if not cols:
            return cls(field, [[] for _ in range(nrows or 0)])
        m = len(cols[0])
        return cls(field, [[col[i] for col in cols] for i in range(m)])

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.n)]

    def is_square(self) -> bool:
        return self.m == self.n

    def is_zero(self) -> bool:
        return all(not c for row in self.rows for c in row)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.m) for j in range(i)
        )

    def _same_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise TypeError("matrices over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("shape mismatch")
        return Matrix(self.field, [vec_add(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("shape mismatch")
        return Matrix(self.field, [vec_sub(a, b) for a, b in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [vec_scale(r, -self.field.one) for r in self.rows])

    def scale(self, s) -> "Matrix":
        s = self.field.of(s) if isinstance(s, int) else s
        return Matrix(self.field, [vec_scale(r, s) for r in self.rows])

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.n != other.m:
            raise ValueError("shape mismatch in product")
        zero = self.field.zero
        bt = other.rows
        out = []
        for row in self.rows:
            new = [zero] * other.n
            for k, a in enumerate(row):
                if not a:
                    continue
                brow = bt[k]
                for j, b in enumerate(brow):
                    if b:
                        new[j] = new[j] + a * b
            out.append(new)
        return Matrix(self.field, out)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        acc = Matrix.identity(self.field, self.n)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base if k > 1 else base
            k >>= 1
        return acc

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.n:
            raise ValueError("vector length mismatch")
        zero = self.field.zero
        out = []
        for row in self.rows:
            acc = zero
            for a, x in zip(row, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.column(j) for j in range(self.n)], ncols=self.m)

    def trace(self) -> Scalar:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = self.field.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.n == other.n
        )

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.rows))

    def __repr__(self) -> str:
        body = "; ".join("[" + ", ".join(self.field.to_str(c) for c in row) + "]" for row in self.rows)
        return f"Matrix({self.m}x{self.n}: {body})"

    # -- echelon machinery ------------------------------------------------

    @cached_property
    def _rref(self) -> Tuple[Tuple[Vector, ...], Tuple[int, ...]]:
        rows = [list(r) for r in self.rows]
        pivots: List[int] = []
        r = 0
        for c in range(self.n):
            pivot_row = None
            for i in range(r, len(rows)):
                if rows[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            inv = self.field.one / rows[r][c]
            if inv != self.field.one:
                rows[r] = [x * inv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        return tuple(tuple(row) for row in rows[:r]), tuple(pivots)

    def rref(self) -> Tuple[Tuple[Vector, ...], Tuple[int, ...]]:
        return self._rref

    def rank(self) -> int:
        return len(self._rref[1])

    def kernel(self) -> "Subspace":
        rows, pivots = self._rref
        free = [c for c in range(self.n) if c not in set(pivots)]
        zero, one = self.field.zero, self.field.one
        basis = []
        for f in free:
            v = [zero] * self.n
            v[f] = one
            for r, p in enumerate(pivots):
                v[p] = -rows[r][f]
            basis.append(tuple(v))
        return Subspace.from_vectors(self.field, self.n, basis)

    def image(self) -> "Subspace":
        return Subspace.from_vectors(self.field, self.m, self.columns())

    def solve(self, b: Sequence) -> Optional[Vector]:
        """One solution of self * x = b (free coordinates zero), or None."""
        if len(b) != self.m:
            raise ValueError("rhs length mismatch")
        aug = Matrix(
            self.field,
            [tuple(row) + (bb,) for row, bb in zip(self.rows, b)],
            ncols=self.n + 1,
        )
        rows, pivots = aug.rref()
        if self.n in pivots:
            return None
        zero = self.field.zero
        x = [zero] * self.n
        for r, p in enumerate(pivots):
            x[p] = rows[r][self.n]
        return tuple(x)

    # -- characteristic and minimal polynomials ---------------------------

    def char_poly(self) -> UniPoly:
        """Monic characteristic polynomial det(t*I - self)."""
        if not self.is_square():
            raise ValueError("char poly of a non-square matrix")
        n = self.n
        field = self.field
        if n == 0:
            return UniPoly.one(field)
        if field.kind == "Q":
            den = 1
            for row in self.rows:
                for c in row:
                    den = den * c.denominator // gcd(den, c.denominator)
            if den != 1:
                scaled = self.scale(Fraction(den))
                coeffs = scaled._charpoly_hessenberg()
                d = Fraction(den)
                return UniPoly(field, [coeffs[i] / d ** (n - i) for i in range(n + 1)])
        return UniPoly(field, self._charpoly_hessenberg())

    def _charpoly_hessenberg(self) -> List[Scalar]:
        n = self.n
        field = self.field
        h = [list(row) for row in self.rows]
        # similarity reduction to upper Hessenberg form
        for c in range(n - 2):
            pivot_row = None
            for r in range(c + 1, n):
                if h[r][c]:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            if pivot_row != c + 1:
                h[c + 1], h[pivot_row] = h[pivot_row], h[c + 1]
                for row in h:
                    row[c + 1], row[pivot_row] = row[pivot_row], row[c + 1]
            piv = h[c + 1][c]
            for r in range(c + 2, n):
                if h[r][c]:
                    f = h[r][c] / piv
                    hr, hc1 = h[r], h[c + 1]
                    for j in range(n):
                        hr[j] = hr[j] - f * hc1[j]
                    for row in h:
                        row[c + 1] = row[c + 1] + f * row[r]
        # char polys of leading principal minors of the Hessenberg form
        one = UniPoly.one(field)
        t = UniPoly.t(field)
        polys = [one]
        for m in range(1, n + 1):
            p = (t - UniPoly(field, [h[m - 1][m - 1]])) * polys[m - 1]
            prod = field.one
            for i in range(1, m):
                prod = prod * h[m - i][m - i - 1]
                coeff = h[m - 1 - i][m - 1]
                if coeff and prod:
                    p = p - polys[m - 1 - i].scale(coeff * prod)
            polys.append(p)
        coeffs = list(polys[n].coeffs)
        coeffs += [field.zero] * (n + 1 - len(coeffs))
        return coeffs

    def min_poly(self) -> UniPoly:
        """Monic minimal polynomial via Krylov chains off the standard basis."""
        if not self.is_square():
            raise ValueError("min poly of a non-square matrix")
        field = self.field
        n = self.n
        acc = UniPoly.one(field)
        zero, one = field.zero, field.one
        for s in range(n):
            if acc.degree == n:
                break
            v = tuple(one if i == s else zero for i in range(n))
            chain = [v]
            w = self.apply(v)
            while True:
                sol = Matrix.from_columns(field, chain, n).solve(w)
                if sol is not None:
                    local = UniPoly(field, [-c for c in sol] + [one])
                    break
                chain.append(w)
                w = self.apply(w)
            acc = poly_lcm(acc, local)
        return acc if not acc.is_zero() else UniPoly.one(field)

    # -- Jordan-Chevalley --------------------------------------------------

    def eval_poly(self, p: UniPoly) -> "Matrix":
        """p(self) by Horner."""
        if not self.is_square():
            raise ValueError("polynomial of a non-square matrix")
        n = self.n
        acc = Matrix.zeros(self.field, n, n)
        for c in reversed(p.coeffs):
            acc = acc * self
            if c:
                acc = acc + Matrix.identity(self.field, n).scale(c)
        return acc

    def jordan_chevalley(self) -> Tuple["Matrix", "Matrix"]:
        """Split self = S + N, S semisimple, N nilpotent, both in K[self].

        Newton lifting: with g the squarefree part of the characteristic
        polynomial and u a Bezout inverse of g' modulo g, the map
        x -> x - g(x) u(x) squares the g-adic accuracy each pass, so
        ceil(log2(n)) + 1 passes reach g(S) = 0 exactly.
        """
        if not self.is_square():
            raise ValueError("decomposition of a non-square matrix")
        n = self.n
        if n == 0:
            return self, self
        chi = self.char_poly()
        g = squarefree_part(chi)
        if g.degree == chi.degree:
            s, nil = self, Matrix.zeros(self.field, n, n)
        else:
            gd = g.derivative()
            bez, u, _ = poly_extended_gcd(gd, g)
            if bez.degree != 0:
                raise ArithmeticError("squarefree part not separable")
            inv = self.field.one / bez.coeffs[0]
            u = u.scale(inv)
            iters = 1
            while (1 << iters) < n:
                iters += 1
            x = self
            for _ in range(iters + 1):
                gx = x.eval_poly(g)
                if gx.is_zero():
                    break
                x = x - gx * x.eval_poly(u)
            s, nil = x, self - x
        assert (s + nil) == self
        assert (s * nil) == (nil * s)
        assert (nil ** n).is_zero()
        assert squarefree_part(s.min_poly()) == s.min_poly() or s.min_poly().degree == 0
        return s, nil


def diagonalize_quadratic(gram: Matrix) -> Tuple[Scalar, ...]:
    """Diagonal of a congruent diagonal form of a symmetric matrix over Q.

    Symmetric Gaussian elimination; when no diagonal pivot is available a
    row+column addition manufactures one (char 0, so 2 is invertible).
    The multiset of signs is Sylvester's invariant; zeros count corank.
    """
    if gram.field.kind != "Q":
        raise ValueError("quadratic diagonalization implemented over Q only")
    if not gram.is_symmetric():
        raise ValueError("matrix is not symmetric")
    n = gram.n
    a = [list(row) for row in gram.rows]
    diag = []
    for k in range(n):
        if not a[k][k]:
            swap = next((j for j in range(k + 1, n) if a[j][j]), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                off = next((j for j in range(k + 1, n) if a[k][j]), None)
                if off is None:
                    diag.append(gram.field.zero)
                    continue
                for j in range(n):
                    a[k][j] = a[k][j] + a[off][j]
                for i in range(n):
                    a[i][k] = a[i][k] + a[i][off]
        piv = a[k][k]
        for r in range(k + 1, n):
            if a[r][k]:
                f = a[r][k] / piv
                for j in range(n):
                    a[r][j] = a[r][j] - f * a[k][j]
                for i in range(n):
                    a[i][r] = a[i][r] - f * a[i][k]
        diag.append(a[k][k])
    return tuple(diag)


class Subspace:
    """Subspace of K^n held as canonical reduced-row-echelon basis rows."""

    __slots__ = ("field", "ambient", "rows", "pivots")

    def __init__(self, field: Field, ambient: int, rows: Tuple[Vector, ...], pivots: Tuple[int, ...]):
        self.field = field
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, field: Field, ambient: int, vectors: Sequence[Sequence]) -> "Subspace":
        vecs = [tuple(field.of(c) if isinstance(c, int) else c for c in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        if not vecs:
            return cls(field, ambient, (), ())
        rows, pivots = Matrix(field, vecs).rref()
        return cls(field, ambient, rows, pivots)

    @classmethod
    def zero_space(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full_space(cls, field: Field, ambient: int) -> "Subspace":
        eye = Matrix.identity(field, ambient)
        return cls(field, ambient, eye.rows, tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def basis(self) -> Tuple[Vector, ...]:
        return self.rows

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of v modulo this subspace (pivot coordinates cleared)."""
        w = list(self.field.of(c) if isinstance(c, int) else c for c in v)
        if len(w) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        for row, p in zip(self.rows, self.pivots):
            f = w[p]
            if f:
                for i in range(self.ambient):
                    if row[i]:
                        w[i] = w[i] - f * row[i]
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        return vec_is_zero(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coords_of(self, v: Sequence) -> Optional[Vector]:
        """Coordinates of v in the echelon basis, or None if outside."""
        if not self.contains(v):
            return None
        vv = tuple(self.field.of(c) if isinstance(c, int) else c for c in v)
        return tuple(vv[p] for p in self.pivots)

    def sum_with(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        return Subspace.from_vectors(self.field, self.ambient, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: echelonize [A|A; B|0]; rows with zero left half give
        right halves spanning the intersection."""
        self._compat(other)
        n = self.ambient
        zero = self.field.zero
        block = [list(r) + list(r) for r in self.rows]
        block += [list(r) + [zero] * n for r in other.rows]
        if not block:
            return Subspace.zero_space(self.field, n)
        rows, _ = Matrix(self.field, block).rref()
        inter = [row[n:] for row in rows if vec_is_zero(row[:n])]
        return Subspace.from_vectors(self.field, n, inter)

    def complement_indices(self) -> Tuple[int, ...]:
        """Ambient coordinates not used as pivots: canonical coset labels."""
        taken = set(self.pivots)
        return tuple(i for i in range(self.ambient) if i not in taken)

    def _compat(self, other: "Subspace") -> None:
        if self.field != other.field or self.ambient != other.ambient:
            raise TypeError("subspaces of different ambient spaces")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of K^{self.ambient})"


def restrict_to_invariant(mat: Matrix, space: Subspace) -> Matrix:
    """Matrix of mat's action on an invariant subspace, in its echelon basis."""
    cols = []
    for v in space.rows:
        w = mat.apply(v)
        coords = space.coords_of(w)
        if coords is None:
            raise ValueError("subspace is not invariant under the matrix")
        cols.append(coords)
    return Matrix.from_columns(space.field, cols, space.dim)
