"""Exact truncated formal power series in one and two commuting variables.

Coefficients are ``fractions.Fraction`` and every operation is exact: a
result never contains a denominator that the inputs did not force.  Binary
operations truncate to the smaller operand order (componentwise for two
variables), so the order of a value always states how far its coefficients
are meaningful.  Higher coefficients of a truncation are *unknown*, not
zero; for that reason series can be truncated but never padded.

Values are immutable and hashable and may be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "Series1",
    "Series2",
    "ZeroConstantTerm",
    "NotInvertible",
    "NonzeroConstantSubstitution",
    "as_fraction",
]


class ZeroConstantTerm(ArithmeticError):
    """Reciprocal of a series whose constant term is zero."""


class NotInvertible(ArithmeticError):
    """Compositional inversion needs f(0) = 0 and f'(0) != 0."""


class NonzeroConstantSubstitution(ValueError):
    """A substituted series must vanish at the origin."""


def as_fraction(x) -> Fraction:
    """Coerce ``x`` to an exact rational; floats are rejected, never rounded."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("float coefficients are not allowed; pass Fraction or int")
    return Fraction(x)


class Series1:
    """Truncated power series ``c[0] + c[1] t + ... + c[order] t^order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(as_fraction(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least its constant term")

    @classmethod
    def constant(cls, value, order):
        return cls((as_fraction(value),) + (Fraction(0),) * order)

    @classmethod
    def zero(cls, order):
        return cls.constant(0, order)

    @classmethod
    def one(cls, order):
        return cls.constant(1, order)

    @classmethod
    def var(cls, order):
        """The identity series t, truncated at ``order`` (order >= 1)."""
        if order < 1:
            raise ValueError("the identity series needs order >= 1")
        return cls((Fraction(0), Fraction(1)) + (Fraction(0),) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Series1({list(self.coeffs)!r})"

    def truncate(self, order: int) -> "Series1":
        """Drop coefficients above ``order``; refuses to invent new ones."""
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series1(self.coeffs[: order + 1])

    def __add__(self, other):
        if isinstance(other, Series1):
            n = min(self.order, other.order)
            return Series1(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)))
        c = as_fraction(other)
        return Series1((self.coeffs[0] + c,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return Series1(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Series1) else -as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series1):
            c = as_fraction(other)
            return Series1(tuple(c * v for v in self.coeffs))
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            out.append(sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)))
        return Series1(out)

    __rmul__ = __mul__

    def shift_up(self) -> "Series1":
        """Multiply by t (the order grows by one: no information is lost)."""
        return Series1((Fraction(0),) + self.coeffs)

    def shift_down(self) -> "Series1":
        """Divide by t; the constant term must vanish."""
        if self.coeffs[0] != 0:
            raise ValueError("cannot divide by t: nonzero constant term")
        if self.order < 1:
            raise ValueError("cannot divide the zero-order series by t")
        return Series1(self.coeffs[1:])

    def reciprocal(self) -> "Series1":
        """Series g with self * g = 1 up to the order of self."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
        inv = Fraction(1) / c0
        out = [inv]
        for k in range(1, self.order + 1):
            acc = sum((self.coeffs[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
            out.append(-inv * acc)
        return Series1(out)

    def compose(self, g: "Series1") -> "Series1":
        """self(g(t)); the inner series must vanish at 0."""
        if g.coeffs[0] != 0:
            raise NonzeroConstantSubstitution("inner series must have zero constant term")
        n = min(self.order, g.order)
        g = g.truncate(n)
        acc = Series1.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            acc = acc * g + self.coeffs[k]
        return acc

    def revert(self) -> "Series1":
        """Compositional inverse: g with self(g(t)) = t up to the order.

        Computed by the contraction x -> (t - tail(x)) / f'(0), where tail
        collects the terms of degree >= 2; each pass gains one exact order.
        """
        if self.order < 1 or self.coeffs[0] != 0 or self.coeffs[1] == 0:
            raise NotInvertible("reversion needs f(0) = 0 and f'(0) != 0")
        n = self.order
        inv1 = Fraction(1) / self.coeffs[1]
        tail = Series1((Fraction(0), Fraction(0)) + self.coeffs[2:])
        t = Series1.var(n)
        g = t * inv1
        for _ in range(n - 1):
            g = (t - tail.compose(g)) * inv1
        return g


class Series2:
    """Truncated series ``sum c[m][n] t^m s^n`` on the box (left_order, right_order)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(as_fraction(v) for v in row) for row in rows)
        if not self.rows or not self.rows[0]:
            raise ValueError("a two-variable series needs at least its constant term")
        width = len(self.rows[0])
        if any(len(row) != width for row in self.rows):
            raise ValueError("coefficient rows must have equal length")

    @classmethod
    def constant(cls, value, left_order, right_order):
        rows = [[as_fraction(value)] + [Fraction(0)] * right_order]
        rows += [[Fraction(0)] * (right_order + 1) for _ in range(left_order)]
        return cls(rows)

    @classmethod
    def zero(cls, left_order, right_order):
        return cls.constant(0, left_order, right_order)

    @classmethod
    def one(cls, left_order, right_order):
        return cls.constant(1, left_order, right_order)

    @classmethod
    def from_left(cls, f: Series1, right_order: int) -> "Series2":
        """Embed a series in t as a two-variable series constant in s."""
        rows = [[c] + [Fraction(0)] * right_order for c in f.coeffs]
        return cls(rows)

    @classmethod
    def from_right(cls, g: Series1, left_order: int) -> "Series2":
        """Embed a series in s as a two-variable series constant in t."""
        rows = [list(g.coeffs)]
        rows += [[Fraction(0)] * (g.order + 1) for _ in range(left_order)]
        return cls(rows)

    @property
    def left_order(self) -> int:
        return len(self.rows) - 1

    @property
    def right_order(self) -> int:
        return len(self.rows[0]) - 1

    @property
    def box(self):
        return (self.left_order, self.right_order)

    def __getitem__(self, mn):
        m, n = mn
        return self.rows[m][n]

    def __eq__(self, other):
        if not isinstance(other, Series2):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Series2({[list(r) for r in self.rows]!r})"

    def truncate(self, left_order: int, right_order: int) -> "Series2":
        if left_order > self.left_order or right_order > self.right_order:
            raise ValueError(f"cannot extend box {self.box} to {(left_order, right_order)}")
        return Series2(tuple(row[: right_order + 1] for row in self.rows[: left_order + 1]))

    def _min_box(self, other):
        return (min(self.left_order, other.left_order), min(self.right_order, other.right_order))

    def __add__(self, other):
        if isinstance(other, Series2):
            m, n = self._min_box(other)
            return Series2(
                tuple(
                    tuple(self.rows[i][j] + other.rows[i][j] for j in range(n + 1))
                    for i in range(m + 1)
                )
            )
        c = as_fraction(other)
        rows = [list(r) for r in self.rows]
        rows[0][0] += c
        return Series2(rows)

    __radd__ = __add__

    def __neg__(self):
        return Series2(tuple(tuple(-v for v in row) for row in self.rows))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Series2) else -as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series2):
            c = as_fraction(other)
            return Series2(tuple(tuple(c * v for v in row) for row in self.rows))
        m, n = self._min_box(other)
        a, b = self.rows, other.rows
        out = []
        for p in range(m + 1):
            row = []
            for q in range(n + 1):
                acc = Fraction(0)
                for i in range(p + 1):
                    ai = a[i]
                    bi = b[p - i]
                    for j in range(q + 1):
                        if ai[j]:
                            acc += ai[j] * bi[q - j]
                row.append(acc)
            out.append(row)
        return Series2(out)

    __rmul__ = __mul__

    def reciprocal(self) -> "Series2":
        """Series g with self * g = 1 on the box of self."""
        c0 = self.rows[0][0]
        if c0 == 0:
            raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
        m, n = self.left_order, self.right_order
        inv = Fraction(1) / c0
        out = [[Fraction(0)] * (n + 1) for _ in range(m + 1)]
        out[0][0] = inv
        for p in range(m + 1):
            for q in range(n + 1):
                if p == 0 and q == 0:
                    continue
                acc = Fraction(0)
                for i in range(p + 1):
                    ai = self.rows[i]
                    for j in range(q + 1):
                        if (i or j) and ai[j]:
                            acc += ai[j] * out[p - i][q - j]
                out[p][q] = -inv * acc
        return Series2(out)

    def substitute(self, f: Series1, g: Series1) -> "Series2":
        """self(f(z), g(w)) for inner series vanishing at 0.

        The output box is the componentwise minimum of self's box and the
        inner orders: beyond that the substituted coefficients would depend
        on unknown data.
        """
        if f.coeffs[0] != 0 or g.coeffs[0] != 0:
            raise NonzeroConstantSubstitution("substituted series must vanish at 0")
        m = min(self.left_order, f.order)
        n = min(self.right_order, g.order)
        fpow = _powers(f.truncate(m) if f.order > m else f, m)
        gpow = _powers(g.truncate(n) if g.order > n else g, n)
        out = []
        for i in range(m + 1):
            row = []
            for j in range(n + 1):
                acc = Fraction(0)
                for p in range(i + 1):
                    fp = fpow[p].coeffs[i]
                    if not fp:
                        continue
                    for q in range(j + 1):
                        c = self.rows[p][q]
                        if c:
                            acc += c * fp * gpow[q].coeffs[j]
                row.append(acc)
            out.append(row)
        return Series2(out)


def _powers(f: Series1, count: int):
    """[1, f, f^2, ..., f^count] truncated to f's order."""
    out = [Series1.one(f.order)]
    for _ in range(count):
        out.append(out[-1] * f)
    return out
