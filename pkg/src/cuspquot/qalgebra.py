"""Exact coefficient arithmetic for the counting engine.

Everything here is integer-exact: Laurent polynomials in q over Z,
rational functions in q, polynomials and rational series in t whose
coefficients are Laurent polynomials, and cyclotomic integers for
evaluating at roots of unity.  No floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Union

__all__ = [
    "LaurentPolyQ",
    "RationalQ",
    "TPoly",
    "TSeries",
    "CyclotomicInt",
    "RootOfUnity",
    "q_pochhammer",
    "t_pochhammer",
    "q_binomial",
    "q_binomial_inv",
    "gl_order",
    "q_pascal_matrix",
    "q_pascal_inverse",
    "cyclotomic_poly",
    "evaluate_q",
    "tpoly_to_triples",
    "tpoly_from_triples",
    "series_to_json",
    "series_from_json",
]

QValue = Union[int, Fraction]


class LaurentPolyQ:
    """Laurent polynomial in q with integer coefficients, immutable."""

    __slots__ = ("_terms", "_key")

    def __init__(self, terms: Optional[dict[int, int]] = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self._terms = clean
        self._key = tuple(sorted(clean.items()))

    @classmethod
    def zero(cls) -> "LaurentPolyQ":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolyQ":
        return cls({0: 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPolyQ":
        return cls({0: c})

    @classmethod
    def q_power(cls, e: int, c: int = 1) -> "LaurentPolyQ":
        return cls({e: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self._terms)

    def is_unit(self) -> bool:
        """True when the polynomial is a single term +-q^k."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def unit_inverse(self) -> "LaurentPolyQ":
        if not self.is_unit():
            raise ValueError(f"not a unit: {self}")
        ((e, c),) = self._terms.items()
        return LaurentPolyQ({-e: c})

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPolyQ.const(other)
        if not isinstance(other, LaurentPolyQ):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __add__(self, other: "LaurentPolyQ | int") -> "LaurentPolyQ":
        if isinstance(other, int):
            other = LaurentPolyQ.const(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolyQ(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolyQ":
        return LaurentPolyQ({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPolyQ | int") -> "LaurentPolyQ":
        if isinstance(other, int):
            other = LaurentPolyQ.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPolyQ":
        return LaurentPolyQ.const(other) - self

    def __mul__(self, other: "LaurentPolyQ | int") -> "LaurentPolyQ":
        if isinstance(other, int):
            other = LaurentPolyQ.const(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolyQ":
        if n < 0:
            raise ValueError("negative power; use unit_inverse for units")
        out = LaurentPolyQ.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def substitute_q(self, k: int) -> "LaurentPolyQ":
        """q -> q^k for a nonzero integer k (k may be negative)."""
        if k == 0:
            raise ValueError("q -> q^0 is not a substitution")
        return LaurentPolyQ({e * k: c for e, c in self._terms.items()})

    def evaluate(self, value: QValue) -> Fraction:
        v = Fraction(value)
        if v == 0 and self._terms and self.min_exp() < 0:
            raise ZeroDivisionError("negative exponent at q=0")
        total = Fraction(0)
        for e, c in self._terms.items():
            total += c * v ** e
        return total

    def at_root_of_unity(self, r: int) -> "CyclotomicInt":
        out = CyclotomicInt.zero(r)
        for e, c in self._terms.items():
            out = out + CyclotomicInt.from_q_exponent(r, e) * c
        return out

    def divide_exact(self, other: "LaurentPolyQ") -> "LaurentPolyQ":
        q = self.try_divide(other)
        if q is None:
            raise ValueError(f"({self}) is not divisible by ({other})")
        return q

    def try_divide(self, other: "LaurentPolyQ") -> Optional["LaurentPolyQ"]:
        """Exact quotient in Z[q, q^-1], or None if the division fails."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPolyQ.zero()
        shift = self.min_exp() - other.min_exp()
        f = {e - self.min_exp(): Fraction(c) for e, c in self._terms.items()}
        g = {e - other.min_exp(): Fraction(c) for e, c in other._terms.items()}
        gdeg = max(g)
        glead = g[gdeg]
        quot: dict[int, Fraction] = {}
        rem = dict(f)
        while rem:
            rdeg = max(rem)
            if rdeg < gdeg:
                return None
            c = rem[rdeg] / glead
            quot[rdeg - gdeg] = c
            for ge, gc in g.items():
                e = ge + rdeg - gdeg
                nc = rem.get(e, Fraction(0)) - c * gc
                if nc:
                    rem[e] = nc
                else:
                    rem.pop(e, None)
        out: dict[int, int] = {}
        for e, c in quot.items():
            if c.denominator != 1:
                return None
            if c:
                out[e + shift] = int(c)
        return LaurentPolyQ(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = first_body if first_sign == "+" else f"-{first_body}"
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPolyQ({self._terms!r})"


ONE = LaurentPolyQ.one()
ZERO = LaurentPolyQ.zero()


class RationalQ:
    """Quotient of two Laurent polynomials in q; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolyQ, den: LaurentPolyQ = ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_int(cls, c: int) -> "RationalQ":
        return cls(LaurentPolyQ.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RationalQ.from_int(other)
        elif isinstance(other, LaurentPolyQ):
            other = RationalQ(other)
        if not isinstance(other, RationalQ):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        raise TypeError("RationalQ is not hashable (no canonical form)")

    def _coerce(self, other) -> "RationalQ":
        if isinstance(other, int):
            return RationalQ.from_int(other)
        if isinstance(other, LaurentPolyQ):
            return RationalQ(other)
        if isinstance(other, RationalQ):
            return other
        raise TypeError(f"cannot combine RationalQ with {type(other)!r}")

    def __add__(self, other) -> "RationalQ":
        o = self._coerce(other)
        return RationalQ(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalQ":
        return RationalQ(-self.num, self.den)

    def __sub__(self, other) -> "RationalQ":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalQ":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalQ":
        o = self._coerce(other)
        return RationalQ(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalQ":
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero RationalQ")
        return RationalQ(self.num * o.den, self.den * o.num)

    def evaluate(self, value: QValue) -> Fraction:
        d = self.den.evaluate(value)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={value}")
        return self.num.evaluate(value) / d

    def try_to_laurent(self) -> Optional[LaurentPolyQ]:
        return self.num.try_divide(self.den)

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RationalQ({self.num!r}, {self.den!r})"


class TPoly:
    """Polynomial in t with LaurentPolyQ coefficients, immutable."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[LaurentPolyQ] = ()):
        cs = [c if isinstance(c, LaurentPolyQ) else LaurentPolyQ.const(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "TPoly":
        return cls()

    @classmethod
    def one(cls) -> "TPoly":
        return cls([ONE])

    @classmethod
    def t_power(cls, n: int, coeff: LaurentPolyQ = ONE) -> "TPoly":
        if n < 0:
            raise ValueError("TPoly exponents are nonnegative")
        return cls([ZERO] * n + [coeff])

    @property
    def coeffs(self) -> tuple[LaurentPolyQ, ...]:
        return self._coeffs

    def degree(self) -> int:
        """Degree in t; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def coeff(self, n: int) -> LaurentPolyQ:
        if 0 <= n < len(self._coeffs):
            return self._coeffs[n]
        return ZERO

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = TPoly([LaurentPolyQ.const(other)])
        if not isinstance(other, TPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: "TPoly") -> "TPoly":
        n = max(len(self._coeffs), len(other._coeffs))
        return TPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> "TPoly":
        return TPoly([-c for c in self._coeffs])

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def __mul__(self, other: "TPoly | LaurentPolyQ | int") -> "TPoly":
        if isinstance(other, (LaurentPolyQ, int)):
            return TPoly([c * other for c in self._coeffs])
        out = [ZERO] * (len(self._coeffs) + len(other._coeffs))
        for i, a in enumerate(self._coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other._coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return TPoly(out)

    __rmul__ = __mul__

    def shift_t(self, n: int) -> "TPoly":
        """Multiply by t^n; n may be negative when the low coefficients vanish."""
        if n >= 0:
            return TPoly([ZERO] * n + list(self._coeffs))
        if any(not c.is_zero() for c in self._coeffs[: -n]):
            raise ValueError(f"not divisible by t^{-n}")
        return TPoly(self._coeffs[-n:])

    def substitute_t_scale(self, a: int) -> "TPoly":
        """t -> q^a * t."""
        return TPoly([c * LaurentPolyQ.q_power(a * m) for m, c in enumerate(self._coeffs)])

    def substitute_q(self, k: int) -> "TPoly":
        return TPoly([c.substitute_q(k) for c in self._coeffs])

    def substitute_t_square(self) -> "TPoly":
        """t -> t^2."""
        out = [ZERO] * (2 * len(self._coeffs))
        for m, c in enumerate(self._coeffs):
            out[2 * m] = c
        return TPoly(out)

    def exact_div(self, other: "TPoly") -> "TPoly":
        """Exact quotient; raises ValueError when the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero TPoly")
        if self.is_zero():
            return TPoly.zero()
        # Strip common factors of t first so other has a nonzero constant term.
        low = next(i for i, c in enumerate(other._coeffs) if not c.is_zero())
        f = self.shift_t(-low) if low else self
        g = other.shift_t(-low) if low else other
        g0 = g.coeff(0)
        deg = f.degree() - g.degree()
        if deg < 0:
            raise ValueError("quotient degree would be negative")
        out: list[LaurentPolyQ] = []
        for k in range(deg + 1):
            acc = f.coeff(k)
            for j in range(1, min(k, g.degree()) + 1):
                acc = acc - g.coeff(j) * out[k - j]
            c = acc.try_divide(g0)
            if c is None:
                raise ValueError("division not exact (coefficient step failed)")
            out.append(c)
        quot = TPoly(out)
        if quot * g != f:
            raise ValueError("division not exact (remainder)")
        return quot

    def evaluate_t(self, t_value: QValue, q_value: QValue) -> Fraction:
        tv = Fraction(t_value)
        total = Fraction(0)
        for m, c in enumerate(self._coeffs):
            total += c.evaluate(q_value) * tv ** m
        return total

    def evaluate_t_symbolic(self, t_value: int) -> LaurentPolyQ:
        """Plug an integer for t, keeping q symbolic."""
        total = ZERO
        for m, c in enumerate(self._coeffs):
            total = total + c * (t_value ** m)
        return total

    def at_root_of_unity(self, r: int) -> list["CyclotomicInt"]:
        return [c.at_root_of_unity(r) for c in self._coeffs]

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for m, c in enumerate(self._coeffs):
            if c.is_zero():
                continue
            if m == 0:
                parts.append(f"{c}")
            else:
                tm = "t" if m == 1 else f"t^{m}"
                parts.append(f"({c})*{tm}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TPoly({list(self._coeffs)!r})"


class TSeries:
    """Rational series in t: num/den with TPoly entries.

    The denominator must have a unit constant term (+-q^k) so that the
    series expansion stays inside Z[q, q^-1].
    """

    __slots__ = ("num", "den")

    def __init__(self, num: TPoly, den: TPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not den.coeff(0).is_unit():
            raise ValueError("series denominator needs a unit constant term")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, num: TPoly) -> "TSeries":
        return cls(num, TPoly.one())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("TSeries is not hashable (no canonical form)")

    def __add__(self, other: "TSeries") -> "TSeries":
        return TSeries(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "TSeries | TPoly | LaurentPolyQ | int") -> "TSeries":
        if isinstance(other, TSeries):
            return TSeries(self.num * other.num, self.den * other.den)
        return TSeries(self.num * other, self.den)

    __rmul__ = __mul__

    def substitute(self, t_scale: int = 0, q_power: int = 1) -> "TSeries":
        """Apply t -> q^t_scale * t and then q -> q^q_power."""
        num, den = self.num, self.den
        if t_scale:
            num = num.substitute_t_scale(t_scale)
            den = den.substitute_t_scale(t_scale)
        if q_power != 1:
            num = num.substitute_q(q_power)
            den = den.substitute_q(q_power)
        return TSeries(num, den)

    def expand(self, order: int) -> list[LaurentPolyQ]:
        """Coefficients of t^0 .. t^order of the series expansion."""
        inv0 = self.den.coeff(0).unit_inverse()
        out: list[LaurentPolyQ] = []
        for k in range(order + 1):
            acc = self.num.coeff(k)
            for j in range(1, min(k, self.den.degree()) + 1):
                acc = acc - self.den.coeff(j) * out[k - j]
            out.append(acc * inv0)
        return out

    def to_poly_exact(self) -> TPoly:
        """The numerator divided exactly by the denominator."""
        return self.num.exact_div(self.den)

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"TSeries({self.num!r}, {self.den!r})"


# ---------------------------------------------------------------------------
# q-combinatorics


def q_pochhammer(n: int, exp_sign: int = 1) -> LaurentPolyQ:
    """(q;q)_n for exp_sign=+1, (q^-1;q^-1)_n for exp_sign=-1."""
    if n < 0:
        raise ValueError("pochhammer length must be >= 0")
    if exp_sign not in (1, -1):
        raise ValueError("exp_sign must be +-1")
    out = ONE
    for i in range(1, n + 1):
        out = out * (ONE - LaurentPolyQ.q_power(exp_sign * i))
    return out


def t_pochhammer(d: int) -> TPoly:
    """(t;q)_d = prod_{i=0}^{d-1} (1 - q^i t) as a TPoly."""
    if d < 0:
        raise ValueError("pochhammer length must be >= 0")
    out = TPoly.one()
    for i in range(d):
        out = out * TPoly([ONE, -LaurentPolyQ.q_power(i)])
    return out


def q_binomial(d: int, r: int) -> LaurentPolyQ:
    """Gaussian binomial [d r]_q, computed by exact division."""
    if r < 0 or r > d:
        raise ValueError(f"q_binomial out of range: d={d}, r={r}")
    num = ONE
    for i in range(r):
        num = num * (ONE - LaurentPolyQ.q_power(d - i))
    return num.divide_exact(q_pochhammer(r))


def q_binomial_inv(d: int, r: int) -> LaurentPolyQ:
    """[d r] evaluated at q -> q^-1."""
    return q_binomial(d, r).substitute_q(-1)


def gl_order(n: int) -> LaurentPolyQ:
    """|GL_n(F_q)| = q^(n^2) (q^-1;q^-1)_n as a polynomial in q."""
    return LaurentPolyQ.q_power(n * n) * q_pochhammer(n, exp_sign=-1)


def q_pascal_matrix(size: int) -> list[list[LaurentPolyQ]]:
    """Lower-triangular matrix P with P[i][j] = [i j] at q -> q^-1."""
    return [
        [q_binomial_inv(i, j) if j <= i else ZERO for j in range(size)]
        for i in range(size)
    ]


def q_pascal_inverse(size: int) -> list[list[LaurentPolyQ]]:
    """Inverse of q_pascal_matrix: entries (-1)^(i-j) q^(-C(i-j,2)) [i j]_(q^-1)."""
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            if j > i:
                row.append(ZERO)
            else:
                k = i - j
                sign = -1 if k % 2 else 1
                row.append(
                    LaurentPolyQ.q_power(-(k * (k - 1) // 2), sign) * q_binomial_inv(i, j)
                )
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# Cyclotomic integers (root-of-unity evaluation stays symbolic)


def _poly_divmod_monic(f: list[int], g: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomial f by monic g; coefficients ascending."""
    assert g and g[-1] == 1
    rem = list(f)
    dg = len(g) - 1
    quot = [0] * max(len(rem) - dg, 0)
    for top in range(len(rem) - 1, dg - 1, -1):
        c = rem[top]
        if c:
            quot[top - dg] = c
            for i, gc in enumerate(g):
                rem[top - dg + i] -= c * gc
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


_CYCLOTOMIC_CACHE: dict[int, list[int]] = {}


def cyclotomic_poly(r: int) -> list[int]:
    """Coefficients (ascending) of the r-th cyclotomic polynomial."""
    if r < 1:
        raise ValueError("cyclotomic order must be >= 1")
    if r in _CYCLOTOMIC_CACHE:
        return _CYCLOTOMIC_CACHE[r]
    f = [-1] + [0] * (r - 1) + [1]  # x^r - 1
    for d in range(1, r):
        if r % d == 0:
            f, rem = _poly_divmod_monic(f, cyclotomic_poly(d))
            assert not rem
    _CYCLOTOMIC_CACHE[r] = f
    return f


class RootOfUnity(NamedTuple):
    """Marker for evaluating q at a primitive r-th root of unity."""

    order: int


class CyclotomicInt:
    """Element of Z[x]/Phi_r(x), x a primitive r-th root of unity."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[int]):
        phi = cyclotomic_poly(order)
        deg = len(phi) - 1
        cs = list(coeffs)
        if len(cs) > deg:
            _, cs = _poly_divmod_monic(cs, phi)
        cs = cs + [0] * (deg - len(cs))
        self.order = order
        self.coeffs = tuple(cs[:deg])

    @classmethod
    def zero(cls, order: int) -> "CyclotomicInt":
        return cls(order, [])

    @classmethod
    def one(cls, order: int) -> "CyclotomicInt":
        return cls(order, [1])

    @classmethod
    def from_int(cls, order: int, c: int) -> "CyclotomicInt":
        return cls(order, [c])

    @classmethod
    def from_q_exponent(cls, order: int, e: int) -> "CyclotomicInt":
        """x^e with e reduced mod the order (handles negative exponents)."""
        e %= order
        return cls(order, [0] * e + [1])

    def _check(self, other: "CyclotomicInt") -> None:
        if self.order != other.order:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other: "CyclotomicInt | int") -> "CyclotomicInt":
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.order, other)
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return CyclotomicInt(self.order, a)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.order, [-c for c in self.coeffs])

    def __sub__(self, other: "CyclotomicInt | int") -> "CyclotomicInt":
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.order, other)
        return self + (-other)

    def __mul__(self, other: "CyclotomicInt | int") -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt(self.order, [c * other for c in self.coeffs])
        self._check(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return CyclotomicInt(self.order, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CyclotomicInt":
        if n < 0:
            raise ValueError("negative power")
        out = CyclotomicInt.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.order, other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicInt({self.order}, {list(self.coeffs)!r})"


def evaluate_q(x: LaurentPolyQ, value: "QValue | RootOfUnity"):
    """Evaluate at a rational number (exact Fraction) or a root of unity."""
    if isinstance(value, RootOfUnity):
        return x.at_root_of_unity(value.order)
    return x.evaluate(value)


# ---------------------------------------------------------------------------
# JSON forms: a polynomial is a list of [t_exp, q_exp, coeff] triples,
# a series is {"num": [...], "den": [...]}.


def tpoly_to_triples(tp: TPoly) -> list[list[int]]:
    out = []
    for m, c in enumerate(tp.coeffs):
        for e in sorted(c.terms):
            out.append([m, e, c.coeff(e)])
    return out


def tpoly_from_triples(triples: Iterable[Iterable[int]]) -> TPoly:
    by_t: dict[int, dict[int, int]] = {}
    for t_exp, q_exp, coeff in triples:
        d = by_t.setdefault(int(t_exp), {})
        d[int(q_exp)] = d.get(int(q_exp), 0) + int(coeff)
    if not by_t:
        return TPoly.zero()
    top = max(by_t)
    return TPoly([LaurentPolyQ(by_t.get(m, {})) for m in range(top + 1)])


def series_to_json(s: TSeries) -> dict:
    return {"num": tpoly_to_triples(s.num), "den": tpoly_to_triples(s.den)}


def series_from_json(obj: dict) -> TSeries:
    return TSeries(tpoly_from_triples(obj["num"]), tpoly_from_triples(obj["den"]))
