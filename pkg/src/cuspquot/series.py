"""Point-count generating series for framed and unframed modules.

hilb_series assembles the rank-d framed series from the stable orbit
decomposition: each orbit contributes the count of its base stratum
times a geometric series in the free raising directions, all placed
over the common denominator (t;q)_d.  quot_series and hilb_from_quot
are the two directions of the framed/unframed transform.

The rest of the module holds independent routes to the same numerator
polynomials and the identities used to stress them:

  * solve_nh pins the numerator down from its self-similarity under
    t -> t^2, coefficient by coefficient;
  * nh_guess is the closed product form (shifted binomial coefficients
    of (-t;q)_d);
  * functional equation, root-of-unity collapse and cyclotomic
    divisibility of the numerators;
  * the nilpotent matrix-pair count that the degree-n coefficient of
    the unframed series must reproduce, and the Cohen-Lenstra style
    double sum it is conjecturally equal to.
"""

from __future__ import annotations

from math import comb
from typing import Optional

from .qalgebra import (
    ONE,
    ZERO,
    LaurentPolyQ,
    RationalQ,
    TPoly,
    TSeries,
    cyclotomic_poly,
    q_binomial,
    q_binomial_inv,
    q_pochhammer,
    t_pochhammer,
)
from .strata import Orbit, stable_orbit_decomposition
from .varieties import count_v_alpha, symbolic_v_alpha

__all__ = [
    "hilb_series",
    "hilb_numerator",
    "quot_series",
    "quot_numerator",
    "hilb_from_quot",
    "color_numerators",
    "orbit_contribution",
    "zhat_coefficient",
    "nh",
    "nq",
    "solve_nh",
    "nh_guess",
    "functional_equation_check",
    "root_of_unity_check",
    "cyclotomic_divisibility_check",
    "matrix_count_formula",
    "cohen_lenstra_coefficient",
    "affine_cohen_lenstra_coefficient",
]

SYMBOLIC_MAX_D = 3  # closed-form stratum counts are tabulated through rank 3
AT_PRIME_MAX_D = 4  # beyond this the stratum counter's budget gives out


def _qpow(e: int, prime: Optional[int]) -> LaurentPolyQ:
    if prime is None:
        return LaurentPolyQ.q_power(e)
    return LaurentPolyQ.const(prime ** e)


def _qcollapse(x: LaurentPolyQ, prime: Optional[int]) -> LaurentPolyQ:
    if prime is None:
        return x
    v = x.evaluate(prime)
    if v.denominator != 1:
        raise ValueError(f"non-integral value {v} at q={prime}")
    return LaurentPolyQ.const(int(v))


def _den_factor(j: int, prime: Optional[int]) -> TPoly:
    """The j-th denominator factor 1 - q^(j-1) t."""
    return TPoly([ONE, -_qpow(j - 1, prime)])


def _den_all(d: int, prime: Optional[int]) -> TPoly:
    out = TPoly.one()
    for j in range(1, d + 1):
        out = out * _den_factor(j, prime)
    return out


def _scale_t(tp: TPoly, a: int, prime: Optional[int]) -> TPoly:
    """t -> q^a t, with q already collapsed when counting over F_p."""
    if prime is None:
        return tp.substitute_t_scale(a)
    return TPoly([c * prime ** (a * m) for m, c in enumerate(tp.coeffs)])


def orbit_contribution(orbit: Orbit, prime: Optional[int] = None) -> TSeries:
    """Series contributed by one stable orbit: base count times geometric tails."""
    base = orbit.base
    bexp, delta = base.exponents()
    restricted = base.restrict_to_K()
    if prime is None:
        amount = symbolic_v_alpha(restricted)
    else:
        amount = LaurentPolyQ.const(count_v_alpha(restricted, prime))
    coeff = amount * _qpow(bexp + delta, prime)
    den = TPoly.one()
    for j in orbit.generators:
        den = den * _den_factor(j, prime)
    return TSeries(TPoly.t_power(base.n(), coeff), den)


_HILB_MEMO: dict[tuple[int, Optional[int]], TPoly] = {}


def hilb_numerator(d: int, prime: Optional[int] = None) -> TPoly:
    """Numerator of the rank-d framed series over (t;q)_d."""
    if d < 0:
        raise ValueError("rank must be >= 0")
    key = (d, prime)
    if key in _HILB_MEMO:
        return _HILB_MEMO[key]
    if d == 0:
        num = TPoly.one()
    else:
        if prime is None and d > SYMBOLIC_MAX_D:
            raise ValueError(
                f"symbolic series stop at rank {SYMBOLIC_MAX_D}; pass a prime for rank {d}"
            )
        if prime is not None and d > AT_PRIME_MAX_D:
            raise ValueError(f"at-prime series stop at rank {AT_PRIME_MAX_D}")
        num = TPoly.zero()
        for orbit in stable_orbit_decomposition(d):
            part = orbit_contribution(orbit, prime)
            for j in range(1, d + 1):
                if j not in orbit.generators:
                    part = part * _den_factor(j, prime)
            num = num + part.num
    _HILB_MEMO[key] = num
    return num


def hilb_series(d: int, prime: Optional[int] = None) -> TSeries:
    return TSeries(hilb_numerator(d, prime), _den_all(d, prime))


def color_numerators(d: int, prime: Optional[int] = None) -> dict[tuple[str, ...], TPoly]:
    """Numerator over (t;q)_d split by the rank color vector of the orbit base."""
    out: dict[tuple[str, ...], TPoly] = {}
    for orbit in stable_orbit_decomposition(d):
        part = orbit_contribution(orbit, prime)
        for j in range(1, d + 1):
            if j not in orbit.generators:
                part = part * _den_factor(j, prime)
        colors = tuple(orbit.base.colors)
        out[colors] = out.get(colors, TPoly.zero()) + part.num
    return out


def quot_numerator(d: int, prime: Optional[int] = None) -> TPoly:
    """Numerator of the rank-d unframed series over (t;q)_d.

    Unframed counts are binomial-weighted shifts of the framed ones:
    the rank-r framed series enters at t -> q^(d-r) t with weight
    [d r]_q t^r.
    """
    total = TPoly.zero()
    for r in range(d + 1):
        part = _scale_t(hilb_numerator(r, prime), d - r, prime)
        for j in range(1, d - r + 1):
            part = part * _den_factor(j, prime)
        weight = _qcollapse(q_binomial(d, r), prime)
        total = total + part.shift_t(r) * weight
    return total


def quot_series(d: int, prime: Optional[int] = None) -> TSeries:
    return TSeries(quot_numerator(d, prime), _den_all(d, prime))


def hilb_from_quot(d: int) -> TSeries:
    """Recover the framed series from the unframed ones (symbolic only).

    The alternating inverse transform: t^-d times the q^-1-binomial
    combination of the unframed series at t -> q^(d-r) t.
    """
    total = TPoly.zero()
    for r in range(d + 1):
        part = quot_numerator(r).substitute_t_scale(d - r)
        for j in range(1, d - r + 1):
            part = part * _den_factor(j, None)
        k = d - r
        weight = LaurentPolyQ.q_power(-(k * (k - 1) // 2), -1 if k % 2 else 1)
        total = total + part * (weight * q_binomial_inv(d, r))
    return TSeries(total.shift_t(-d), _den_all(d, None))


def nh(d: int, prime: Optional[int] = None) -> TPoly:
    """The framed numerator polynomial (degree d in t, top coefficient q^(d^2))."""
    return hilb_numerator(d, prime)


def nq(d: int, prime: Optional[int] = None) -> TPoly:
    return quot_numerator(d, prime)


def zhat_coefficient(n: int) -> RationalQ:
    """[t^n] of the unframed zeta series over all module ranks.

    Sums the framed coefficients with the frame-removal weight
    q^(-d^2 - d(n-d)) / (q^-1;q^-1)_d; needs the symbolic framed series,
    so n is capped by the symbolic rank limit.
    """
    total = RationalQ.from_int(0)
    for d in range(n + 1):
        h_coeff = hilb_series(d).expand(n - d)[n - d]
        num = LaurentPolyQ.q_power(-d * d - d * (n - d)) * h_coeff
        total = total + RationalQ(num, q_pochhammer(d, exp_sign=-1))
    return total


# ---------------------------------------------------------------------------
# independent routes to the framed numerators


_SOLVE_MEMO: dict[int, TPoly] = {}


def solve_nh(d: int) -> TPoly:
    """Framed numerator solved from its self-similarity under t -> t^2.

    f(t^2) - t^d f(t) is a binomial-weighted sum of the lower-rank
    numerators; with f normalized by [t^0] = 1 and [t^d] = q^(d^2) the
    relation determines every middle coefficient, and the full relation
    is re-checked at the end.
    """
    if d < 0:
        raise ValueError("rank must be >= 0")
    if d in _SOLVE_MEMO:
        return _SOLVE_MEMO[d]
    if d == 0:
        f = TPoly.one()
        _SOLVE_MEMO[0] = f
        return f
    rhs = TPoly.zero()
    for r in range(d):
        term = solve_nh(r).substitute_t_scale(d - r) * t_pochhammer(d - r)
        rhs = rhs + term.shift_t(r) * q_binomial(d, r)
    a: list[Optional[LaurentPolyQ]] = [None] * (d + 1)
    a[0] = rhs.coeff(0)
    a[d] = LaurentPolyQ.q_power(d * d)
    for m in range(2 * d - 1, d, -1):
        even_part = a[m // 2] if m % 2 == 0 else ZERO
        assert even_part is not None  # m//2 > m-d, solved in an earlier pass
        a[m - d] = even_part - rhs.coeff(m)
    f = TPoly(a)
    if f.substitute_t_square() - f.shift_t(d) != rhs:
        raise ArithmeticError(f"self-similarity solve is inconsistent at rank {d}")
    _SOLVE_MEMO[d] = f
    return f


def nh_guess(d: int) -> TPoly:
    """Closed form: [t^j] = q^(C(j+1,2) + j(d-j)) [t^j](-t;q)_d."""
    prod = TPoly.one()
    for i in range(d):
        prod = prod * TPoly([ONE, LaurentPolyQ.q_power(i)])
    return TPoly(
        [
            c * LaurentPolyQ.q_power(j * (j + 1) // 2 + j * (d - j))
            for j, c in enumerate(prod.coeffs)
        ]
    )


def functional_equation_check(d: int, f: Optional[TPoly] = None) -> bool:
    """Coefficient symmetry a_(d-i) = q^(d(d-2i)) a_i."""
    if f is None:
        f = solve_nh(d)
    return all(
        f.coeff(d - i) == LaurentPolyQ.q_power(d * (d - 2 * i)) * f.coeff(i)
        for i in range(d + 1)
    )


def root_of_unity_check(d: int, r: int, f: Optional[TPoly] = None) -> bool:
    """At q a primitive r-th root of unity (r | d) the numerator is (1+t^r)^(d/r)."""
    if r < 1 or d % r != 0:
        raise ValueError(f"order {r} must divide the rank {d}")
    if f is None:
        f = solve_nh(d)
    values = f.at_root_of_unity(r)
    values += [values[0] * 0] * (d + 1 - len(values))
    for m in range(d + 1):
        expected = comb(d // r, m // r) if m % r == 0 else 0
        if values[m] != expected:
            return False
    return True


def cyclotomic_divisibility_check(d: int, f: Optional[TPoly] = None) -> bool:
    """Divisibility of the numerator at t = -1 by a product of cyclotomics.

    For odd d the factor 1 + q^d t is stripped first (it vanishes at
    t = -1, q = 1).  The value at t = -1 must then be divisible by
    Phi_r(q)^floor((d+r-1)/(2r)) for every odd r <= d.
    """
    if f is None:
        f = solve_nh(d)
    if d % 2:
        f = f.exact_div(TPoly([ONE, LaurentPolyQ.q_power(d)]))
    value = f.evaluate_t_symbolic(-1)
    for r in range(1, d + 1, 2):
        phi = LaurentPolyQ(dict(enumerate(cyclotomic_poly(r))))
        for _ in range((d + r - 1) // (2 * r)):
            nxt = value.try_divide(phi)
            if nxt is None:
                return False
            value = nxt
    return True


# ---------------------------------------------------------------------------
# matrix pair counts and the Cohen-Lenstra style double sum


def matrix_count_formula(n: int) -> LaurentPolyQ:
    """Closed count of all n x n matrix pairs (A, B) with A^2 = B^3, AB = BA."""
    if n < 0:
        raise ValueError("size must be >= 0")
    total = ZERO
    qq_n = q_pochhammer(n)
    for j in range(n // 2 + 1):
        sign = -1 if j % 2 else 1
        e = (3 * j * j - j) // 2 + n * (n - 2 * j)
        ratio = qq_n.divide_exact(q_pochhammer(j) * q_pochhammer(n - 2 * j))
        total = total + LaurentPolyQ.q_power(e, sign) * ratio
    return total


def cohen_lenstra_coefficient(n: int) -> RationalQ:
    """[t^n] of the product-form guess for the one-point module-count series.

    Multiplied by |GL_n| this conjecturally counts *nilpotent* matrix
    pairs (A, B) with A^2 = B^3 and AB = BA.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    total = RationalQ.from_int(0)
    for k in range(n // 2 + 1):
        m = n - 2 * k
        num = LaurentPolyQ.q_power(-m - k * k)
        den = q_pochhammer(m, exp_sign=-1) * q_pochhammer(k, exp_sign=-1)
        total = total + RationalQ(num, den)
    return total


def affine_cohen_lenstra_coefficient(n: int) -> RationalQ:
    """[t^n] of the guess series for the whole cuspidal curve.

    The curve is its singular point together with a smooth punctured line
    whose module-count series is the geometric series 1/(1 - t), so the
    curve coefficient is the partial sum of the one-point coefficients.
    Multiplied by |GL_n| it equals matrix_count_formula(n), the count of
    *all* matrix pairs (A, B) with A^2 = B^3 and AB = BA.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    total = RationalQ.from_int(0)
    for j in range(n + 1):
        total = total + cohen_lenstra_coefficient(j)
    return total
