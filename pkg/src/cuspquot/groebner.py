"""Groebner bases for finite-colength submodules over the cusp ring.

The ambient ring is the complete monomial subring R generated by T^2 and
T^3 inside k[[T]]; the module is F = R^d, and every submodule handled here
sits inside mF (m the maximal ideal of R) and has finite codimension.
Computations happen modulo T^N F for a truncation bound N supplied by the
caller; N must be at least 2*codim + 4 for the answers to be faithful, and
reduce() rejects anything whose computed codimension exceeds (N-4)/2.

Monomial order: compare T-degree first, then seat index (u_1 < ... < u_d
< T); the LEADING term of an element is its order-least term.  T^a divides
T^b on the same seat iff b - a is 0 or >= 2, because T^1 is missing from R.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Sequence

__all__ = [
    "Monomial",
    "Element",
    "PreBasis",
    "ReducedGB",
    "DivisionResult",
    "TruncationError",
    "divides",
    "lcm_set",
    "divide",
    "is_groebner",
    "is_groebner_general",
    "reduce_basis",
    "standard_monomials",
    "codim",
    "membership",
]


class TruncationError(ValueError):
    """The requested computation cannot be certified within the window."""


def _semigroup(n: int) -> bool:
    """Membership in the exponent semigroup {0, 2, 3, 4, ...}."""
    return n == 0 or n >= 2


class Monomial(NamedTuple):
    """T^t_deg * u_seat; tuple order (t_deg, seat) is the module order."""

    t_deg: int
    seat: int

    def __str__(self) -> str:
        return f"T^{self.t_deg}*u{self.seat}"


def divides(mu: Monomial, nu: Monomial) -> Optional[int]:
    """Quotient T-degree when mu divides nu, else None."""
    if mu.seat != nu.seat:
        return None
    diff = nu.t_deg - mu.t_deg
    return diff if _semigroup(diff) else None


def lcm_set(mu: Monomial, nu: Monomial) -> tuple[Monomial, ...]:
    """Minimal common multiples; empty unless the seats agree.

    Same degree: the monomial itself.  Degrees a and a+1: two minimal
    common multiples T^(a+3), T^(a+4) (the T^5/T^6 pattern for T^2, T^3).
    Otherwise the larger degree divides into the smaller's multiples and
    the set is a single monomial.
    """
    if mu.seat != nu.seat:
        return ()
    a, b = sorted((mu.t_deg, nu.t_deg))
    if a == b:
        return (Monomial(a, mu.seat),)
    if b == a + 1:
        return (Monomial(a + 3, mu.seat), Monomial(a + 4, mu.seat))
    return (Monomial(b, mu.seat),)


class Element:
    """Element of mF over F_p, truncated below T^trunc; immutable."""

    __slots__ = ("terms", "p", "trunc")

    def __init__(self, terms: dict[Monomial, int], p: int, trunc: int):
        clean: dict[Monomial, int] = {}
        for mono, c in terms.items():
            if not isinstance(mono, Monomial):
                mono = Monomial(*mono)
            if mono.t_deg < 2:
                raise ValueError(f"monomial {mono} is outside mF")
            if mono.t_deg >= trunc:
                continue
            c %= p
            if c:
                clean[mono] = c
        self.terms = clean
        self.p = p
        self.trunc = trunc

    @classmethod
    def monomial(cls, mono: Monomial, p: int, trunc: int, coeff: int = 1) -> "Element":
        return cls({mono: coeff}, p, trunc)

    @classmethod
    def zero(cls, p: int, trunc: int) -> "Element":
        return cls({}, p, trunc)

    def is_zero(self) -> bool:
        return not self.terms

    def _compat(self, other: "Element") -> None:
        if self.p != other.p or self.trunc != other.trunc:
            raise ValueError("mixed prime or truncation")

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero element has no leading term")
        return min(self.terms)

    def leading_coeff(self) -> int:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Element":
        inv = pow(self.leading_coeff(), self.p - 2, self.p)
        return self.scale(inv)

    def scale(self, c: int) -> "Element":
        return Element({m: v * c for m, v in self.terms.items()}, self.p, self.trunc)

    def __add__(self, other: "Element") -> "Element":
        self._compat(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = (out.get(m, 0) + c) % self.p
        return Element(out, self.p, self.trunc)

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(self.p - 1)

    def shift(self, s: int) -> "Element":
        """Multiply by T^s for s in the exponent semigroup."""
        if not _semigroup(s):
            raise ValueError(f"T^{s} is not in the ring")
        return Element(
            {Monomial(m.t_deg + s, m.seat): c for m, c in self.terms.items()},
            self.p,
            self.trunc,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (self.terms, self.p, self.trunc) == (other.terms, other.p, other.trunc)

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.p, self.trunc))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            parts.append(str(mono) if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Element({{{', '.join(f'{m!r}: {c}' for m, c in sorted(self.terms.items()))}}}, p={self.p}, trunc={self.trunc})"


def _rpoly_apply(coeffs: dict[int, int], g: Element) -> Element:
    """Apply a ring polynomial sum_s c_s T^s to g."""
    out = Element.zero(g.p, g.trunc)
    for s, c in coeffs.items():
        out = out + g.shift(s).scale(c)
    return out


class DivisionResult(NamedTuple):
    quotients: tuple[dict[int, int], ...]
    remainder: Element


def divide(f: Element, divisors: Sequence[Element]) -> DivisionResult:
    """Divide f by the ordered list of divisors.

    Walks the divisor list cyclically; at each stop it cancels the
    order-least term of the running remainder divisible by that divisor's
    leading term, and stops after a full cycle with no cancellation.  The
    output satisfies the division-expression contract: no remainder term
    is divisible by any divisor leading term, and no quotient-times-
    divisor starts below the leading term of f.  Both facts are asserted
    on every call (cheap at the scales this engine runs at).
    """
    divisors = list(divisors)
    for g in divisors:
        if g.is_zero():
            raise ValueError("zero divisor in division")
        f._compat(g)
    quots: list[dict[int, int]] = [{} for _ in divisors]
    rem = f
    p = f.p
    guard = 0
    while True:
        killed = False
        for j, g in enumerate(divisors):
            lm = g.leading_monomial()
            target = None
            for mono in sorted(rem.terms):
                if divides(lm, mono) is not None:
                    target = mono
                    break
            if target is None:
                continue
            shift = target.t_deg - lm.t_deg
            c = (rem.terms[target] * pow(g.leading_coeff(), p - 2, p)) % p
            quots[j][shift] = (quots[j].get(shift, 0) + c) % p
            rem = rem - g.shift(shift).scale(c)
            killed = True
        if not killed:
            break
        guard += 1
        if guard > 10 * len(divisors) * (f.trunc + 2) ** 2:
            raise AssertionError("division failed to terminate")
    quots = [{s: c for s, c in qd.items() if c} for qd in quots]
    # division-expression contract checks
    for mono in rem.terms:
        assert all(divides(g.leading_monomial(), mono) is None for g in divisors)
    if not f.is_zero():
        lead = f.leading_monomial()
        recon = rem
        for qd, g in zip(quots, divisors):
            prod = _rpoly_apply(qd, g)
            if not prod.is_zero():
                assert prod.leading_monomial() >= lead
            recon = recon + prod
        assert recon == f
    return DivisionResult(tuple(quots), rem)


class PreBasis:
    """Tuple of nonzero elements with mutually indivisible leading terms."""

    __slots__ = ("elements", "d", "p", "trunc")

    def __init__(self, elements: Iterable[Element], d: int):
        elems = tuple(elements)
        if not elems:
            raise ValueError("empty prebasis")
        p, trunc = elems[0].p, elems[0].trunc
        for g in elems:
            if g.is_zero():
                raise ValueError("zero element in prebasis")
            g._compat(elems[0])
            for mono in g.terms:
                if not 1 <= mono.seat <= d:
                    raise ValueError(f"seat out of range in {g}")
        leads = [g.leading_monomial() for g in elems]
        for i, mi in enumerate(leads):
            for j, mj in enumerate(leads):
                if i != j and divides(mi, mj) is not None:
                    raise ValueError(f"leading terms not mutually indivisible: {mi}, {mj}")
        self.elements = elems
        self.d = d
        self.p = p
        self.trunc = trunc

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def dump(self) -> str:
        return "\n".join(str(g) for g in self.elements)


def _s_remainders_cusp(pb: PreBasis) -> list[Element]:
    """The two S-elements per seat carrying a degree-adjacent leading pair."""
    by_seat: dict[int, list[Element]] = {}
    for g in pb:
        by_seat.setdefault(g.leading_monomial().seat, []).append(g)
    out = []
    for seat, gens in by_seat.items():
        if len(gens) == 1:
            continue
        assert len(gens) == 2, "more than two mutually indivisible degrees per seat"
        g0, g1 = sorted(gens, key=lambda g: g.leading_monomial())
        assert g1.leading_monomial().t_deg == g0.leading_monomial().t_deg + 1
        m0, m1 = g0.monic(), g1.monic()
        out.append(m0.shift(3) - m1.shift(2))
        out.append(m0.shift(4) - m1.shift(3))
    return out


def is_groebner(pb: PreBasis) -> bool:
    """Degree-adjacent pairs only: T^3 g0 - T^2 g1 and T^4 g0 - T^3 g1 reduce to 0."""
    divisors = list(pb.elements)
    return all(divide(s, divisors).remainder.is_zero() for s in _s_remainders_cusp(pb))


def is_groebner_general(pb: PreBasis) -> bool:
    """Full criterion: every S-element over every minimal common multiple reduces to 0."""
    divisors = list(pb.elements)
    for i, gi in enumerate(divisors):
        for gj in divisors[i + 1 :]:
            mi, mj = gi.leading_monomial(), gj.leading_monomial()
            for nu in lcm_set(mi, mj):
                s = gi.monic().shift(nu.t_deg - mi.t_deg) - gj.monic().shift(nu.t_deg - mj.t_deg)
                if not divide(s, divisors).remainder.is_zero():
                    return False
    return True


class ReducedGB:
    """Reduced Groebner basis with its leading-term data, immutable."""

    __slots__ = ("elements", "d", "p", "trunc", "seat_data", "codim")

    def __init__(self, elements: tuple[Element, ...], d: int,
                 seat_data: tuple[tuple[str, int], ...], codim_: int):
        self.elements = elements
        self.d = d
        self.p = elements[0].p
        self.trunc = elements[0].trunc
        self.seat_data = seat_data  # per seat: ("J", a) or ("K", a)
        self.codim = codim_

    def prebasis(self) -> PreBasis:
        return PreBasis(self.elements, self.d)

    def corners(self) -> list[Monomial]:
        return sorted(g.leading_monomial() for g in self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedGB):
            return NotImplemented
        return (self.elements, self.d) == (other.elements, other.d)

    def __hash__(self) -> int:
        return hash((self.elements, self.d))

    def dump(self) -> str:
        return "\n".join(str(g) for g in self.elements)


def _seat_data_from_corners(corners: list[Monomial], d: int) -> tuple[tuple[str, int], ...]:
    by_seat: dict[int, list[int]] = {s: [] for s in range(1, d + 1)}
    for mono in corners:
        by_seat[mono.seat].append(mono.t_deg)
    data = []
    for s in range(1, d + 1):
        degs = sorted(by_seat[s])
        if not degs:
            raise TruncationError(
                f"seat {s} has no corner in the window: submodule not finite-codimension"
            )
        if len(degs) == 1:
            data.append(("J", degs[0] - 1))
        elif len(degs) == 2 and degs[1] == degs[0] + 1:
            data.append(("K", degs[0] - 2))
        else:
            raise AssertionError(f"impossible corner pattern {degs} on seat {s}")
    return tuple(data)


def _standard_degrees(kind: str, a: int) -> list[int]:
    if kind == "J":
        return list(range(2, a + 1)) + [a + 2]
    return list(range(2, a + 2))


def reduce_basis(generators: Iterable[Element], d: int) -> ReducedGB:
    """Complete the generators to the unique reduced Groebner basis.

    Adds reduced S-element remainders until the criterion passes, then
    rewrites one generator per corner as corner-minus-remainder.  The
    result depends only on the submodule generated, not on the
    presentation.  Raises TruncationError when the computed codimension
    exceeds (trunc-4)/2 or when some seat has no leading term at all.
    """
    G = [g.monic() for g in generators if not g.is_zero()]
    if not G:
        raise TruncationError("no nonzero generators: submodule not finite-codimension")
    p, trunc = G[0].p, G[0].trunc

    pending = [(i, j) for i in range(len(G)) for j in range(i)]
    while pending:
        i, j = pending.pop()
        gi, gj = G[i], G[j]
        mi, mj = gi.leading_monomial(), gj.leading_monomial()
        for nu in lcm_set(mi, mj):
            s = gi.shift(nu.t_deg - mi.t_deg) - gj.shift(nu.t_deg - mj.t_deg)
            rem = divide(s, G).remainder
            if not rem.is_zero():
                G.append(rem.monic())
                pending.extend((len(G) - 1, k) for k in range(len(G) - 1))

    leads = sorted({g.leading_monomial() for g in G})
    corners = [
        m for m in leads
        if not any(other != m and divides(other, m) is not None for other in leads)
    ]
    seat_data = _seat_data_from_corners(corners, d)
    n = sum(a for _, a in seat_data)
    bound = (trunc - 4) // 2
    if n > bound:
        raise TruncationError(f"codimension {n} exceeds the certified bound {bound}")

    reduced = []
    for mono in corners:
        rem = divide(Element.monomial(mono, p, trunc), G).remainder
        reduced.append(Element.monomial(mono, p, trunc) - rem)
    gb = ReducedGB(tuple(reduced), d, seat_data, n)
    assert is_groebner(gb.prebasis())
    return gb


def standard_monomials(gb: ReducedGB) -> list[Monomial]:
    """Monomials of mF outside the leading-term submodule, sorted ascending."""
    out = []
    for seat0, (kind, a) in enumerate(gb.seat_data):
        for deg in _standard_degrees(kind, a):
            out.append(Monomial(deg, seat0 + 1))
    return sorted(out)


def codim(gb: ReducedGB) -> int:
    return gb.codim


def membership(gb: ReducedGB, f: Element) -> bool:
    return divide(f, gb.elements).remainder.is_zero()
