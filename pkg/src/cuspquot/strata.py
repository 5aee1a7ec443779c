"""Leading-term data and the spiral raising operators.

A leading-term datum records, for each seat of F = R^d, which monomial
ideal type the seat carries: J(a) with one corner T^(a+1), or K(a) with
the corner pair T^(a+2), T^(a+3).  Internally a datum is a level vector
indexed by seat plus a color vector indexed by RANK, where components are
ranked by (level, seat).  The raising operator gamma_j fixes the j-1
lowest-ranked components and cycles the remaining levels one seat to the
right among the remaining seats; the level that wraps around to the
leftmost free seat is raised by one.  Ranks are preserved, so the
rank-indexed color vector never moves.
"""

from __future__ import annotations

import itertools
import re
from typing import NamedTuple, Optional, Sequence

from .groebner import Monomial

__all__ = [
    "LeadingTermDatum",
    "Orbit",
    "parse_datum",
    "stable_orbit_decomposition",
]

_IDEAL_RE = re.compile(r"([JK])\((\d+)\)")


class LeadingTermDatum:
    """Levels (seat-indexed) plus colors (rank-indexed); immutable."""

    __slots__ = ("levels", "colors")

    def __init__(self, levels: Sequence[int], colors: Sequence[str]):
        levels = tuple(int(l) for l in levels)
        colors = tuple(colors)
        if len(levels) != len(colors):
            raise ValueError("levels and colors must have equal length")
        if any(l < 0 for l in levels):
            raise ValueError("levels must be nonnegative")
        if any(c not in ("J", "K") for c in colors):
            raise ValueError("colors must be 'J' or 'K'")
        self.levels = levels
        self.colors = colors

    @property
    def d(self) -> int:
        return len(self.levels)

    # -- ranking ----------------------------------------------------------

    def rank_order(self) -> list[int]:
        """Seats (1-based) sorted by (level, seat); entry r-1 is rank r's seat."""
        return sorted(range(1, self.d + 1), key=lambda s: (self.levels[s - 1], s))

    def ranked_components(self) -> list[tuple[int, int, str]]:
        """(level, seat, color) triples in rank order."""
        return [
            (self.levels[s - 1], s, self.colors[r])
            for r, s in enumerate(self.rank_order())
        ]

    def seat_ideals(self) -> list[tuple[str, int]]:
        """Per seat: ("J", a) or ("K", a) with J(a) at level a-1, K(a) at level a."""
        color_of_seat = {}
        for r, s in enumerate(self.rank_order()):
            color_of_seat[s] = self.colors[r]
        out = []
        for s in range(1, self.d + 1):
            l = self.levels[s - 1]
            c = color_of_seat[s]
            out.append((c, l + 1 if c == "J" else l))
        return out

    @classmethod
    def from_seat_ideals(cls, ideals: Sequence[tuple[str, int]]) -> "LeadingTermDatum":
        levels = []
        for kind, a in ideals:
            if kind == "J":
                if a < 1:
                    raise ValueError("J(a) needs a >= 1")
                levels.append(a - 1)
            elif kind == "K":
                if a < 0:
                    raise ValueError("K(a) needs a >= 0")
                levels.append(a)
            else:
                raise ValueError(f"unknown ideal kind {kind!r}")
        seat_colors = [kind for kind, _ in ideals]
        order = sorted(range(len(levels)), key=lambda i: (levels[i], i))
        colors = [seat_colors[i] for i in order]
        return cls(levels, colors)

    # -- invariants of the datum ------------------------------------------

    def n(self) -> int:
        """Colength: sum of levels plus the number of J components."""
        return sum(self.levels) + sum(1 for c in self.colors if c == "J")

    def corners(self) -> list[Monomial]:
        out = []
        for s, (kind, a) in enumerate(self.seat_ideals(), start=1):
            if kind == "J":
                out.append(Monomial(a + 1, s))
            else:
                out.append(Monomial(a + 2, s))
                out.append(Monomial(a + 3, s))
        return sorted(out)

    def standard_set(self) -> list[Monomial]:
        """Monomials of mF not divisible by any corner."""
        out = []
        for s, (kind, a) in enumerate(self.seat_ideals(), start=1):
            if kind == "J":
                degs = list(range(2, a + 1)) + [a + 2]
            else:
                degs = list(range(2, a + 2))
            out.extend(Monomial(deg, s) for deg in degs)
        return sorted(out)

    def first_corners(self) -> list[Monomial]:
        """mu^0 per rank: T^(level+2) on the component's seat."""
        return [Monomial(l + 2, s) for l, s, _ in self.ranked_components()]

    def distance(self, b: int, h: int) -> int:
        """Distance between ranks b < h (1-based)."""
        comps = self.ranked_components()
        lb, sb, _ = comps[b - 1]
        lh, sh, _ = comps[h - 1]
        return lh - lb - (1 if sb > sh else 0)

    def distance_matrix(self) -> dict[tuple[int, int], int]:
        return {
            (b, h): self.distance(b, h)
            for b in range(1, self.d + 1)
            for h in range(b + 1, self.d + 1)
        }

    def exponents(self) -> tuple[int, int]:
        """(b, delta): the two q-exponents of the stratum count.

        b counts ranked pairs colored (K, J); delta sums, over all
        components, the standard monomials above the component's mu^0.
        """
        b = 0
        for i in range(self.d):
            for j in range(i + 1, self.d):
                if self.colors[i] == "K" and self.colors[j] == "J":
                    b += 1
        std = self.standard_set()
        delta = sum(1 for mu0 in self.first_corners() for nu in std if nu > mu0)
        return b, delta

    def restrict_to_K(self) -> "LeadingTermDatum":
        """The sub-datum of K-colored components, seats renumbered in order."""
        comps = self.ranked_components()
        keep = sorted((s, l) for l, s, c in comps if c == "K")
        levels = [l for _, l in keep]
        return LeadingTermDatum(levels, ["K"] * len(levels))

    # -- spiral raising ----------------------------------------------------

    def _moved_seats(self, j: int) -> list[int]:
        if not 1 <= j <= self.d:
            raise ValueError(f"gamma index {j} out of range 1..{self.d}")
        order = self.rank_order()
        return sorted(order[j - 1 :])

    def gamma(self, j: int) -> "LeadingTermDatum":
        """Apply the j-th raising operator."""
        avail = self._moved_seats(j)
        m = len(avail)
        new_levels = list(self.levels)
        for k in range(m):
            target = avail[(k + 1) % m]
            new_levels[target - 1] = self.levels[avail[k] - 1] + (1 if k == m - 1 else 0)
        return LeadingTermDatum(new_levels, self.colors)

    def gamma_inverse(self, j: int) -> Optional["LeadingTermDatum"]:
        """Undo gamma_j when possible, else None."""
        avail = self._moved_seats(j)
        m = len(avail)
        if self.levels[avail[0] - 1] < 1:
            return None
        old_levels = list(self.levels)
        for k in range(m):
            src = avail[(k + 1) % m]
            old_levels[avail[k] - 1] = self.levels[src - 1] - (1 if k == m - 1 else 0)
        try:
            cand = LeadingTermDatum(old_levels, self.colors)
        except ValueError:
            return None
        if cand.gamma(j) != self:
            return None
        return cand

    def seats_after_gamma(self, j: int) -> list[int]:
        """Seat of each rank after gamma_j (rank order is preserved)."""
        avail = self._moved_seats(j)
        m = len(avail)
        order = self.rank_order()
        out = []
        for r, s in enumerate(order, start=1):
            if r < j:
                out.append(s)
            else:
                out.append(avail[(avail.index(s) + 1) % m])
        return out

    def stretches(self, j: int) -> list[tuple[int, int]]:
        """Rank pairs (b, h), b < j <= h, whose distance gamma_j raises by 1.

        Seat positions decide membership: with i_b, i_h the seats of ranks
        b, h and i_h' the seat of rank h after the raise, the pair is
        stretched iff the three seats occur in one of the cyclic orders
        (i_h, i_b, i_h'), (i_h', i_h, i_b), (i_b, i_h', i_h).  When rank h
        keeps its seat (only one seat moves, so the cycle has length one and
        the level climbs by 1) every lower rank is stretched against it.
        """
        before = self.rank_order()
        after = self.seats_after_gamma(j)
        out = []
        for b in range(1, j):
            ib = before[b - 1]
            for h in range(j, self.d + 1):
                ih = before[h - 1]
                ih2 = after[h - 1]
                if (
                    ih == ih2
                    or (ih < ib < ih2)
                    or (ih2 < ih < ib)
                    or (ib < ih2 < ih)
                ):
                    out.append((b, h))
        return out

    def is_stable(self, j: int) -> bool:
        """Stability under gamma_j: every pair b < j <= h keeps its shape.

        A J-colored lower rank needs distance >= 1; a K-K pair needs
        distance >= 3.  gamma_1 never breaks anything.
        """
        for b in range(1, j):
            cb = self.colors[b - 1]
            for h in range(j, self.d + 1):
                delta = self.distance(b, h)
                if cb == "J" and delta < 1:
                    return False
                if cb == "K" and self.colors[h - 1] == "K" and delta < 3:
                    return False
        return True

    # -- orbit addressing ---------------------------------------------------

    def orbit_address(self) -> tuple[int, ...]:
        """Exponents a with gamma_1^a1 ... gamma_d^ad (all-zero datum) = self."""
        addr = [0] * self.d
        work = self
        for j in range(self.d, 0, -1):
            while True:
                prev = work.gamma_inverse(j)
                if prev is None:
                    break
                work = prev
                addr[j - 1] += 1
        assert all(l == 0 for l in work.levels), "address stripping did not reach zero"
        return tuple(addr)

    def apply_address(self, addr: Sequence[int]) -> "LeadingTermDatum":
        if len(addr) != self.d:
            raise ValueError("address length mismatch")
        out = self
        for j, a in enumerate(addr, start=1):
            if a < 0:
                raise ValueError("address exponents are nonnegative")
            for _ in range(a):
                out = out.gamma(j)
        return out

    # -- text form -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LeadingTermDatum):
            return NotImplemented
        return self.levels == other.levels and self.colors == other.colors

    def __hash__(self) -> int:
        return hash((self.levels, self.colors))

    def __str__(self) -> str:
        return "(" + ",".join(f"{k}({a})" for k, a in self.seat_ideals()) + ")"

    def __repr__(self) -> str:
        return f"LeadingTermDatum(levels={self.levels!r}, colors={self.colors!r})"


def parse_datum(text: str) -> LeadingTermDatum:
    """Parse the seat-indexed text form, e.g. "(K(1),J(1),K(0))"."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    ideals = [(k, int(a)) for k, a in _IDEAL_RE.findall(body)]
    if not ideals or _IDEAL_RE.sub("", body).strip("), ("):
        raise ValueError(f"cannot parse datum text {text!r}")
    return LeadingTermDatum.from_seat_ideals(ideals)


class Orbit(NamedTuple):
    """A stable orbit: base datum plus the raising indices that act freely."""

    base: LeadingTermDatum
    generators: tuple[int, ...]


def zero_datum(colors: Sequence[str]) -> LeadingTermDatum:
    """All levels zero; ranks follow seats, so colors read seat by seat."""
    return LeadingTermDatum([0] * len(colors), colors)


def _box_caps(d: int) -> list[int]:
    """Cap of the base exponent for j = 2..d: 3(d-j+1)."""
    return [3 * (d - j + 1) for j in range(2, d + 1)]


def stable_orbit_decomposition(d: int) -> list[Orbit]:
    """Finite list of stable orbits partitioning all data of the given rank.

    For each color vector, base addresses run over the box 0 <= b_j <=
    3(d-j+1) for j >= 2 (with b_1 = 0); gamma_1 always generates, and
    gamma_j generates exactly when b_j sits on the box boundary.
    """
    if d < 1:
        raise ValueError("rank must be >= 1")
    caps = _box_caps(d)
    orbits = []
    for colors in itertools.product("JK", repeat=d):
        base_color = zero_datum(colors)
        for bs in itertools.product(*(range(c + 1) for c in caps)):
            addr = (0,) + bs
            base = base_color.apply_address(addr)
            gens = (1,) + tuple(
                j for j, (b, cap) in enumerate(zip(bs, caps), start=2) if b == cap
            )
            orbits.append(Orbit(base, gens))
    return orbits
