"""Staircase matrix varieties and module profiles over small prime fields.

The variety attached to a pure-K datum of rank d is the set of strictly
upper triangular pairs (X, Y) over F_p with X^2 = Y^3, XY = YX and the
zero pattern dictated by the datum's pairwise distances: X_bh is forced
to 0 unless distance(b,h) >= 3, Y_bh unless distance(b,h) >= 2.  Only
the truncated distance classes 1-, 2, 3+ matter.  When every distance
is 3+ the variety is the full staircase variety V_d, whose motive obeys
a two-parameter recursion computed here exactly.

The module profile machinery views a point (X, Y) as the R-module
M = F_p^m with x, y acting by X, Y (R the cusp ring), and measures the
kernel/image filtration of the matrix factorization operator on M + M.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple, Optional, Sequence

from .qalgebra import LaurentPolyQ
from .strata import LeadingTermDatum

__all__ = [
    "GFMatrix",
    "VAlphaSpec",
    "AbProfile",
    "MotiveTable",
    "BudgetError",
    "distance_class",
    "count_v_alpha",
    "count_v_spec",
    "symbolic_v_alpha",
    "staircase_motive",
    "brute_v_d",
    "ab_profile",
    "classify_kernel_vector",
    "extend_point",
    "h0_t_exact",
    "enumerate_v_d_points",
    "staircase_table_csv",
    "motive_table_csv",
    "DEFAULT_POINT_BUDGET",
    "DEFAULT_PAIR_BUDGET",
]

DEFAULT_POINT_BUDGET = 2_000_000
DEFAULT_PAIR_BUDGET = 1 << 24


class BudgetError(ValueError):
    """An enumeration would exceed its configured budget."""


# ---------------------------------------------------------------------------
# small exact linear algebra over F_p; vectors are tuples of ints


def _rref(vectors: Iterable[Sequence[int]], p: int) -> tuple[list[tuple[int, ...]], list[int]]:
    """Reduced row echelon basis of the span; returns (rows, pivot columns)."""
    rows: list[list[int]] = []
    pivots: list[int] = []
    for vec in vectors:
        v = [c % p for c in vec]
        for r, piv in zip(rows, pivots):
            c = v[piv]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, r)]
        lead = next((i for i, c in enumerate(v) if c), None)
        if lead is None:
            continue
        inv = pow(v[lead], p - 2, p)
        v = [c * inv % p for c in v]
        for r, piv in zip(rows, pivots):
            c = r[lead]
            if c:
                r[:] = [(a - c * b) % p for a, b in zip(r, v)]
        rows.append(v)
        pivots.append(lead)
    order = sorted(range(len(rows)), key=lambda i: pivots[i])
    return [tuple(rows[i]) for i in order], [pivots[i] for i in order]


def _reduce_mod(rows: Sequence[Sequence[int]], pivots: Sequence[int], vec: Sequence[int], p: int) -> tuple[int, ...]:
    v = [c % p for c in vec]
    for r, piv in zip(rows, pivots):
        c = v[piv]
        if c:
            v = [(a - c * b) % p for a, b in zip(v, r)]
    return tuple(v)


def _in_span(rows, pivots, vec, p: int) -> bool:
    return not any(_reduce_mod(rows, pivots, vec, p))


class GFMatrix:
    """Dense immutable matrix over F_p."""

    __slots__ = ("rows", "p")

    def __init__(self, rows: Iterable[Sequence[int]], p: int):
        self.rows = tuple(tuple(c % p for c in row) for row in rows)
        self.p = p
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise ValueError("ragged matrix")

    @classmethod
    def zero(cls, n: int, m: int, p: int) -> "GFMatrix":
        return cls([[0] * m for _ in range(n)], p)

    @classmethod
    def identity(cls, n: int, p: int) -> "GFMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    @classmethod
    def block2(cls, tl: "GFMatrix", tr: "GFMatrix", bl: "GFMatrix", br: "GFMatrix") -> "GFMatrix":
        rows = [list(a) + list(b) for a, b in zip(tl.rows, tr.rows)]
        rows += [list(a) + list(b) for a, b in zip(bl.rows, br.rows)]
        return cls(rows, tl.p)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GFMatrix):
            return NotImplemented
        return self.p == other.p and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.rows, self.p))

    def __add__(self, other: "GFMatrix") -> "GFMatrix":
        return GFMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            self.p,
        )

    def __neg__(self) -> "GFMatrix":
        return GFMatrix([[-a for a in r] for r in self.rows], self.p)

    def __sub__(self, other: "GFMatrix") -> "GFMatrix":
        return self + (-other)

    def __mul__(self, other: "GFMatrix") -> "GFMatrix":
        p = self.p
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        return GFMatrix(
            [[sum(a * b for a, b in zip(row, col)) % p for col in cols] for row in self.rows],
            p,
        )

    def __pow__(self, e: int) -> "GFMatrix":
        n, m = self.shape
        if n != m:
            raise ValueError("power of non-square matrix")
        out = GFMatrix.identity(n, self.p)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, vec)) % self.p for row in self.rows)

    def is_zero(self) -> bool:
        return all(all(c == 0 for c in row) for row in self.rows)

    def rank(self) -> int:
        rows, _ = _rref(self.rows, self.p)
        return len(rows)

    def kernel_basis(self) -> list[tuple[int, ...]]:
        """Basis of {v : self.apply(v) = 0}."""
        n, m = self.shape
        rows, pivots = _rref(self.rows, self.p)
        free = [j for j in range(m) if j not in pivots]
        out = []
        for j in free:
            v = [0] * m
            v[j] = 1
            for r, piv in zip(rows, pivots):
                v[piv] = (-r[j]) % self.p
            out.append(tuple(v))
        return out

    def image_basis(self) -> list[tuple[int, ...]]:
        """Basis of the column space."""
        cols = list(zip(*self.rows)) if self.rows else []
        rows, _ = _rref(cols, self.p)
        return rows


# ---------------------------------------------------------------------------
# staircase varieties from distance classes


def distance_class(delta: int) -> str:
    if delta <= 1:
        return "1-"
    return "2" if delta == 2 else "3+"


class VAlphaSpec:
    """Zero-pattern of the variety of a pure-K datum: one class per rank pair."""

    __slots__ = ("d", "classes")

    def __init__(self, d: int, classes: dict[tuple[int, int], str]):
        expected = {(b, h) for b in range(1, d + 1) for h in range(b + 1, d + 1)}
        if set(classes) != expected:
            raise ValueError("need exactly one class per ranked pair")
        if any(v not in ("1-", "2", "3+") for v in classes.values()):
            raise ValueError("classes must be '1-', '2' or '3+'")
        self.d = d
        self.classes = dict(classes)

    @classmethod
    def from_datum(cls, datum: LeadingTermDatum) -> "VAlphaSpec":
        if any(c != "K" for c in datum.colors):
            raise ValueError("variety spec needs a pure-K datum")
        return cls(
            datum.d,
            {pair: distance_class(delta) for pair, delta in datum.distance_matrix().items()},
        )

    def key(self) -> tuple:
        return (self.d, tuple(sorted(self.classes.items())))

    def free_x(self) -> list[tuple[int, int]]:
        """0-based (row, col) slots where X is unconstrained."""
        return [(b - 1, h - 1) for (b, h), c in sorted(self.classes.items()) if c == "3+"]

    def free_y(self) -> list[tuple[int, int]]:
        return [(b - 1, h - 1) for (b, h), c in sorted(self.classes.items()) if c != "1-"]


_COUNT_CACHE: dict[tuple, int] = {}


def count_v_spec(spec: VAlphaSpec, p: int, point_budget: int = DEFAULT_POINT_BUDGET) -> int:
    """Exhaustive point count of the patterned variety over F_p."""
    d = spec.d
    fx, fy = spec.free_x(), spec.free_y()
    nfree = len(fx) + len(fy)
    if d > 4:
        raise BudgetError(f"exhaustive mode handles rank <= 4, got {d}")
    if p ** nfree > point_budget:
        raise BudgetError(f"{p}^{nfree} points exceed the budget {point_budget}")
    cache_key = (spec.key(), p)
    if cache_key in _COUNT_CACHE:
        return _COUNT_CACHE[cache_key]

    pair2 = [(i, j) for i in range(d) for j in range(i + 2, d)]
    count = 0
    for ys in itertools.product(range(p), repeat=len(fy)):
        Y = [[0] * d for _ in range(d)]
        for (i, j), c in zip(fy, ys):
            Y[i][j] = c
        Y3 = {}
        for i, j in pair2:
            if j - i >= 3:
                Y3[(i, j)] = sum(
                    Y[i][k] * Y[k][l] * Y[l][j]
                    for k in range(i + 1, j)
                    for l in range(k + 1, j)
                ) % p
            else:
                Y3[(i, j)] = 0
        for xs in itertools.product(range(p), repeat=len(fx)):
            X = [[0] * d for _ in range(d)]
            for (i, j), c in zip(fx, xs):
                X[i][j] = c
            ok = True
            for i, j in pair2:
                comm = sum(X[i][k] * Y[k][j] - Y[i][k] * X[k][j] for k in range(i + 1, j)) % p
                if comm:
                    ok = False
                    break
                sq = sum(X[i][k] * X[k][j] for k in range(i + 1, j)) % p
                if sq != Y3[(i, j)]:
                    ok = False
                    break
            if ok:
                count += 1
    _COUNT_CACHE[cache_key] = count
    return count


def count_v_alpha(datum: LeadingTermDatum, p: int, point_budget: int = DEFAULT_POINT_BUDGET) -> int:
    return count_v_spec(VAlphaSpec.from_datum(datum), p, point_budget)


def _L(e: int, c: int = 1) -> LaurentPolyQ:
    return LaurentPolyQ.q_power(e, c)


_V2_TABLE = {"1-": LaurentPolyQ.one(), "2": _L(1), "3+": _L(2)}

_V3_TABLE = {
    ("1-", "1-", "1-"): LaurentPolyQ.one(),
    ("1-", "1-", "2"): _L(1),
    ("1-", "1-", "3+"): _L(2),
    ("1-", "2", "2"): _L(2),
    ("1-", "2", "3+"): _L(3),
    ("1-", "3+", "3+"): _L(4),
    ("2", "1-", "2"): _L(2),
    ("2", "1-", "3+"): _L(3),
    ("2", "2", "3+"): _L(4),
    ("2", "3+", "3+"): _L(4, 2) + _L(3, -1),
    ("3+", "1-", "3+"): _L(4),
    ("3+", "2", "3+"): _L(4, 2) + _L(3, -1),
    ("3+", "3+", "3+"): _L(4, 3) + _L(3, -2),
}


def symbolic_v_alpha(spec_or_datum: "VAlphaSpec | LeadingTermDatum") -> LaurentPolyQ:
    """Closed-form point count in q for rank <= 3 zero patterns."""
    spec = (
        spec_or_datum
        if isinstance(spec_or_datum, VAlphaSpec)
        else VAlphaSpec.from_datum(spec_or_datum)
    )
    if spec.d <= 1:
        return LaurentPolyQ.one()
    if spec.d == 2:
        return _V2_TABLE[spec.classes[(1, 2)]]
    if spec.d == 3:
        key = (spec.classes[(1, 2)], spec.classes[(2, 3)], spec.classes[(1, 3)])
        if key not in _V3_TABLE:
            raise ValueError(f"distance classes {key} are not realizable")
        return _V3_TABLE[key]
    raise ValueError(f"no closed form tabulated for rank {spec.d}")


# ---------------------------------------------------------------------------
# motive of the full staircase variety


class MotiveTable:
    """Memoized two-parameter motive recursion.

    table(a, b) is nonzero only for a >= b >= 0 with a = b mod 2; the
    seed is (0,0) -> 1 and the step splits off the last column pair by
    the kernel filtration position it lands in.
    """

    def __init__(self) -> None:
        self._memo: dict[tuple[int, int], LaurentPolyQ] = {(0, 0): LaurentPolyQ.one()}

    def get(self, a: int, b: int) -> LaurentPolyQ:
        if a < 0 or b < 0 or a < b or (a - b) % 2:
            return LaurentPolyQ.zero()
        if (a, b) in self._memo:
            return self._memo[(a, b)]
        mid = (a + b - 2) // 2
        out = (
            _L(b) * self.get(a - 2, b)
            + (_L(mid) - _L(b - 1)) * self.get(a - 1, b - 1)
            + (_L(a) - _L(mid)) * self.get(a, b - 2)
        )
        self._memo[(a, b)] = out
        return out


_MOTIVES = MotiveTable()


def staircase_motive(d: int) -> LaurentPolyQ:
    """Motive of the rank-d staircase variety as a polynomial in q."""
    if d < 0:
        raise ValueError("rank must be >= 0")
    total = LaurentPolyQ.zero()
    for b in range(d + 1):
        total = total + _MOTIVES.get(2 * d - b, b)
    return total


def brute_v_d(d: int, p: int, pair_budget: int = DEFAULT_PAIR_BUDGET) -> int:
    """Independent count of V_d(F_p): enumerate Y, solve XY=YX, filter X^2=Y^3."""
    slots = [(i, j) for i in range(d) for j in range(i + 1, d)]
    if p ** (2 * len(slots)) > pair_budget:
        raise BudgetError(f"{p}^{2 * len(slots)} pairs exceed the budget {pair_budget}")
    reachable = [(i, j) for i in range(d) for j in range(i + 2, d)]
    count = 0
    for ys in itertools.product(range(p), repeat=len(slots)):
        Y = [[0] * d for _ in range(d)]
        for (i, j), c in zip(slots, ys):
            Y[i][j] = c
        ymat = GFMatrix(Y, p)
        y3 = (ymat * ymat * ymat).rows
        # commuting X is a linear condition on the strictly upper slots
        eq_rows = []
        for i, j in reachable:
            row = [0] * len(slots)
            for idx, (a, b) in enumerate(slots):
                if a == i and b < j:
                    row[idx] = (row[idx] + Y[b][j]) % p
                if b == j and a > i:
                    row[idx] = (row[idx] - Y[i][a]) % p
            eq_rows.append(row)
        if eq_rows:
            sol_basis = GFMatrix(eq_rows, p).kernel_basis()
        else:
            sol_basis = [
                tuple(1 if k == idx else 0 for k in range(len(slots)))
                for idx in range(len(slots))
            ]
        for coeffs in itertools.product(range(p), repeat=len(sol_basis)):
            xvec = [0] * len(slots)
            for c, bas in zip(coeffs, sol_basis):
                if c:
                    xvec = [(v + c * bv) % p for v, bv in zip(xvec, bas)]
            X = [[0] * d for _ in range(d)]
            for (i, j), c in zip(slots, xvec):
                X[i][j] = c
            ok = True
            for i, j in reachable:
                sq = sum(X[i][k] * X[k][j] for k in range(i + 1, j)) % p
                if sq != y3[i][j]:
                    ok = False
                    break
            if ok:
                count += 1
    return count


def enumerate_v_d_points(d: int, p: int, pair_budget: int = DEFAULT_PAIR_BUDGET):
    """Yield all (X, Y) GFMatrix pairs in V_d(F_p)."""
    slots = [(i, j) for i in range(d) for j in range(i + 1, d)]
    if p ** (2 * len(slots)) > pair_budget:
        raise BudgetError("pair enumeration exceeds budget")
    for vals in itertools.product(range(p), repeat=2 * len(slots)):
        X = [[0] * d for _ in range(d)]
        Y = [[0] * d for _ in range(d)]
        for (i, j), c in zip(slots, vals[: len(slots)]):
            X[i][j] = c
        for (i, j), c in zip(slots, vals[len(slots) :]):
            Y[i][j] = c
        xm, ym = GFMatrix(X, p), GFMatrix(Y, p)
        if xm * ym == ym * xm and xm * xm == ym * ym * ym:
            yield xm, ym


# ---------------------------------------------------------------------------
# module profiles through the matrix factorization operator


class AbProfile(NamedTuple):
    a: int  # dim ker of the factorization operator on M + M
    b: int  # dim of its image
    w0: int  # dim of the inner filtration step (image of the partner operator)
    w1: int
    w2: int


def _module_ops(X: GFMatrix, Y: GFMatrix) -> tuple[GFMatrix, GFMatrix, GFMatrix]:
    """Operators A, A', T on M + M for the module given by (X, Y)."""
    p = X.p
    m = X.shape[0]
    Y2 = Y * Y
    Z = GFMatrix.zero(m, m, p)
    I = GFMatrix.identity(m, p)
    A = GFMatrix.block2(X, -Y2, -Y, X)
    Ap = GFMatrix.block2(X, Y2, Y, X)
    T = GFMatrix.block2(Z, Y, I, Z)
    return A, Ap, T


def _check_module(X: GFMatrix, Y: GFMatrix) -> None:
    if X.p != Y.p or X.shape != Y.shape or X.shape[0] != X.shape[1]:
        raise ValueError("X, Y must be square over the same field")
    if X * Y != Y * X or X * X != Y * Y * Y:
        raise ValueError("(X, Y) does not satisfy the cusp relations")


def ab_profile(X: GFMatrix, Y: GFMatrix) -> AbProfile:
    """Kernel/image profile of the factorization operator for (X, Y)."""
    _check_module(X, Y)
    p = X.p
    A, Ap, T = _module_ops(X, Y)
    ker = A.kernel_basis()
    a = len(ker)
    b = 2 * X.shape[0] - a  # rank-nullity on M + M
    im_ap = Ap.image_basis()
    rows, pivots = _rref(im_ap, p)
    w0 = len(rows)
    # W1 = vectors of ker A whose T-image falls into im A'
    residuals = [_reduce_mod(rows, pivots, T.apply(v), p) for v in ker]
    res_rank = len(_rref(residuals, p)[0])
    w1 = a - res_rank
    return AbProfile(a=a, b=b, w0=w0, w1=w1, w2=a)


def classify_kernel_vector(X: GFMatrix, Y: GFMatrix, u: Sequence[int]) -> int:
    """Smallest filtration step containing u: 0, 1 or 2; u must lie in ker A."""
    _check_module(X, Y)
    p = X.p
    A, Ap, T = _module_ops(X, Y)
    if any(A.apply(u)):
        raise ValueError("vector is not in the kernel")
    rows, pivots = _rref(Ap.image_basis(), p)
    if _in_span(rows, pivots, u, p):
        return 0
    if _in_span(rows, pivots, T.apply(u), p):
        return 1
    return 2


def extend_point(X: GFMatrix, Y: GFMatrix, z: Sequence[int], w: Sequence[int]) -> tuple[GFMatrix, GFMatrix]:
    """Append a new last column pair (z, w); stays in the variety iff (z, w) in ker A."""
    p = X.p
    m = X.shape[0]
    if len(z) != m or len(w) != m:
        raise ValueError("column length mismatch")
    xr = [list(row) + [z[i]] for i, row in enumerate(X.rows)] + [[0] * (m + 1)]
    yr = [list(row) + [w[i]] for i, row in enumerate(Y.rows)] + [[0] * (m + 1)]
    return GFMatrix(xr, p), GFMatrix(yr, p)


def h0_t_exact(X: GFMatrix, Y: GFMatrix) -> bool:
    """On H0 = ker A / im A', the induced T has image equal to kernel."""
    _check_module(X, Y)
    p = X.p
    A, Ap, T = _module_ops(X, Y)
    ker = A.kernel_basis()
    brows, bpivots = _rref(Ap.image_basis(), p)
    # quotient representatives: kernel vectors independent mod im A'
    reps: list[tuple[int, ...]] = []
    rrows: list[tuple[int, ...]] = []
    rpivots: list[int] = []
    for v in ker:
        red = _reduce_mod(brows, bpivots, v, p)
        red2 = _reduce_mod(rrows, rpivots, red, p)
        lead = next((i for i, c in enumerate(red2) if c), None)
        if lead is None:
            continue
        reps.append(v)
        inv = pow(red2[lead], p - 2, p)
        rrows.append(tuple(c * inv % p for c in red2))
        rpivots.append(lead)
    h = len(reps)
    if h == 0:
        return True
    # coordinates of T(rep) in the combined basis (im A' part discarded)
    combined = list(brows) + reps
    cols = list(zip(*combined))
    mat = GFMatrix(cols, p)
    t0_cols = []
    for v in reps:
        tv = T.apply(v)
        sol = _solve(mat, tv, p)
        assert sol is not None, "T does not preserve the kernel"
        t0_cols.append(sol[len(brows) :])
    t0 = GFMatrix(list(zip(*t0_cols)), p)
    if not (t0 * t0).is_zero():
        return False
    return 2 * t0.rank() == h


def _solve(mat: GFMatrix, vec: Sequence[int], p: int) -> Optional[tuple[int, ...]]:
    """One solution of mat * x = vec, or None."""
    n, m = mat.shape
    aug = [list(row) + [v] for row, v in zip(mat.rows, vec)]
    rows, pivots = _rref(aug, p)
    sol = [0] * m
    for r, piv in zip(rows, pivots):
        if piv == m:
            return None
        sol[piv] = r[m]
    return tuple(sol)


# ---------------------------------------------------------------------------
# CSV export


def staircase_table_csv(max_d: int) -> str:
    lines = ["d,polynomial"]
    for d in range(max_d + 1):
        lines.append(f"{d},{staircase_motive(d)}")
    return "\n".join(lines) + "\n"


def motive_table_csv(pairs: Iterable[tuple[int, int]]) -> str:
    lines = ["a,b,polynomial"]
    for a, b in pairs:
        lines.append(f"{a},{b},{_MOTIVES.get(a, b)}")
    return "\n".join(lines) + "\n"
