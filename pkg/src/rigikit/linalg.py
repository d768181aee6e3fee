"""Linear-algebra kernels: exact rational rank/nullspace and GF(p) rank.

Everything here is deterministic and allocation-light; matrices are small
(tens of rows, 2|V| columns), so plain Python integer arithmetic is the
right tool.  The prime field is used by the randomized rank oracle; exact
rational elimination backs the certified geometric computations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

# Mersenne prime; large enough that random-evaluation rank defects have
# probability ~ |E|*|V| / 2**61 per trial.
PRIME = (1 << 61) - 1


class EchelonModP:
    """Incremental row-echelon accumulator over GF(p).

    Rows may be fed one at a time; each is reduced against the pivots seen
    so far, which makes greedy independence scans a single-pass operation.
    """

    def __init__(self, ncols: int, p: int = PRIME):
        self.ncols = ncols
        self.p = p
        self.pivots: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def residual(self, row) -> list[int] | None:
        """Reduce ``row`` against the current echelon.

        Returns the reduced row (leading at a pivot-free column) when the
        row is independent of the rows added so far, or None when it lies
        in their span.  The echelon itself is not modified.
        """
        p = self.p
        ncols = self.ncols
        work = [x % p for x in row]
        pivots = self.pivots
        for c in range(ncols):
            x = work[c]
            if x == 0:
                continue
            piv = pivots.get(c)
            if piv is None:
                return work
            for j in range(c, ncols):
                work[j] = (work[j] - x * piv[j]) % p
        return None

    def add(self, row) -> bool:
        """Insert ``row``; returns True when it increased the rank."""
        work = self.residual(row)
        if work is None:
            return False
        c = next(i for i, x in enumerate(work) if x)
        inv = pow(work[c], self.p - 2, self.p)
        self.pivots[c] = [(x * inv) % self.p for x in work]
        return True


def rank_mod_p(rows, ncols: int, p: int = PRIME) -> int:
    """Rank over GF(p) of an iterable of integer rows."""
    ech = EchelonModP(ncols, p)
    for row in rows:
        ech.add(row)
    return ech.rank


def _scaled_int_row(row) -> list[int]:
    """Clear denominators of a row of Fractions/ints (rank-preserving)."""
    fracs = [Fraction(x) for x in row]
    scale = 1
    for x in fracs:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    out = [int(x * scale) for x in fracs]
    g = 0
    for x in out:
        g = gcd(g, x)
    if g > 1:
        out = [x // g for x in out]
    return out


def exact_rank(rows, ncols: int) -> int:
    """Rank over the rationals, by fraction-free integer elimination."""
    m = []
    for row in rows:
        r = _scaled_int_row(row)
        if any(r):
            m.append(r)
    rank = 0
    col = 0
    nrows = len(m)
    while rank < nrows and col < ncols:
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        a = pr[col]
        for i in range(rank + 1, nrows):
            b = m[i][col]
            if not b:
                continue
            ri = m[i]
            for j in range(col, ncols):
                ri[j] = ri[j] * a - pr[j] * b
            g = 0
            for x in ri:
                g = gcd(g, x)
            if g > 1:
                for j in range(col, ncols):
                    ri[j] //= g
        rank += 1
        col += 1
    return rank


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Basis of the rational null space of the given rows.

    Returned vectors have length ``ncols``; the basis is the canonical one
    obtained from reduced row echelon form (one free column per vector).
    """
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        inv = 1 / pr[col]
        for j in range(col, ncols):
            pr[j] *= inv
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                ri = m[i]
                for j in range(col, ncols):
                    ri[j] -= f * pr[j]
        pivots.append(col)
        rank += 1
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None
