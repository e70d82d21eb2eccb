"""Complex and log-Hadamard matrices.

Log-Hadamard matrices are kept as integer numerators over a common
denominator, entries taken mod 1.  Orthogonality of two rows is then a
vanishing sum of ``den``-th roots of unity, which :mod:`fuglede.cyclo`
decides exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .cyclo import CyclotomicSum, root_sum_is_zero
from .errors import DimensionMismatch, FugledeError

MAX_CANONICAL_ORDER = 5


@dataclass(frozen=True)
class RationalMatrix:
    """Entries ``rows[i][j] / den`` mod 1."""

    den: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.den < 1:
            raise FugledeError("denominator must be >= 1")
        rows = tuple(tuple(int(x) % self.den for x in r) for r in self.rows)
        if len({len(r) for r in rows}) > 1:
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_fractions(cls, entries: Sequence[Sequence]) -> "RationalMatrix":
        fr = [[Fraction(x) for x in r] for r in entries]
        den = 1
        for r in fr:
            for x in r:
                den = den * x.denominator // gcd(den, x.denominator)
        return cls(den, tuple(tuple(int(x * den) for x in r) for r in fr))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.rows[i][j], self.den)

    def reduced(self) -> "RationalMatrix":
        """Same matrix over the smallest common denominator."""
        g = self.den
        for r in self.rows:
            for x in r:
                g = gcd(g, x)
        return RationalMatrix(self.den // g, tuple(tuple(x // g for x in r) for r in self.rows))

    def with_den(self, den: int) -> "RationalMatrix":
        if den % self.den:
            raise FugledeError(f"{den} is not a multiple of denominator {self.den}")
        f = den // self.den
        return RationalMatrix(den, tuple(tuple(x * f for x in r) for r in self.rows))

    def scaled(self, N: int) -> "IntMatrixModN":
        """The integer matrix ``N * H`` mod N; needs ``den | N``."""
        h = self.with_den(N)
        return IntMatrixModN(N, h.rows, ncols=self.shape[1])

    def to_complex(self) -> np.ndarray:
        num = np.array(self.rows, dtype=float).reshape(self.shape)
        return np.exp(2j * np.pi * num / self.den)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        a, b = self.reduced(), other.reduced()
        return a.den == b.den and a.rows == b.rows

    def __hash__(self):
        r = self.reduced()
        return hash((r.den, r.rows))


@dataclass(frozen=True)
class IntMatrixModN:
    modulus: int
    rows: tuple[tuple[int, ...], ...]
    ncols: int | None = field(default=None)

    def __post_init__(self):
        if self.modulus < 1:
            raise FugledeError("modulus must be >= 1")
        rows = tuple(tuple(int(x) % self.modulus for x in r) for r in self.rows)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix rows")
        ncols = widths.pop() if widths else (self.ncols or 0)
        if self.ncols is not None and rows and ncols != self.ncols:
            raise DimensionMismatch(f"rows have width {ncols}, declared {self.ncols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __matmul__(self, other: "IntMatrixModN") -> "IntMatrixModN":
        if self.modulus != other.modulus:
            raise FugledeError(f"moduli differ: {self.modulus} vs {other.modulus}")
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise DimensionMismatch(f"cannot multiply {n}x{k} by {k2}x{m}")
        cols = list(zip(*other.rows)) if other.rows else [()] * m
        out = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows
        )
        return IntMatrixModN(self.modulus, out, ncols=m)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)


def is_hadamard(M, tol: float = 1e-9) -> bool:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"Hadamard test needs a square matrix, got shape {M.shape}")
    k = M.shape[0]
    if not np.all(np.isfinite(M)):
        return False
    if np.any(np.abs(np.abs(M) - 1) > tol):
        return False
    gram = M @ M.conj().T
    off = gram - np.diag(np.diag(gram))
    return bool(np.all(np.abs(off) <= k * tol) and np.all(np.abs(np.diag(gram) - k) <= k * tol))


def is_log_hadamard(H: RationalMatrix) -> bool:
    if not H.is_square:
        raise DimensionMismatch(f"log-Hadamard test needs a square matrix, got {H.shape}")
    den = H.den
    for r1, r2 in itertools.combinations(H.rows, 2):
        s = CyclotomicSum.from_exponents(den, (a - b for a, b in zip(r1, r2)))
        if not root_sum_is_zero(s):
            return False
    return True


def fourier_log_hadamard(k: int) -> RationalMatrix:
    if k < 1:
        raise FugledeError("order must be >= 1")
    return RationalMatrix(k, tuple(tuple(m * j % k for j in range(k)) for m in range(k)))


def dita4_log(t: int, N: int) -> RationalMatrix:
    """The 4x4 family with parameter t/N (N even)."""
    if N < 2 or N % 2:
        raise FugledeError(f"the 4x4 family needs an even denominator, got {N}")
    if not 0 <= t < N:
        raise FugledeError(f"parameter numerator {t} outside [0, {N})")
    h = N // 2
    return RationalMatrix(N, (
        (0, 0, 0, 0),
        (0, 0, h, h),
        (0, h, h + t, t),
        (0, h, t, h + t),
    ))


def verify_factorization(M: IntMatrixModN, L: IntMatrixModN, A: IntMatrixModN) -> bool:
    """``M == L @ A`` mod N (dimension or modulus mismatches raise)."""
    if not (M.modulus == L.modulus == A.modulus):
        raise FugledeError(
            f"moduli differ: M {M.modulus}, L {L.modulus}, A {A.modulus}"
        )
    if L.shape[0] != M.shape[0] or A.shape[1] != M.shape[1] or L.shape[1] != A.shape[0]:
        raise DimensionMismatch(
            f"cannot factor {M.shape} as {L.shape} times {A.shape}"
        )
    return (L @ A).rows == M.rows


def verify_decomposition(H: RationalMatrix, L: IntMatrixModN, A: IntMatrixModN) -> bool:
    """True iff ``L @ A`` mod N equals the integer matrix ``N * H``."""
    N = L.modulus
    if A.modulus != N:
        raise FugledeError(f"moduli differ: L {N}, A {A.modulus}")
    if not H.is_square:
        raise DimensionMismatch("H must be square")
    k = H.shape[0]
    if L.shape[0] != k or A.shape[1] != k or L.shape[1] != A.shape[0]:
        raise DimensionMismatch(
            f"H is {k}x{k} but L is {L.shape[0]}x{L.shape[1]} and A is {A.shape[0]}x{A.shape[1]}"
        )
    H = H.reduced()
    if N % H.den:
        return False
    return verify_factorization(H.scaled(N), L, A)


# --- Smith normal form over the integers ---------------------------------


def smith_form(M: Sequence[Sequence[int]]):
    """Return ``(diag, P_inv, Q_inv)`` with ``M == P_inv @ S @ Q_inv`` over Z.

    ``S`` is the Smith normal form (``diag[i] | diag[i+1]``, all >= 0) and both
    transforms are unimodular.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if A else 0
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    # A' = E A  ->  P' = P E^-1 (column ops); A' = A F  ->  Q' = F^-1 Q (row ops)
    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        for r in P:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        Q[i], Q[j] = Q[j], Q[i]

    def add_row(dst, src, c):
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        for r in P:
            r[src] -= c * r[dst]

    def add_col(dst, src, c):
        for r in A:
            r[dst] += c * r[src]
        Q[src] = [a - c * b for a, b in zip(Q[src], Q[dst])]

    diag = []
    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            for r in P:
                r[t] = -r[t]
        diag.append(A[t][t])
    return diag, P, Q


@dataclass(frozen=True)
class ModRank:
    rank: int
    L: IntMatrixModN
    A: IntMatrixModN
    invariant_factors: tuple[int, ...]


def mod_rank(M: IntMatrixModN) -> ModRank:
    """Smallest inner dimension of a factorization ``M = L @ A`` mod N.

    Equals the minimal number of generators of the row module of ``M``,
    read off the Smith form as the count of diagonal entries not divisible
    by N.
    """
    N = M.modulus
    rows, cols = M.shape
    diag, P, Q = smith_form(M.rows) if rows and cols else ([], [], [])
    keep = [i for i, s in enumerate(diag) if s % N]
    d = len(keep)
    L = IntMatrixModN(N, tuple(tuple(P[r][i] * diag[i] for i in keep) for r in range(rows)), ncols=d)
    A = IntMatrixModN(N, tuple(tuple(Q[i]) for i in keep), ncols=cols)
    if not verify_factorization(M, L, A):
        raise AssertionError("Smith form factorization failed to verify")
    inv = tuple(N // gcd(diag[i], N) for i in keep)
    return ModRank(d, L, A, inv)


# --- canonicalization up to Hadamard equivalence ---------------------------


@dataclass(frozen=True)
class Canonical:
    kind: str  # "fourier" | "dita4" | "none"
    parameter: Fraction | None
    row_perm: tuple[int, ...] | None
    col_perm: tuple[int, ...] | None
    form: RationalMatrix | None

    def __str__(self):
        if self.kind == "dita4":
            return f"dita4(t={self.parameter})"
        return self.kind


def permute_dephase(H: RationalMatrix, row_perm, col_perm) -> RationalMatrix:
    """Reorder rows and columns, then zero the first row and first column."""
    den = H.den
    P = [[H.rows[r][c] for c in col_perm] for r in row_perm]
    top = P[0]
    return RationalMatrix(den, tuple(
        tuple((x - top[j] - row[0] + top[0]) % den for j, x in enumerate(row)) for row in P
    ))


def _dephased_variants(H: RationalMatrix):
    """Yield ``(row_perm, first_col, dephased rows)`` in canonical search order."""
    k = H.shape[0]
    den = H.den
    for rp in itertools.permutations(range(k)):
        top = H.rows[rp[0]]
        for c in range(k):
            rows = [
                tuple((H.rows[r][j] - top[j] - H.rows[r][c] + top[c]) % den for j in range(k))
                for r in rp
            ]
            yield rp, c, rows


def canonicalize_small(H: RationalMatrix) -> Canonical:
    """Bring a log-Hadamard matrix of order <= 5 to Fourier or 4x4-family form.

    Searches every row permutation and choice of first column; the remaining
    columns are matched against the target.  Among all matches the one with
    the lexicographically least entry sequence wins.
    """
    if not H.is_square:
        raise DimensionMismatch("canonicalization needs a square matrix")
    k = H.shape[0]
    if k > MAX_CANONICAL_ORDER:
        raise FugledeError(f"canonicalization only handles order <= {MAX_CANONICAL_ORDER}, got {k}")
    if not is_log_hadamard(H):
        raise FugledeError("input is not log-Hadamard")
    H = H.reduced()
    if k == 4:
        return _canonicalize_dita4(H)
    target = fourier_log_hadamard(k).with_den(H.den) if H.den % k == 0 else None
    if target is None:
        return Canonical("none", None, None, None, None)
    want = list(zip(*target.rows))
    for rp, c, rows in _dephased_variants(H):
        cols = list(zip(*rows))
        if cols[c] != want[0]:
            continue
        perm = [c]
        free = [j for j in range(k) if j != c]
        for w in want[1:]:
            j = next((j for j in free if cols[j] == w), None)
            if j is None:
                break
            perm.append(j)
            free.remove(j)
        else:
            return Canonical("fourier", None, tuple(rp), tuple(perm), target)
    return Canonical("none", None, None, None, None)


def _canonicalize_dita4(H: RationalMatrix) -> Canonical:
    den = H.den
    if den % 2:
        return Canonical("none", None, None, None, None)
    best = None
    for rp, c, rows in _dephased_variants(H):
        rest = [j for j in range(4) if j != c]
        for tail in itertools.permutations(rest):
            cp = (c,) + tail
            form = tuple(tuple(r[j] for j in cp) for r in rows)
            t = form[3][2]
            cand = dita4_log(t, den).rows
            if form == cand and (best is None or form < best[0]):
                best = (form, rp, cp, t)
    if best is None:
        return Canonical("none", None, None, None, None)
    form, rp, cp, t = best
    return Canonical("dita4", Fraction(t, den), tuple(rp), cp, RationalMatrix(den, form))


def dita4_orbit(H: RationalMatrix) -> set[Fraction]:
    """Every 4x4-family parameter reachable from ``H`` by exhaustive search.

    Brute force over all (4!)^2 row/column orders; used as a reference for
    :func:`canonicalize_small`.
    """
    H = H.reduced()
    if H.den % 2:
        H = H.with_den(2 * H.den)
    out = set()
    for rp in itertools.permutations(range(4)):
        for cp in itertools.permutations(range(4)):
            form = permute_dephase(H, rp, cp)
            t = form.rows[3][2]
            if form.rows == dita4_log(t, form.den).rows:
                out.add(Fraction(t, form.den))
    return out
