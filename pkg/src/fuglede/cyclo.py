"""Exact character sums via cyclotomic divisibility.

A sum ``sum_k c_k zeta_M^k`` vanishes iff the polynomial ``sum_k c_k x^k`` is
divisible by the M-th cyclotomic polynomial.  Everything here is integer
arithmetic; floating point only shows up in :meth:`CyclotomicSum.value`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import FugledeError
from .group import GroupSpec, PointSet

IntPolynomial = tuple[int, ...]  # ascending degree


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def poly_mul(p: Sequence[int], q: Sequence[int]) -> IntPolynomial:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_divmod_monic(p: Sequence[int], q: Sequence[int]) -> tuple[IntPolynomial, IntPolynomial]:
    """Divide ``p`` by the monic polynomial ``q`` over the integers."""
    if not q or q[-1] != 1:
        raise FugledeError("divisor must be monic")
    rem = list(p)
    dq = len(q) - 1
    if len(rem) - 1 < dq:
        return (0,), _trim(rem)
    quot = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c:
            quot[i - dq] = c
            for j in range(dq + 1):
                rem[i - dq + j] -= c * q[j]
    return _trim(quot), _trim(rem[:dq] or [0])


def _trim(p: Sequence[int]) -> IntPolynomial:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p) if p else (0,)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPolynomial:
    """Phi_n, from x^n - 1 divided by Phi_d for every proper divisor d."""
    if n < 1:
        raise FugledeError("cyclotomic polynomial needs n >= 1")
    p: IntPolynomial = (-1,) + (0,) * (n - 1) + (1,)
    for d in _divisors(n)[:-1]:
        p, r = poly_divmod_monic(p, cyclotomic_poly(d))
        assert r == (0,)
    return p


@dataclass(frozen=True)
class CyclotomicSum:
    """``sum_k counts[k] * exp(2 pi i k / order)``."""

    order: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise FugledeError("order must be positive")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != self.order:
            raise FugledeError(f"expected {self.order} counts, got {len(self.counts)}")

    @classmethod
    def from_exponents(cls, order: int, exponents) -> "CyclotomicSum":
        counts = [0] * order
        for e in exponents:
            counts[e % order] += 1
        return cls(order, tuple(counts))

    def value(self) -> complex:
        M = self.order
        return sum(c * cmath.exp(2j * cmath.pi * k / M) for k, c in enumerate(self.counts) if c)

    def is_zero(self) -> bool:
        return root_sum_is_zero(self)


def root_sum_is_zero(s: CyclotomicSum) -> bool:
    _, r = poly_divmod_monic(s.counts, cyclotomic_poly(s.order))
    return r == (0,)


def indicator_transform(g: GroupSpec, S: PointSet, lam) -> CyclotomicSum:
    """Fourier transform of the indicator of ``S`` at the character ``lam``."""
    if len(S) == 0:
        raise FugledeError("transform of the empty set is identically zero")
    lam = g.element(lam)
    return CyclotomicSum.from_exponents(
        g.exponent, (g.pairing_numerator(lam, a) for a in S.points)
    )


def zero_set(g: GroupSpec, S: PointSet) -> PointSet:
    """Characters where the transform of the indicator of ``S`` vanishes."""
    g.require_enumerable()
    if len(S) == 0:
        raise FugledeError("zero set of the empty set is undefined")
    M = g.exponent
    phi = cyclotomic_poly(M)
    # integer weights so that pairing_numerator(lam, a) = sum_i lam_i * w[a][i] mod M
    weights = [tuple(x * (M // n) for x, n in zip(a, g.moduli)) for a in S.points]
    found = []
    for idx in range(1, g.order):
        lam = g.element_at(idx)
        counts = [0] * M
        for w in weights:
            counts[sum(l * x for l, x in zip(lam, w)) % M] += 1
        if poly_divmod_monic(counts, phi)[1] == (0,):
            found.append(idx)
    return PointSet.from_indices(g, found)
