"""The six-point spectral non-tile in Z_8^3.

The exact 6x6 log-Hadamard matrix ``H`` (denominator 8) factors as
``8H = L A`` mod 8 with inner dimension 3.  The columns of ``A`` are then a
spectral set in Z_8^3 with the rows of ``L`` as spectrum, while 6 does not
divide 512, so they cannot tile.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .group import GroupSpec, PointSet, make_group
from .hadamard import IntMatrixModN, RationalMatrix, is_log_hadamard, mod_rank, verify_decomposition
from .tiling import NO, DecisionReport, is_spectral, is_tile, verify_spectrum

MODULUS = 8

H_ROWS = (
    (0, 0, 0, 0, 0, 0),
    (0, 4, 2, 6, 6, 2),
    (0, 2, 4, 1, 5, 6),
    (0, 6, 3, 4, 2, 7),
    (0, 6, 7, 2, 4, 3),
    (0, 2, 6, 5, 1, 4),
)
A_ROWS = (
    (0, 2, 4, 1, 5, 6),
    (0, 6, 3, 4, 2, 7),
    (0, 6, 7, 2, 4, 3),
)
L_ROWS = (
    (0, 0, 0),
    (0, 1, 1),
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (7, 1, 1),
)


def paper_fixtures() -> tuple[RationalMatrix, IntMatrixModN, IntMatrixModN]:
    """The stored ``(H, L, A)`` triple."""
    return (
        RationalMatrix(MODULUS, H_ROWS),
        IntMatrixModN(MODULUS, L_ROWS),
        IntMatrixModN(MODULUS, A_ROWS),
    )


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CounterexampleReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def verify_counterexample(
    H: Optional[RationalMatrix] = None,
    L: Optional[IntMatrixModN] = None,
    A: Optional[IntMatrixModN] = None,
    expected_rank: int = 3,
) -> CounterexampleReport:
    """Run the five checks; any fixture can be swapped for a perturbed one."""
    H0, L0, A0 = paper_fixtures()
    H, L, A = H or H0, L or L0, A or A0
    N = A.modulus
    g = make_group([N] * A.shape[0])
    points = PointSet.from_columns(g, A.rows)
    spectrum = PointSet(g, L.rows)
    rep = CounterexampleReport()

    rep.checks.append(Check("log-hadamard", is_log_hadamard(H), f"{H.shape[0]}x{H.shape[0]}, denominator {H.den}"))

    ok = verify_decomposition(H, L, A)
    rep.checks.append(Check("decomposition", ok, f"{N}H == L A (mod {N})"))

    r = mod_rank(H.reduced().scaled(N)) if N % H.reduced().den == 0 else None
    rank = r.rank if r else None
    rep.checks.append(Check("mod-rank", rank == expected_rank, f"mod-{N} rank of {N}H is {rank}"))

    ok = verify_spectrum(g, points, spectrum)
    rep.checks.append(Check("spectral", ok, f"rows of L {'form' if ok else 'do not form'} a spectrum in Z_{N}^{g.dim}"))

    tile = is_tile(g, points)
    rep.checks.append(Check("non-tiling", tile.verdict == NO,
                            f"{tile.method}: {tile.stats.get('reason', tile.verdict)}"))
    return rep


@dataclass
class ExpansionReport:
    n: int
    group: GroupSpec
    points: PointSet
    tile: DecisionReport
    spectral: Optional[DecisionReport]
    lifted_spectrum_ok: bool


def expanded_set(n: int) -> tuple[GroupSpec, PointSet]:
    """``A + 8[0,n)^3`` inside Z_{8n}^3."""
    if n < 1:
        raise ValueError("n must be >= 1")
    g = make_group([MODULUS * n] * 3)
    cols = list(zip(*A_ROWS))
    pts = tuple(
        tuple(a + MODULUS * b for a, b in zip(col, shift))
        for col in cols
        for shift in itertools.product(range(n), repeat=3)
    )
    return g, PointSet(g, pts)


def lifted_spectrum(n: int) -> PointSet:
    """``n L + [0,n)^3``: the product spectrum of the expanded set."""
    g = make_group([MODULUS * n] * 3)
    return PointSet(g, tuple(
        tuple(n * l + c for l, c in zip(row, shift))
        for row in L_ROWS
        for shift in itertools.product(range(n), repeat=3)
    ))


def expand_counterexample(n: int, budget: Optional[float] = None, search: bool = True) -> ExpansionReport:
    """Tiling and spectrality of the expanded set in Z_{8n}^3.

    The spectrality search is bounded by ``budget`` seconds and may come back
    ``unknown``; the explicit product spectrum is checked regardless.
    """
    g, pts = expanded_set(n)
    tile = is_tile(g, pts, budget)
    spectral = is_spectral(g, pts, budget) if search else None
    return ExpansionReport(n, g, pts, tile, spectral, verify_spectrum(g, pts, lifted_spectrum(n)))
