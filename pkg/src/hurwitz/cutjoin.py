"""Evolution of the full factorization generating series, one u-order at a time.

The generating series Phi(u, x, z, p) collects |C_alpha| c_g(alpha) with
weight u^r/r! x^n/n! z^g p_alpha, r = n + m + 2(g - 1).  Multiplying a
factorization by one more transposition either joins two cycles (producing
p_{i+j} from p_i p_j, with the genus-raising variant carrying z) or cuts one
(p_i p_j from p_{i+j}), which makes Phi satisfy a first-order PDE in u whose
right side is quadratic.  Reading that PDE as a recurrence on the u-orders
gives

    Phi_{r+1} = 1/2 * [ sum_{i,j} i j p_{i+j} z d2(Phi_r)/dp_i dp_j
                        + sum_{i,j} (i+j) p_i p_j d(Phi_r)/dp_{i+j}
                        + sum_{s} C(r,s) sum_{i,j} i j p_{i+j}
                              d(Phi_s)/dp_i * d(Phi_{r-s})/dp_j ]

with the single seed Phi_0 = x p_1 (the empty factorization of the one-cycle
in S_1).  The binomial weights come from the 1/r! normalization living in
the USeries index.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .partitions import Partition, class_size, partitions_of
from .series import PSeries, Truncation, USeries

_HALF = Fraction(1, 2)


def _pair_pexp(i: int, j: int) -> tuple[tuple[int, int], ...]:
    return ((i, 2),) if i == j else ((min(i, j), 1), (max(i, j), 1))


def _join_handle(diffs: dict[int, PSeries], trunc: Truncation) -> PSeries:
    """sum_{i,j} i j p_{i+j} z * second partials (the genus-raising join)."""
    acc = PSeries.zero(trunc)
    if trunc.G < 1:
        return acc
    for k in range(2, trunc.K + 1):
        for i in range(1, k):
            j = k - i
            second = diffs[i].pdiff(j)
            if not second.is_zero:
                acc = acc + second.shift(i * j, z=1, p=((k, 1),))
    return acc


def _cut(diffs: dict[int, PSeries], trunc: Truncation) -> PSeries:
    """sum_{i,j} (i+j) p_i p_j * d/dp_{i+j} (one cycle cut into two)."""
    acc = PSeries.zero(trunc)
    for k in range(2, trunc.K + 1):
        dk = diffs[k]
        if dk.is_zero:
            continue
        for i in range(1, k):
            acc = acc + dk.shift(k, p=_pair_pexp(i, k - i))
    return acc


def _join_cross(
    da: dict[int, PSeries], db: dict[int, PSeries], trunc: Truncation
) -> PSeries:
    """sum_{i,j} i j p_{i+j} * (d a/dp_i)(d b/dp_j) (the genus-preserving join)."""
    acc = PSeries.zero(trunc)
    for k in range(2, trunc.K + 1):
        for i in range(1, k):
            j = k - i
            if da[i].is_zero or db[j].is_zero:
                continue
            acc = acc + (da[i] * db[j]).shift(i * j, p=((k, 1),))
    return acc


def _diffs(f: PSeries) -> dict[int, PSeries]:
    return {i: f.pdiff(i) for i in range(1, f.trunc.K + 1)}


def rhs(f: PSeries, g_partner: PSeries) -> PSeries:
    """The full cut-and-join right side, bilinear in (f, g_partner).

    The quadratic join term is evaluated on the pair; with g_partner = f
    this is the PDE right side itself.
    """
    f._check(g_partner)
    trunc = f.trunc
    df = _diffs(f)
    dg = df if g_partner is f else _diffs(g_partner)
    total = _join_handle(df, trunc) + _cut(df, trunc) + _join_cross(df, dg, trunc)
    return total * _HALF


class CutJoinState:
    """Orders Phi_0..Phi_r of the evolution, with their p-derivatives cached."""

    __slots__ = ("phi", "_diffs")

    def __init__(self, phi: USeries, diffs: tuple[dict[int, PSeries], ...] | None = None):
        self.phi = phi
        if diffs is None:
            diffs = tuple(_diffs(f) for f in phi.coeffs)
        self._diffs = diffs

    @property
    def trunc(self) -> Truncation:
        return self.phi.trunc

    @property
    def order(self) -> int:
        return len(self.phi.coeffs) - 1


def initial_state(trunc: Truncation) -> CutJoinState:
    """Seed Phi_0 = x p_1: the empty factorization of the 1-cycle."""
    phi0 = PSeries.term(trunc, 1, x=1, p=((1, 1),))
    return CutJoinState(USeries(trunc, (phi0,)))


def step(state: CutJoinState) -> CutJoinState:
    """Extend the state by the next u-order."""
    trunc = state.trunc
    r = state.order
    dr = state._diffs[r]
    acc = _join_handle(dr, trunc) + _cut(dr, trunc)
    for s in range(r + 1):
        cross = _join_cross(state._diffs[s], state._diffs[r - s], trunc)
        if not cross.is_zero:
            acc = acc + cross * comb(r, s)
    nxt = acc * _HALF
    return CutJoinState(
        USeries(trunc, state.phi.coeffs + (nxt,)),
        state._diffs + (_diffs(nxt),),
    )


@lru_cache(maxsize=None)
def evolve(trunc: Truncation) -> CutJoinState:
    """State holding Phi_0..Phi_R for the given truncation."""
    state = initial_state(trunc)
    for _ in range(trunc.R):
        state = step(state)
    return state


def extract_c(state: CutJoinState, alpha: Partition, g: int) -> int:
    """Recover c_g(alpha) = [x^n z^g p_alpha] Phi_r * n! / |C_alpha|."""
    n, m = alpha.n, alpha.m
    if n < 1:
        raise ValueError("alpha must be a partition of n >= 1")
    r = n + m + 2 * (g - 1)
    trunc = state.trunc
    if n > trunc.N or g > trunc.G or r > state.order:
        raise ValueError(
            f"query (n={n}, g={g}, r={r}) outside truncation "
            f"(N={trunc.N}, G={trunc.G}, computed orders {state.order})"
        )
    raw = state.phi[r].coeff(n, g, alpha) * factorial(n) / class_size(alpha)
    assert raw.denominator == 1 and raw >= 0, f"non-integral count for {alpha}, g={g}: {raw}"
    return int(raw)


def run(trunc: Truncation) -> dict[tuple[Partition, int], int]:
    """Table of c_g(alpha) for all alpha of n <= N and g <= G within reach of R."""
    state = evolve(trunc)
    table: dict[tuple[Partition, int], int] = {}
    for n in range(1, trunc.N + 1):
        for alpha in partitions_of(n):
            for g in range(trunc.G + 1):
                if n + alpha.m + 2 * (g - 1) <= state.order:
                    table[(alpha, g)] = extract_c(state, alpha, g)
    return table


def genus_slice(state: CutJoinState, g: int) -> PSeries:
    """The x/p generating series at genus g: sum_r [z^g] Phi_r / r!.

    At g = 0 this is the genus-0 series whose p_alpha x^n coefficient is
    |C_alpha| c_0(alpha) / (n! (n+m-2)!), and likewise at higher genus.
    """
    acc = PSeries.zero(state.trunc)
    for r, f in enumerate(state.phi):
        acc = acc + f.z_slice(g) * Fraction(1, factorial(r))
    return acc
