"""Machine checks for the identity chain behind the genus-1 Hurwitz formula.

Three layers, each exact:

* residual_T -- the genus-1 series must satisfy a linear first-order PDE
  induced by the cut-and-join evolution; the residual of that PDE, applied
  to the closed form of the series, must vanish in the truncated ring.

* the quadratic-kernel checks -- after substituting y_k = p_k s^k, the PDE
  residual splits into homogeneous pieces U_1, U_2, U_3 of degrees 1..3 in
  the y's.  The symmetrization ``y_{a_1}...y_{a_i} -> sum over S_i of
  x_{pi(1)}^{a_1}...x_{pi(i)}^{a_i}`` is injective on homogeneous pieces,
  and the symmetrized images are rational expressions in the tree function
  atoms w_i = w(x_i) and their Euler derivatives.  Substituting the closed
  forms w' = w/(1-w), w'' = w/(1-w)^3, w''' = (w+2w^2)/(1-w)^5 and clearing
  the denominators (1-w_i)^5 and (w_i - w_j) must leave the zero polynomial.
  This module keeps every such expression as an exact fraction of trivariate
  polynomials with the denominator held in factored form, so the final check
  is a literal polynomial zero test.

* series cross-checks -- every symmetrized closed form above, and the
  U-combinations themselves, are independently expanded as truncated series
  using only the weights a_r = r^r/(r-1)! and the explicit tree-function
  coefficients n^(n-1)/n!.  These catch transcription slips in the exact
  route.

The two U-routes (a compact rearranged form and a form assembled
directly from the kernel definitions) are both checked; a discrepancy would
fail one of them rather than being silently reconciled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Mapping, Sequence

from .closedform import (
    f0_pdiff,
    g1_closed,
    g1_defn,
    psi_at_s,
    s_powers,
    s_series,
)
from .partitions import a_coeff, elem_sym, partitions_of, theta
from .series import (
    PSeries,
    Truncation,
    exp,
    inv_one_minus,
    monomial_str,
)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification step; witness names the first offender."""

    name: str
    ok: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _pseries_zero_check(name: str, f: PSeries) -> CheckResult:
    if f.is_zero:
        return CheckResult(name, True)
    return CheckResult(name, False, monomial_str(f.lead_monomial()))


def _pseries_eq_check(name: str, a: PSeries, b: PSeries) -> CheckResult:
    return _pseries_zero_check(name, a - b)


# ---------------------------------------------------------------------------
# Exact polynomials in w1, w2, w3 and fractions over the permitted atoms
# ---------------------------------------------------------------------------

WMono = tuple[int, int, int]


class WPoly:
    """Sparse exact polynomial in w1, w2, w3."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[WMono, Fraction | int] | None = None):
        self.terms: dict[WMono, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    self.terms[mono] = Fraction(c)

    @staticmethod
    def const(c: Fraction | int) -> "WPoly":
        return WPoly({(0, 0, 0): c})

    @staticmethod
    def var(v: int) -> "WPoly":
        exps = [0, 0, 0]
        exps[v - 1] = 1
        return WPoly({tuple(exps): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WPoly") -> "WPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, _ZERO) + c
        return WPoly(out)

    def __sub__(self, other: "WPoly") -> "WPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, _ZERO) - c
        return WPoly(out)

    def __neg__(self) -> "WPoly":
        return WPoly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "WPoly | Fraction | int") -> "WPoly":
        if isinstance(other, (int, Fraction)):
            return WPoly({m: c * other for m, c in self.terms.items()})
        out: dict[WMono, Fraction] = {}
        for (a1, a2, a3), c1 in self.terms.items():
            for (b1, b2, b3), c2 in other.terms.items():
                key = (a1 + b1, a2 + b2, a3 + b3)
                prev = out.get(key)
                out[key] = c1 * c2 if prev is None else prev + c1 * c2
        return WPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WPoly):
            return self.terms == other.terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def lead_str(self) -> str:
        if not self.terms:
            return "0"
        mono = min(self.terms)
        bits = [f"w{v}" + (f"^{e}" if e > 1 else "") for v, e in enumerate(mono, 1) if e]
        return "*".join(bits) if bits else "1"


# Denominator atoms, in fixed order: (1-w1), (1-w2), (1-w3), then the
# pairwise differences (w1-w2), (w2-w3), (w1-w3).
_ATOMS: tuple[WPoly, ...] = (
    WPoly.const(1) - WPoly.var(1),
    WPoly.const(1) - WPoly.var(2),
    WPoly.const(1) - WPoly.var(3),
    WPoly.var(1) - WPoly.var(2),
    WPoly.var(2) - WPoly.var(3),
    WPoly.var(1) - WPoly.var(3),
)
_DIFF_SLOT = {(1, 2): 3, (2, 3): 4, (1, 3): 5}

# Largest denominator the checks may accumulate: the closed forms carry at
# most (1-w_i)^5 and a first power of each difference.  Anything beyond this
# would mean the clearing prescription is wrong, so it is checked too.
_DEN_BOUND = (5, 5, 5, 1, 1, 1)


@lru_cache(maxsize=None)
def _atom_power(idx: int, e: int) -> WPoly:
    if e == 0:
        return WPoly.const(1)
    return _atom_power(idx, e - 1) * _ATOMS[idx]


class WExpr:
    """Fraction num / prod(atom^e) with the denominator kept factored.

    Division is only ever by the atoms above, so expressions stay inside
    the fraction field the closed forms live in and the final zero test
    reduces to the numerator polynomial.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: WPoly, den: tuple[int, ...] = (0, 0, 0, 0, 0, 0)):
        self.num = num
        self.den = den

    @staticmethod
    def poly(p: WPoly) -> "WExpr":
        return WExpr(p)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _lift(self, target: tuple[int, ...]) -> WPoly:
        num = self.num
        for idx in range(6):
            gap = target[idx] - self.den[idx]
            if gap:
                num = num * _atom_power(idx, gap)
        return num

    def __add__(self, other: "WExpr") -> "WExpr":
        target = tuple(max(a, b) for a, b in zip(self.den, other.den))
        return WExpr(self._lift(target) + other._lift(target), target)

    def __sub__(self, other: "WExpr") -> "WExpr":
        target = tuple(max(a, b) for a, b in zip(self.den, other.den))
        return WExpr(self._lift(target) - other._lift(target), target)

    def __neg__(self) -> "WExpr":
        return WExpr(-self.num, self.den)

    def __mul__(self, other: "WExpr | Fraction | int") -> "WExpr":
        if isinstance(other, (int, Fraction)):
            return WExpr(self.num * other, self.den)
        return WExpr(
            self.num * other.num,
            tuple(a + b for a, b in zip(self.den, other.den)),
        )

    __rmul__ = __mul__

    def div_diff(self, a: int, b: int) -> "WExpr":
        """Divide by (w_a - w_b); swapped indices flip the sign."""
        if a < b:
            slot, num = _DIFF_SLOT[(a, b)], self.num
        else:
            slot, num = _DIFF_SLOT[(b, a)], -self.num
        den = list(self.den)
        den[slot] += 1
        return WExpr(num, tuple(den))


def _wvar(v: int) -> WExpr:
    return WExpr(WPoly.var(v))


def _one_minus_w(v: int) -> WExpr:
    return WExpr(_ATOMS[v - 1])


def wd(v: int, j: int) -> WExpr:
    """The j-th Euler derivative of the tree function at slot v, in closed form."""
    w = WPoly.var(v)
    den = [0, 0, 0, 0, 0, 0]
    if j == 0:
        return WExpr(w)
    if j == 1:
        den[v - 1] = 1
        return WExpr(w, tuple(den))
    if j == 2:
        den[v - 1] = 3
        return WExpr(w, tuple(den))
    if j == 3:
        den[v - 1] = 5
        return WExpr(w + w * w * 2, tuple(den))
    raise ValueError(f"no closed form stored for derivative order {j}")


def sym_psi(m: int, v: int) -> WExpr:
    """Symmetrized image of psi_m at one slot: the (m+1)-st tree derivative."""
    if m < -1:
        raise ValueError("stored images cover m >= -1")
    return wd(v, m + 1)


def sym_a_form(v: int) -> WExpr:
    return (_one_minus_w(v) * wd(v, 3) + _wvar(v) * wd(v, 2) - wd(v, 1)) * Fraction(1, 12)


def sym_b_form(v: int) -> WExpr:
    return wd(v, 3) * _wvar(v)


def sym_c_form(v1: int, v2: int) -> WExpr:
    cross = wd(v1, 3) * wd(v2, 1) - wd(v1, 1) * wd(v2, 3)
    return -(wd(v1, 3) * wd(v2, 1)) - wd(v1, 1) * wd(v2, 3) - cross.div_diff(v1, v2)


def sym_d_form(v: int) -> WExpr:
    return wd(v, 2) * _wvar(v)


def sym_e_form(v1: int, v2: int) -> WExpr:
    cross = wd(v1, 2) * wd(v2, 1) - wd(v1, 1) * wd(v2, 2)
    return -(wd(v1, 2) * wd(v2, 1)) - wd(v1, 1) * wd(v2, 2) - cross.div_diff(v1, v2)


@dataclass(frozen=True)
class KernelForms:
    """The five symmetrized quadratic-kernel closed forms, slot-parameterized."""

    a: Callable[[int], WExpr]
    b: Callable[[int], WExpr]
    c: Callable[[int, int], WExpr]
    d: Callable[[int], WExpr]
    e: Callable[[int, int], WExpr]


DEFAULT_KERNELS = KernelForms(sym_a_form, sym_b_form, sym_c_form, sym_d_form, sym_e_form)


def build_ABCDE(kernels: KernelForms = DEFAULT_KERNELS) -> tuple[WExpr, WExpr, WExpr, WExpr, WExpr]:
    """The five kernel images at the canonical slots (1) and (1, 2)."""
    return (
        kernels.a(1),
        kernels.b(1),
        kernels.c(1, 2),
        kernels.d(1),
        kernels.e(1, 2),
    )


# -- the degree-1..3 vanishing checks, exact route ---------------------------


def _u1_expr(k: KernelForms) -> WExpr:
    return sym_psi(2, 1) - sym_psi(0, 1) - k.a(1) * 12 - k.b(1) + k.d(1)


def _pair(f: Callable[[int], WExpr], g: Callable[[int], WExpr]) -> WExpr:
    """Two-slot symmetrization of a product of two degree-1 series."""
    return f(1) * g(2) + f(2) * g(1)


def _u2_assembled(k: KernelForms) -> WExpr:
    psi0 = lambda v: sym_psi(0, v)
    psi1 = lambda v: sym_psi(1, v)
    psi2 = lambda v: sym_psi(2, v)
    return (
        _pair(psi0, psi1)
        + _pair(psi0, psi2)
        + _pair(psi1, k.a) * 24
        + _pair(psi1, k.b)
        + k.c(1, 2)
        - _pair(psi1, k.d)
        - _pair(psi2, k.d)
        - k.e(1, 2)
    )


def _u2_rearranged() -> WExpr:
    two_minus = WExpr(WPoly.const(2) - WPoly.var(1) - WPoly.var(2))
    w_sum = WExpr(WPoly.var(1) + WPoly.var(2))
    cross31 = wd(1, 3) * wd(2, 1) - wd(1, 1) * wd(2, 3)
    cross21 = wd(1, 2) * wd(2, 1) - wd(1, 1) * wd(2, 2)
    return (
        (wd(1, 2) * wd(2, 3) + wd(1, 3) * wd(2, 2)) * two_minus
        + wd(1, 2) * wd(2, 2) * w_sum
        - cross31.div_diff(1, 2)
        + cross21.div_diff(1, 2)
    )


def _u3_assembled(k: KernelForms) -> WExpr:
    total = WExpr(WPoly())
    for p1, p2, p3 in itertools.permutations((1, 2, 3)):
        total = total - sym_psi(1, p1) * sym_psi(1, p2) * k.a(p3) * 12
    for t, (va, vb) in ((1, (2, 3)), (2, (1, 3)), (3, (1, 2))):
        total = total - sym_psi(1, t) * k.c(va, vb)
        total = total + (sym_psi(1, t) + sym_psi(2, t)) * k.e(va, vb)
    return total


def _u3_rearranged() -> WExpr:
    line1 = (
        wd(1, 2) * (wd(2, 3) * wd(3, 1) - wd(2, 1) * wd(3, 3))
        - (wd(1, 2) + wd(1, 3)) * (wd(2, 2) * wd(3, 1) - wd(2, 1) * wd(3, 2))
    ).div_diff(2, 3)
    line2 = (
        wd(2, 2) * (wd(1, 3) * wd(3, 1) - wd(1, 1) * wd(3, 3))
        - (wd(2, 2) + wd(2, 3)) * (wd(1, 2) * wd(3, 1) - wd(1, 1) * wd(3, 2))
    ).div_diff(1, 3)
    line3 = (
        wd(3, 2) * (wd(1, 3) * wd(2, 1) - wd(1, 1) * wd(2, 3))
        - (wd(3, 2) + wd(3, 3)) * (wd(1, 2) * wd(2, 1) - wd(1, 1) * wd(2, 2))
    ).div_diff(1, 2)
    line4 = (
        wd(1, 2) * wd(2, 2) * wd(3, 3) * _one_minus_w(3)
        + wd(1, 2) * wd(3, 2) * wd(2, 3) * _one_minus_w(2)
        + wd(2, 2) * wd(3, 2) * wd(1, 3) * _one_minus_w(1)
    ) * (-2)
    line5 = wd(1, 2) * wd(2, 2) * wd(3, 2) * WExpr(
        WPoly.var(1) + WPoly.var(2) + WPoly.var(3)
    ) * (-2)
    return line1 + line2 + line3 + line4 + line5


def _wexpr_zero_check(name: str, expr: WExpr) -> CheckResult:
    if any(e > bound for e, bound in zip(expr.den, _DEN_BOUND)):
        return CheckResult(name, False, f"denominator bound exceeded: {expr.den}")
    if expr.is_zero:
        return CheckResult(name, True)
    return CheckResult(name, False, expr.num.lead_str())


def check_u1(kernels: KernelForms = DEFAULT_KERNELS) -> CheckResult:
    """Degree-1 vanishing, exactly as a polynomial after clearing."""
    return _wexpr_zero_check("u1_vanishes", _u1_expr(kernels))


def check_u2(kernels: KernelForms = DEFAULT_KERNELS) -> CheckResult:
    """Degree-2 vanishing: rearranged form and direct assembly, both exact."""
    rearr = _wexpr_zero_check("u2_vanishes", _u2_rearranged())
    if not rearr.ok:
        return CheckResult("u2_vanishes", False, f"rearranged form: {rearr.witness}")
    asm = _wexpr_zero_check("u2_vanishes", _u2_assembled(kernels))
    if not asm.ok:
        return CheckResult("u2_vanishes", False, f"assembled form: {asm.witness}")
    return CheckResult("u2_vanishes", True)


def check_u3(kernels: KernelForms = DEFAULT_KERNELS) -> CheckResult:
    """Degree-3 vanishing: rearranged form and direct assembly, both exact."""
    rearr = _wexpr_zero_check("u3_vanishes", _u3_rearranged())
    if not rearr.ok:
        return CheckResult("u3_vanishes", False, f"rearranged form: {rearr.witness}")
    asm = _wexpr_zero_check("u3_vanishes", _u3_assembled(kernels))
    if not asm.ok:
        return CheckResult("u3_vanishes", False, f"assembled form: {asm.witness}")
    return CheckResult("u3_vanishes", True)


# ---------------------------------------------------------------------------
# Truncated series in x1, x2, x3: the independent expansion route
# ---------------------------------------------------------------------------

XMono = tuple[int, int, int]


class XSeries:
    """Truncated series in x1, x2, x3 with a per-variable order cap."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Mapping[XMono, Fraction | int] | None = None):
        self.order = order
        self.terms: dict[XMono, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c and max(mono) <= order:
                    self.terms[mono] = Fraction(c)

    @staticmethod
    def univariate(coeffs: Sequence[Fraction], var: int, order: int) -> "XSeries":
        terms = {}
        for d, c in enumerate(coeffs[: order + 1]):
            if c:
                exps = [0, 0, 0]
                exps[var - 1] = d
                terms[tuple(exps)] = c
        return XSeries(order, terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "XSeries") -> None:
        if self.order != other.order:
            raise ValueError("order mismatch")

    def __add__(self, other: "XSeries") -> "XSeries":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, _ZERO) + c
        return XSeries(self.order, out)

    def __sub__(self, other: "XSeries") -> "XSeries":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, _ZERO) - c
        return XSeries(self.order, out)

    def __neg__(self) -> "XSeries":
        return XSeries(self.order, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "XSeries | Fraction | int") -> "XSeries":
        if isinstance(other, (int, Fraction)):
            return XSeries(self.order, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        L = self.order
        out: dict[XMono, Fraction] = {}
        for (a1, a2, a3), c1 in self.terms.items():
            for (b1, b2, b3), c2 in other.terms.items():
                e1, e2, e3 = a1 + b1, a2 + b2, a3 + b3
                if e1 > L or e2 > L or e3 > L:
                    continue
                key = (e1, e2, e3)
                prev = out.get(key)
                out[key] = c1 * c2 if prev is None else prev + c1 * c2
        return XSeries(self.order, out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, XSeries):
            return self.order == other.order and self.terms == other.terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def lead_str(self) -> str:
        if not self.terms:
            return "0"
        mono = min(self.terms)
        bits = [f"x{v}" + (f"^{e}" if e > 1 else "") for v, e in enumerate(mono, 1) if e]
        return "*".join(bits) if bits else "1"


def _xseries_zero_check(name: str, f: XSeries) -> CheckResult:
    if f.is_zero:
        return CheckResult(name, True)
    return CheckResult(name, False, f.lead_str())


@lru_cache(maxsize=None)
def _tree_coeffs(order: int) -> tuple[Fraction, ...]:
    """[x^n] of the tree function, from the explicit formula n^(n-1)/n!."""
    return (_ZERO,) + tuple(
        Fraction(n ** (n - 1), factorial(n)) for n in range(1, order + 1)
    )


@lru_cache(maxsize=None)
def _w_series(v: int, j: int, order: int) -> XSeries:
    """j-th Euler derivative of the tree function at slot v, as a series."""
    base = _tree_coeffs(order)
    coeffs = [c * Fraction(n) ** j if n else _ZERO for n, c in enumerate(base)]
    return XSeries.univariate(coeffs, v, order)


@lru_cache(maxsize=None)
def _wexpr_den_series(den: tuple[int, ...], order: int) -> XSeries:
    out = XSeries(order, {(0, 0, 0): 1})
    for idx, e in enumerate(den):
        if not e:
            continue
        if idx < 3:
            atom = XSeries(order, {(0, 0, 0): 1}) - _w_series(idx + 1, 0, order)
        else:
            a, b = [(1, 2), (2, 3), (1, 3)][idx - 3]
            atom = _w_series(a, 0, order) - _w_series(b, 0, order)
        for _ in range(e):
            out = out * atom
    return out


def _wexpr_num_series(num: WPoly, order: int) -> XSeries:
    total = XSeries(order)
    for (e1, e2, e3), c in num.terms.items():
        term = XSeries(order, {(0, 0, 0): c})
        for v, e in ((1, e1), (2, e2), (3, e3)):
            for _ in range(e):
                term = term * _w_series(v, 0, order)
        total = total + term
    return total


def _wexpr_matches_series(name: str, expr: WExpr, direct: XSeries) -> CheckResult:
    """Closed form equals independent expansion: num = direct * den as series."""
    order = direct.order
    lhs = _wexpr_num_series(expr.num, order)
    rhs = direct * _wexpr_den_series(expr.den, order)
    return _xseries_zero_check(name, lhs - rhs)


# -- direct (weights-only) expansions of the symmetrized images -------------


def _direct_psi(j: int, v: int, order: int) -> XSeries:
    coeffs = [_ZERO] + [Fraction(r) ** (j - 1) * a_coeff(r) for r in range(1, order + 1)]
    return XSeries.univariate(coeffs, v, order)


def _direct_a(v: int, order: int) -> XSeries:
    coeffs = [_ZERO] * (order + 1)
    for k in range(2, order + 1):
        coeffs[k] = sum(a_coeff(i) * a_coeff(k - i) for i in range(1, k)) / k
    return XSeries.univariate(coeffs, v, order)


def _direct_b(v: int, order: int) -> XSeries:
    coeffs = [_ZERO] * (order + 1)
    for k in range(2, order + 1):
        coeffs[k] = sum(
            a_coeff(i) * a_coeff(k - i) * Fraction(i, (k - i) ** 2)
            for i in range(1, k)
        )
    return XSeries.univariate(coeffs, v, order)


def _direct_d(v: int, order: int) -> XSeries:
    coeffs = [_ZERO] * (order + 1)
    for k in range(2, order + 1):
        coeffs[k] = sum(
            a_coeff(i) * a_coeff(k - i) / (k - i) ** 2 for i in range(1, k)
        )
    return XSeries.univariate(coeffs, v, order)


def _xmono(v: int, d: int) -> XMono:
    exps = [0, 0, 0]
    exps[v - 1] = d
    return tuple(exps)


def _add_term(terms: dict[XMono, Fraction], mono: XMono, c: Fraction) -> None:
    terms[mono] = terms.get(mono, _ZERO) + c


def _direct_c_half(v1: int, v2: int, order: int) -> XSeries:
    terms: dict[XMono, Fraction] = {}
    for k in range(2, order + 1):  # k = i + j on the first slot
        for i in range(1, k):
            j = k - i
            for m in range(1, order + 1):
                c = a_coeff(i) * a_coeff(j) * a_coeff(m) * Fraction(i, j * (j + m))
                mono = tuple(
                    x + y for x, y in zip(_xmono(v1, k), _xmono(v2, m))
                )
                _add_term(terms, mono, c)
    for i in range(1, order + 1):
        for j in range(1, order + 1):
            c = -Fraction(i + j, 2) * a_coeff(i + j)
            mono = tuple(x + y for x, y in zip(_xmono(v1, i), _xmono(v2, j)))
            _add_term(terms, mono, c)
    return XSeries(order, terms)


def _direct_c(v1: int, v2: int, order: int) -> XSeries:
    return _direct_c_half(v1, v2, order) + _direct_c_half(v2, v1, order)


def _direct_e_half(v1: int, v2: int, order: int) -> XSeries:
    terms: dict[XMono, Fraction] = {}
    for k in range(2, order + 1):
        for i in range(1, k):
            j = k - i
            for m in range(1, order + 1):
                c = a_coeff(i) * a_coeff(j) * a_coeff(m) / (j * (j + m))
                mono = tuple(x + y for x, y in zip(_xmono(v1, k), _xmono(v2, m)))
                _add_term(terms, mono, c)
    for i in range(1, order + 1):
        for j in range(1, order + 1):
            c = -a_coeff(i + j) / 2
            mono = tuple(x + y for x, y in zip(_xmono(v1, i), _xmono(v2, j)))
            _add_term(terms, mono, c)
    return XSeries(order, terms)


def _direct_e(v1: int, v2: int, order: int) -> XSeries:
    return _direct_e_half(v1, v2, order) + _direct_e_half(v2, v1, order)


def closed_form_series_checks(
    kernels: KernelForms = DEFAULT_KERNELS, order: int = 10
) -> list[CheckResult]:
    """Each symmetrized closed form against its weights-only expansion."""
    checks = [
        _wexpr_matches_series("sym_closed_form_a", kernels.a(1), _direct_a(1, order)),
        _wexpr_matches_series("sym_closed_form_b", kernels.b(1), _direct_b(1, order)),
        _wexpr_matches_series("sym_closed_form_c", kernels.c(1, 2), _direct_c(1, 2, order)),
        _wexpr_matches_series("sym_closed_form_d", kernels.d(1), _direct_d(1, order)),
        _wexpr_matches_series("sym_closed_form_e", kernels.e(1, 2), _direct_e(1, 2, order)),
    ]
    psi_ok = True
    psi_witness = None
    for m in range(-1, 3):
        res = _wexpr_matches_series(
            "psi_image_series", sym_psi(m, 1), _direct_psi(m, 1, order)
        )
        if not res.ok:
            psi_ok, psi_witness = False, f"index {m}: {res.witness}"
            break
    checks.append(CheckResult("psi_image_series", psi_ok, psi_witness))
    return checks


def series_u_checks(order: int = 8) -> list[CheckResult]:
    """The three vanishing combinations re-expanded with weights only."""
    psi0 = _direct_psi(0, 1, order)
    psi1 = _direct_psi(1, 1, order)
    psi2 = _direct_psi(2, 1, order)
    u1 = (
        psi2
        - psi0
        - _direct_a(1, order) * 12
        - _direct_b(1, order)
        + _direct_d(1, order)
    )

    def pair(f, g):
        return f(1) * g(2) + f(2) * g(1)

    dp = lambda m: (lambda v: _direct_psi(m, v, order))
    da = lambda v: _direct_a(v, order)
    db = lambda v: _direct_b(v, order)
    dd = lambda v: _direct_d(v, order)
    u2 = (
        pair(dp(0), dp(1))
        + pair(dp(0), dp(2))
        + pair(dp(1), da) * 24
        + pair(dp(1), db)
        + _direct_c(1, 2, order)
        - pair(dp(1), dd)
        - pair(dp(2), dd)
        - _direct_e(1, 2, order)
    )

    u3 = XSeries(order)
    for p1, p2, p3 in itertools.permutations((1, 2, 3)):
        u3 = u3 - dp(1)(p1) * dp(1)(p2) * da(p3) * 12
    for t, (va, vb) in ((1, (2, 3)), (2, (1, 3)), (3, (1, 2))):
        u3 = u3 - dp(1)(t) * _direct_c(va, vb, order)
        u3 = u3 + (dp(1)(t) + dp(2)(t)) * _direct_e(va, vb, order)

    return [
        _xseries_zero_check("u1_series", u1),
        _xseries_zero_check("u2_series", u2),
        _xseries_zero_check("u3_series", u3),
    ]


# ---------------------------------------------------------------------------
# The symmetrization operator itself
# ---------------------------------------------------------------------------


def symmetrize(
    poly: Mapping[tuple[int, ...], Fraction | int], arity: int
) -> dict[tuple[int, ...], Fraction]:
    """Orbit-sum image of a homogeneous degree-``arity`` polynomial in the y's.

    Input maps index tuples (y_{a_1}...y_{a_arity}) to coefficients; the
    image maps exponent tuples over x_1..x_arity to coefficients.  Injective
    on homogeneous input, which is what makes the vanishing checks above
    conclusive.
    """
    if arity not in (1, 2, 3):
        raise ValueError("symmetrization implemented for degrees 1..3")
    agg: dict[tuple[int, ...], Fraction] = {}
    for mono, c in poly.items():
        if len(mono) != arity:
            raise ValueError(
                f"monomial {mono} is not homogeneous of degree {arity}"
            )
        agg_key = tuple(sorted(mono))
        agg[agg_key] = agg.get(agg_key, _ZERO) + Fraction(c)
    out: dict[tuple[int, ...], Fraction] = {}
    for mono, c in agg.items():
        if not c:
            continue
        for perm in itertools.permutations(range(arity)):
            exps = [0] * arity
            for t, idx in enumerate(mono):
                exps[perm[t]] = idx
            key = tuple(exps)
            out[key] = out.get(key, _ZERO) + c
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# The PDE residual and the supporting series identities
# ---------------------------------------------------------------------------


def residual_T(trunc: Truncation, g1: PSeries | None = None) -> PSeries:
    """Residual of the genus-1 PDE applied to g1 (closed form by default).

    The operator is the Euler part x d/dx + sum p_i d/dp_i minus the join
    transfer through the genus-0 derivatives minus half the cut operator,
    and the inhomogeneity is half the join of the genus-0 second derivatives.
    Identically zero when g1 is the genus-1 series.
    """
    if g1 is None:
        g1 = g1_closed(trunc)
    K = trunc.K
    dg = {j: g1.pdiff(j) for j in range(1, K + 1)}
    acc = g1.xdiff()
    for i in range(1, K + 1):
        if not dg[i].is_zero:
            acc = acc + dg[i].shift(1, p=((i, 1),))
    df0 = {i: f0_pdiff(i, trunc) for i in range(1, K + 1)}
    for k in range(2, K + 1):
        for i in range(1, k):
            j = k - i
            if df0[i].is_zero or dg[j].is_zero:
                continue
            acc = acc - (df0[i] * dg[j]).shift(i * j, p=((k, 1),))
    for k in range(2, K + 1):
        if dg[k].is_zero:
            continue
        for i in range(1, k):
            j = k - i
            pk = ((i, 2),) if i == j else ((i, 1), (j, 1))
            acc = acc - dg[k].shift(Fraction(k, 2), p=pk)
    pw = s_powers(trunc)
    for k in range(2, min(K, trunc.N) + 1):
        coef = sum((a_coeff(i) * a_coeff(k - i) for i in range(1, k)), _ZERO)
        acc = acc - pw[k].shift(coef / (2 * k), p=((k, 1),))
    return acc


def kernel_recombination(trunc: Truncation) -> CheckResult:
    """The three kernel combinations vanish when rebuilt in the main ring.

    Each quadratic kernel is re-expanded with y_k = p_k s^k as an honest
    series in x and p and combined exactly as in the degree-split of the
    PDE residual; all three combinations must be the zero series.  A third
    route through the kernel definitions, independent of both the exact
    polynomial route and the symmetrized expansions.
    """
    pw = s_powers(trunc)
    N = trunc.N
    zero = PSeries.zero(trunc)

    def linear_kernel(weight: Callable[[int], Fraction]) -> PSeries:
        acc = zero
        for k in range(2, N + 1):
            acc = acc + pw[k].shift(weight(k), p=((k, 1),))
        return acc

    a_ser = linear_kernel(
        lambda k: sum(a_coeff(i) * a_coeff(k - i) for i in range(1, k)) / k
    )
    b_ser = linear_kernel(
        lambda k: sum(
            a_coeff(i) * a_coeff(k - i) * Fraction(i, (k - i) ** 2)
            for i in range(1, k)
        )
    )
    d_ser = linear_kernel(
        lambda k: sum(a_coeff(i) * a_coeff(k - i) / (k - i) ** 2 for i in range(1, k))
    )

    def quadratic_kernel(
        joined: Callable[[int, int], Fraction], split: Callable[[int, int], Fraction]
    ) -> PSeries:
        # sum over ordered pairs: joined(k, m) p_k p_m s^(k+m), k from a join,
        # minus half of split(i, j) p_i p_j s^(i+j)
        acc = zero
        for k in range(2, N + 1):
            for m in range(1, N - k + 1):
                pexp = ((k, 2),) if k == m else ((min(k, m), 1), (max(k, m), 1))
                acc = acc + pw[k + m].shift(joined(k, m), p=pexp)
        for i in range(1, N):
            for j in range(1, N - i + 1):
                pexp = ((i, 2),) if i == j else ((min(i, j), 1), (max(i, j), 1))
                acc = acc - pw[i + j].shift(split(i, j) / 2, p=pexp)
        return acc

    c_ser = quadratic_kernel(
        lambda k, m: a_coeff(m)
        * sum(
            a_coeff(i) * a_coeff(k - i) * Fraction(i, (k - i) * (k - i + m))
            for i in range(1, k)
        ),
        lambda i, j: (i + j) * a_coeff(i + j),
    )
    e_ser = quadratic_kernel(
        lambda k, m: a_coeff(m)
        * sum(
            a_coeff(i) * a_coeff(k - i) / ((k - i) * (k - i + m))
            for i in range(1, k)
        ),
        lambda i, j: a_coeff(i + j),
    )

    psi0 = psi_at_s(0, trunc)
    psi1 = psi_at_s(1, trunc)
    psi2 = psi_at_s(2, trunc)
    u1 = psi2 - psi0 - a_ser * 12 - b_ser + d_ser
    u2 = (
        psi0 * (psi1 + psi2)
        + psi1 * a_ser * 24
        + psi1 * b_ser
        + c_ser
        - (psi1 + psi2) * d_ser
        - e_ser
    )
    u3 = psi1 * psi1 * a_ser * (-12) - psi1 * c_ser + (psi1 + psi2) * e_ser
    for label, series in (("degree 1", u1), ("degree 2", u2), ("degree 3", u3)):
        if not series.is_zero:
            return CheckResult(
                "kernel_recombination",
                False,
                f"{label}: {monomial_str(series.lead_monomial())}",
            )
    return CheckResult("kernel_recombination", True)


def _one_minus_psi1(trunc: Truncation) -> PSeries:
    return PSeries.one(trunc) - psi_at_s(1, trunc)


def s_xdiff_identity(trunc: Truncation) -> CheckResult:
    """x ds/dx * (1 - psi_1) = s."""
    s = s_series(trunc)
    return _pseries_eq_check(
        "s_xdiff_identity", s.xdiff() * _one_minus_psi1(trunc), s
    )


def s_pdiff_identity(trunc: Truncation) -> CheckResult:
    """k ds/dp_k * (1 - psi_1) = a_k s^(k+1) for every retained k."""
    s = s_series(trunc)
    pw = s_powers(trunc)
    omp = _one_minus_psi1(trunc)
    for k in range(1, trunc.K + 1):
        lhs = s.pdiff(k) * omp * k
        rhs = pw[k + 1] * a_coeff(k) if k + 1 <= trunc.N else PSeries.zero(trunc)
        if lhs != rhs:
            return CheckResult(
                "s_pdiff_identity", False, f"k={k}: {monomial_str((lhs - rhs).lead_monomial())}"
            )
    return CheckResult("s_pdiff_identity", True)


def psi_pdiff_identity(trunc: Truncation, max_k: int = 4) -> CheckResult:
    """k dpsi_j/dp_k (1-psi_1) = k^j a_k s^k (1-psi_1) + a_k psi_{j+1} s^k."""
    pw = s_powers(trunc)
    omp = _one_minus_psi1(trunc)
    for j in range(0, 3):
        pj = psi_at_s(j, trunc)
        pj1 = psi_at_s(j + 1, trunc)
        for k in range(1, min(max_k, trunc.N) + 1):
            ak = a_coeff(k)
            lhs = pj.pdiff(k) * omp * k
            rhs = pw[k] * omp * (Fraction(k) ** j * ak) + pj1 * pw[k] * ak
            if lhs != rhs:
                return CheckResult(
                    "psi_pdiff_identity",
                    False,
                    f"j={j}, k={k}: {monomial_str((lhs - rhs).lead_monomial())}",
                )
    return CheckResult("psi_pdiff_identity", True)


def g1_xdiff_identity(trunc: Truncation, g1: PSeries | None = None) -> CheckResult:
    """24 x dG1/dx = psi_2/(1-psi_1)^2 - psi_1/(1-psi_1)."""
    if g1 is None:
        g1 = g1_closed(trunc)
    inv = inv_one_minus(psi_at_s(1, trunc))
    rhs = psi_at_s(2, trunc) * inv * inv - psi_at_s(1, trunc) * inv
    return _pseries_eq_check("g1_xdiff_identity", g1.xdiff() * 24, rhs)


def g1_pdiff_identity(
    trunc: Truncation, g1: PSeries | None = None, max_k: int = 4
) -> CheckResult:
    """24 dG1/dp_k = a_k s^k/(1-psi_1) + (a_k/k) s^k (psi_2/(1-psi_1)^2 - 1/(1-psi_1))."""
    if g1 is None:
        g1 = g1_closed(trunc)
    pw = s_powers(trunc)
    inv = inv_one_minus(psi_at_s(1, trunc))
    bracket = psi_at_s(2, trunc) * inv * inv - inv
    for k in range(1, min(max_k, trunc.N) + 1):
        ak = a_coeff(k)
        rhs = pw[k] * inv * ak + pw[k] * bracket * (ak / k)
        lhs = g1.pdiff(k) * 24
        if lhs != rhs:
            return CheckResult(
                "g1_pdiff_identity",
                False,
                f"k={k}: {monomial_str((lhs - rhs).lead_monomial())}",
            )
    return CheckResult("g1_pdiff_identity", True)


def elem_sym_extraction(max_n: int = 8) -> CheckResult:
    """Coefficient-extraction rule for elementary symmetric functions.

    e_k(lambda) = theta(lambda)/k! * [p_lambda] (p_1+p_2+...)^k exp(sum p_i/i),
    evaluated in the series ring with each p_i carrying x^i so the truncation
    bound applies; checked for every lambda of size <= max_n and 0 <= k <= m.
    """
    tr = Truncation(N=max_n, K=max_n, G=0)
    lin = PSeries(tr, {(i, 0, ((i, 1),)): Fraction(1) for i in range(1, max_n + 1)})
    ex = exp(
        PSeries(tr, {(i, 0, ((i, 1),)): Fraction(1, i) for i in range(1, max_n + 1)})
    )
    power = PSeries.one(tr)
    for k in range(0, max_n + 1):
        mixed = power * ex
        for n in range(0, max_n + 1):
            for lam in partitions_of(n):
                if k > lam.m:
                    continue
                got = Fraction(theta(lam), factorial(k)) * mixed.coeff(n, 0, lam)
                if got != elem_sym(lam, k):
                    return CheckResult(
                        "elem_sym_extraction",
                        False,
                        f"lambda={lam}, k={k}: got {got}, want {elem_sym(lam, k)}",
                    )
        power = power * lin
    return CheckResult("elem_sym_extraction", True)


# ---------------------------------------------------------------------------
# Top-level report
# ---------------------------------------------------------------------------


def run_all_checks(
    trunc: Truncation | None = None,
    *,
    inject_fault: bool = False,
    kernels: KernelForms = DEFAULT_KERNELS,
    series_order: int = 8,
) -> list[CheckResult]:
    """Every verification step, in a fixed order, as CheckResults.

    inject_fault perturbs the genus-1 series fed to the PDE residual by
    +x^2 p_2, demonstrating that the checker can fail and report a witness.
    """
    tr = trunc if trunc is not None else Truncation()
    g1 = g1_closed(tr)
    if inject_fault:
        g1 = g1 + PSeries.term(tr, 1, x=2, p=((2, 1),))
    checks = [
        _pseries_zero_check("pde_residual", residual_T(tr, g1)),
        _pseries_eq_check("g1_forms_agree", g1_closed(tr), g1_defn(tr)),
    ]
    checks += closed_form_series_checks(kernels, order=max(series_order, 10))
    checks += [check_u1(kernels), check_u2(kernels), check_u3(kernels)]
    checks += series_u_checks(order=series_order)
    checks.append(kernel_recombination(tr))
    checks.append(elem_sym_extraction())
    checks += [
        s_xdiff_identity(tr),
        s_pdiff_identity(tr),
        psi_pdiff_identity(tr),
        g1_xdiff_identity(tr),
        g1_pdiff_identity(tr),
    ]
    return checks


def report_obj(checks: Iterable[CheckResult], config: Mapping | None = None) -> dict:
    """JSON-ready report, matching the CLI schema."""
    out = {
        "checks": [
            {"name": c.name, "status": "pass" if c.ok else "fail"}
            | ({"witness": c.witness} if c.witness else {})
            for c in checks
        ]
    }
    if config is not None:
        out["config"] = dict(config)
    return out
