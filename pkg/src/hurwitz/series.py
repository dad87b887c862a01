"""Sparse truncated formal power series with exact rational coefficients.

The carrier ring is Q[z, p_1, ..., p_K][[x]] cut off at x^N and z^G.  A
series is a sparse map from monomials ``(x_deg, z_deg, p_exponents)`` to
nonzero Fraction coefficients.  Monomials beyond the truncation bounds are
dropped when a series is built (dropped, never rounded); no operation here
lowers x- or z-degree, so the coefficients that survive are exactly those
of the untruncated ring.

``exp``, ``log1`` and ``subst_x`` additionally require every input monomial
to carry positive x-degree.  That restriction keeps their expansions finite
inside the truncation; all the series this package feeds them are of that
kind (x-adically small).

Coefficients are Fractions throughout; floating point is never used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

PExp = tuple[tuple[int, int], ...]
Monomial = tuple[int, int, PExp]

_ZERO = Fraction(0)


class TruncationMismatch(ValueError):
    """Two series with different truncations were combined."""


class FixedPointError(RuntimeError):
    """A fixed-point iteration failed to stabilize within the truncation."""


@dataclass(frozen=True)
class Truncation:
    """Bounds of the truncated ring.

    N -- maximum x-degree kept.
    K -- maximum p-index kept (a monomial containing p_k, k > K, is dropped).
    G -- maximum z-degree kept.
    R -- number of u-steps retained by the cut-and-join evolution; defaults
         to 2N, the largest step index reached at genus <= 1 and x-degree
         <= N (a partition of n has at most n parts, so n + m <= 2N).

    K >= N is required: a single part of size up to N contributes p_k with
    k up to N, so exactness of the coefficients below x^N needs those
    indices retained.
    """

    N: int = 8
    K: int = 8
    G: int = 1
    R: int = -1

    def __post_init__(self) -> None:
        if self.R < 0:
            object.__setattr__(self, "R", 2 * self.N)
        if self.N < 1 or self.K < 1 or self.G < 0:
            raise ValueError(f"invalid truncation bounds {self}")
        if self.K < self.N:
            raise ValueError(
                f"K={self.K} < N={self.N}: coefficients up to x^{self.N} "
                f"need p-indices up to {self.N}"
            )


def _canon_pexp(p: Mapping[int, int] | Iterable[tuple[int, int]]) -> PExp:
    """Canonical sorted p-exponent vector; zero exponents removed."""
    items = p.items() if isinstance(p, Mapping) else tuple(p)
    agg: dict[int, int] = {}
    for i, e in items:
        i, e = int(i), int(e)
        if i < 1 or e < 0:
            raise ValueError(f"invalid p-monomial entry p{i}^{e}")
        if e:
            agg[i] = agg.get(i, 0) + e
    return tuple(sorted(agg.items()))


def _merge_pexp(a: PExp, b: PExp) -> PExp:
    if not a:
        return b
    if not b:
        return a
    agg = dict(a)
    for i, e in b:
        agg[i] = agg.get(i, 0) + e
    return tuple(sorted(agg.items()))


def monomial_str(mono: Monomial) -> str:
    """Readable form of a monomial key, for witnesses and debugging."""
    xd, zd, pexp = mono
    out = []
    if xd:
        out.append("x" if xd == 1 else f"x^{xd}")
    if zd:
        out.append("z" if zd == 1 else f"z^{zd}")
    for i, e in pexp:
        out.append(f"p{i}" if e == 1 else f"p{i}^{e}")
    return "*".join(out) if out else "1"


class PSeries:
    """Immutable sparse truncated series.

    All binary operations demand identical truncations; mixing truncations
    raises TruncationMismatch rather than silently coercing.
    """

    __slots__ = ("trunc", "terms")

    def __init__(
        self,
        trunc: Truncation,
        terms: Mapping[Monomial, Fraction | int] | None = None,
    ):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            N, K, G = trunc.N, trunc.K, trunc.G
            for mono, c in terms.items():
                if isinstance(c, float):
                    raise TypeError("floating-point coefficients are not allowed")
                if not c:
                    continue
                xd, zd, pexp = mono
                if xd > N or zd > G or (pexp and pexp[-1][0] > K):
                    continue
                clean[mono] = Fraction(c)
        self.trunc = trunc
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(trunc: Truncation) -> "PSeries":
        return PSeries(trunc)

    @staticmethod
    def one(trunc: Truncation) -> "PSeries":
        return PSeries(trunc, {(0, 0, ()): Fraction(1)})

    @staticmethod
    def x(trunc: Truncation, power: int = 1) -> "PSeries":
        if power < 0:
            raise ValueError(f"negative x-power {power}")
        return PSeries(trunc, {(power, 0, ()): Fraction(1)})

    @staticmethod
    def term(
        trunc: Truncation,
        coeff: Fraction | int,
        x: int = 0,
        z: int = 0,
        p: Mapping[int, int] | Iterable[tuple[int, int]] = (),
    ) -> "PSeries":
        """Single monomial coeff * x^x z^z * p-monomial."""
        if x < 0 or z < 0:
            raise ValueError(f"negative exponent in monomial x^{x} z^{z}")
        return PSeries(trunc, {(x, z, _canon_pexp(p)): coeff})

    # -- basic protocol ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PSeries):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        t = self.trunc
        return f"<PSeries N={t.N} K={t.K} G={t.G}: {len(self.terms)} terms>"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono, c in sorted(self.terms.items())[:12]:
            ms = monomial_str(mono)
            bits.append(f"{c}" if ms == "1" else f"{c}*{ms}")
        if len(self.terms) > 12:
            bits.append("...")
        return " + ".join(bits)

    def _check(self, other: "PSeries") -> None:
        if self.trunc != other.trunc:
            raise TruncationMismatch(f"{self.trunc} vs {other.trunc}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "PSeries") -> "PSeries":
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, _ZERO) + c
        return PSeries(self.trunc, out)

    def __sub__(self, other: "PSeries") -> "PSeries":
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, _ZERO) - c
        return PSeries(self.trunc, out)

    def __neg__(self) -> "PSeries":
        return PSeries(self.trunc, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "PSeries | Fraction | int") -> "PSeries":
        if isinstance(other, float):
            raise TypeError("floating-point coefficients are not allowed")
        if isinstance(other, (int, Fraction)):
            if not other:
                return PSeries.zero(self.trunc)
            return PSeries(self.trunc, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        N, G = self.trunc.N, self.trunc.G
        out: dict[Monomial, Fraction] = {}
        for (x1, z1, p1), c1 in self.terms.items():
            for (x2, z2, p2), c2 in other.terms.items():
                xd = x1 + x2
                if xd > N:
                    continue
                zd = z1 + z2
                if zd > G:
                    continue
                key = (xd, zd, _merge_pexp(p1, p2))
                prev = out.get(key)
                out[key] = c1 * c2 if prev is None else prev + c1 * c2
        return PSeries(self.trunc, out)

    __rmul__ = __mul__

    def shift(
        self,
        coeff: Fraction | int = 1,
        x: int = 0,
        z: int = 0,
        p: Mapping[int, int] | Iterable[tuple[int, int]] = (),
    ) -> "PSeries":
        """Multiply by a single monomial (cheaper than building a PSeries)."""
        padd = _canon_pexp(p)
        out = {
            (xd + x, zd + z, _merge_pexp(pexp, padd)): c * coeff
            for (xd, zd, pexp), c in self.terms.items()
        }
        return PSeries(self.trunc, out)

    # -- derivations and slices --------------------------------------------

    def pdiff(self, k: int) -> "PSeries":
        """Formal partial derivative with respect to p_k."""
        if not 1 <= k <= self.trunc.K:
            raise ValueError(f"p-index {k} outside 1..{self.trunc.K}")
        out: dict[Monomial, Fraction] = {}
        for (xd, zd, pexp), c in self.terms.items():
            for pos, (i, e) in enumerate(pexp):
                if i == k:
                    if e == 1:
                        reduced = pexp[:pos] + pexp[pos + 1 :]
                    else:
                        reduced = pexp[:pos] + ((i, e - 1),) + pexp[pos + 1 :]
                    out[(xd, zd, reduced)] = c * e
                    break
        return PSeries(self.trunc, out)

    def xdiff(self) -> "PSeries":
        """The Euler operator x * d/dx: scales each term by its x-degree."""
        return PSeries(
            self.trunc,
            {m: c * m[0] for m, c in self.terms.items() if m[0]},
        )

    def z_slice(self, g: int) -> "PSeries":
        """Coefficient of z^g, returned with the z-exponent removed."""
        return PSeries(
            self.trunc,
            {(xd, 0, pexp): c for (xd, zd, pexp), c in self.terms.items() if zd == g},
        )

    def x_parts(self, strip: bool = False) -> dict[int, "PSeries"]:
        """Split into x-degree parts; strip removes the x factor."""
        buckets: dict[int, dict[Monomial, Fraction]] = {}
        for (xd, zd, pexp), c in self.terms.items():
            key = (0, zd, pexp) if strip else (xd, zd, pexp)
            buckets.setdefault(xd, {})[key] = c
        return {d: PSeries(self.trunc, t) for d, t in buckets.items()}

    # -- queries -----------------------------------------------------------

    def coeff(
        self, x_deg: int, z_deg: int = 0, parts: Iterable[int] = ()
    ) -> Fraction:
        """Exact coefficient of x^x_deg z^z_deg p_alpha, alpha given by parts."""
        t = self.trunc
        if not 0 <= x_deg <= t.N:
            raise ValueError(f"x-degree {x_deg} outside truncation N={t.N}")
        if not 0 <= z_deg <= t.G:
            raise ValueError(f"z-degree {z_deg} outside truncation G={t.G}")
        mult: dict[int, int] = {}
        for a in parts:
            if not 1 <= a <= t.K:
                raise ValueError(f"part {a} outside truncation K={t.K}")
            mult[a] = mult.get(a, 0) + 1
        return self.terms.get((x_deg, z_deg, tuple(sorted(mult.items()))), _ZERO)

    def lead_monomial(self) -> Monomial | None:
        """Lexicographically first stored monomial (None for the zero series)."""
        return min(self.terms) if self.terms else None

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> list[dict]:
        """JSON-ready list of terms, sorted lexicographically by monomial."""
        return [
            {"x": xd, "z": zd, "p": [[i, e] for i, e in pexp], "c": str(c)}
            for (xd, zd, pexp), c in sorted(self.terms.items())
        ]

    @staticmethod
    def from_json_obj(trunc: Truncation, obj: Iterable[dict]) -> "PSeries":
        terms: dict[Monomial, Fraction] = {}
        for rec in obj:
            pexp = _canon_pexp([(i, e) for i, e in rec.get("p", [])])
            terms[(rec["x"], rec.get("z", 0), pexp)] = Fraction(rec["c"])
        return PSeries(trunc, terms)


def _require_positive_xdeg(f: PSeries, op: str) -> None:
    for mono in f.terms:
        if mono[0] == 0:
            raise ValueError(
                f"{op} needs every monomial to have positive x-degree; "
                f"found {monomial_str(mono)}"
            )


def exp(f: PSeries) -> PSeries:
    """Power-series exponential of an x-adically small series.

    Computed degree by degree in x via g' = f' g (one ring multiplication
    per pair of graded pieces), which keeps everything exact.
    """
    _require_positive_xdeg(f, "exp")
    tr = f.trunc
    fparts = f.x_parts()
    gparts: list[PSeries] = [PSeries.one(tr)]
    for d in range(1, tr.N + 1):
        acc = PSeries.zero(tr)
        for e, fe in fparts.items():
            if e <= d:
                acc = acc + (fe * gparts[d - e]) * e
        gparts.append(acc * Fraction(1, d))
    total = gparts[0]
    for part in gparts[1:]:
        total = total + part
    return total


def log1(f: PSeries) -> PSeries:
    """log(1 + f) for an x-adically small series, exact to the truncation."""
    _require_positive_xdeg(f, "log1")
    tr = f.trunc
    fparts = f.x_parts()
    gparts: list[PSeries] = [PSeries.zero(tr)]
    for d in range(1, tr.N + 1):
        acc = fparts.get(d, PSeries.zero(tr))
        corr = PSeries.zero(tr)
        for e, fe in fparts.items():
            if e < d:
                corr = corr + (fe * gparts[d - e]) * (d - e)
        gparts.append(acc - corr * Fraction(1, d))
    total = gparts[0]
    for part in gparts[1:]:
        total = total + part
    return total


def inv_one_minus(f: PSeries) -> PSeries:
    """1/(1 - f) as the geometric series, f x-adically small."""
    _require_positive_xdeg(f, "inv_one_minus")
    acc = PSeries.one(f.trunc)
    power = PSeries.one(f.trunc)
    for _ in range(f.trunc.N):
        power = power * f
        if power.is_zero:
            break
        acc = acc + power
    return acc


def subst_x(f: PSeries, s: PSeries) -> PSeries:
    """Substitute x -> s in f, reading f as the rule x-degree -> coefficient.

    The p/z-content of each x-graded piece of f is kept as the coefficient;
    s must be x-adically small so that the composition is exact.
    """
    f._check(s)
    _require_positive_xdeg(s, "subst_x (inner series)")
    tr = f.trunc
    rule = f.x_parts(strip=True)
    out = rule.get(0, PSeries.zero(tr))
    power = PSeries.one(tr)
    for d in range(1, tr.N + 1):
        power = power * s
        if power.is_zero:
            break
        cd = rule.get(d)
        if cd is not None:
            out = out + cd * power
    return out


def solve_fixed_point(
    builder: Callable[[PSeries], PSeries], trunc: Truncation
) -> PSeries:
    """Unique solution of s = builder(s) for an x-adic contraction.

    The x-degree-d part of builder(s) must depend only on parts of s of
    x-degree < d; then N iterations from zero settle all retained degrees.
    A final extra application certifies idempotence, otherwise the builder
    was not a contraction and FixedPointError is raised.
    """
    s = PSeries.zero(trunc)
    for _ in range(trunc.N):
        s = builder(s)
    if builder(s) != s:
        raise FixedPointError(
            "iteration did not stabilize: builder is not an x-adic contraction"
        )
    return s


@dataclass(frozen=True)
class USeries:
    """Coefficient list of sum_r f_r u^r / r! ; entry r stores f_r itself.

    The 1/r! normalization is implicit in the index, which keeps the
    cut-and-join step an integer-weighted recurrence.
    """

    trunc: Truncation
    coeffs: tuple[PSeries, ...]

    def __post_init__(self) -> None:
        for f in self.coeffs:
            if f.trunc != self.trunc:
                raise TruncationMismatch("USeries entries must share the truncation")

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, r: int) -> PSeries:
        return self.coeffs[r]

    def __iter__(self) -> Iterator[PSeries]:
        return iter(self.coeffs)
