"""The Hermitian function field y^q0 + y = x^(q0+1) over F_{q0^2}.

Everything the code constructions need from the curve lives here: rational
places, monomial bases of the Riemann-Roch spaces L(m*Pinf), functions with a
prescribed pole order at Pinf, evaluation, and truncated power-series
expansions at affine places.

Pole orders at Pinf are v(x) = -q0 and v(y) = -(q0+1), so the monomial
x^a y^b (with 0 <= b < q0) has pole order a*q0 + b*(q0+1); these orders are
pairwise distinct, which keeps every basis triangular.  t = x - alpha is a
local parameter at every affine place because the extension only ramifies
over infinity, and y lifts uniquely through the curve equation since the
derivative of Y^q0 + Y is 1 in characteristic p.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .gf import Field, FieldElement, field_build


def _prime_power(q0: int) -> tuple[int, int]:
    if q0 < 2:
        raise ValueError("q0 must be a prime power >= 2")
    p = 2
    while p * p <= q0:
        if q0 % p == 0:
            break
        p += 1
    if q0 % p != 0:
        p = q0
    e = 0
    m = q0
    while m > 1:
        if m % p:
            raise ValueError(f"q0 = {q0} is not a prime power")
        m //= p
        e += 1
    return p, e


@dataclass(frozen=True)
class Place:
    """A rational place: the common pole Pinf, or an affine point (alpha, beta)."""

    alpha: Optional[FieldElement] = None
    beta: Optional[FieldElement] = None

    @property
    def is_infinite(self) -> bool:
        return self.alpha is None

    def __repr__(self):
        if self.is_infinite:
            return "Pinf"
        return f"P({self.alpha.enc},{self.beta.enc})"

    def serialize(self) -> str:
        if self.is_infinite:
            return "inf"
        return f"{self.alpha.enc} {self.beta.enc}"


class HermitianField:
    """Curve data for a fixed q0; immutable after construction."""

    def __init__(self, q0: int):
        p, e = _prime_power(q0)
        self.q0 = q0
        self.p = p
        self.field: Field = field_build(p, 2 * e)
        self.genus = q0 * (q0 - 1) // 2
        self._places: Optional[list[Place]] = None
        self._affine_enc: Optional[np.ndarray] = None

    def __repr__(self):
        return f"Hermitian(q0={self.q0}, GF({self.field.order}), g={self.genus})"

    def pole_order(self, a: int, b: int) -> int:
        return a * self.q0 + b * (self.q0 + 1)

    # -- places --------------------------------------------------------------

    def places(self) -> list[Place]:
        """Pinf first, then affine places ascending by (enc(alpha), enc(beta))."""
        if self._places is None:
            F = self.field
            q0 = self.q0
            enc = np.arange(F.order, dtype=np.uint8)
            lhs = F.vadd(F.vpow(enc, q0), enc)  # beta^q0 + beta
            rhs = F.vpow(enc, q0 + 1)  # alpha^(q0+1)
            betas_by_value: dict[int, list[int]] = {}
            for b_enc, val in enumerate(lhs):
                betas_by_value.setdefault(int(val), []).append(b_enc)
            places = [Place()]
            rows = []
            for a_enc in range(F.order):
                for b_enc in betas_by_value.get(int(rhs[a_enc]), ()):
                    places.append(Place(F.from_enc(a_enc), F.from_enc(b_enc)))
                    rows.append((a_enc, b_enc))
            self._places = places
            self._affine_enc = np.array(rows, dtype=np.uint8)
            assert len(places) == q0**3 + 1
        return self._places

    def affine_places(self) -> list[Place]:
        return self.places()[1:]

    @property
    def affine_enc(self) -> np.ndarray:
        """(q0^3, 2) array of affine place encodings, canonical order."""
        self.places()
        return self._affine_enc

    # -- Riemann-Roch monomial bases ------------------------------------------

    def rr_basis(self, m: int) -> list[tuple[int, int]]:
        """Monomials (a, b) spanning L(m*Pinf), sorted by pole order."""
        if m < 0:
            raise ValueError("m must be >= 0")
        out = []
        for b in range(min(self.q0, m // (self.q0 + 1) + 1)):
            rem = m - b * (self.q0 + 1)
            for a in range(rem // self.q0 + 1):
                out.append((a, b))
        out.sort(key=lambda ab: self.pole_order(*ab))
        return out

    def rr_dim(self, m: int) -> int:
        """dim L(m*Pinf) by direct semigroup count."""
        if m < 0:
            return 0
        total = 0
        for b in range(self.q0):
            rem = m - b * (self.q0 + 1)
            if rem >= 0:
                total += rem // self.q0 + 1
        return total


@functools.lru_cache(maxsize=None)
def hermitian_field(q0: int) -> HermitianField:
    return HermitianField(q0)


def rational_places(q0: int) -> list[Place]:
    return hermitian_field(q0).places()


def rr_basis(hermitian: HermitianField, m: int) -> list[tuple[int, int]]:
    return hermitian.rr_basis(m)


class CurveFunction:
    """Element of the coordinate ring: sparse sum of c_{a,b} x^a y^b, b < q0."""

    __slots__ = ("hermitian", "coeffs")

    def __init__(self, hermitian: HermitianField, coeffs: Optional[dict] = None):
        self.hermitian = hermitian
        self.coeffs: dict[tuple[int, int], FieldElement] = {}
        for ab, c in (coeffs or {}).items():
            self.set_coeff(ab, c)

    def set_coeff(self, ab: tuple[int, int], c: FieldElement) -> None:
        a, b = ab
        if a < 0 or not 0 <= b < self.hermitian.q0:
            raise ValueError(f"monomial ({a},{b}) outside the standard form")
        if c.is_zero():
            self.coeffs.pop((a, b), None)
        else:
            self.coeffs[(a, b)] = c

    def is_zero(self) -> bool:
        return not self.coeffs

    def pole_order(self) -> Optional[int]:
        """Pole order at Pinf; None for the zero function."""
        if not self.coeffs:
            return None
        return max(self.hermitian.pole_order(a, b) for a, b in self.coeffs)

    def leading_monomial(self) -> tuple[int, int]:
        return max(self.coeffs, key=lambda ab: self.hermitian.pole_order(*ab))

    def __add__(self, other: "CurveFunction") -> "CurveFunction":
        out = CurveFunction(self.hermitian, dict(self.coeffs))
        for ab, c in other.coeffs.items():
            out.set_coeff(ab, out.coeffs.get(ab, self.hermitian.field.zero) + c)
        return out

    def scale(self, c: FieldElement) -> "CurveFunction":
        out = CurveFunction(self.hermitian)
        for ab, a in self.coeffs.items():
            out.set_coeff(ab, a * c)
        return out

    def __sub__(self, other: "CurveFunction") -> "CurveFunction":
        return self + other.scale(-self.hermitian.field.one)

    def multiply(self, other: "CurveFunction") -> "CurveFunction":
        """Product in the coordinate ring, reduced to y-degree < q0.

        Reduction rewrites y^q0 as x^(q0+1) - y; the pole-preserving branch
        keeps the leading coefficient, so pole orders of products add up.
        """
        h = self.hermitian
        q0 = h.q0
        raw: dict[tuple[int, int], FieldElement] = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                key = (a1 + a2, b1 + b2)
                cur = raw.get(key)
                raw[key] = c1 * c2 if cur is None else cur + c1 * c2
        work = [(ab, c) for ab, c in raw.items() if not c.is_zero()]
        out = CurveFunction(h)
        while work:
            (a, b), c = work.pop()
            if c.is_zero():
                continue
            if b < q0:
                out.set_coeff((a, b), out.coeffs.get((a, b), h.field.zero) + c)
            else:
                work.append(((a + q0 + 1, b - q0), c))
                work.append(((a, b - q0 + 1), -c))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, CurveFunction)
            and self.hermitian is other.hermitian
            and {k: v.enc for k, v in self.coeffs.items()}
            == {k: v.enc for k, v in other.coeffs.items()}
        )

    def __hash__(self):
        return hash(tuple(sorted((ab, c.enc) for ab, c in self.coeffs.items())))

    def __repr__(self):
        if self.is_zero():
            return "CurveFunction(0)"
        terms = ",".join(f"x^{a}y^{b}*{c.enc}" for (a, b), c in sorted(self.coeffs.items()))
        return f"CurveFunction({terms})"

    def serialize(self) -> str:
        lines = [f"{a} {b} {c.enc}" for (a, b), c in sorted(self.coeffs.items())]
        return "\n".join(lines) + "\n"

    @staticmethod
    def deserialize(hermitian: HermitianField, text: str) -> "CurveFunction":
        out = CurveFunction(hermitian)
        for line in text.splitlines():
            if not line.strip():
                continue
            a, b, enc = line.split()
            out.set_coeff((int(a), int(b)), hermitian.field.from_enc(int(enc)))
        return out


def function_with_pole(hermitian: HermitianField, a: int) -> CurveFunction:
    """The monomial x^a' y^b' with pole order exactly a at Pinf.

    b' = a mod q0 is forced; raises when a is a Weierstrass gap (only possible
    for a < 2g).
    """
    if a < 0:
        raise ValueError("pole order must be >= 0")
    q0 = hermitian.q0
    b = a % q0
    rest = a - b * (q0 + 1)
    if rest < 0:
        raise ValueError(f"pole order {a} is a Weierstrass gap of <{q0},{q0 + 1}>")
    assert rest % q0 == 0
    return CurveFunction(hermitian, {(rest // q0, b): hermitian.field.one})


def evaluate_function(f: CurveFunction, place: Place) -> FieldElement:
    if place.is_infinite:
        raise ValueError("cannot evaluate at Pinf")
    field = f.hermitian.field
    acc = field.zero
    for (a, b), c in f.coeffs.items():
        acc = acc + c * place.alpha**a * place.beta**b
    return acc


def evaluate_at_all_places(f: CurveFunction, hermitian: HermitianField) -> np.ndarray:
    """Encodings of f at every affine place in canonical order."""
    F = hermitian.field
    enc = hermitian.affine_enc
    alphas, betas = enc[:, 0], enc[:, 1]
    out = np.zeros(len(alphas), dtype=np.uint8)
    for (a, b), c in f.coeffs.items():
        term = np.full(out.shape, c.enc, dtype=np.uint8)
        if a:
            term = F.vmul(term, F.vpow(alphas, a))
        if b:
            term = F.vmul(term, F.vpow(betas, b))
        out = F.vadd(out, term)
    return out


# ---------------------------------------------------------------------------
# local power series at affine places, in the parameter t = x - alpha
# ---------------------------------------------------------------------------

def y_series(hermitian: HermitianField, place: Place, precision: int) -> list[FieldElement]:
    """Unique lift of y through y^q0 + y = (alpha + t)^(q0+1), truncated.

    The curve relation gives the explicit recursion
    y_m = r_m - y_{m/q0}^q0 (the second term only when q0 | m), where r_m is
    the binomial expansion coefficient of (alpha + t)^(q0+1).
    """
    F = hermitian.field
    q0 = hermitian.q0
    p = hermitian.p
    alpha = place.alpha
    out = [place.beta]
    for m in range(1, precision):
        if m <= q0 + 1:
            cm = math.comb(q0 + 1, m) % p
            r = F(cm) * alpha ** (q0 + 1 - m) if cm else F.zero
        else:
            r = F.zero
        if m % q0 == 0:
            r = r - out[m // q0] ** q0
        out.append(r)
    return out


def _series_mul(u: Sequence[FieldElement], v: Sequence[FieldElement], precision: int, field: Field):
    out = [field.zero] * precision
    for i, ui in enumerate(u[:precision]):
        if ui.is_zero():
            continue
        for j, vj in enumerate(v[: precision - i]):
            if not vj.is_zero():
                out[i + j] = out[i + j] + ui * vj
    return out


def local_expansion(f: CurveFunction, place: Place, precision: int) -> list[FieldElement]:
    """Coefficients s_0..s_{precision-1} with f = sum s_j t^j mod t^precision."""
    if place.is_infinite:
        raise ValueError("expansion only at affine places")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    h = f.hermitian
    F = h.field
    p = h.p
    alpha = place.alpha
    ys = y_series(h, place, precision)
    max_b = max((b for (_, b) in f.coeffs), default=0)
    y_pows = [[F.one] + [F.zero] * (precision - 1)]
    for _ in range(max_b):
        y_pows.append(_series_mul(y_pows[-1], ys, precision, F))
    out = [F.zero] * precision
    for (a, b), c in f.coeffs.items():
        # (alpha + t)^a has coefficient C(a, j) alpha^(a-j) at t^j
        for j in range(min(a, precision - 1) + 1):
            cj = math.comb(a, j) % p
            if not cj:
                continue
            xa = F(cj) * alpha ** (a - j)
            if xa.is_zero():
                continue
            for i2, yc in enumerate(y_pows[b][: precision - j]):
                if not yc.is_zero():
                    out[j + i2] = out[j + i2] + c * xa * yc
    return out


# ---------------------------------------------------------------------------
# recursive-tower parameter formulas (arithmetic only, no field construction)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TowerParams:
    genus: int
    places_lower_bound: int


def tower_params(r: int, t: int) -> TowerParams:
    """Exact genus (parity formula) and rational-place lower bound at level t."""
    _prime_power(r)
    if t < 2:
        raise ValueError("tower level t must be >= 2")
    if t % 2 == 0:
        g = (r ** (t // 2) - 1) ** 2
    else:
        g = (r ** ((t - 1) // 2) - 1) * (r ** ((t + 1) // 2) - 1)
    places = r ** (t - 1) * (r * r - r) + 1
    return TowerParams(genus=g, places_lower_bound=places)
