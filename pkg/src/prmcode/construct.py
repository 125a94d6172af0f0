"""Constructions I and II: punctured Reed-Muller codes via pole-order maps.

Construction I substitutes each variable x_i by a curve monomial f_i whose
pole order at Pinf is the i-th Sidon value a_i; evaluating at every affine
place gives the multiset T1, and the resulting punctured RM code is a
subcode of the ambient one-point code of degree d*max(a_i).  Distinct RM
monomials land on distinct pole orders (the Sidon property), so the message
map stays injective and the pole-order basis is triangular.

Construction II concatenates the Construction-I code over F_{q^2} with the
Reed-Solomon multiplication-friendly pair over F_q: T2 collects the columns
of the pi-expansions of T1's points, outer-place-major, column-minor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from ._kernels import gf_rref
from .agcode import OnePointCode, ag_build
from .curve import CurveFunction, HermitianField, function_with_pole, evaluate_at_all_places, hermitian_field
from .gf import is_prime
from .mfp import MfPair, mfp_build
from .mpoly import MultiPoly, PointSet, monomial_basis, rm_encode
from .sidon import SidonSequence, sidon_build, sidon_shift, sidon_verify

# Independently reported distance figure for the (n=10, d=2, q=11)
# concatenated instance.  It does not match the direct product-bound
# arithmetic below and is retained for comparison in parameter reports.
EXAMPLE2_REFERENCE_DISTANCE = 6457
EXAMPLE2_REFERENCE_PARAMS = (10, 2, 11)

PLACE_ORDER_TAG = "all-affine-v1"


@dataclass(frozen=True)
class CodeParams:
    construction: str
    n: int
    d: int
    q: int  # alphabet size of the code
    N: int
    k: int
    designed_distance: int
    designed_distance_bound: Fraction
    rate: Fraction
    relative_distance: Fraction
    epsilon: Fraction  # 1 - relative designed distance
    gate_epsilon: Fraction  # smallest eps for which the construction gate holds
    requested_epsilon: Optional[Fraction] = None
    reference_distance: Optional[int] = None

    def render(self) -> str:
        lines = [
            f"construction {self.construction}: [{self.N}, {self.k}, >={self.designed_distance}] over GF({self.q})",
            f"rate                = {self.rate} ~ {float(self.rate):.6f}",
            f"relative distance  >= {self.relative_distance} ~ {float(self.relative_distance):.6f}",
            f"epsilon (1 - rel d) = {self.epsilon} ~ {float(self.epsilon):.6f}",
        ]
        if self.designed_distance_bound != self.designed_distance:
            lines.insert(1, f"distance bound (exact) = {self.designed_distance_bound}"
                            f" ~ {float(self.designed_distance_bound):.3f}")
        gate_kind = "d <= eps*(sqrt(q)-1)/2 - 1" if self.construction == "I" else "d <= eps*(q-1)/4 - 1"
        ok = "holds" if (self.requested_epsilon or self.epsilon) >= self.gate_epsilon else "DOES NOT hold"
        lines.append(
            f"rate/distance gate ({gate_kind}): needs eps >= {self.gate_epsilon} "
            f"~ {float(self.gate_epsilon):.6f}; at eps = "
            f"{self.requested_epsilon if self.requested_epsilon is not None else self.epsilon} it {ok}"
        )
        if self.reference_distance is not None:
            lines.append(
                f"designed distance via the product bound: {self.designed_distance_bound} (ours, exact); "
                f"previously reported figure for this instance: {self.reference_distance} (kept for comparison)"
            )
        return "\n".join(lines)


def _as_sidon(sidon, d: int) -> SidonSequence:
    if isinstance(sidon, SidonSequence):
        seq = sidon
    else:
        seq = SidonSequence(d=d, values=tuple(int(v) for v in sidon))
    if seq.d != d:
        raise ValueError(f"sidon sequence is {seq.d}-Sidon, construction needs d={d}")
    if math.comb(seq.n + d, d) ** 2 <= 10**9:
        ok, pair = sidon_verify(seq.values, d)
        if not ok:
            raise ValueError(f"sequence fails the Sidon check at {pair}")
    return seq


class ConstructionI:
    def __init__(
        self,
        n: int,
        d: int,
        hermitian: HermitianField,
        sidon: SidonSequence,
        requested_eps: Optional[Fraction] = None,
    ):
        if sidon.n != n:
            raise ValueError(f"sidon sequence has length {sidon.n}, need {n}")
        self.n = n
        self.d = d
        self.hermitian = hermitian
        self.sidon = sidon
        self.requested_eps = requested_eps
        q0 = hermitian.q0
        N = q0**3
        m = d * sidon.max_value
        if m >= N:
            raise ValueError(
                f"designed distance would be <= 0: d*max(a) = {m} >= N = {N}"
            )
        try:
            self.fs = [function_with_pole(hermitian, a) for a in sidon.values]
        except ValueError as exc:
            raise ValueError(f"sidon value not representable on the curve: {exc}") from exc
        cols = [evaluate_at_all_places(f, hermitian) for f in self.fs]
        self.T1 = PointSet(hermitian.field, np.stack(cols, axis=1))
        self.ambient: OnePointCode = ag_build(hermitian, m)
        self._pole_to_vec = {
            sum(i * a for i, a in zip(vec, sidon.values)): vec
            for vec in monomial_basis(n, d)
        }
        self._subst_cache: dict[tuple[int, ...], CurveFunction] = {}
        self._generator: Optional[np.ndarray] = None

    @property
    def field(self):
        return self.hermitian.field

    @property
    def N(self) -> int:
        return len(self.T1)

    @property
    def k(self) -> int:
        return math.comb(self.n + self.d, self.d)

    def encode(self, F: MultiPoly) -> np.ndarray:
        if F.field != self.field or F.n != self.n:
            raise ValueError("message does not match the construction")
        if F.d > self.d:
            raise ValueError(f"message degree {F.d} exceeds construction degree {self.d}")
        return rm_encode(F, self.T1)

    def generator(self) -> np.ndarray:
        if self._generator is None:
            rows = []
            for vec in monomial_basis(self.n, self.d):
                F = MultiPoly(self.field, self.n, self.d, {vec: self.field.one})
                rows.append(self.encode(F))
            self._generator = np.array(rows, dtype=np.uint8)
        return self._generator

    def generator_rank(self) -> int:
        work = self.generator().copy()
        F = self.field
        r, _ = gf_rref(work, F.add2d, F.mul2d, F.inv1d, F.neg1d)
        return int(r)

    def substituted_monomial(self, vec: tuple[int, ...]) -> CurveFunction:
        """Image of X^vec under x_i -> f_i, reduced to standard form."""
        vec = tuple(vec)
        cached = self._subst_cache.get(vec)
        if cached is not None:
            return cached
        q0 = self.hermitian.q0
        A = B = 0
        for e, f in zip(vec, self.fs):
            (fa, fb), = f.coeffs.keys()
            A += e * fa
            B += e * fb
        out = CurveFunction(self.hermitian)
        work = [((A, B), self.field.one)]
        while work:
            (a, b), c = work.pop()
            if b < q0:
                out.set_coeff((a, b), out.coeffs.get((a, b), self.field.zero) + c)
            else:
                work.append(((a + q0 + 1, b - q0), c))
                work.append(((a, b - q0 + 1), -c))
        self._subst_cache[vec] = out
        return out

    def params(self) -> CodeParams:
        m = self.d * self.sidon.max_value
        designed = self.N - m
        q0 = self.hermitian.q0
        return CodeParams(
            construction="I",
            n=self.n,
            d=self.d,
            q=self.field.order,
            N=self.N,
            k=self.k,
            designed_distance=designed,
            designed_distance_bound=Fraction(designed),
            rate=Fraction(self.k, self.N),
            relative_distance=Fraction(designed, self.N),
            epsilon=Fraction(m, self.N),
            gate_epsilon=Fraction(2 * (self.d + 1), q0 - 1),
            requested_epsilon=self.requested_eps,
        )

    def __repr__(self):
        p = self.params()
        return f"ConstructionI(n={self.n}, d={self.d}, q0={self.hermitian.q0}, [{p.N},{p.k},>={p.designed_distance}])"


def _auto_sidon(n: int, d: int, hermitian: HermitianField) -> SidonSequence:
    base = sidon_build(n, d)
    two_g = 2 * hermitian.genus
    M = max(base.max_value + 1, -(-two_g // d))
    return sidon_shift(base, M)


def build_T1(
    n: int,
    d: int,
    q0: Optional[int] = None,
    sidon=None,
    eps: Optional[Union[Fraction, float]] = None,
) -> ConstructionI:
    """Construction I.  Give q0 explicitly, or give eps to auto-size it.

    Auto-sizing picks the smallest prime power q0 whose gate
    d <= eps*(q0-1)/2 - 1 holds and whose place count can carry the (shifted)
    Sidon sequence; the sequence itself defaults to sidon_build + a shift
    landing min(a_i) >= 2g.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    eps_frac = Fraction(eps).limit_denominator(10**6) if eps is not None else None
    if q0 is None:
        if eps_frac is None:
            raise ValueError("give q0 or eps")
        cand = 2
        while True:
            if _is_prime_power(cand) and Fraction(2 * (d + 1), cand - 1) <= eps_frac:
                h = hermitian_field(cand)
                seq = sidon if sidon is not None else _auto_sidon(n, max(d, 2), h)
                seq_obj = _as_sidon(seq, max(d, 2)) if not isinstance(seq, SidonSequence) else seq
                if d * seq_obj.max_value < cand**3:
                    q0 = cand
                    sidon = seq_obj
                    break
            cand += 1
            if cand > 512:
                raise ValueError("no feasible q0 below the field cap")
    h = hermitian_field(q0)
    if sidon is None:
        sidon = _auto_sidon(n, max(d, 2), h)
    seq = _as_sidon(sidon, sidon.d if isinstance(sidon, SidonSequence) else max(d, 2))
    return ConstructionI(n, d, h, seq, requested_eps=eps_frac)


def _is_prime_power(x: int) -> bool:
    if x < 2:
        return False
    p = 2
    while p * p <= x:
        if x % p == 0:
            break
        p += 1
    if x % p:
        p = x
    while x > 1:
        if x % p:
            return False
        x //= p
    return True


def rm_to_ag(cI: ConstructionI, F: MultiPoly) -> CurveFunction:
    """Substitute x_i -> f_i; lands in L(d*max(a_i) * Pinf)."""
    if F.n != cI.n or F.field != cI.field:
        raise ValueError("message does not match the construction")
    if F.d > cI.d:
        raise ValueError("message degree exceeds the construction degree")
    out = CurveFunction(cI.hermitian)
    for vec, c in F.coeffs.items():
        out = out + cI.substituted_monomial(vec).scale(c)
    return out


def ag_to_rm(cI: ConstructionI, h: CurveFunction) -> Optional[MultiPoly]:
    """Invert rm_to_ag by greedy leading-pole-order peeling.

    Pole orders of substituted monomials are pairwise distinct, so the basis
    is triangular; a leading order outside the pole map, or a nonzero final
    residue, means h is not in the substituted message space (returns None).
    """
    F = MultiPoly(cI.field, cI.n, cI.d)
    work = CurveFunction(cI.hermitian, dict(h.coeffs))
    while not work.is_zero():
        a, b = work.leading_monomial()
        rho = cI.hermitian.pole_order(a, b)
        vec = cI._pole_to_vec.get(rho)
        if vec is None:
            return None
        c = work.coeffs[(a, b)]
        F.set_coeff(vec, F.coeff(vec) + c)
        work = work - cI.substituted_monomial(vec).scale(c)
    return F


class ConstructionII:
    def __init__(self, n: int, d: int, q: int, outer: ConstructionI, inner: MfPair):
        self.n = n
        self.d = d
        self.q = q
        self.outer = outer
        self.inner = inner
        self.field = inner.base
        c0 = (outer.T1.enc % q).astype(np.int64)
        c1 = (outer.T1.enc // q).astype(np.int64)
        alphas = np.arange(q, dtype=np.int64)
        pts = (c0[:, None, :] + c1[:, None, :] * alphas[None, :, None]) % q
        self.T2 = PointSet(self.field, pts.reshape(-1, n).astype(np.uint8))

    @property
    def L(self) -> int:
        return self.outer.N

    @property
    def N(self) -> int:
        return len(self.T2)

    @property
    def k(self) -> int:
        return math.comb(self.n + self.d, self.d)

    def encode(self, F: MultiPoly) -> np.ndarray:
        if F.field != self.field or F.n != self.n:
            raise ValueError("message does not match the construction")
        if F.d > self.d:
            raise ValueError("message degree exceeds the construction degree")
        return rm_encode(F, self.T2)

    def generator(self) -> np.ndarray:
        rows = []
        for vec in monomial_basis(self.n, self.d):
            F = MultiPoly(self.field, self.n, self.d, {vec: self.field.one})
            rows.append(self.encode(F))
        return np.array(rows, dtype=np.uint8)

    def generator_rank(self) -> int:
        work = self.generator().copy()
        Fq = self.field
        r, _ = gf_rref(work, Fq.add2d, Fq.mul2d, Fq.inv1d, Fq.neg1d)
        return int(r)

    def blocks(self, word: np.ndarray) -> np.ndarray:
        """(L, q) view of a length-qL word: block j holds outer coordinate j."""
        return np.asarray(word, dtype=np.uint8).reshape(self.L, self.q)

    def params(self) -> CodeParams:
        rho = Fraction(self.d * self.outer.sidon.max_value, self.L)
        bound = self.N * (1 - rho - Fraction(self.d, self.q))
        ref = (
            EXAMPLE2_REFERENCE_DISTANCE
            if (self.n, self.d, self.q) == EXAMPLE2_REFERENCE_PARAMS
            else None
        )
        return CodeParams(
            construction="II",
            n=self.n,
            d=self.d,
            q=self.q,
            N=self.N,
            k=self.k,
            designed_distance=math.floor(bound),
            designed_distance_bound=bound,
            rate=Fraction(self.k, self.N),
            relative_distance=1 - rho - Fraction(self.d, self.q),
            epsilon=rho + Fraction(self.d, self.q),
            gate_epsilon=Fraction(4 * (self.d + 1), self.q - 1),
            requested_epsilon=self.outer.requested_eps,
            reference_distance=ref,
        )

    def __repr__(self):
        return f"ConstructionII(n={self.n}, d={self.d}, q={self.q}, [{self.N},{self.k}])"


def build_T2(
    n: int,
    d: int,
    q: int,
    sidon=None,
    eps: Optional[Union[Fraction, float]] = None,
) -> ConstructionII:
    """Construction II over F_q: Construction I over F_{q^2} concatenated
    with the (d, 2, q)_q multiplication-friendly pair."""
    if not is_prime(q):
        raise ValueError(f"q = {q} must be prime")
    if d >= q:
        raise ValueError(f"need d < q (got d={d}, q={q})")
    inner = mfp_build(q, d)
    outer = build_T1(n, d, q0=q, sidon=sidon, eps=eps)
    return ConstructionII(n, d, q, outer, inner)


def code_params(construction) -> CodeParams:
    return construction.params()


# ---------------------------------------------------------------------------
# code specification files
# ---------------------------------------------------------------------------

def save_spec(construction, path: str | Path) -> None:
    if isinstance(construction, ConstructionI):
        lines = [
            "prmcode-spec v1",
            "construction I",
            f"n {construction.n}",
            f"d {construction.d}",
            f"q0 {construction.hermitian.q0}",
            "sidon " + " ".join(str(v) for v in construction.sidon.values),
            f"places {PLACE_ORDER_TAG}",
        ]
    elif isinstance(construction, ConstructionII):
        lines = [
            "prmcode-spec v1",
            "construction II",
            f"n {construction.n}",
            f"d {construction.d}",
            f"q {construction.q}",
            "sidon " + " ".join(str(v) for v in construction.outer.sidon.values),
            f"places {PLACE_ORDER_TAG}",
        ]
    else:
        raise TypeError("unknown construction")
    Path(path).write_text("\n".join(lines) + "\n")


def load_spec(path: str | Path):
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if lines[0] != "prmcode-spec v1":
        raise ValueError("unrecognized spec file header")
    fields = {}
    for ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        fields[key] = rest
    if fields.get("places", PLACE_ORDER_TAG) != PLACE_ORDER_TAG:
        raise ValueError(f"unsupported place ordering {fields.get('places')}")
    n = int(fields["n"])
    d = int(fields["d"])
    values = tuple(int(v) for v in fields["sidon"].split())
    seq = SidonSequence(d=max(d, 2), values=values)
    if fields["construction"] == "I":
        return build_T1(n, d, q0=int(fields["q0"]), sidon=seq)
    if fields["construction"] == "II":
        return build_T2(n, d, q=int(fields["q"]), sidon=seq)
    raise ValueError(f"unknown construction {fields['construction']}")
