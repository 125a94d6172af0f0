"""(d, 2, q)_q multiplication-friendly pairs from Reed-Solomon codes.

pi expands an element of F_{q^2} into the evaluations of its degree-<=1
representative at all q points of F_q; psi interpolates back through the
first d+1 points and reduces mod the quadratic modulus.  The pair satisfies
psi(pi(a1) * ... * pi(ad)) = a1 ... ad, the identity a concatenated code
leans on: coordinatewise products of expanded vectors map to field products.

Restricted to prime q: the extension tower F_{q^2}/F_q/F_p for non-prime q
is not supported by the field layer, and all desk-scale uses are prime.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace

import numpy as np

from .gf import Field, FieldElement, field_build, is_prime


@dataclass(frozen=True)
class MfPair:
    q: int
    d: int
    base: Field
    ext: Field
    psi_alpha_order: tuple[int, ...]  # pairing of alpha-nodes used by psi

    @property
    def points(self) -> list[int]:
        """Evaluation points: all of F_q in canonical encoding order."""
        return list(range(self.q))


def mfp_build(q: int, d: int) -> MfPair:
    if d < 2:
        raise ValueError("need multiplication arity d >= 2")
    if not is_prime(q):
        raise ValueError(f"q = {q} must be prime")
    if d >= q:
        raise ValueError(f"need d < q (got d={d}, q={q})")
    base = field_build(q)
    ext = field_build(q, 2)
    return MfPair(q=q, d=d, base=base, ext=ext, psi_alpha_order=tuple(range(d + 1)))


def corrupt_pair(pair: MfPair, i: int = 0, j: int = 1) -> MfPair:
    """Swap two of psi's alpha-nodes (pairing only); breaks the identity."""
    order = list(pair.psi_alpha_order)
    order[i], order[j] = order[j], order[i]
    return replace(pair, psi_alpha_order=tuple(order))


def pi_map(pair: MfPair, v: FieldElement) -> np.ndarray:
    """Evaluations of v's degree-<=1 representative at 0, 1, ..., q-1."""
    if v.field != pair.ext:
        raise ValueError("element not in the extension field")
    c0, c1 = v.coeffs
    pts = np.arange(pair.q, dtype=np.int64)
    return ((c0 + c1 * pts) % pair.q).astype(np.uint8)


def star(pair: MfPair, *vectors) -> np.ndarray:
    """Coordinatewise product over F_q (prime, so plain modular arithmetic)."""
    out = np.ones(pair.q, dtype=np.int64)
    for v in vectors:
        out = (out * np.asarray(v, dtype=np.int64)) % pair.q
    return out.astype(np.uint8)


def psi_map(pair: MfPair, w) -> FieldElement:
    """Interpolate through the first d+1 coordinates, reduce mod the modulus.

    On the degree-<=d evaluation code this recovers the unique polynomial and
    hence inverts products of pi-images; off the code it is the fixed linear
    extension through those same coordinates.
    """
    w = [int(x) for x in w]
    if len(w) != pair.q:
        raise ValueError(f"expected a length-{pair.q} word")
    base = pair.base
    nodes = [base(pair.psi_alpha_order[i]) for i in range(pair.d + 1)]
    values = [base.from_enc(w[i] % pair.q) for i in range(pair.d + 1)]
    # Lagrange interpolation over F_q
    coeffs = [base.zero] * (pair.d + 1)
    for i, (xi, yi) in enumerate(zip(nodes, values)):
        li = [base.one]
        denom = base.one
        for jj, xj in enumerate(nodes):
            if jj == i:
                continue
            li = _poly_mul_lin(li, xj, base)
            denom = denom * (xi - xj)
        scale = yi / denom
        for t, c in enumerate(li):
            coeffs[t] = coeffs[t] + c * scale
    # reduce mod the quadratic modulus x^2 + m1*x + m0 of the extension
    m0, m1 = pair.ext.modulus[0], pair.ext.modulus[1]
    encs = [c.enc for c in coeffs]
    while len(encs) > 2:
        c = encs.pop()  # coefficient of x^D with D = len(encs) after the pop
        if c:
            D = len(encs)
            encs[D - 2] = (encs[D - 2] - c * m0) % pair.q
            encs[D - 1] = (encs[D - 1] - c * m1) % pair.q
    encs += [0] * (2 - len(encs))
    return FieldElement(pair.ext, (encs[0], encs[1]))


def _poly_mul_lin(poly: list[FieldElement], root: FieldElement, base: Field) -> list[FieldElement]:
    # poly * (x - root)
    out = [base.zero] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] = out[i + 1] + c
        out[i] = out[i] - c * root
    return out


def mfp_verify(pair: MfPair, trials: int = 10**5, seed: int = 0) -> bool:
    """Check psi(pi(a_1)*...*pi(a_d)) == a_1...a_d and pi(1) == all-ones.

    Exhaustive over all (q^2)^d tuples for d == 2; randomized (seeded) for
    d >= 3.  Guarded to desk scale.
    """
    if pair.q**2 > 10**4:
        raise ValueError("instance too large for exhaustive verification")
    ones = pi_map(pair, pair.ext.one)
    if not np.all(ones == pair.base.one.enc):
        return False
    if pair.d == 2:
        tuples = itertools.product(range(pair.ext.order), repeat=2)
    else:
        rng = random.Random(seed)
        tuples = (
            tuple(rng.randrange(pair.ext.order) for _ in range(pair.d))
            for _ in range(trials)
        )
    for encs in tuples:
        elems = [pair.ext.from_enc(e) for e in encs]
        vecs = [pi_map(pair, v) for v in elems]
        got = psi_map(pair, star(pair, *vecs))
        want = pair.ext.one
        for v in elems:
            want = want * v
        if got != want:
            return False
    return True
