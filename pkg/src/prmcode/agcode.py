"""One-point evaluation codes C(P; m*Pinf) on the Hermitian function field.

The generator matrix rows are the evaluations of the pole-order-sorted
monomial basis of L(m*Pinf), which makes the matrix canonical.  Parameter
records carry the designed distance N - m (the Goppa bound), never the true
distance; exact distances live in the oracle module.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from ._kernels import gf_rref
from .curve import CurveFunction, HermitianField, Place
from .gf import FieldElement


class OnePointCode:
    def __init__(self, hermitian: HermitianField, m: int, places: Sequence[Place]):
        if m < 0:
            raise ValueError("m must be >= 0")
        seen = set()
        for pl in places:
            if pl.is_infinite:
                raise ValueError("Pinf cannot be an evaluation place")
            key = (pl.alpha.enc, pl.beta.enc)
            if key in seen:
                raise ValueError("evaluation places must be distinct")
            seen.add(key)
        self.hermitian = hermitian
        self.m = m
        self.places = list(places)
        self.basis = hermitian.rr_basis(m)
        self.generator = self._build_generator()
        self._rank: Optional[int] = None

    def _build_generator(self) -> np.ndarray:
        F = self.hermitian.field
        alphas = F.varr([pl.alpha.enc for pl in self.places])
        betas = F.varr([pl.beta.enc for pl in self.places])
        max_a = max((a for a, _ in self.basis), default=0)
        max_b = max((b for _, b in self.basis), default=0)
        apow = [np.full(len(self.places), F.one.enc, dtype=np.uint8)]
        for _ in range(max_a):
            apow.append(F.vmul(apow[-1], alphas))
        bpow = [np.full(len(self.places), F.one.enc, dtype=np.uint8)]
        for _ in range(max_b):
            bpow.append(F.vmul(bpow[-1], betas))
        rows = [F.vmul(apow[a], bpow[b]) for a, b in self.basis]
        return np.array(rows, dtype=np.uint8)

    @property
    def N(self) -> int:
        return len(self.places)

    @property
    def dim(self) -> int:
        """ell(m*Pinf); equals the code dimension whenever m < N."""
        return len(self.basis)

    @property
    def designed_distance(self) -> int:
        return self.N - self.m

    def rank(self) -> int:
        if self._rank is None:
            F = self.hermitian.field
            work = self.generator.copy()
            r, _ = gf_rref(work, F.add2d, F.mul2d, F.inv1d, F.neg1d)
            self._rank = int(r)
        return self._rank

    def coefficients_to_function(self, coeffs: Sequence[FieldElement]) -> CurveFunction:
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients")
        out = CurveFunction(self.hermitian)
        for (a, b), c in zip(self.basis, coeffs):
            out.set_coeff((a, b), c)
        return out

    def function_to_coefficients(self, f: CurveFunction) -> list[FieldElement]:
        zero = self.hermitian.field.zero
        index = {ab: i for i, ab in enumerate(self.basis)}
        out = [zero] * self.dim
        for ab, c in f.coeffs.items():
            if ab not in index:
                raise ValueError(f"monomial {ab} outside L({self.m}*Pinf)")
            out[index[ab]] = c
        return out

    def __repr__(self):
        return f"OnePointCode(q0={self.hermitian.q0}, m={self.m}, [{self.N},{self.dim},>={self.designed_distance}])"

    def write_descriptor(self, path: str | Path, place_tag: str = "all-affine-v1") -> None:
        lines = [
            "one-point-code v1",
            f"q0 {self.hermitian.q0}",
            f"field {self.hermitian.field.descriptor()}",
            f"m {self.m}",
            f"places {place_tag}",
        ]
        Path(path).write_text("\n".join(lines) + "\n")


def ag_build(hermitian: HermitianField, m: int, places: Optional[Sequence[Place]] = None) -> OnePointCode:
    """Build C(P; m*Pinf); defaults to all affine places in canonical order."""
    if places is None:
        places = hermitian.affine_places()
    return OnePointCode(hermitian, m, places)


def ag_encode(code: OnePointCode, coeffs) -> np.ndarray:
    """Codeword of a coefficient vector over the pole-order basis."""
    F = code.hermitian.field
    if isinstance(coeffs, CurveFunction):
        coeffs = code.function_to_coefficients(coeffs)
    enc = F.varr(coeffs)
    if len(enc) != code.dim:
        raise ValueError(f"expected {code.dim} coefficients, got {len(enc)}")
    out = np.zeros(code.N, dtype=np.uint8)
    for i, c in enumerate(enc):
        if c:
            out = F.vadd(out, F.vmul(np.full(code.N, c, dtype=np.uint8), code.generator[i]))
    return out
