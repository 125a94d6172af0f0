"""Sparse n-variate polynomials of bounded total degree, and the generic
puncture-evaluation encoder.

Monomials are exponent vectors; the graded-lexicographic order (weight
ascending, then lexicographically descending exponents, i.e. x1 > x2 > ...)
fixes message serialization as a coefficient vector of length C(n+d, d).
Evaluation multisets are ordered lists: duplicates are kept and the order is
part of the code definition.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .gf import Field, FieldElement, field_build, find_irreducible

BASIS_GUARD = 10**7

ExponentVector = tuple[int, ...]


def monomial_basis(n: int, d: int) -> list[ExponentVector]:
    """All exponent vectors of weight <= d in graded-lex order."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    count = math.comb(n + d, d)
    if count > BASIS_GUARD:
        raise ValueError(f"basis size {count} exceeds guard {BASIS_GUARD}")

    def weight_vectors(prefix: list[int], remaining: int, w: int):
        if remaining == 1:
            yield tuple(prefix + [w])
            return
        for first in range(w, -1, -1):
            yield from weight_vectors(prefix + [first], remaining - 1, w - first)

    out: list[ExponentVector] = []
    for w in range(d + 1):
        out.extend(weight_vectors([], n, w))
    assert len(out) == count
    return out


class MultiPoly:
    """Sparse polynomial: exponent vector -> nonzero coefficient."""

    __slots__ = ("field", "n", "d", "coeffs")

    def __init__(self, field: Field, n: int, d: int, coeffs: Optional[dict] = None):
        self.field = field
        self.n = n
        self.d = d
        self.coeffs: dict[ExponentVector, FieldElement] = {}
        for vec, c in (coeffs or {}).items():
            self.set_coeff(vec, c)

    def set_coeff(self, vec: ExponentVector, c: FieldElement) -> None:
        vec = tuple(vec)
        if len(vec) != self.n or any(e < 0 for e in vec):
            raise ValueError(f"bad exponent vector {vec}")
        if sum(vec) > self.d:
            raise ValueError(f"monomial {vec} exceeds total degree {self.d}")
        if c.is_zero():
            self.coeffs.pop(vec, None)
        else:
            self.coeffs[vec] = c

    def coeff(self, vec: ExponentVector) -> FieldElement:
        return self.coeffs.get(tuple(vec), self.field.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.field == other.field
            and self.n == other.n
            and {k: v.enc for k, v in self.coeffs.items()}
            == {k: v.enc for k, v in other.coeffs.items()}
        )

    def __hash__(self):
        return hash((self.field.order, self.n, tuple(sorted((k, v.enc) for k, v in self.coeffs.items()))))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.field != other.field or self.n != other.n:
            raise ValueError("mismatched polynomials")
        out = MultiPoly(self.field, self.n, max(self.d, other.d))
        for vec in set(self.coeffs) | set(other.coeffs):
            out.set_coeff(vec, self.coeff(vec) + other.coeff(vec))
        return out

    def scale(self, c: FieldElement) -> "MultiPoly":
        out = MultiPoly(self.field, self.n, self.d)
        for vec, a in self.coeffs.items():
            out.set_coeff(vec, a * c)
        return out

    def coeff_vector(self) -> list[int]:
        """Coefficient encodings over the graded-lex basis."""
        return [self.coeff(vec).enc for vec in monomial_basis(self.n, self.d)]

    @staticmethod
    def from_coeff_vector(field: Field, n: int, d: int, encs: Sequence[int]) -> "MultiPoly":
        basis = monomial_basis(n, d)
        if len(encs) != len(basis):
            raise ValueError(f"expected {len(basis)} coefficients, got {len(encs)}")
        out = MultiPoly(field, n, d)
        for vec, e in zip(basis, encs):
            out.set_coeff(vec, field.from_enc(int(e)))
        return out

    def __repr__(self):
        return f"MultiPoly(GF({self.field.order}), n={self.n}, d={self.d}, {len(self.coeffs)} terms)"


def evaluate(F: MultiPoly, point: Sequence[FieldElement]) -> FieldElement:
    if len(point) != F.n:
        raise ValueError(f"point has {len(point)} coordinates, expected {F.n}")
    for x in point:
        if x.field != F.field:
            raise ValueError("field mismatch")
    acc = F.field.zero
    for vec, c in F.coeffs.items():
        term = c
        for x, e in zip(point, vec):
            if e:
                term = term * x**e
        acc = acc + term
    return acc


class PointSet:
    """Ordered multiset of points of F^n, stored as an (N, n) encoding array."""

    __slots__ = ("field", "n", "enc")

    def __init__(self, field: Field, enc: np.ndarray):
        enc = np.asarray(enc, dtype=np.uint8)
        if enc.ndim != 2:
            raise ValueError("expected a 2-d array of encodings")
        self.field = field
        self.n = enc.shape[1]
        self.enc = enc

    @staticmethod
    def from_points(field: Field, points: Iterable[Sequence[FieldElement]]) -> "PointSet":
        rows = []
        for pt in points:
            for x in pt:
                if x.field != field:
                    raise ValueError("field mismatch")
            rows.append([x.enc for x in pt])
        return PointSet(field, np.array(rows, dtype=np.uint8))

    def __len__(self) -> int:
        return self.enc.shape[0]

    def point(self, i: int) -> tuple[FieldElement, ...]:
        return tuple(self.field.from_enc(int(e)) for e in self.enc[i])

    def __iter__(self) -> Iterator[tuple[FieldElement, ...]]:
        for i in range(len(self)):
            yield self.point(i)


def rm_encode(F: MultiPoly, T: PointSet) -> np.ndarray:
    """Evaluate F on the multiset, in its stored order.

    Returns the codeword as a uint8 array of canonical encodings.
    """
    if T.n != F.n:
        raise ValueError(f"points have dimension {T.n}, message has {F.n}")
    if T.field != F.field:
        raise ValueError("field mismatch")
    field = F.field
    N = len(T)
    out = np.zeros(N, dtype=np.uint8)
    for vec, c in F.coeffs.items():
        term = np.full(N, c.enc, dtype=np.uint8)
        for k, e in enumerate(vec):
            if e:
                term = field.vmul(term, field.vpow(T.enc[:, k], e))
        out = field.vadd(out, term)
    return out


# ---------------------------------------------------------------------------
# message files: header `n d p k`, then graded-lex coefficient encodings
# ---------------------------------------------------------------------------

def save_message(F: MultiPoly, path: str | Path) -> None:
    field = F.field
    if field.k > 1 and field.modulus != find_irreducible(field.p, field.k):
        raise ValueError("message files require the canonical field modulus")
    lines = [f"{F.n} {F.d} {field.p} {field.k}"]
    lines += [str(e) for e in F.coeff_vector()]
    Path(path).write_text("\n".join(lines) + "\n")


def load_message(path: str | Path) -> MultiPoly:
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    n, d, p, k = (int(t) for t in lines[0].split())
    field = field_build(p, k)
    encs = [int(ln) for ln in lines[1:]]
    return MultiPoly.from_coeff_vector(field, n, d, encs)
