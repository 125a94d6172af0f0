"""Deterministic construction and verification of d-Sidon sequences.

A sequence a_1..a_n is d-Sidon when every two distinct exponent vectors
I, J of weight <= d give distinct weighted sums sum(i_k * a_k).  These
sequences make monomial pole orders collision-free in the code
constructions, so everything here is deterministic and auditable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .gf import ORDER_CAP, field_build, is_prime, discrete_log, primitive_element

VERIFY_GUARD = 10**9  # C(n+d,d)^2 must stay below this for exhaustive checks


@dataclass(frozen=True)
class SidonProvenance:
    """Construction audit record: prime p, primitive element, modulus M."""

    p: int
    gamma_enc: int
    M: int


@dataclass(frozen=True)
class SidonSequence:
    d: int
    values: tuple[int, ...]
    provenance: Optional[SidonProvenance] = None

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def max_value(self) -> int:
        return max(self.values)

    @property
    def min_value(self) -> int:
        return min(self.values)


def exponent_vectors(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of weight <= d, weight-ascending then lex-ascending."""

    def vectors_of_weight(prefix: list[int], remaining: int, w: int):
        if remaining == 1:
            yield tuple(prefix + [w])
            return
        for first in range(w + 1):
            yield from vectors_of_weight(prefix + [first], remaining - 1, w - first)

    for w in range(d + 1):
        yield from vectors_of_weight([], n, w)


def sidon_verify(
    values: Sequence[int], d: int
) -> tuple[bool, Optional[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Exhaustively check the d-Sidon property.

    Returns (True, None) or (False, (I, J)) with the first colliding pair in
    enumeration order, which makes the reported counterexample deterministic.
    """
    n = len(values)
    count = math.comb(n + d, d)
    if count * count > VERIFY_GUARD:
        raise ValueError(f"instance too large for exhaustive check: C({n}+{d},{d})^2 > {VERIFY_GUARD}")
    seen: dict[int, tuple[int, ...]] = {}
    for vec in exponent_vectors(n, d):
        s = sum(i * a for i, a in zip(vec, values))
        prev = seen.get(s)
        if prev is not None:
            return False, (vec, prev)
        seen[s] = vec
    return True, None


def sidon_build(n: int, d: int) -> SidonSequence:
    """Discrete-log construction of a d-Sidon sequence of length n.

    p is the smallest prime >= n, M = (p^(d+1)-1)/(p-1), gamma the canonical
    primitive element of F_{p^(d+1)}, and the i-th value is
    dlog_gamma(gamma + alpha_i) mod M for alpha_i the i-th element of F_p in
    encoding order.  All values land in [0, M).
    """
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    p = n if n > 1 else 2
    while not is_prime(p):
        p += 1
    if p ** (d + 1) > ORDER_CAP:
        raise ValueError(f"p^(d+1) = {p**(d+1)} exceeds the field-order cap")
    M = (p ** (d + 1) - 1) // (p - 1)
    field = field_build(p, d + 1)
    gamma = primitive_element(field)
    values = []
    for i in range(n):
        alpha = field(i)
        ell = discrete_log(field, gamma, gamma + alpha)
        values.append(ell % M)
    assert len(set(values)) == n
    return SidonSequence(d=d, values=tuple(values), provenance=SidonProvenance(p, gamma.enc, M))


def sidon_shift(seq: SidonSequence, M: int) -> SidonSequence:
    """Shift every value by d*M; preserves the d-Sidon property for M > max.

    M == max(values) is accepted with a warning and is re-verified when the
    sequence is small enough, rather than silently trusted.
    """
    if M < seq.max_value:
        raise ValueError(f"shift modulus M={M} must be >= max value {seq.max_value}")
    if M == seq.max_value:
        warnings.warn(
            "shift uses M == max value; the strict M > max guarantee does not "
            "apply, relying on sidon_verify instead",
            stacklevel=2,
        )
    shifted = SidonSequence(
        d=seq.d,
        values=tuple(a + seq.d * M for a in seq.values),
        provenance=seq.provenance,
    )
    if math.comb(seq.n + seq.d, seq.d) ** 2 <= 10**6:
        ok, pair = sidon_verify(shifted.values, seq.d)
        if not ok:
            raise AssertionError(f"shifted sequence lost the Sidon property at {pair}")
    return shifted


def save_sequence(seq: SidonSequence, path: str | Path) -> None:
    lines = [f"# sidon n={seq.n} d={seq.d}"]
    lines += [str(v) for v in seq.values]
    Path(path).write_text("\n".join(lines) + "\n")


def load_sequence(path: str | Path) -> SidonSequence:
    lines = Path(path).read_text().splitlines()
    header = lines[0].strip()
    if not header.startswith("# sidon"):
        raise ValueError("missing sidon header line")
    fields = dict(part.split("=") for part in header.split()[2:])
    values = tuple(int(line) for line in lines[1:] if line.strip())
    seq = SidonSequence(d=int(fields["d"]), values=values)
    if seq.n != int(fields["n"]):
        raise ValueError("header n does not match value count")
    return seq
