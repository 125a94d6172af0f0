"""Independent brute-force ground truth.

Exact minimum distances and exhaustive list-decoding balls by full codeword
enumeration (Gray-code stepping keeps the scans fast), plus the empirical
random-puncturing baseline.  Decoder claims elsewhere must match these
outputs exactly on every shared instance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import ball_gray, gf_matmul, min_weight_gray
from .gf import Field, field_build
from .mpoly import PointSet, monomial_basis

ENUM_CAP = 2**25  # full-enumeration bound (message-space size)


def _scaled_rows(gen: np.ndarray, field: Field) -> np.ndarray:
    k, n = gen.shape
    q = field.order
    out = np.zeros((k, q, n), dtype=np.uint8)
    for t in range(k):
        for v in range(q):
            out[t, v] = field.vmul(np.full(n, v, dtype=np.uint8), gen[t])
    return out


def _check_size(field: Field, k: int) -> None:
    if field.order**k > ENUM_CAP:
        raise ValueError(
            f"too many codewords: {field.order}^{k} exceeds the {ENUM_CAP} enumeration cap"
        )


def exact_min_distance(gen: np.ndarray, field: Field) -> int:
    """Exact minimum Hamming weight over all nonzero codewords of a generator.

    Walks the whole message space in Gray-code order; zero codewords produced
    by dependent rows are skipped, so the result is the true code distance.
    """
    gen = np.asarray(gen, dtype=np.uint8)
    _check_size(field, gen.shape[0])
    sr = _scaled_rows(gen, field)
    return int(min_weight_gray(sr, field.order, field.add2d, field.sub2d))


def list_ball_oracle(
    gen: np.ndarray, field: Field, received: np.ndarray, radius: int
) -> list[tuple[np.ndarray, int]]:
    """All (message, distance) pairs with d(msg*G, received) <= radius.

    Messages are coefficient vectors over the generator rows, returned in a
    canonical order (sorted by encoding tuple).
    """
    gen = np.asarray(gen, dtype=np.uint8)
    _check_size(field, gen.shape[0])
    received = np.asarray(received, dtype=np.uint8)
    if received.shape != (gen.shape[1],):
        raise ValueError("received word length mismatch")
    sr = _scaled_rows(gen, field)
    max_hits = 4096
    while True:
        count, msgs, dists = ball_gray(
            sr, received, radius, field.order, field.add2d, field.sub2d, max_hits
        )
        if count >= 0:
            break
        max_hits *= 4
    out = [(msgs[i].copy(), int(dists[i])) for i in range(count)]
    out.sort(key=lambda md: tuple(md[0]))
    return out


@dataclass(frozen=True)
class PunctureTrial:
    min_relative_weight: float
    mean_relative_weight: float


@dataclass(frozen=True)
class PunctureReport:
    n: int
    d: int
    q: int
    length: int
    trials: tuple[PunctureTrial, ...]
    seed: int
    messages_per_trial: int

    @property
    def min_over_trials(self) -> float:
        return min(t.min_relative_weight for t in self.trials)

    @property
    def mean_over_trials(self) -> float:
        return sum(t.mean_relative_weight for t in self.trials) / len(self.trials)

    def render(self) -> str:
        lines = [
            "random-puncture experiment",
            f"n={self.n} d={self.d} q={self.q} length={self.length} "
            f"trials={len(self.trials)} messages={self.messages_per_trial} seed={self.seed}",
            "estimates are sampled lower envelopes, not exact distances",
        ]
        for i, t in enumerate(self.trials):
            lines.append(
                f"trial {i}: min_rel_weight={t.min_relative_weight:.6f} "
                f"mean_rel_weight={t.mean_relative_weight:.6f}"
            )
        lines.append(
            f"overall: min={self.min_over_trials:.6f} mean={self.mean_over_trials:.6f}"
        )
        return "\n".join(lines) + "\n"


def random_puncture_experiment(
    n: int,
    d: int,
    q: int,
    length: int,
    trials: int,
    seed: int,
    messages: int = 10**4,
) -> PunctureReport:
    """Empirical distance statistics of random puncturings.

    Each trial samples `length` uniform points of F_q^n, then estimates the
    punctured code's relative distance by the minimum relative weight over
    `messages` random nonzero messages.
    """
    field = field_build(*_prime_power_pair(q))
    rng = np.random.default_rng(seed)
    basis = monomial_basis(n, d)
    k = len(basis)
    results = []
    for _ in range(trials):
        pts = rng.integers(0, q, size=(length, n)).astype(np.uint8)
        T = PointSet(field, pts)
        gen = np.zeros((k, length), dtype=np.uint8)
        for i, vec in enumerate(basis):
            row = np.full(length, field.one.enc, dtype=np.uint8)
            for coord, e in enumerate(vec):
                if e:
                    row = field.vmul(row, field.vpow(T.enc[:, coord], e))
            gen[i] = row
        msgs = rng.integers(0, q, size=(messages, k)).astype(np.uint8)
        keep = np.any(msgs != 0, axis=1)
        msgs = msgs[keep]
        cws = gf_matmul(msgs, gen, field.add2d, field.mul2d)
        weights = np.count_nonzero(cws, axis=1) / length
        results.append(PunctureTrial(float(weights.min()), float(weights.mean())))
    return PunctureReport(
        n=n, d=d, q=q, length=length, trials=tuple(results), seed=seed,
        messages_per_trial=messages,
    )


def _prime_power_pair(q: int) -> tuple[int, int]:
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    if q % p:
        p = q
    k = 0
    m = q
    while m > 1:
        if m % p:
            raise ValueError(f"q = {q} is not a prime power")
        m //= p
        k += 1
    return p, k
