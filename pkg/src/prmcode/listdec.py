"""List decoding and list recovery.

Three layers:

 * rs_list_decode -- Sudan interpolation for the [q, d+1] Reed-Solomon code
   on all of F_q, with Roth-Ruckenstein root extraction.
 * ag_list_recover -- interpolation-based list recovery for one-point
   Hermitian codes: multiplicity-s interpolation through the constraint sets
   (dense kernel for small systems, incremental module minimization for
   large ones), power-series root finding at an affine place, then an
   agreement filter.
 * decode_T1 / decode_T2 -- the composed pipelines for Constructions I and
   II: recover on the ambient code, keep only functions that peel back to
   low-degree messages; for Construction II the inner blocks are first
   list-decoded as Reed-Solomon words and mapped to symbol sets.

The agreement filter is always applied, so a loose interpolation stage can
never produce false positives; completeness is governed by the planned
multiplicity (swept upward until the radius target is met or the constraint
budget is exhausted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ._kernels import (
    curve_mul_grid,
    expansion_tables,
    gf_matmul,
    gf_rref,
    koetter,
    rr_series_roots,
    series_mul,
)
from .agcode import OnePointCode, ag_encode
from .construct import ConstructionI, ConstructionII, ag_to_rm
from .curve import CurveFunction
from .gf import Field, FieldElement
from .mpoly import MultiPoly, monomial_basis


class ListDecodeError(Exception):
    """Decoding parameters are infeasible (radius, budget, or kernel)."""


@dataclass(frozen=True)
class DecoderConfig:
    ell: Optional[int] = None  # recovery input size / inner RS list size
    s: Optional[int] = None  # fixed interpolation multiplicity (None: sweep)
    s_max: int = 64
    constraint_budget: int = 12000
    work_budget: int = 6_000_000_000  # constraints * classes * unknowns cap
    dense_threshold: int = 500  # constraint count at or below which the
    # spec's dense-kernel interpolation runs; larger systems use the
    # incremental minimizer (identical module minimum, tractable runtime)


@dataclass(frozen=True)
class ListResult:
    candidates: tuple  # ((payload, distance), ...) sorted
    radius: int  # filter radius actually applied
    target_radius: int
    guaranteed_radius: int
    diagnostics: dict

    def payloads(self) -> list:
        return [c for c, _ in self.candidates]

    def render(self) -> str:
        d = self.diagnostics
        lines = [
            "list-decoding report",
            f"target radius     = {self.target_radius}",
            f"guaranteed radius = {self.guaranteed_radius}",
            f"filter radius     = {self.radius}",
        ]
        for key in sorted(d):
            lines.append(f"{key} = {d[key]}")
        lines.append(f"list size = {len(self.candidates)}")
        for payload, dist in self.candidates:
            lines.append(f"  distance {dist}: {_payload_text(payload)}")
        return "\n".join(lines) + "\n"


def _payload_text(payload) -> str:
    if isinstance(payload, MultiPoly):
        return " ".join(str(e) for e in payload.coeff_vector())
    if isinstance(payload, CurveFunction):
        return payload.serialize().replace("\n", "; ")
    if isinstance(payload, tuple):
        return " ".join(str(getattr(c, "enc", c)) for c in payload)
    return repr(payload)


def _hamming(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.count_nonzero(np.asarray(a) != np.asarray(b)))


# ---------------------------------------------------------------------------
# Reed-Solomon: Sudan interpolation + Roth-Ruckenstein roots
# ---------------------------------------------------------------------------

def _rs_plan(q: int, d: int, ell: int) -> tuple[int, int]:
    """Minimal weighted-degree budget u and decoding radius for multiplicity 1."""
    u = 0
    while True:
        unknowns = sum(max(0, u - i * d + 1) for i in range(ell + 1))
        if unknowns > q:
            break
        u += 1
    radius = q - u - 1
    if radius < 0:
        raise ListDecodeError(f"no positive radius at q={q}, d={d}, ell={ell}")
    return u, radius


def rs_list_decode(
    field: Field,
    received: Sequence[int] | np.ndarray,
    d: int,
    ell: int,
    config: Optional[DecoderConfig] = None,
) -> ListResult:
    """All degree-<=d polynomials within the Sudan radius of `received`.

    Evaluation points are all of F_q in canonical order.  The output list is
    exhaustive at the radius floor(q - u - 1) derived from constraint
    counting, which meets the tau >= 1 - 1/(ell+1) - (ell/2)(d/q) bound.
    """
    q = field.order
    received = field.varr(received)
    if len(received) != q:
        raise ValueError(f"received word must have length q={q}")
    if ell < 1 or ell * ell * (d + 1) > 2 * q:
        raise ListDecodeError(f"list size gate violated: ell={ell} > sqrt(2q/(d+1))")
    u, radius = _rs_plan(q, d, ell)
    cols = [(i, j) for i in range(ell + 1) for j in range(u - i * d + 1) if u - i * d >= 0]
    A = np.zeros((q, len(cols)), dtype=np.uint8)
    xs = np.arange(q, dtype=np.uint8)
    xpow = [np.full(q, field.one.enc, dtype=np.uint8)]
    for _ in range(u):
        xpow.append(field.vmul(xpow[-1], xs))
    wpow = [np.full(q, field.one.enc, dtype=np.uint8)]
    for _ in range(ell):
        wpow.append(field.vmul(wpow[-1], received))
    for c, (i, j) in enumerate(cols):
        A[:, c] = field.vmul(xpow[j], wpow[i])
    Q = _kernel_polys(A, cols, ell, field)
    roots = _rr_roots(Q, d, field)
    out = []
    seen = set()
    for coeffs in roots:
        encs = tuple(c.enc for c in coeffs)
        if encs in seen:
            continue
        seen.add(encs)
        cw = _rs_encode(field, coeffs)
        dist = _hamming(cw, received)
        if dist <= radius:
            out.append((tuple(coeffs), dist))
    out.sort(key=lambda cd: (cd[1], tuple(c.enc for c in cd[0])))
    tau = 1 - Fraction(1, ell + 1) - Fraction(ell, 2) * Fraction(d, q)
    return ListResult(
        candidates=tuple(out),
        radius=radius,
        target_radius=radius,
        guaranteed_radius=radius,
        diagnostics={
            "kind": "rs-sudan",
            "s": 1,
            "ell": ell,
            "u": u,
            "matrix": (q, len(cols)),
            "tau_formula": str(tau),
        },
    )


def _rs_encode(field: Field, coeffs: Sequence[FieldElement]) -> np.ndarray:
    q = field.order
    xs = np.arange(q, dtype=np.uint8)
    out = np.zeros(q, dtype=np.uint8)
    power = np.full(q, field.one.enc, dtype=np.uint8)
    for c in coeffs:
        if not c.is_zero():
            out = field.vadd(out, field.vmul(np.full(q, c.enc, dtype=np.uint8), power))
        power = field.vmul(power, xs)
    return out


def _kernel_polys(A: np.ndarray, cols, ell: int, field: Field) -> list[list[FieldElement]]:
    """First-free-column kernel vector of A, reshaped into T-degree layers."""
    work = A.copy()
    rank, pivots = gf_rref(work, field.add2d, field.mul2d, field.inv1d, field.neg1d)
    pivot_set = set(int(p) for p in pivots)
    free = [j for j in range(A.shape[1]) if j not in pivot_set]
    if not free:
        raise ListDecodeError("interpolation kernel is trivial")
    j0 = free[0]
    vec = [0] * A.shape[1]
    vec[j0] = field.one.enc
    for r, c in enumerate(pivots):
        vec[int(c)] = int(field.neg1d[work[r, j0]])
    Q: list[list[FieldElement]] = [[] for _ in range(ell + 1)]
    for v, (i, j) in zip(vec, cols):
        layer = Q[i]
        while len(layer) <= j:
            layer.append(field.zero)
        layer[j] = field.from_enc(v)
    return Q


def _poly_is_zero(p: Sequence[FieldElement]) -> bool:
    return all(c.is_zero() for c in p)


def _poly_shift_down(p: list[FieldElement], v: int) -> list[FieldElement]:
    return p[v:] if v < len(p) else []


def _rr_roots(Q: list[list[FieldElement]], dmax: int, field: Field) -> list[tuple[FieldElement, ...]]:
    """Roth-Ruckenstein: all f with deg f <= dmax and Q(x, f(x)) = 0.

    Recursive coefficient peeling: strip the common x-power, read candidate
    coefficients off the roots of Q(0, T), and recurse on Q(x, xT + gamma).
    """
    p_char = field.p
    results: list[tuple[FieldElement, ...]] = []

    def poly_add(a, b):
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else field.zero
            y = b[i] if i < len(b) else field.zero
            out.append(x + y)
        return out

    def poly_scale(a, c):
        return [x * c for x in a]

    def rec(Q, depth, prefix):
        if all(_poly_is_zero(p) for p in Q):
            return
        v = min(
            next(i for i, c in enumerate(p) if not c.is_zero())
            for p in Q
            if not _poly_is_zero(p)
        )
        if v:
            Q = [_poly_shift_down(p, v) for p in Q]
        if _poly_is_zero(Q[0]) if Q else True:
            coeffs = prefix + [field.zero] * (dmax + 1 - len(prefix))
            results.append(tuple(coeffs[: dmax + 1]))
        if depth > dmax:
            return
        # roots of Q(0, T)
        R = [p[0] if p else field.zero for p in Q]
        if _poly_is_zero(R):
            gammas = list(field.elements())
        else:
            gammas = []
            for g in field.elements():
                acc = field.zero
                gp = field.one
                for c in R:
                    acc = acc + c * gp
                    gp = gp * g
                if acc.is_zero():
                    gammas.append(g)
        for gamma in gammas:
            # Q(x, xT + gamma): new layer j = x^j * sum_i C(i,j) gamma^(i-j) Q_i
            newQ = []
            for j in range(len(Q)):
                acc: list[FieldElement] = []
                for i in range(j, len(Q)):
                    cij = math.comb(i, j) % p_char
                    if cij == 0:
                        continue
                    scale = field(cij) * gamma ** (i - j)
                    if scale.is_zero():
                        continue
                    acc = poly_add(acc, poly_scale(Q[i], scale))
                acc = [field.zero] * j + acc
                newQ.append(acc)
            rec(newQ, depth + 1, prefix + [gamma])

    rec([list(p) for p in Q], 0, [])
    # dedupe, keep deterministic order
    seen = set()
    out = []
    for r in results:
        key = tuple(c.enc for c in r)
        if key not in seen:
            seen.add(key)
            out.append(r)
    out.sort(key=lambda r: tuple(c.enc for c in r))
    return out


# ---------------------------------------------------------------------------
# one-point Hermitian codes: interpolation planning
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecoveryPlan:
    s: int
    u: int
    t: int  # guaranteed agreement threshold: any f agreeing on >= t is found
    ell_T: int
    constraints: int
    unknowns: int
    target_t: int
    met: bool


def _unknown_count(code: OnePointCode, u: int) -> int:
    if u < 0:
        return 0
    wT = code.m
    h = code.hermitian
    total = 0
    i = 0
    while u - i * wT >= 0:
        total += h.rr_dim(u - i * wT)
        i += 1
        if wT == 0:
            break
    return total


def _min_feasible_u(code: OnePointCode, constraints: int, u_hi: int) -> Optional[int]:
    if _unknown_count(code, u_hi) <= constraints:
        return None
    lo, hi = 0, u_hi
    while lo < hi:
        mid = (lo + hi) // 2
        if _unknown_count(code, mid) > constraints:
            hi = mid
        else:
            lo = mid + 1
    return lo


def plan_recovery(
    code: OnePointCode, total_set_size: int, target_t: int, config: DecoderConfig
) -> RecoveryPlan:
    """Pick interpolation multiplicity by upward sweep.

    Stops at the first s whose guaranteed agreement threshold t_s reaches the
    target, or when the constraint budget / s_max cuts the sweep off; the
    best plan seen is returned either way.
    """
    N = code.N
    best: Optional[RecoveryPlan] = None
    svals = [config.s] if config.s is not None else range(1, config.s_max + 1)
    for s in svals:
        constraints = s * (s + 1) // 2 * total_set_size
        if (
            config.s is None
            and best is not None
            and constraints > config.constraint_budget
        ):
            break
        u = _min_feasible_u(code, constraints, s * N - 1)
        if u is None:
            continue
        t = u // s + 1
        unknowns = _unknown_count(code, u)
        classes = (u // code.m + 1) * code.hermitian.q0 if code.m else 1
        if (
            config.s is None
            and best is not None
            and constraints * classes * unknowns > config.work_budget
        ):
            break
        plan = RecoveryPlan(
            s=s,
            u=u,
            t=t,
            ell_T=u // code.m if code.m else 0,
            constraints=constraints,
            unknowns=unknowns,
            target_t=target_t,
            met=t <= target_t,
        )
        if best is None or plan.t < best.t:
            best = plan
        if plan.met:
            break
    if best is None:
        raise ListDecodeError(
            f"interpolation infeasible: no multiplicity reaches a positive radius "
            f"(sets total {total_set_size}, N={N}, deg G={code.m})"
        )
    return best


def _normalize_sets(code: OnePointCode, sets) -> list[tuple[int, ...]]:
    F = code.hermitian.field
    out = []
    for S in sets:
        encs = sorted({x.enc if isinstance(x, FieldElement) else int(x) for x in S})
        for e in encs:
            if not 0 <= e < F.order:
                raise ValueError("set symbol out of range")
        out.append(tuple(encs))
    if len(out) != code.N:
        raise ValueError(f"need one set per place ({code.N}), got {len(out)}")
    return out


# ---------------------------------------------------------------------------
# interpolation: dense kernel and incremental minimization
# ---------------------------------------------------------------------------

def _expansion_table(code: OnePointCode, s: int, a_cap: int) -> np.ndarray:
    cache = getattr(code, "_ld_etab", None)
    if cache is None:
        cache = {}
        setattr(code, "_ld_etab", cache)
    key = (s, a_cap)
    if key not in cache:
        F = code.hermitian.field
        enc = code.hermitian.affine_enc
        idx = _place_indices(code)
        cache[key] = expansion_tables(
            enc[idx, 0].copy(),
            enc[idx, 1].copy(),
            code.hermitian.q0,
            code.hermitian.p,
            s,
            a_cap,
            F.add2d,
            F.sub2d,
            F.mul2d,
        )
    return cache[key]


def _place_indices(code: OnePointCode) -> np.ndarray:
    """Indices of the code's places in the canonical affine order."""
    h = code.hermitian
    lookup = {
        (int(a), int(b)): i for i, (a, b) in enumerate(h.affine_enc)
    }
    return np.array(
        [lookup[(pl.alpha.enc, pl.beta.enc)] for pl in code.places], dtype=np.int64
    )


def _coeff_to_functions(
    code: OnePointCode, coeff: np.ndarray, ell_T: int, a_cap: int
) -> list[CurveFunction]:
    h = code.hermitian
    F = h.field
    q0 = h.q0
    out = []
    for i in range(ell_T + 1):
        f = CurveFunction(h)
        for b in range(q0):
            base = (i * q0 + b) * a_cap
            for a in range(a_cap):
                v = int(coeff[base + a])
                if v:
                    f.set_coeff((a, b), F.from_enc(v))
        out.append(f)
    return out


def _interpolate_dense(
    code: OnePointCode, sets: list[tuple[int, ...]], s: int, u: int, ell_T: int
) -> tuple[list[CurveFunction], dict]:
    """Literal kernel-vector interpolation (deterministic RREF choice)."""
    h = code.hermitian
    F = h.field
    q0 = h.q0
    monos = []
    for i in range(ell_T + 1):
        cap = u - i * code.m
        if cap < 0:
            break
        for a, b in h.rr_basis(cap):
            monos.append((h.pole_order(a, b) + i * code.m, i, b, a))
    monos.sort()
    col_of = {(i, b, a): c for c, (_, i, b, a) in enumerate(monos)}
    a_cap = max(a for _, _, _, a in monos) + 1
    E = _expansion_table(code, s, a_cap)
    rows = []
    p_char = h.p
    for j, S in enumerate(sets):
        for sigma in S:
            spow = [F.one.enc]
            for _ in range(ell_T):
                spow.append(int(F.mul2d[spow[-1], sigma]))
            for nu in range(s):
                for mu in range(s - nu):
                    row = np.zeros(len(monos), dtype=np.uint8)
                    for c, (_, i, b, a) in enumerate(monos):
                        if i < nu:
                            continue
                        cb = math.comb(i, nu) % p_char
                        if cb == 0:
                            continue
                        e = int(E[j, mu, b, a])
                        if e == 0:
                            continue
                        val = F.mul2d[F.mul2d[cb, spow[i - nu]], e]
                        row[c] = val
                    rows.append(row)
    A = np.array(rows, dtype=np.uint8)
    work = A.copy()
    rank, pivots = gf_rref(work, F.add2d, F.mul2d, F.inv1d, F.neg1d)
    pivot_set = set(int(p) for p in pivots)
    free = [j for j in range(A.shape[1]) if j not in pivot_set]
    if not free:
        raise ListDecodeError("interpolation kernel is trivial")
    j0 = free[0]
    Q = [CurveFunction(h) for _ in range(ell_T + 1)]
    _, i0, b0, a0 = monos[j0]
    Q[i0].set_coeff((a0, b0), F.one)
    for r, c in enumerate(pivots):
        v = int(F.neg1d[work[r, j0]])
        if v:
            _, i, b, a = monos[int(c)]
            Q[i].set_coeff((a, b), F.from_enc(v))
    diag = {"method": "dense-kernel", "matrix": (A.shape[0], A.shape[1])}
    return Q, diag


def _interpolate_incremental(
    code: OnePointCode, sets: list[tuple[int, ...]], s: int, u_hint: int, ell_T: int
) -> tuple[list[CurveFunction], dict]:
    h = code.hermitian
    F = h.field
    q0 = h.q0
    idx = _place_indices(code)
    enc = h.affine_enc
    alphas = enc[idx, 0].copy()
    ell_in = max((len(S) for S in sets), default=1)
    setvals = np.zeros((code.N, max(ell_in, 1)), dtype=np.uint8)
    setlens = np.zeros(code.N, dtype=np.int64)
    for j, S in enumerate(sets):
        setlens[j] = len(S)
        for t, sig in enumerate(S):
            setvals[j, t] = sig
    spread = ell_T * code.m + (q0 - 1) * (q0 + 1)
    a_cap = (u_hint + spread) // q0 + 8
    binom = np.zeros((ell_T + 1, ell_T + 1), dtype=np.uint8)
    for i in range(ell_T + 1):
        for nu in range(i + 1):
            binom[i, nu] = math.comb(i, nu) % h.p
    while True:
        E = _expansion_table(code, s, a_cap)
        ok, coeff, lead = koetter(
            q0,
            code.m,
            s,
            ell_T,
            a_cap,
            alphas,
            setvals,
            setlens,
            E,
            binom,
            F.add2d,
            F.sub2d,
            F.mul2d,
            F.inv1d,
            F.neg1d,
        )
        if ok:
            break
        a_cap = a_cap * 3 // 2 + 8
    Q = _coeff_to_functions(code, coeff, ell_T, a_cap)
    diag = {"method": "incremental", "winner_order": int(lead), "a_cap": a_cap}
    return Q, diag


def ag_interpolate(
    code: OnePointCode,
    sets,
    ell: int,
    s: int,
    u: Optional[int] = None,
    config: Optional[DecoderConfig] = None,
) -> tuple[list[CurveFunction], dict]:
    """Nonzero Q = sum Q_i(x,y) T^i vanishing to multiplicity s on every
    (P_j, sigma in S_j), with Q_i constrained to L((u - i*degG) Pinf).

    Small systems use the literal constraint-matrix kernel; large ones the
    incremental minimizer.  Both are deterministic.
    """
    config = config or DecoderConfig()
    sets = _normalize_sets(code, sets)
    total = sum(len(S) for S in sets)
    constraints = s * (s + 1) // 2 * total
    if u is None:
        u = _min_feasible_u(code, constraints, s * code.N - 1)
        if u is None:
            raise ListDecodeError("weighted-degree budget infeasible")
    ell_T = min(ell, u // code.m) if code.m else ell
    if constraints <= config.dense_threshold:
        Q, diag = _interpolate_dense(code, sets, s, u, ell_T)
    else:
        Q, diag = _interpolate_incremental(code, sets, s, u, ell_T)
    if all(f.is_zero() for f in Q):
        raise ListDecodeError("interpolation produced the zero element")
    diag.update({"s": s, "u": u, "ell_T": ell_T, "constraints": constraints})
    return Q, diag


# ---------------------------------------------------------------------------
# root finding via local power series
# ---------------------------------------------------------------------------

def _place_series_cache(code: OnePointCode, place_idx: int, prec: int, a_max: int):
    """(xpow, ypow) tables of t-series at the place, extended on demand."""
    cache = getattr(code, "_ld_series", None)
    if cache is None:
        cache = {}
        setattr(code, "_ld_series", cache)
    key = place_idx
    entry = cache.get(key)
    if entry is not None and entry[0].shape[1] >= prec and entry[0].shape[0] > a_max:
        return entry
    h = code.hermitian
    F = h.field
    q0 = h.q0
    place = code.places[place_idx]
    from .curve import y_series

    ys_list = y_series(h, place, prec)
    ys = np.array([c.enc for c in ys_list], dtype=np.uint8)
    ypow = np.zeros((q0, prec), dtype=np.uint8)
    ypow[0, 0] = F.one.enc
    for b in range(1, q0):
        ypow[b] = series_mul(ypow[b - 1], ys, prec, F.add2d, F.mul2d)
    xpow = np.zeros((a_max + 1, prec), dtype=np.uint8)
    xpow[0, 0] = F.one.enc
    lin = np.zeros(2, dtype=np.uint8)
    lin[0] = place.alpha.enc
    lin[1] = F.one.enc
    for a in range(1, a_max + 1):
        xpow[a] = series_mul(xpow[a - 1], lin, prec, F.add2d, F.mul2d)
    entry = (xpow, ypow)
    cache[key] = entry
    return entry


def _function_series(
    code: OnePointCode, place_idx: int, f: CurveFunction, prec: int
) -> np.ndarray:
    F = code.hermitian.field
    a_max = max((a for a, _ in f.coeffs), default=0)
    xpow, ypow = _place_series_cache(code, place_idx, prec, max(a_max, code.m // code.hermitian.q0 + 1))
    out = np.zeros(prec, dtype=np.uint8)
    for (a, b), c in f.coeffs.items():
        term = series_mul(xpow[a], ypow[b], prec, F.add2d, F.mul2d)
        out = F.vadd(out, F.vmul(np.full(prec, c.enc, dtype=np.uint8), term))
    return out


def _basis_solver(code: OnePointCode, place_idx: int, prec: int):
    """Cached (B, pivot_cols, Minv) for matching series against L(m*Pinf)."""
    cache = getattr(code, "_ld_match", None)
    if cache is None:
        cache = {}
        setattr(code, "_ld_match", cache)
    if place_idx in cache:
        return cache[place_idx]
    F = code.hermitian.field
    dim = code.dim
    B = np.zeros((dim, prec), dtype=np.uint8)
    for r, (a, b) in enumerate(code.basis):
        f = CurveFunction(code.hermitian, {(a, b): F.one})
        B[r] = _function_series(code, place_idx, f, prec)
    work = B.copy()
    rank, pivots = gf_rref(work, F.add2d, F.mul2d, F.inv1d, F.neg1d)
    if rank < dim:
        raise ListDecodeError("basis series are not independent at this place")
    J = np.array([int(p) for p in pivots], dtype=np.int64)
    M = B[:, J]
    aug = np.concatenate([M, np.eye(dim, dtype=np.uint8)], axis=1)
    r2, _ = gf_rref(aug, F.add2d, F.mul2d, F.inv1d, F.neg1d)
    Minv = aug[:, dim:].copy()
    entry = (B, J, Minv)
    cache[place_idx] = entry
    return entry


def _to_grid(f: CurveFunction, q0: int) -> np.ndarray:
    a_max = max((a for a, _ in f.coeffs), default=0)
    out = np.zeros((q0, a_max + 1), dtype=np.uint8)
    for (a, b), c in f.coeffs.items():
        out[b, a] = c.enc
    return out


def _grid_add(A: np.ndarray, B: np.ndarray, F: Field) -> np.ndarray:
    q0 = A.shape[0]
    w = max(A.shape[1], B.shape[1])
    out = np.zeros((q0, w), dtype=np.uint8)
    out[:, : A.shape[1]] = A
    out[:, : B.shape[1]] = F.vadd(out[:, : B.shape[1]], B)
    return out


def _verify_T_root(code: OnePointCode, Q: list[CurveFunction], f: CurveFunction) -> bool:
    """Exact check Q(f) == 0 in the coordinate ring (dense grid arithmetic)."""
    F = code.hermitian.field
    q0 = code.hermitian.q0
    fg = _to_grid(f, q0)
    acc = _to_grid(Q[-1], q0)
    for i in range(len(Q) - 2, -1, -1):
        acc = curve_mul_grid(acc, fg, q0, F.add2d, F.sub2d, F.mul2d)
        acc = _grid_add(acc, _to_grid(Q[i], q0), F)
    return not acc.any()


def ag_root_find(
    code: OnePointCode, Q: list[CurveFunction], pole_bound: Optional[int] = None
) -> tuple[list[CurveFunction], dict]:
    """All f in L(pole_bound * Pinf) with Q(f) = 0.

    Lifts T-roots of Q as truncated power series at an affine place by
    digit-wise branching (the series form of Roth-Ruckenstein), which handles
    multiple roots: plain simple-root Hensel lifting cannot work here since
    every multiplicity-s constraint forces an s-fold root of the reduced
    polynomial at its own place.  Precision pole_bound + 1 pins each function
    uniquely; series that match no basis combination, or fail the exact
    coordinate-ring check Q(f) == 0, are dropped.  Degenerate places (or
    precision stalls) trigger a bounded retry at the next place.
    """
    if all(f.is_zero() for f in Q):
        raise ListDecodeError("zero interpolant has every function as a root")
    if pole_bound is None:
        pole_bound = code.m
    h = code.hermitian
    F = h.field
    D = pole_bound + 1
    ell_T = len(Q) - 1
    binom = np.zeros((ell_T + 1, ell_T + 1), dtype=np.uint8)
    for i in range(ell_T + 1):
        for k in range(i + 1):
            binom[i, k] = math.comb(i, k) % h.p
    tried = 0
    for pidx in range(len(code.places)):
        tried += 1
        prec_big = D + 4 * (ell_T + 8)
        found = None
        while prec_big <= 64 * D + 512:
            qs = np.stack(
                [_function_series(code, pidx, Q[i], prec_big) for i in range(ell_T + 1)]
            )
            status, count, roots = rr_series_roots(
                qs, D, F.order, binom, F.add2d, F.sub2d, F.mul2d, 128, 200000
            )
            if status == 0:
                found = [roots[i].copy() for i in range(count)]
                break
            if status == 1:
                prec_big *= 2
                continue
            break  # budget exceeded: try the next place
        if found is None:
            continue
        out = []
        B, J, Minv = _basis_solver(code, pidx, D)
        seen = set()
        for S in found:
            cvec = gf_matmul(S[J][None, :], Minv, F.add2d, F.mul2d)[0]
            if not np.array_equal(gf_matmul(cvec[None, :], B, F.add2d, F.mul2d)[0], S):
                continue
            key = tuple(int(e) for e in cvec)
            if key in seen:
                continue
            seen.add(key)
            f = code.coefficients_to_function([F.from_enc(int(e)) for e in cvec])
            if _verify_T_root(code, Q, f):
                out.append(f)
        return out, {
            "root_place_index": pidx,
            "places_tried": tried,
            "series_precision": D,
        }
    raise ListDecodeError(
        f"root finding failed: all {tried} retry places exhausted"
    )


# ---------------------------------------------------------------------------
# list recovery and the composed pipelines
# ---------------------------------------------------------------------------

def effective_epsilon(code: OnePointCode) -> Fraction:
    """(deg G - g) / N, the lemma-style measurement used for radius targets."""
    return Fraction(code.m - code.hermitian.genus, code.N)


def ag_list_recover(
    code: OnePointCode, sets, config: Optional[DecoderConfig] = None
) -> ListResult:
    """Every f in L(degG * Pinf) agreeing with the sets on >= (1-tau)N
    positions, tau = 1 - sqrt(ell * eps_eff), multiplicity swept upward.

    When the sweep cannot certify the target radius within budget it decodes
    at the best guaranteed radius but still filters at the larger target, so
    callers see every candidate the interpolation stage surfaced.
    """
    config = config or DecoderConfig()
    sets = _normalize_sets(code, sets)
    N = code.N
    total = sum(len(S) for S in sets)
    ell_in = config.ell if config.ell is not None else max((len(S) for S in sets), default=1)
    eps = effective_epsilon(code)
    arg = float(ell_in) * float(eps)
    if arg >= 1.0 or eps <= 0:
        target_radius = 0
    else:
        target_radius = math.floor((1.0 - math.sqrt(arg)) * N)
    target_t = N - target_radius
    plan = plan_recovery(code, total, target_t, config)
    Q, idiag = ag_interpolate(code, sets, plan.ell_T, plan.s, plan.u, config)
    roots, rdiag = ag_root_find(code, Q, code.m)
    guaranteed_radius = N - plan.t
    filter_radius = max(target_radius, guaranteed_radius)
    setarrs = sets
    out = []
    for f in roots:
        cw = ag_encode(code, f)
        agree = sum(1 for j in range(N) if int(cw[j]) in setarrs[j])
        dist = N - agree
        if dist <= filter_radius:
            out.append((f, dist))
    out.sort(key=lambda fd: (fd[1], sorted((ab, c.enc) for ab, c in fd[0].coeffs.items())))
    diag = {
        "kind": "ag-list-recover",
        "ell_in": ell_in,
        "eps_eff": str(eps),
        "plan": plan,
        "observed_list_size": len(out),
        **idiag,
        **rdiag,
    }
    return ListResult(
        candidates=tuple(out),
        radius=filter_radius,
        target_radius=target_radius,
        guaranteed_radius=guaranteed_radius,
        diagnostics=diag,
    )


def decode_T1(
    cI: ConstructionI, received, config: Optional[DecoderConfig] = None
) -> ListResult:
    """List-decode a Construction-I word: singleton-set recovery on the
    ambient code, then the pole-order peel filters out non-message roots."""
    config = config or DecoderConfig()
    F = cI.field
    received = F.varr(received)
    if len(received) != cI.N:
        raise ValueError(f"received length {len(received)} != N = {cI.N}")
    if config.ell is None:
        config = replace(config, ell=1)
    rec = ag_list_recover(cI.ambient, [(int(e),) for e in received], config)
    out = []
    for f, _ in rec.candidates:
        Fmsg = ag_to_rm(cI, f)
        if Fmsg is None:
            continue
        dist = _hamming(cI.encode(Fmsg), received)
        if dist <= rec.radius:
            out.append((Fmsg, dist))
    out.sort(key=lambda fd: (fd[1], tuple(fd[0].coeff_vector())))
    diag = dict(rec.diagnostics)
    diag.update({"kind": "decode-T1", "ambient_candidates": len(rec.candidates)})
    return ListResult(
        candidates=tuple(out),
        radius=rec.radius,
        target_radius=rec.target_radius,
        guaranteed_radius=rec.guaranteed_radius,
        diagnostics=diag,
    )


def default_inner_ell(cII: ConstructionII) -> int:
    """round(eps_eff^(-1/3)), clamped to the Reed-Solomon list-size gate."""
    eps = float(effective_epsilon(cII.outer.ambient))
    raw = max(1, round(eps ** (-1.0 / 3.0))) if eps > 0 else 1
    gate = int(math.floor(math.sqrt(2 * cII.q / (cII.d + 1))))
    return max(1, min(raw, gate))


def decode_T2(
    cII: ConstructionII, received, config: Optional[DecoderConfig] = None
) -> ListResult:
    """Concatenated decoding: Sudan-decode each q-symbol block, map the
    candidate polynomials to outer symbols, list-recover the outer code,
    then peel and re-filter against the received word."""
    config = config or DecoderConfig()
    Fq = cII.field
    received = Fq.varr(received)
    if len(received) != cII.N:
        raise ValueError(f"received length {len(received)} != N = {cII.N}")
    ell = config.ell if config.ell is not None else default_inner_ell(cII)
    blocks = cII.blocks(received)
    ext = cII.inner.ext
    m0, m1 = ext.modulus[0], ext.modulus[1]
    sets: list[list[int]] = []
    inner_radius = None
    for j in range(cII.L):
        res = rs_list_decode(Fq, blocks[j], cII.d, ell)
        inner_radius = res.radius
        symbols = set()
        for coeffs, _ in res.candidates:
            encs = [c.enc for c in coeffs]
            while len(encs) > 2:
                c = encs.pop()
                if c:
                    D = len(encs)
                    encs[D - 2] = (encs[D - 2] - c * m0) % cII.q
                    encs[D - 1] = (encs[D - 1] - c * m1) % cII.q
            encs += [0] * (2 - len(encs))
            symbols.add(encs[0] + cII.q * encs[1])
        sets.append(sorted(symbols))
    outer_cfg = replace(config, ell=ell)
    rec = ag_list_recover(cII.outer.ambient, sets, outer_cfg)
    # composed radii
    eps = float(effective_epsilon(cII.outer.ambient))
    tau_in = 1 - 1 / (ell + 1) - (ell / 2) * (cII.d / cII.q)
    tau_out = 1 - math.sqrt(ell * eps) if ell * eps < 1 else 0.0
    target_radius = math.floor(tau_in * tau_out * cII.N)
    guaranteed_radius = (cII.L - rec.diagnostics["plan"].t + 1) * (inner_radius + 1) - 1
    filter_radius = max(target_radius, guaranteed_radius)
    out = []
    for f, _ in rec.candidates:
        F_ext = ag_to_rm(cII.outer, f)
        if F_ext is None:
            continue
        # keep only prime-subfield messages
        encs = F_ext.coeff_vector()
        if any(e >= cII.q for e in encs):
            continue
        Fmsg = MultiPoly.from_coeff_vector(Fq, cII.n, cII.d, encs)
        dist = _hamming(cII.encode(Fmsg), received)
        if dist <= filter_radius:
            out.append((Fmsg, dist))
    out.sort(key=lambda fd: (fd[1], tuple(fd[0].coeff_vector())))
    diag = dict(rec.diagnostics)
    diag.update(
        {
            "kind": "decode-T2",
            "inner_ell": ell,
            "inner_radius": inner_radius,
            "tau_inner": tau_in,
            "tau_outer": tau_out,
            "outer_candidates": len(rec.candidates),
        }
    )
    return ListResult(
        candidates=tuple(out),
        radius=filter_radius,
        target_radius=target_radius,
        guaranteed_radius=guaranteed_radius,
        diagnostics=diag,
    )
