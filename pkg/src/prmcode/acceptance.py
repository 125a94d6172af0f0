"""The acceptance suite: one callable per criterion, each returning
(passed, detail).  tests/test_acceptance.py asserts them; scripts/run_acceptance.py
prints one line per criterion.  Every random input is seeded, so repeated runs
are byte-identical.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from .agcode import ag_build, ag_encode
from .construct import build_T1, build_T2, rm_to_ag
from .curve import hermitian_field
from .gf import field_build
from .listdec import (
    DecoderConfig,
    ag_list_recover,
    decode_T1,
    decode_T2,
    default_inner_ell,
    effective_epsilon,
    rs_list_decode,
)
from .mfp import mfp_build, mfp_verify, pi_map
from .mpoly import MultiPoly, monomial_basis
from .oracle import exact_min_distance, list_ball_oracle, random_puncture_experiment
from .sidon import SidonSequence, sidon_build, sidon_shift, sidon_verify

EXAMPLE1_SIDON = SidonSequence(d=2, values=(163, 164, 166, 170, 175, 183, 193, 207, 228, 243))
EXAMPLE1_SUBSTITUTIONS = [
    (5, 9), (4, 10), (14, 1), (10, 5), (5, 10),
    (9, 7), (11, 6), (9, 9), (12, 8), (21, 1),
]

_CACHE: dict = {}


def _example1():
    if "ex1" not in _CACHE:
        _CACHE["ex1"] = build_T1(10, 2, q0=11, sidon=EXAMPLE1_SIDON)
    return _CACHE["ex1"]


def _example2():
    if "ex2" not in _CACHE:
        _CACHE["ex2"] = build_T2(10, 2, 11, sidon=EXAMPLE1_SIDON)
    return _CACHE["ex2"]


def _plant_errors(rng, field_order: int, codeword: np.ndarray, n_err: int) -> np.ndarray:
    rec = codeword.copy()
    pos = rng.choice(len(rec), size=n_err, replace=False)
    for p in pos:
        rec[p] = (int(rec[p]) + int(rng.integers(1, field_order))) % field_order
    return rec


def criterion_1() -> tuple[bool, str]:
    """Construction-I reproduction of the q0=11 worked example, exact."""
    t0 = time.perf_counter()
    cI = _example1()
    p = cI.params()
    subs = [next(iter(f.coeffs)) for f in cI.fs]
    poles = [cI.hermitian.pole_order(a, b) for a, b in subs]
    checks = [
        p.N == 1331,
        cI.generator_rank() == 66,
        p.k == 66,
        p.designed_distance == 845,
        p.rate == Fraction(66, 1331),
        round(float(p.rate), 4) == 0.0496,
        p.relative_distance == Fraction(845, 1331),
        round(float(p.relative_distance), 3) == 0.635,
        subs == EXAMPLE1_SUBSTITUTIONS,
        poles == list(EXAMPLE1_SIDON.values),
    ]
    ok = all(checks)
    return ok, (
        f"[{p.N},{p.k},>={p.designed_distance}], rate {float(p.rate):.4f}, "
        f"rel.dist {float(p.relative_distance):.4f}, substitutions/pole orders exact "
        f"({time.perf_counter()-t0:.1f}s)"
    )


def criterion_2() -> tuple[bool, str]:
    """Construction-II reproduction: [14641, 66], exact product bound 6633,
    published figure 6457 recorded for comparison."""
    t0 = time.perf_counter()
    cII = _example2()
    p = cII.params()
    report = p.render()
    checks = [
        p.N == 14641,
        p.k == 66,
        cII.generator_rank() == 66,
        p.designed_distance_bound == Fraction(6633),
        p.reference_distance == 6457,
        "6633" in report and "6457" in report,
    ]
    ok = all(checks)
    return ok, (
        f"[{p.N},{p.k}], product bound {p.designed_distance_bound} exact, "
        f"reference 6457 recorded ({time.perf_counter()-t0:.1f}s)"
    )


def _criterion3_instances():
    yield build_T1(2, 2, q0=2, sidon=SidonSequence(d=2, values=(2, 3)))
    yield build_T1(2, 2, q0=3, sidon=SidonSequence(d=2, values=(6, 7)))
    yield build_T1(2, 2, q0=4, sidon=SidonSequence(d=2, values=(13, 14)))
    yield _example1()


def criterion_3() -> tuple[bool, str]:
    """Subcode identity: punctured-RM encoding equals the ambient AG encoding
    of the substituted function, coordinatewise, 1000 random messages."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    total = 0
    for cI in _criterion3_instances():
        basis = monomial_basis(cI.n, cI.d)
        q = cI.field.order
        for _ in range(250):
            F = MultiPoly.from_coeff_vector(cI.field, cI.n, cI.d, rng.integers(0, q, len(basis)))
            lhs = cI.encode(F)
            rhs = ag_encode(cI.ambient, rm_to_ag(cI, F))
            if not np.array_equal(lhs, rhs):
                return False, f"mismatch at q0={cI.hermitian.q0}"
            total += 1
    return True, f"{total} messages across q0 in {{2,3,4,11}} ({time.perf_counter()-t0:.1f}s)"


def criterion_4() -> tuple[bool, str]:
    """Exhaustive tiny-code distances meet the designed bounds."""
    t0 = time.perf_counter()
    h2 = hermitian_field(2)
    code = ag_build(h2, 4)
    d1 = exact_min_distance(code.generator, h2.field)
    tiny = build_T1(2, 2, q0=4, sidon=SidonSequence(d=2, values=(13, 14)))
    designed = tiny.params().designed_distance
    d2 = exact_min_distance(tiny.generator(), tiny.field)
    ok = d1 >= 4 and d2 >= designed
    return ok, (
        f"q0=2 m=4 exact distance {d1} >= 4; tiny Construction I exact distance "
        f"{d2} >= designed {designed} (16^6 codewords) ({time.perf_counter()-t0:.1f}s)"
    )


def criterion_5() -> tuple[bool, str]:
    """Sidon suite: constructions verify; shifted worked-example sequence and a
    further shift verify; {1,2,3} fails with the forced counterexample."""
    t0 = time.perf_counter()
    for n in range(1, 13):
        for d in (2, 3):
            seq = sidon_build(n, d)
            ok, pair = sidon_verify(seq.values, d)
            if not ok:
                return False, f"builder output failed at n={n}, d={d}: {pair}"
            if seq.max_value >= seq.provenance.M:
                return False, f"max value bound violated at n={n}, d={d}"
    ok1, _ = sidon_verify(EXAMPLE1_SIDON.values, 2)
    further = sidon_shift(EXAMPLE1_SIDON, EXAMPLE1_SIDON.max_value + 1)
    ok2, _ = sidon_verify(further.values, 2)
    bad, pair = sidon_verify((1, 2, 3), 2)
    forced = (not bad) and set(pair) == {(1, 0, 1), (0, 2, 0)}
    ok = ok1 and ok2 and forced
    return ok, (
        f"24 builder instances verified; shifted example sequence + further shift verify; "
        f"{{1,2,3}} fails with {pair} ({time.perf_counter()-t0:.1f}s)"
    )


def criterion_6() -> tuple[bool, str]:
    """Multiplication-friendly identity, exhaustive over all pairs, q in {5,11}."""
    t0 = time.perf_counter()
    details = []
    for q in (5, 11):
        pair = mfp_build(q, 2)
        ones = pi_map(pair, pair.ext.one)
        if not np.all(ones == 1):
            return False, f"pi(1) not all-ones at q={q}"
        if not mfp_verify(pair):
            return False, f"identity failed at q={q}"
        details.append(f"q={q}: {pair.ext.order**2} pairs")
    return True, "; ".join(details) + f" ({time.perf_counter()-t0:.1f}s)"


def criterion_7() -> tuple[bool, str]:
    """Sudan decoding equals the exhaustive ball oracle: q=11, d=2, ell=2,
    100 planted trials at exactly 5 errors."""
    t0 = time.perf_counter()
    field = field_build(11)
    xs = np.arange(11, dtype=np.uint8)
    gen = np.stack([np.ones(11, dtype=np.uint8), xs, field.vmul(xs, xs)])
    rng = np.random.default_rng(701)
    max_list = 0
    for trial in range(100):
        msg = rng.integers(0, 11, 3).astype(np.uint8)
        cw = np.zeros(11, dtype=np.uint8)
        for i, c in enumerate(msg):
            cw = field.vadd(cw, field.vmul(np.full(11, c, dtype=np.uint8), gen[i]))
        rec = _plant_errors(rng, 11, cw, 5)
        res = rs_list_decode(field, rec, 2, 2)
        if res.radius != 5:
            return False, f"radius {res.radius} != 5"
        dec = sorted(tuple(c.enc for c in f) for f, _ in res.candidates)
        orc = sorted(tuple(int(x) for x in m) for m, _ in list_ball_oracle(gen, field, rec, 5))
        if dec != orc:
            return False, f"trial {trial}: decoder {dec} != oracle {orc}"
        if tuple(int(c) for c in msg) not in dec:
            return False, f"trial {trial}: planted message missing"
        max_list = max(max_list, len(dec))
    return True, (
        f"100/100 exact set equality at radius 5; max list size {max_list} <= ell=2 "
        f"({time.perf_counter()-t0:.1f}s)"
    )


def criterion_8() -> tuple[bool, str]:
    """List recovery equals the exhaustive ball oracle on the q0=2, deg G=6
    code at radius floor((1 - sqrt(ell*eps_eff))N) with ell=1.

    This is the one desk-scale Hermitian instance where that radius is
    certifiable: the genus-1 gap is absorbed by the floor (radius 1, reached
    by the multiplicity sweep); see the decisions ledger for the analysis.
    """
    t0 = time.perf_counter()
    h2 = hermitian_field(2)
    F4 = h2.field
    code = ag_build(h2, 6)
    eps = effective_epsilon(code)
    radius = math.floor((1 - math.sqrt(float(eps))) * code.N)
    rng = np.random.default_rng(808)
    for trial in range(50):
        if trial % 2 == 0:
            rec = rng.integers(0, 4, code.N).astype(np.uint8)
        else:
            msg = rng.integers(0, 4, code.dim).astype(np.uint8)
            cw = ag_encode(code, [F4.from_enc(int(e)) for e in msg])
            rec = _plant_errors(rng, 4, cw, int(rng.integers(0, 4)))
        res = ag_list_recover(code, [(int(e),) for e in rec], DecoderConfig())
        if res.radius != radius:
            return False, f"filter radius {res.radius} != {radius}"
        dec = sorted(tuple(int(x) for x in ag_encode(code, f)) for f, _ in res.candidates)
        orc = sorted(
            tuple(int(x) for x in ag_encode(code, [F4.from_enc(int(e)) for e in m]))
            for m, _ in list_ball_oracle(code.generator, F4, rec, radius)
        )
        if dec != orc:
            return False, f"trial {trial}: {len(dec)} decoded vs {len(orc)} oracle"
    return True, (
        f"50/50 exact oracle equality at radius {radius} (eps_eff={eps}) "
        f"({time.perf_counter()-t0:.1f}s)"
    )


def criterion_9() -> tuple[bool, str]:
    """Pipeline planted-trial radii at 0.8 * tau for both worked examples."""
    t0 = time.perf_counter()
    cI = _example1()
    eps1 = float(effective_epsilon(cI.ambient))
    tau1 = 1 - math.sqrt(eps1)
    err1 = math.floor(0.8 * tau1 * cI.N)
    rng = np.random.default_rng(909)
    basis = monomial_basis(10, 2)
    for trial in range(20):
        F = MultiPoly.from_coeff_vector(cI.field, 10, 2, rng.integers(0, 121, len(basis)))
        rec = _plant_errors(rng, 121, cI.encode(F), err1)
        res = decode_T1(cI, rec, DecoderConfig())
        if not any(Fc == F for Fc, _ in res.candidates):
            return False, f"T1 trial {trial}: planted message missing at {err1} errors"
        for Fc, dist in res.candidates:
            actual = int(np.count_nonzero(cI.encode(Fc) != rec))
            if actual != dist or actual > res.radius:
                return False, f"T1 trial {trial}: candidate outside claimed radius"
    t1 = time.perf_counter()
    cII = _example2()
    ell = default_inner_ell(cII)
    eps2 = float(effective_epsilon(cII.outer.ambient))
    tau2 = (1 - 1 / (ell + 1) - (ell / 2) * (cII.d / cII.q)) * (1 - math.sqrt(ell * eps2))
    err2 = math.floor(0.8 * tau2 * cII.N)
    for trial in range(20):
        F = MultiPoly.from_coeff_vector(cII.field, 10, 2, rng.integers(0, 11, len(basis)))
        rec = _plant_errors(rng, 11, cII.encode(F), err2)
        res = decode_T2(cII, rec, DecoderConfig())
        if not any(Fc == F for Fc, _ in res.candidates):
            return False, f"T2 trial {trial}: planted message missing at {err2} errors"
        for Fc, dist in res.candidates:
            actual = int(np.count_nonzero(cII.encode(Fc) != rec))
            if actual != dist or actual > res.radius:
                return False, f"T2 trial {trial}: candidate outside claimed radius"
    return True, (
        f"T1: 20/20 planted recoveries at {err1}/{cI.N} errors ({t1-t0:.0f}s); "
        f"T2: 20/20 at {err2}/{cII.N} errors ({time.perf_counter()-t1:.0f}s)"
    )


def criterion_10(tmpdir: str | Path = None) -> tuple[bool, str]:
    """Determinism: repeated seeded runs produce byte-identical artifacts."""
    import tempfile

    t0 = time.perf_counter()
    tmp = Path(tmpdir) if tmpdir else Path(tempfile.mkdtemp(prefix="prmcode-det-"))
    tmp.mkdir(parents=True, exist_ok=True)

    a = sidon_build(10, 2)
    b = sidon_build(10, 2)
    if a != b:
        return False, "sidon_build not deterministic"

    r1 = random_puncture_experiment(2, 1, 11, 40, 5, seed=31).render()
    r2 = random_puncture_experiment(2, 1, 11, 40, 5, seed=31).render()
    if r1 != r2:
        return False, "puncture experiment not deterministic"

    from .cli import main as cli_main

    seq_file = tmp / "t.sidon"
    seq_file.write_text("# sidon n=2 d=2\n2\n3\n")
    spec = tmp / "t.spec"
    msg = tmp / "t.msg"
    outs = []
    for run in (1, 2):
        cw = tmp / f"cw{run}.txt"
        rec = tmp / f"rec{run}.txt"
        rep = tmp / f"rep{run}.txt"
        rc = cli_main([
            "build", "--construction", "I", "--n", "2", "--d", "2",
            "--q0", "2", "--sidon", str(seq_file), "--out", str(spec),
        ])
        msg.write_text("2 2 2 2\n" + "\n".join(["1", "2", "3", "0", "1", "2"]) + "\n")
        rc |= cli_main(["encode", "--spec", str(spec), "--message", str(msg), "--out", str(cw)])
        rc |= cli_main([
            "corrupt", "--spec", str(spec), "--codeword", str(cw),
            "--errors", "1", "--seed", "7", "--out", str(rec),
        ])
        rc |= cli_main(["decode", "--spec", str(spec), "--received", str(rec), "--out", str(rep)])
        if rc != 0:
            return False, f"cli pipeline failed with status {rc}"
        outs.append((cw.read_bytes(), rec.read_bytes(), rep.read_bytes()))
    if outs[0] != outs[1]:
        return False, "cli artifacts differ between identical runs"
    return True, f"sidon/experiment/cli artifacts byte-identical ({time.perf_counter()-t0:.1f}s)"


ALL_CRITERIA = [
    ("1 worked-example-I reproduction", criterion_1),
    ("2 worked-example-II reproduction", criterion_2),
    ("3 subcode identity", criterion_3),
    ("4 exhaustive tiny distances", criterion_4),
    ("5 sidon suite", criterion_5),
    ("6 multiplication-friendly identity", criterion_6),
    ("7 RS list decoding vs oracle", criterion_7),
    ("8 AG list recovery vs oracle", criterion_8),
    ("9 pipeline planted radii", criterion_9),
    ("10 determinism", criterion_10),
]


def run_all(verbose: bool = True) -> bool:
    all_ok = True
    for name, fn in ALL_CRITERIA:
        ok, detail = fn()
        all_ok &= ok
        if verbose:
            print(f"[criterion {name}] {'PASS' if ok else 'FAIL'}: {detail}")
    return all_ok
