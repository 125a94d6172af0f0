"""Command-line front end.

Subcommands: build, info, encode, corrupt, decode, verify, sample-puncture.
All randomness flows from explicit --seed flags, so identical command lines
produce byte-identical outputs.  Exit codes: 0 success, 2 usage error,
3 decode-radius infeasible, 4 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_VERIFY = 4


def _load_codeword(path: str) -> np.ndarray:
    vals = [int(ln) for ln in Path(path).read_text().splitlines() if ln.strip()]
    return np.array(vals, dtype=np.uint8)


def _save_codeword(word, path: str) -> None:
    Path(path).write_text("\n".join(str(int(x)) for x in word) + "\n")


def _load_construction(path: str):
    from .construct import load_spec

    return load_spec(path)


def cmd_build(args) -> int:
    from .construct import build_T1, build_T2, save_spec
    from .sidon import SidonSequence, load_sequence

    seq = None
    if args.sidon:
        seq = load_sequence(args.sidon)
    if args.construction == "I":
        if args.q0 is None and args.eps is None:
            print("build: give --q0 or --eps", file=sys.stderr)
            return EXIT_USAGE
        c = build_T1(args.n, args.d, q0=args.q0, sidon=seq, eps=args.eps)
    else:
        if args.q is None:
            print("build: construction II needs --q", file=sys.stderr)
            return EXIT_USAGE
        c = build_T2(args.n, args.d, q=args.q, sidon=seq, eps=args.eps)
    save_spec(c, args.out)
    print(f"wrote {args.out}")
    print(c.params().render())
    return EXIT_OK


def cmd_info(args) -> int:
    c = _load_construction(args.spec)
    print(c.params().render())
    if hasattr(c, "fs"):
        subs = ", ".join(
            f"x{i+1} -> x^{a}y^{b}" for i, f in enumerate(c.fs) for (a, b) in [next(iter(f.coeffs))]
        )
        print(f"substitutions: {subs}")
        print(f"ambient one-point code: deg G = {c.ambient.m} (Goppa designed distance N - deg G)")
    return EXIT_OK


def cmd_encode(args) -> int:
    from .mpoly import load_message

    c = _load_construction(args.spec)
    F = load_message(args.message)
    cw = c.encode(F)
    _save_codeword(cw, args.out)
    print(f"encoded {len(cw)} symbols -> {args.out}")
    return EXIT_OK


def cmd_corrupt(args) -> int:
    c = _load_construction(args.spec)
    cw = _load_codeword(args.codeword)
    q = c.params().q
    n_err = args.errors
    if n_err is None:
        if args.fraction is None:
            print("corrupt: give --errors or --fraction", file=sys.stderr)
            return EXIT_USAGE
        n_err = int(args.fraction * len(cw))
    rng = np.random.default_rng(args.seed)
    pos = rng.choice(len(cw), size=n_err, replace=False)
    out = cw.copy()
    for p in pos:
        out[p] = (int(out[p]) + int(rng.integers(1, q))) % q
    _save_codeword(out, args.out)
    print(f"flipped {n_err} of {len(cw)} symbols (seed {args.seed}) -> {args.out}")
    return EXIT_OK


def cmd_decode(args) -> int:
    from .construct import ConstructionI
    from .listdec import DecoderConfig, ListDecodeError, decode_T1, decode_T2

    c = _load_construction(args.spec)
    rec = _load_codeword(args.received)
    config = DecoderConfig(ell=args.ell, s=args.s)
    try:
        if isinstance(c, ConstructionI):
            res = decode_T1(c, rec, config)
        else:
            res = decode_T2(c, rec, config)
    except ListDecodeError as exc:
        print(f"decoding infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    report = res.render()
    if args.out:
        Path(args.out).write_text(report)
        print(f"wrote {args.out}")
    else:
        print(report, end="")
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = True
    if args.what == "sidon":
        from .sidon import load_sequence, sidon_verify

        seq = load_sequence(args.file)
        ok, pair = sidon_verify(seq.values, args.d if args.d else seq.d)
        print(f"sidon_verify: {ok}" + (f" counterexample {pair}" if pair else ""))
    elif args.what == "mfp":
        from .mfp import mfp_build, mfp_verify

        ok = mfp_verify(mfp_build(args.q, args.d or 2))
        print(f"mfp_verify(q={args.q}, d={args.d or 2}): {ok}")
    elif args.what == "subcode":
        from .agcode import ag_encode
        from .construct import rm_to_ag
        from .mpoly import MultiPoly, monomial_basis

        c = _load_construction(args.spec)
        rng = np.random.default_rng(args.seed)
        basis = monomial_basis(c.n, c.d)
        q = c.field.order
        for _ in range(args.trials):
            F = MultiPoly.from_coeff_vector(
                c.field, c.n, c.d, rng.integers(0, q, len(basis))
            )
            lhs = c.encode(F)
            rhs = ag_encode(c.ambient, rm_to_ag(c, F))
            if not np.array_equal(lhs, rhs):
                ok = False
                break
        print(f"subcode identity over {args.trials} random messages: {ok}")
    elif args.what == "rs-oracle":
        from .gf import field_build
        from .listdec import rs_list_decode
        from .oracle import list_ball_oracle

        field = field_build(args.q)
        rng = np.random.default_rng(args.seed)
        xs = np.arange(args.q, dtype=np.uint8)
        gen_rows = [np.full(args.q, field.one.enc, dtype=np.uint8)]
        for _ in range(args.d or 2):
            gen_rows.append(field.vmul(gen_rows[-1], xs))
        gen = np.stack(gen_rows)
        radius = None
        for _ in range(args.trials):
            msg = rng.integers(0, args.q, gen.shape[0]).astype(np.uint8)
            cw = np.zeros(args.q, dtype=np.uint8)
            for i, cc in enumerate(msg):
                cw = field.vadd(cw, field.vmul(np.full(args.q, cc, dtype=np.uint8), gen[i]))
            res = rs_list_decode(field, cw, args.d or 2, args.ell or 2)
            radius = res.radius
            dec = sorted(tuple(c.enc for c in f) for f, _ in res.candidates)
            orc = sorted(tuple(int(x) for x in m) for m, _ in list_ball_oracle(gen, field, cw, radius))
            if dec != orc:
                ok = False
                break
        print(f"rs decoder == ball oracle on {args.trials} noiseless trials at radius {radius}: {ok}")
    else:
        print(f"unknown verification {args.what}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_sample_puncture(args) -> int:
    from .oracle import random_puncture_experiment

    report = random_puncture_experiment(
        args.n, args.d, args.q, args.length, args.trials, args.seed
    )
    text = report.render()
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prmcode", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="construct a code and write its spec file")
    b.add_argument("--construction", choices=["I", "II"], required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--q0", type=int, help="Hermitian parameter (construction I)")
    b.add_argument("--q", type=int, help="alphabet prime (construction II)")
    b.add_argument("--eps", type=float, help="target distance parameter for auto-sizing")
    b.add_argument("--sidon", help="sequence file (one value per line)")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    i = sub.add_parser("info", help="parameter report for a code spec")
    i.add_argument("--spec", required=True)
    i.set_defaults(func=cmd_info)

    e = sub.add_parser("encode", help="message file -> codeword file")
    e.add_argument("--spec", required=True)
    e.add_argument("--message", required=True)
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_encode)

    co = sub.add_parser("corrupt", help="inject symbol errors into a codeword")
    co.add_argument("--spec", required=True)
    co.add_argument("--codeword", required=True)
    co.add_argument("--errors", type=int)
    co.add_argument("--fraction", type=float)
    co.add_argument("--seed", type=int, required=True)
    co.add_argument("--out", required=True)
    co.set_defaults(func=cmd_corrupt)

    de = sub.add_parser("decode", help="list-decode a received word")
    de.add_argument("--spec", required=True)
    de.add_argument("--received", required=True)
    de.add_argument("--ell", type=int)
    de.add_argument("--s", type=int)
    de.add_argument("--out")
    de.set_defaults(func=cmd_decode)

    v = sub.add_parser("verify", help="run a self-check")
    v.add_argument("what", choices=["sidon", "mfp", "subcode", "rs-oracle"])
    v.add_argument("--file")
    v.add_argument("--spec")
    v.add_argument("--q", type=int)
    v.add_argument("--d", type=int)
    v.add_argument("--ell", type=int)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sample-puncture", help="random-puncturing distance experiment")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sample_puncture)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
