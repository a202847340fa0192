"""
Command line interface.

Exit codes: 0 success, 1 negative homotopy decision, 2 parse error,
3 validation error, 4 computation error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import linalg
from .elliptic import EllipticError, elliptic_check, embedding_report, f0_check
from .maps import (DgaMorphism, HomotopyError, MorphismError, lemma_l3_homotopy, verify_homotopy)
from .fmt import matrix, sup
from .model import ModelError, SullivanModel
from .parser import ModelFile, ParseError, parse_map, parse_model
from .sampling import sample_dn, sample_kernel
from .whitehead import (ExactnessError, SectionError, decompose, psi, sigma, theta, theta_prime,
                        whitehead_sequence)

EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_COMPUTATION = 4


class CliError(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload or {}


def _frac(x) -> str:
    return str(Fraction(x))


def load(path: str) -> tuple[ModelFile, SullivanModel]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc.strerror}")
    try:
        mf = parse_model(text)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}:{exc.line}:{exc.column}: {exc.message}",
                       {"error": "parse", "line": exc.line, "column": exc.column, "message": exc.message})
    return mf, mf.model()


def load_valid(path: str) -> tuple[ModelFile, SullivanModel]:
    mf, m = load(path)
    report = m.validate()
    if not report.valid:
        raise CliError(EXIT_VALIDATION, "\n".join(_violation_lines(path, mf, report)),
                       {"error": "validation", "violations": _violations(mf, report)})
    return mf, m


def _violations(mf: ModelFile, report) -> list[dict]:
    out = []
    for v in report.violations:
        loc = mf.location(v.generator)
        out.append({"kind": v.kind, "generator": v.generator, "message": v.message,
                    "line": loc[0] if loc else None, "column": loc[1] if loc else None})
    return out


def _violation_lines(path: str, mf: ModelFile, report) -> list[str]:
    lines = []
    for v in report.violations:
        loc = mf.location(v.generator)
        where = f"{path}:{loc[0]}:{loc[1]}: " if loc else f"{path}: "
        lines.append(where + v.message)
    return lines


# -- subcommands ----------------------------------------------------------

def cmd_validate(args) -> tuple[dict, str]:
    mf, m = load(args.file)
    report = m.validate()
    if not report.valid:
        raise CliError(EXIT_VALIDATION, "\n".join(_violation_lines(args.file, mf, report)),
                       {"valid": False, "violations": _violations(mf, report)})
    return {"valid": True, "generators": [{"name": g.name, "degree": g.degree} for g in m.generators]}, "valid"


def cmd_cohomology(args) -> tuple[dict, str]:
    _, m = load_valid(args.file)
    if args.truncate is not None:
        m = m.truncate(args.truncate)
    rows = []
    lines = [f"{'deg':>4} {'dim':>4}  representatives"]
    for k in range(args.max_degree + 1):
        H = m.cohomology(k)
        reps = [str(r) for r in H.representatives]
        rows.append({"degree": k, "dim": H.dim, "representatives": reps})
        lines.append(f"{k:>4} {H.dim:>4}  {', '.join(reps)}")
    return {"truncate": args.truncate, "cohomology": rows}, "\n".join(lines)


def cmd_whitehead(args) -> tuple[dict, str]:
    _, m = load_valid(args.file)
    try:
        seq = whitehead_sequence(m, args.max_degree)
    except ExactnessError as exc:
        raise CliError(EXIT_COMPUTATION, str(exc), {"error": "exactness", "data": exc.data.to_dict()})
    lines = []
    for w in seq:
        cert = ", ".join(f"{c.node}: rank {c.rank_image} = dim ker {c.dim_kernel}" for c in w.certificates)
        n = w.degree
        lines.append(f"n={n}: b{sup(n)} = {matrix(w.b)} "
                     f"(V{sup(n)} dim {w.dim_v} → H{sup(n + 1)}(ΛV^≤{n - 1}) dim {w.dim_h_low}); exact [{cert}]")
    return {"whitehead": [w.to_dict() for w in seq]}, "\n".join(lines)


def _check_splitting(m: SullivanModel, n: int, samples: int, rng: random.Random) -> dict:
    split_ok = 0
    round_ok = 0
    for _ in range(samples):
        d = sample_dn(m, n, rng)
        beta = sigma(d)
        if psi(beta, n) == d:
            split_ok += 1
        f = sample_kernel(m, n, rng)
        if theta(theta_prime(f), n) == f:
            round_ok += 1
    return {"samples": samples, "psi_sigma_identity": split_ok, "theta_theta_prime_identity": round_ok}


def cmd_decompose(args) -> tuple[dict, str]:
    _, m = load_valid(args.file)
    dec = decompose(m, args.degree)
    data = dec.to_dict()
    lines = [dec.summary(), f"E(ΛV^≤{args.degree}) ≅ {dec.group}"]
    if args.samples:
        rng = random.Random(args.seed)
        try:
            tests = _check_splitting(m, args.degree, args.samples, rng)
        except (SectionError, MorphismError, HomotopyError) as exc:
            raise CliError(EXIT_COMPUTATION, str(exc), {"error": "computation", "message": str(exc)})
        data["tests"] = tests
        lines.append(f"Ψσ = id: {tests['psi_sigma_identity']}/{args.samples}; "
                     f"ΘΘ' = id: {tests['theta_theta_prime_identity']}/{args.samples}")
        if tests["psi_sigma_identity"] != args.samples or tests["theta_theta_prime_identity"] != args.samples:
            raise CliError(EXIT_COMPUTATION, "\n".join(lines), data)
    return data, "\n".join(lines)


def cmd_elliptic(args) -> tuple[dict, str]:
    _, m = load_valid(args.file)
    try:
        rep = elliptic_check(m, args.cap)
    except EllipticError as exc:
        raise CliError(EXIT_COMPUTATION, str(exc), {"error": "computation", "message": str(exc)})
    pure = f0_check(m, rep.cap)
    data = rep.to_dict()
    data["purity"] = pure.to_dict()
    lines = [
        f"betti (0..{rep.cap}): {rep.betti}",
        f"formal dimension: {rep.formal_dimension if rep.formal_dimension is not None else 'none within cap'}",
        f"homotopy degrees: {rep.homotopy_degrees} ranks {rep.ranks}",
    ]
    lines += [f"  [{'ok' if c.ok else 'FAIL'}] {c.name}: {c.detail}" for c in rep.checks]
    lines.append(f"elliptic-consistent: {'yes' if rep.consistent else 'no'}")
    lines.append(f"pure: {pure.pure}; dim V^even = {pure.dim_even}, dim V^odd = {pure.dim_odd}; "
                 f"H^odd = 0 up to {pure.cap}: {pure.odd_cohomology_vanishes}")
    return data, "\n".join(lines)


def cmd_embed(args) -> tuple[dict, str]:
    _, m = load_valid(args.file)
    try:
        rep = embedding_report(m, args.assume_finite, force=args.force)
    except EllipticError as exc:
        raise CliError(EXIT_COMPUTATION, str(exc), {"error": "computation", "message": str(exc)})
    return rep.to_dict(), rep.text()


def _load_map(path: str, m: SullivanModel) -> DgaMorphism:
    try:
        text = Path(path).read_text(encoding="utf-8")
        images = parse_map(text, m)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc.strerror}")
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}:{exc.line}:{exc.column}: {exc.message}",
                       {"error": "parse", "line": exc.line, "column": exc.column, "message": exc.message})
    try:
        return DgaMorphism.from_images(m, images)
    except MorphismError as exc:
        raise CliError(EXIT_VALIDATION, f"{path}: {exc}", {"error": "validation", "message": str(exc)})


def cmd_homotopy(args) -> tuple[dict, str]:
    _, m = load_valid(args.file)
    alpha = _load_map(args.alpha, m)
    beta = _load_map(args.beta, m)
    q = m.top_degree
    top = m.names_of_degree(q)
    low = [n for n in m.names if n not in top]
    if any(alpha.images[w] != m.gen(w) or beta.images[w] != m.gen(w) for w in low):
        raise CliError(EXIT_COMPUTATION, "maps are not the identity below the top degree; "
                       "only the structured shapes are decided", {"error": "shape"})
    data: dict = {"mode": args.mode, "degree": q}
    if args.mode == "kernel":
        try:
            fa, fb = theta(alpha, q), theta(beta, q)
        except MorphismError as exc:
            raise CliError(EXIT_COMPUTATION, str(exc), {"error": "shape", "message": str(exc)})
        data["theta_alpha"] = linalg.to_str_rows(fa.f)
        data["theta_beta"] = linalg.to_str_rows(fb.f)
        if fa != fb:
            data.update({"homotopic": False, "reason": "Θ(α) ≠ Θ(β)"})
            raise CliError(EXIT_NEGATIVE, f"not homotopic: Θ(α) = {matrix(fa.f)} ≠ Θ(β) = {matrix(fb.f)}", data)
    z = {v: alpha.images[v] - m.gen(v) for v in top}
    zp = {v: beta.images[v] - m.gen(v) for v in top}
    try:
        F = lemma_l3_homotopy(m, q - 1, q, z, zp)
    except HomotopyError as exc:
        data.update({"homotopic": False, "reason": str(exc)})
        raise CliError(EXIT_NEGATIVE, f"not homotopic: {exc}", data)
    check = verify_homotopy(F, alpha, beta)
    data.update({"homotopic": True, "verified": check.ok,
                 "homotopy": {k: str(e) for k, e in F.images.items()}})
    lines = ["homotopic: yes (verified)" if check.ok else "homotopic: construction failed verification"]
    lines += [f"  F({k}) = {e}" for k, e in F.images.items()]
    return data, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sullivan", description="Exact computations with minimal Sullivan models.")
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--seed", type=int, default=None, help="seed for sampling (env SULLIVAN_SEED)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a model file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("cohomology", help="Betti numbers and representative cocycles")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--truncate", type=int, default=None)
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("whitehead", help="Whitehead exact sequence with certificates")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, required=True)
    s.set_defaults(func=cmd_whitehead)

    s = sub.add_parser("decompose", help="E(ΛV^≤n) ≅ Hom ⋊ D^n")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--samples", type=int, default=0)
    s.add_argument("--seed", dest="sub_seed", type=int, default=None)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("elliptic", help="necessary conditions for ellipticity")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=None)
    s.set_defaults(func=cmd_elliptic)

    s = sub.add_parser("embed", help="embedding of E(X) into linear groups")
    s.add_argument("file")
    s.add_argument("--assume-finite", action="store_true")
    s.add_argument("--force", action="store_true", help="skip the elliptic checks")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("homotopy", help="decide homotopy in the supported shapes")
    s.add_argument("file")
    s.add_argument("--alpha", required=True)
    s.add_argument("--beta", required=True)
    s.add_argument("--mode", choices=["l3", "kernel"], default="l3")
    s.set_defaults(func=cmd_homotopy)
    return p


def _resolve_seed(args) -> int:
    for s in (getattr(args, "sub_seed", None), args.seed):
        if s is not None:
            return s
    env = os.environ.get("SULLIVAN_SEED")
    return int(env) if env else 0


def _emit(args, command: str, code: int, data: dict, text: str, out, err) -> None:
    if args.json:
        doc = {"command": command, "file": getattr(args, "file", None), "exit_code": code, "result": data}
        out.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    elif code == 0:
        out.write(text + "\n")
    else:
        err.write(text + "\n")


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    args.seed = _resolve_seed(args)
    try:
        data, text = args.func(args)
        code = 0
    except CliError as exc:
        data, text, code = exc.payload, str(exc), exc.code
    except (ModelError, SectionError, MorphismError, HomotopyError) as exc:
        data, text, code = {"error": "computation", "message": str(exc)}, str(exc), EXIT_COMPUTATION
    _emit(args, args.command, code, data, text, out, err)
    return code


if __name__ == "__main__":
    sys.exit(main())
