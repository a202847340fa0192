"""Cohomology, Whitehead exactness, elliptic checks and embedding reports for a set of models."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from sullivan.elliptic import EllipticError, elliptic_check, embedding_report
from sullivan.parser import parse_model
from sullivan.whitehead import whitehead_sequence

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class SuiteConfig:
    models_dir: Path = ROOT / "models"
    names: list[str] = field(default_factory=lambda: ["s2", "s3", "cp2", "s3s3", "s2s4", "gr24", "su3", "hp2", "poly_x2"])
    extra_degrees: int = 2  # Whitehead window beyond the formal dimension


def run(cfg: SuiteConfig) -> list[dict]:
    rows = []
    for name in cfg.names:
        t0 = time.perf_counter()
        m = parse_model((cfg.models_dir / f"{name}.sul").read_text()).model()
        rep = elliptic_check(m)
        fd = rep.formal_dimension if rep.formal_dimension is not None else rep.cap
        seq = whitehead_sequence(m, fd + cfg.extra_degrees, strict=False)
        try:
            embed = embedding_report(m).ambient()
        except EllipticError:
            embed = None
        rows.append({
            "model": name,
            "betti": rep.betti[: fd + 1],
            "formal_dimension": rep.formal_dimension,
            "elliptic_consistent": rep.consistent,
            "whitehead_exact": all(w.exact for w in seq),
            "embedding": embed,
            "seconds": round(time.perf_counter() - t0, 3),
        })
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("names", nargs="*")
    p.add_argument("--json", action="store_true")
    args = p.parse_args()
    cfg = SuiteConfig(names=args.names) if args.names else SuiteConfig()
    rows = run(cfg)
    if args.json:
        print(json.dumps({"config": {k: str(v) for k, v in asdict(cfg).items()}, "rows": rows},
                         indent=2, ensure_ascii=False))
        return
    for r in rows:
        print(f"{r['model']:<8} betti={r['betti']} fd={r['formal_dimension']} "
              f"elliptic={r['elliptic_consistent']} exact={r['whitehead_exact']} "
              f"E ⊆ {r['embedding']}  ({r['seconds']}s)")


if __name__ == "__main__":
    main()
