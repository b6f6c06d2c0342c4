#!/usr/bin/env python3
"""Run every verification suite and diagram check with adjustable sizes.

Same coverage as `heisencalc report`, but each knob is a flag, each
section is timed, and --verbose prints the individual records. Exits 0
only when every section passes.
"""

import argparse
import functools
import sys
import time
from dataclasses import dataclass, fields

from heisencalc.cli import run_diagram_check, run_suite
from heisencalc.reporting import all_pass


@dataclass
class ReportConfig:
    commutator_max: int = 6
    tilde_max: int = 5
    size_bound: int = 8
    symmetrizer_max: int = 5
    gamma_max: int = 6
    faithfulness_degree: int = 4
    faithfulness_size_bound: int = 12


def sections(cfg):
    yield "a-commutators", functools.partial(run_suite, "a-commutators", max_index=cfg.commutator_max)
    yield (
        "a-commutators-classical",
        functools.partial(run_suite, "a-commutators", max_index=cfg.commutator_max, deformed=False),
    )
    yield "tilde", functools.partial(run_suite, "tilde", max_index=cfg.tilde_max)
    yield "fock", functools.partial(run_suite, "fock", size_bound=cfg.size_bound)
    yield "symmetrizers", functools.partial(run_suite, "symmetrizers", max_index=cfg.symmetrizer_max)
    yield "gamma", functools.partial(run_suite, "gamma", max_index=cfg.gamma_max)
    yield (
        "faithfulness",
        functools.partial(
            run_suite,
            "faithfulness",
            max_index=cfg.faithfulness_degree,
            size_bound=cfg.faithfulness_size_bound,
        ),
    )
    yield "degrees", functools.partial(run_diagram_check, "degrees", "DH")
    yield "psi", functools.partial(run_diagram_check, "psi", "DH")
    for calculus in ("DH", "KH"):
        yield f"biproduct-{calculus}", functools.partial(run_diagram_check, "biproduct", calculus)
        yield f"circles-{calculus}", functools.partial(run_diagram_check, "circles", calculus)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    for field in fields(ReportConfig):
        flag = "--" + field.name.replace("_", "-")
        parser.add_argument(flag, type=int, default=field.default)
    parser.add_argument("--verbose", action="store_true", help="print every record")
    args = parser.parse_args(argv)
    cfg = ReportConfig(**{f.name: getattr(args, f.name) for f in fields(ReportConfig)})

    failures = 0
    total = 0
    for name, runner in sections(cfg):
        started = time.perf_counter()
        records = runner()
        elapsed = time.perf_counter() - started
        ok = all_pass(records)
        total += len(records)
        failures += sum(1 for r in records if r.status != "pass")
        print(f"{name}: {len(records)} checks, {'pass' if ok else 'FAIL'} ({elapsed:.2f}s)")
        if args.verbose or not ok:
            for r in records:
                label = getattr(r, "id", None) or getattr(r, "check", "?")
                print(f"  {label}: {r.status}")
    print(f"total: {total} checks, {failures} failures")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
