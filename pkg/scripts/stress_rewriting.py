#!/usr/bin/env python3
"""Random stress test for the rewriting engines.

Three rounds of hammering: normal ordering of random p/q words
(strategy agreement and idempotence), open-diagram normalization
(strategy agreement, idempotence, degree preservation in the graded
calculus), and closed-diagram evaluation (strategy agreement in both
calculi). Prints the first counterexample and exits 1 if anything
disagrees.
"""

import argparse
import json
import random
import sys
import time

from heisencalc.diagrams import (
    DiagLin,
    degree,
    degree_of,
    eval_closed,
    normalize,
    random_diagram,
)
from heisencalc.heisenberg import NCPoly, normal_order
from heisencalc.scalars import LaurentPoly


def random_word(rng, max_len=6, max_index=5):
    return tuple(
        (rng.choice("pq"), rng.randint(1, max_index)) for _ in range(rng.randint(1, max_len))
    )


def stress_words(rng, rounds):
    for _ in range(rounds):
        word = random_word(rng)
        x = NCPoly({word: LaurentPoly.one()})
        left = normal_order(x)
        right = normal_order(x, strategy="rightmost")
        if left != right:
            return f"word {word}: strategies disagree"
        if normal_order(left) != left:
            return f"word {word}: normal form not fixed"
    return None


def stress_open(rng, rounds):
    for _ in range(rounds):
        calculus = rng.choice(("DH", "KH"))
        diag = random_diagram(rng, n_slices=rng.randint(1, 7), dot_rate=0.2)
        if calculus == "KH" and any(gen in ("DotU", "DotD") for _, gen, _ in diag.slices):
            continue
        left = normalize(diag, calculus)
        right = normalize(diag, calculus, strategy="rightmost")
        if left != right:
            return f"{calculus} diagram {json.dumps(diag.to_json())}: strategies disagree"
        again = DiagLin.zero()
        for term, c in left.items():
            again = again + normalize(term, calculus).scale(c)
        if again != left:
            return f"{calculus} diagram {json.dumps(diag.to_json())}: normal form not fixed"
        if calculus == "DH" and not left.is_zero() and degree_of(left) != degree(diag):
            return f"DH diagram {json.dumps(diag.to_json())}: degree changed"
    return None


def stress_closed(rng, rounds):
    for _ in range(rounds):
        calculus = rng.choice(("DH", "KH"))
        diag = random_diagram(rng, n_slices=rng.randint(2, 8), closed=True, dot_rate=0.2)
        if calculus == "KH" and any(gen in ("DotU", "DotD") for _, gen, _ in diag.slices):
            continue
        left = eval_closed(diag, calculus, strategy="leftmost")
        right = eval_closed(diag, calculus, strategy="rightmost")
        if left != right:
            return f"{calculus} closed diagram {json.dumps(diag.to_json())}: {left} != {right}"
    return None


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rounds", type=int, default=1000, help="iterations per stage")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    stages = [
        ("normal ordering", stress_words),
        ("open diagrams", stress_open),
        ("closed diagrams", stress_closed),
    ]
    rng = random.Random(args.seed)
    for name, stage in stages:
        started = time.perf_counter()
        problem = stage(rng, args.rounds)
        elapsed = time.perf_counter() - started
        if problem is not None:
            print(f"{name}: FAIL after {elapsed:.2f}s\n  {problem}")
            return 1
        print(f"{name}: {args.rounds} rounds ok ({elapsed:.2f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
