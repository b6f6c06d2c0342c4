"""Acceptance gate: one test per top-level criterion, each printing a
single [PRIMARY-n] PASS/FAIL line with its runtime and asserting both the
outcome and the stated time budget.

The shifted-degree positivity criterion is checked faithfully and is
expected to fail: the clockwise cup is a nonzero normal form between
distinct sorted boundaries with shifted degree 0, and dotted clockwise
kinks reach negative shifted degree. See the decisions log outside the
package for the analysis.
"""

import random
import time

from conftest import ACCEPTANCE_LINES

from heisencalc.diagrams import (
    DiagLin,
    Diagram,
    apply_slice,
    degree,
    degree_of,
    eval_closed,
    normalize,
    random_diagram,
    sdegree,
    verify_biproduct,
    verify_circle_evaluations,
    verify_degree_table,
    verify_psi_relations,
)
from heisencalc.fock import verify_q_split
from heisencalc.heisenberg import (
    NCPoly,
    normal_order,
    p,
    q,
    verify_a_commutator,
    verify_tilde_relation,
)
from heisencalc.k0 import faithfulness_rank, verify_gamma_generation, verify_relation_operators
from heisencalc.reporting import all_pass
from heisencalc.scalars import LaurentPoly, qint
from heisencalc.symgroups import verify_symmetrizers


def _gate(n, ok, started, budget, note):
    elapsed = time.perf_counter() - started
    line = f"[PRIMARY-{n}] {'PASS' if ok else 'FAIL'} {note} ({elapsed:.2f}s, budget {budget}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert elapsed < budget, line
    assert ok, line


def test_criterion_1_normal_ordering():
    started = time.perf_counter()
    deformed = normal_order(q(2) * p(3))
    want = p(3) * q(2) + (p(2) * q(1)).scale(qint(2)) + p(1).scale(qint(3))
    ok = deformed == want
    ok = ok and deformed.render() == "p3*q2 + (1+t)*p2*q1 + (1+t+t^2)*p1"
    classical = normal_order(q(2) * p(3), deformed=False)
    ok = ok and classical == p(3) * q(2) + p(2) * q(1) + p(1)
    _gate(1, ok, started, 1, "straightening of q2*p3, deformed and classical")


def test_criterion_2_a_commutators():
    started = time.perf_counter()
    indices = [i for i in range(-6, 7) if i]
    records = []
    for n in indices:
        for m in indices:
            records.append(verify_a_commutator(n, m, deformed=True))
            records.append(verify_a_commutator(n, m, deformed=False))
    _gate(2, all_pass(records), started, 10, f"{len(records)} commutator identities")


def test_criterion_3_tilde_relations():
    started = time.perf_counter()
    records = [
        verify_tilde_relation(n, m) for n in range(1, 6) for m in range(1, 6)
    ]
    _gate(3, all_pass(records), started, 10, f"{len(records)} dual straightening identities")


def test_criterion_4_fock_operator_identities():
    started = time.perf_counter()
    records = list(verify_q_split(10))
    for n in range(1, 5):
        for m in range(1, 5):
            for variant in ("deformed_thm1", "classical_h", "classical_e"):
                records.append(verify_relation_operators(n, m, variant, 8))
    _gate(4, all_pass(records), started, 60, f"{len(records)} operator identities")


def test_criterion_5_symmetric_groups():
    started = time.perf_counter()
    records = verify_symmetrizers(n_max=5, dims_n_max=6)
    _gate(5, all_pass(records), started, 60, f"{len(records)} symmetrizer checks")


def test_criterion_6_diagram_decompositions():
    started = time.perf_counter()
    records = (
        verify_biproduct("DH")
        + verify_biproduct("KH")
        + verify_circle_evaluations("DH")
        + verify_circle_evaluations("KH")
    )
    _gate(6, all_pass(records), started, 30, f"{len(records)} diagram identities")


def test_criterion_7_translation_images():
    started = time.perf_counter()
    records = verify_psi_relations()
    _gate(7, all_pass(records), started, 30, f"{len(records)} translated relations")


def test_criterion_8_degrees_preserved():
    started = time.perf_counter()
    ok = all_pass(verify_degree_table())
    rng = random.Random(88)
    for _ in range(1000):
        diag = random_diagram(rng, n_slices=rng.randint(1, 6), dot_rate=0.25)
        nf = normalize(diag)
        if not nf.is_zero() and degree_of(nf) != degree(diag):
            ok = False
            break
    _gate(8, ok, started, 30, "degree table and preservation on 1000 diagrams")


_CROSSING_FOR = {("U", "U"): "XUU", ("D", "D"): "XDD", ("D", "U"): "XDU", ("U", "D"): "XUD"}


def _sample_sorted_boundary(rng, max_width=6, n_slices=6):
    """One random slice word starting from a sorted boundary (all up
    strands left of all down strands)."""
    ups = rng.randint(0, 2)
    downs = rng.randint(0, 2)
    bottom = ("U",) * ups + ("D",) * downs
    sig = bottom
    slices = []
    for _ in range(rng.randint(1, n_slices)):
        candidates = []
        if len(sig) + 2 <= max_width:
            for at in range(len(sig) + 1):
                candidates.append((at, "CupQP"))
                candidates.append((at, "CupPQ"))
        for at in range(len(sig) - 1):
            pair = (sig[at], sig[at + 1])
            candidates.append((at, _CROSSING_FOR[pair]))
            if pair == ("D", "U"):
                candidates.append((at, "CapQP"))
            if pair == ("U", "D"):
                candidates.append((at, "CapPQ"))
        if sig and rng.random() < 0.15:
            at = rng.randrange(len(sig))
            choice = (at, "DotD" if sig[at] == "D" else "DotU")
        elif candidates:
            choice = candidates[rng.randrange(len(candidates))]
        else:
            break
        slices.append(choice)
        sig = apply_slice(sig, choice[0], choice[1])
    return Diagram(bottom, slices)


def _counts(sig):
    ups = sum(1 for s in sig if s == "U")
    return ups, len(sig) - ups


def test_criterion_8_sdeg_positivity():
    # Faithful check of the strict positivity claim; expected to fail.
    started = time.perf_counter()
    rng = random.Random(20240817)
    kept = 0
    violations = 0
    first = None
    while kept < 500:
        diag = _sample_sorted_boundary(rng)
        if "DU" in "".join(diag.top):
            continue
        if _counts(diag.bottom) == _counts(diag.top):
            continue
        kept += 1
        for term, _ in normalize(diag).items():
            if sdegree(term) <= 0:
                violations += 1
                if first is None:
                    first = f"{term.render()} has sdeg {sdegree(term)}"
                break
    ok = violations == 0
    note = (
        "sdeg positivity on 500 sorted-boundary samples"
        if ok
        else f"sdeg positivity fails on {violations}/500 samples, e.g. {first}"
    )
    _gate(8, ok, started, 30, note)


def test_criterion_9_gamma_surjectivity_witness():
    started = time.perf_counter()
    records = verify_gamma_generation(6)
    _gate(9, all_pass(records) and len(records) == 29, started, 30, "29 determinant witnesses")


def test_criterion_10_faithfulness():
    started = time.perf_counter()
    record = faithfulness_rank(4, 12)
    note = f"rank {record.parameters['rank']} of {record.parameters['monomials']} monomials"
    _gate(10, record.status == "pass", started, 120, note)


def test_criterion_11_property_tests():
    started = time.perf_counter()
    ok = True
    rng = random.Random(11)
    for _ in range(1000):
        word = tuple(
            (rng.choice("pq"), rng.randint(1, 4)) for _ in range(rng.randint(1, 6))
        )
        x = NCPoly({word: LaurentPoly.one()})
        nf = normal_order(x)
        if nf != normal_order(x, strategy="rightmost") or normal_order(nf) != nf:
            ok = False
            break
    for _ in range(300):
        diag = random_diagram(rng, n_slices=rng.randint(1, 7), dot_rate=0.2)
        nf = normalize(diag)
        again = DiagLin.zero()
        for term, c in nf.items():
            again = again + normalize(term).scale(c)
        if again != nf:
            ok = False
            break
    for _ in range(500):
        diag = random_diagram(rng, n_slices=rng.randint(2, 8), closed=True, dot_rate=0.2)
        if eval_closed(diag, "DH", strategy="leftmost") != eval_closed(
            diag, "DH", strategy="rightmost"
        ):
            ok = False
            break
    _gate(11, ok, started, 60, "confluence, idempotence, closed-evaluation agreement")
