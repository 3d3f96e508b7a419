"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines inline.
Criterion 7 is a documentation note: the abelianness theorems are
universally quantified statements with no finite witness, so the
randomized law suite of criterion 6 stands in for them.
"""

import random
import time
from pathlib import Path

import pytest

import docgen
from nquiver import cli, laws
from nquiver.fileformat import parse
from nquiver.laws import TrialConfig, brute_hom_count
from nquiver.linalg import FieldSpec, Matrix
from nquiver.nrep import ndirect_sum, nhom_basis, nindec_status
from nquiver.rep import IndecStatus, hom_basis

GOLDEN = Path(__file__).parent / "golden"
GF2 = FieldSpec.gf(2)


@pytest.fixture(scope="module")
def worked():
    return parse((GOLDEN / "birep.qrep").read_text())


@pytest.fixture(scope="module")
def law_verdicts():
    start = time.monotonic()
    verdicts = laws.run_all(TrialConfig())
    return verdicts, time.monotonic() - start


def _verdict(n, ok, elapsed, budget, detail):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {n}: {status} ({elapsed:.2f}s < {budget:.0f}s) {detail}")
    assert ok
    assert elapsed < budget


def test_criterion_1_golden_hom_dimensions(worked):
    start = time.monotonic()
    d_star = len(hom_basis(worked.reps["Vstar"], worked.reps["Wstar"]))
    d_line = len(hom_basis(worked.reps["VQ"], worked.reps["WQ0"]))
    d_bar = len(nhom_basis(worked.nreps["Vbar"], worked.nreps["Wbar"]))
    elapsed = time.monotonic() - start
    _verdict(
        1,
        (d_star, d_line, d_bar) == (2, 1, 1),
        elapsed,
        1.0,
        f"hom dims star={d_star} line={d_line} nrep={d_bar}",
    )


def test_criterion_2_relation_solution_space(worked):
    # the solved space must be: every component zero except the level-1
    # map at vertex 1, which is free (one basis vector)
    start = time.monotonic()
    basis = nhom_basis(worked.nreps["Vbar"], worked.nreps["Wbar"])
    ok = len(basis) == 1
    if ok:
        f = basis[0]
        free = f.comps[0].comps["1"]
        ok = free.nrows == 1 and free.ncols == 1 and free.entry(0, 0) != 0
        ok = ok and f.comps[0].comps["2"].is_zero()
        ok = ok and all(f.comps[1].comps[v].is_zero() for v in ("1", "2", "3", "4"))
    elapsed = time.monotonic() - start
    _verdict(2, ok, elapsed, 1.0, "all components forced to 0 except one free scalar")


def test_criterion_3_direct_sum_goldens(worked):
    start = time.monotonic()
    total, _, _ = ndirect_sum(worked.nreps["Vbar"], worked.nreps["Wbar"])
    field = total.field
    lvl1, lvl2 = total.components
    ok = lvl1.dims == {"1": 2, "2": 2} and lvl2.dims == {"1": 2, "2": 2, "3": 3, "4": 2}
    ok = ok and lvl1.maps["alpha"] == Matrix(field, [[1, 0], [0, 0]])
    ok = ok and lvl2.maps["b1"] == Matrix(field, [[1, 0], [0, 0], [0, 1]])
    ok = ok and lvl2.maps["b2"] == Matrix(field, [[0, 0], [1, 0], [0, 1]])
    ok = ok and lvl2.maps["b3"] == Matrix(field, [[1, 0], [1, 0], [0, 1]])
    diag10 = Matrix(field, [[1, 0], [0, 0]])
    ok = ok and total.connector(2, "alpha", "b1") == diag10
    ok = ok and total.connector(2, "alpha", "b2") == diag10
    ok = ok and total.connector(2, "alpha", "b3") == Matrix(field, [[1, 0], [0, 1]])
    elapsed = time.monotonic() - start
    _verdict(3, ok, elapsed, 1.0, "component dims, arrow blocks, diag connectors")


def test_criterion_4_indecomposability_goldens(worked):
    start = time.monotonic()
    rv = nindec_status(worked.nreps["Vbar"])
    rw = nindec_status(worked.nreps["Wbar"])
    ok = rv.status is IndecStatus.INDECOMPOSABLE
    ok = ok and rw.status is IndecStatus.DECOMPOSABLE
    e = rw.witness
    ok = ok and e is not None and e @ e == e
    ok = ok and not e.is_zero() and not e.is_identity()
    elapsed = time.monotonic() - start
    _verdict(4, ok, elapsed, 5.0, "V indecomposable, W split by verified idempotent")


def test_criterion_5_brute_force_oracle():
    start = time.monotonic()
    cfg = TrialConfig(field=GF2, max_vertices=2, max_arrows=2, max_dim=2)
    checked = 0
    seed = 0
    ok = True
    while checked < 50 and ok:
        seed += 1
        assert seed < 3000, "generator starved"
        rng = random.Random(seed)
        qs = laws._random_quiver_tuple(rng, cfg)
        a = laws._random_nrep_on(rng, qs, cfg)
        b = laws._random_nrep_on(rng, qs, cfg)
        unknowns = sum(
            a.components[li].dims[v] * b.components[li].dims[v]
            for li in range(a.n)
            for v in qs[li].vertices
        )
        if unknowns > 12:
            continue
        ok = brute_hom_count(a, b) == 2 ** len(nhom_basis(a, b))
        checked += 1
    elapsed = time.monotonic() - start
    _verdict(5, ok and checked == 50, elapsed, 60.0, f"{checked} GF(2) instances agree")


def test_criterion_6_law_suite(law_verdicts):
    verdicts, elapsed = law_verdicts
    failures = sum(len(v.failures) for v in verdicts)
    ok = len(verdicts) == 9 and failures == 0
    _verdict(6, ok, elapsed, 60.0, f"9 laws x 200 trials, {failures} failures")


def test_criterion_7_note(law_verdicts):
    verdicts, _ = law_verdicts
    print(
        "criterion 7: NOTE abelianness is universally quantified and has no "
        "finite witness; the criterion-6 law suite is the property-based "
        "substitute and ran with "
        f"{sum(len(v.failures) for v in verdicts)} failures"
    )
    assert all(v.passed for v in verdicts)


def test_criterion_8_round_trip_and_exit_codes(tmp_path, capsys):
    from nquiver.fileformat import emit

    start = time.monotonic()
    ok = True
    for name in ("birep.qrep", "edges.qrep"):
        doc = parse((GOLDEN / name).read_text())
        ok = ok and parse(emit(doc)) == doc
    rng = random.Random(20240)
    for _ in range(500):
        doc = docgen.random_document(rng)
        text = emit(doc)
        ok = ok and parse(text) == doc and emit(parse(text)) == text
    # exit-code contract: 0 clean, 1 failed check, 2 parse/usage trouble
    ok = ok and cli.run(["validate", str(GOLDEN / "birep.qrep")]) == 0
    bad = tmp_path / "bad.qrep"
    bad.write_text("field QQ\nrep V on Nowhere { }\n")
    ok = ok and cli.run(["validate", str(bad)]) == 2
    square = tmp_path / "square.qrep"
    square.write_text(
        "field QQ\n"
        "quiver L { vertices: 1 2; arrows: a: 1 -> 2; }\n"
        "rep V on L { dim 1 = 1; dim 2 = 1; map a = [[1]]; }\n"
        "morphism f : V -> V { at 1 = [[1]]; at 2 = [[2]]; }\n"
    )
    ok = ok and cli.run(["validate", str(square)]) == 1
    capsys.readouterr()
    elapsed = time.monotonic() - start
    _verdict(8, ok, elapsed, 30.0, "goldens + 500 fuzzed docs round-trip, exit codes hold")
