"""Acceptance criteria, one check per criterion.

Each ``check_*`` function returns ``(passed, detail)``.  Under pytest every
criterion is its own test and the verdict lines are printed in the terminal
summary; ``python3 tests/test_acceptance.py`` prints them directly.
"""
import contextlib
import io
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bocklift import catalog_get  # noqa: E402
from bocklift.bockstein import (  # noqa: E402
    PhaseVector,
    bockstein_defect,
    lift_once,
    lift_to_level,
    logical_rotation_program,
)
from bocklift.chain_lift import check_chain_lift, solve_chain_lift  # noqa: E402
from bocklift.cli import main  # noqa: E402
from bocklift.css_model import (  # noqa: E402
    divisibility_report,
    logical_bases,
    max_commutativity_level,
)
from bocklift.errors import ChainLiftUnsolvable, NotLogical, Obstructed  # noqa: E402
from bocklift.phase_oracle import (  # noqa: E402
    compare_formal_physical,
    logical_action,
    verify_square_root,
)
from bocklift.ring_linalg import (  # noqa: E402
    ResidueMatrix,
    ResidueVector,
    kernel_basis_mod,
    module_invariants,
    solve_mod,
)

from cli_cases import DOCUMENTED, golden_path  # noqa: E402
from codegen import (  # noqa: E402
    random_boundary_shift,
    random_chain_instance,
    random_code,
    random_cycle,
    random_full_rank_code,
)
from oracles import (  # noqa: E402
    all_binary,
    binary_image,
    chain_lift_exists,
    kernel,
    row_span,
    solvable,
    torsion_counts,
    xor_coset_phases,
)

RESULTS = {}
SEED = 20240611


def _defect(code, theta):
    m = theta.level
    if not code.m_x:
        return ()
    return tuple(((code.hx.array @ theta.array) % (1 << (m + 1)) >> m).tolist())


# 1 -------------------------------------------------------------------------


def check_lift_equivalence(codes=1000):
    rng = np.random.default_rng(SEED + 1)
    disagreements, lifted, obstructed = [], 0, 0
    for _ in range(codes):
        code = random_code(rng, n_max=10, mx_max=4, mz_max=4, dependent=0.5)
        image = binary_image(code.hx2)
        for m in (1, 2):
            theta = random_cycle(rng, code, m)
            expected = _defect(code, theta) in image
            try:
                lift_once(code, theta)
                got = True
            except Obstructed:
                got = False
            lifted += got
            obstructed += not got
            if got != expected:
                disagreements.append((code.hx.tolist(), theta.to_tuple(), m))
    detail = (
        f"{2 * codes} cycles on {codes} codes; {lifted} lifted, {obstructed} obstructed; "
        f"{len(disagreements)} disagreements with exhaustive omega search"
    )
    return not disagreements, detail


# 2 -------------------------------------------------------------------------


def check_full_rank(codes=400, cycles=3):
    rng = np.random.default_rng(SEED + 2)
    failures, tested, programs = [], 0, 0
    for i in range(codes):
        m = 1 + i % 2
        code = random_full_rank_code(rng, m + 1, n_max=10, mx_max=4, mz_max=4)
        image = binary_image(code.hx2)
        for level in range(1, m + 1):
            for _ in range(cycles):
                theta = random_cycle(rng, code, level)
                tested += 1
                rep = bockstein_defect(code, theta)
                if not (rep.trivial and _defect(code, theta) in image):
                    failures.append((code.hx.tolist(), theta.to_tuple()))
        basis = logical_bases(code)
        for a in range(basis.k):
            hat = logical_rotation_program(code, a, m)
            programs += 1
            gam = np.array([g.array for g in basis.gammas])
            ok = not ((code.hx.array @ hat.array) % (1 << (m + 1))).any()
            ok &= not ((gam @ hat.array - np.eye(basis.k, dtype=int)[a]) % (1 << (m + 1))).any()
            if not ok:
                failures.append((code.hx.tolist(), "rotation", a))
    detail = (
        f"{tested} cycles on {codes} full-rank codes, {programs} rotation programs; "
        f"{len(failures)} failures"
    )
    return not failures, detail


# 3 -------------------------------------------------------------------------


def _physically_logical(code, theta, level):
    """Every cocycle coset sees a single phase (own enumeration, no library oracle)."""
    for gamma in all_binary(code.n):
        if code.m_z and ((code.hz2.astype(int) @ gamma) % 2).any():
            continue
        if len(xor_coset_phases(code.hx2, theta, level, gamma)) != 1:
            return False
    return True


def check_catalog():
    steane, rm15, cdep, c4 = (catalog_get(n) for n in ("steane", "rm15", "cdep", "c4"))
    items = {}
    items["steane commutativity = 1"] = max_commutativity_level(steane) == 1
    items["steane d = 2"] = divisibility_report(steane).d == 2
    items["steane action = {0:0, 1:3}"] = (
        logical_action(steane, PhaseVector.ones(7, 2)).entries == {(0,): 0, (1,): 3}
    )
    items["rm15 d = 3"] = divisibility_report(rm15).d == 3
    items["rm15 action = {0:0, 1:7}"] = (
        logical_action(rm15, PhaseVector.ones(15, 3)).entries == {(0,): 0, (1,): 7}
    )
    try:
        lift_to_level(rm15, PhaseVector.ones(15, 1), 3)
        items["rm15 lift_to_level 3"] = True
    except Obstructed:
        items["rm15 lift_to_level 3"] = False
    rep = bockstein_defect(cdep, PhaseVector([1, 1, 1, 0], 1))
    items["cdep defect (1,1,1) nontrivial"] = rep.defect.to_tuple() == (1, 1, 1) and not rep.trivial
    base = np.array([1, 1, 1, 0])
    family = [base + 2 * np.array([(b >> j) & 1 for j in range(4)]) for b in range(16)]
    items["cdep lift family never logical"] = not any(
        _physically_logical(cdep, t, 2) for t in family
    )
    hat = lift_once(c4, PhaseVector([1, 1, 0, 0], 1)).theta_hat
    items["c4 lift_once = (3,1,0,0)"] = hat.to_tuple() == (3, 1, 0, 0)
    try:
        check = verify_square_root(c4, PhaseVector([1, 1, 0, 0], 1), hat)
        items["c4 verify_square_root"] = check.holds
    except NotLogical:
        items["c4 verify_square_root"] = False
    cmp_ = compare_formal_physical(c4, PhaseVector.ones(4, 2))
    items["c4 compare mismatch at (1,0,0,0)"] = (
        not cmp_.agree and cmp_.formal_cycle and cmp_.witness == (1, 0, 0, 0)
    )
    failed = [k for k, v in items.items() if not v]
    detail = f"{len(items) - len(failed)}/{len(items)} regressions hold"
    if failed:
        detail += "; failing: " + ", ".join(failed)
    return not failed, detail


# 4 -------------------------------------------------------------------------


def check_chain_lift_suite(instances=200):
    steane = catalog_get("steane")
    res = solve_chain_lift(steane, 1)
    check_chain_lift(steane, res)
    steane_ok = (
        np.array_equal(res.hx_hat.array % 2, steane.hx.array)
        and np.array_equal(res.hz_hat.array % 2, steane.hz.array)
        and not ((res.hx_hat.array @ res.hz_hat.array.T) % 4).any()
    )
    rng = np.random.default_rng(SEED + 4)
    mismatches, counts = [], {True: 0, False: 0}
    for _ in range(instances):
        code, m = random_chain_instance(rng, n_max=8)
        expected = chain_lift_exists(code.hx.array, code.hz.array, m)
        try:
            check_chain_lift(code, solve_chain_lift(code, m))
            got = True
        except ChainLiftUnsolvable:
            got = False
        counts[got] += 1
        if got != expected:
            mismatches.append((code.hx.tolist(), code.hz.tolist(), m))
    detail = (
        f"steane lift {'verified' if steane_ok else 'FAILED'}; {instances} instances "
        f"({counts[True]} solvable, {counts[False]} unsolvable), {len(mismatches)} mismatches"
    )
    return steane_ok and not mismatches, detail


# 5 -------------------------------------------------------------------------


def _representative_cases(rng):
    """(code, m) pairs with H_X H_Z^T = 0 mod 2^m."""
    cases = [(catalog_get(name), 1) for name in ("rep3", "c4", "cdep", "steane", "shor9", "rm15")]
    cases += [(catalog_get(name), 2) for name in ("rep3", "c4", "cdep")]
    while len(cases) < 40:
        code = random_code(rng, n_max=7, mx_max=3, mz_max=3)
        m = 1 + len(cases) % 2
        if max_commutativity_level(code, m) >= m:
            cases.append((code, m))
    return cases


def check_representative_independence(shifts=100):
    rng = np.random.default_rng(SEED + 5)
    verdict_cases = verdict_changes = 0
    table_cases = 0
    table_changes = []
    for code, m in _representative_cases(rng):
        theta = random_cycle(rng, code, m)
        if not theta.array.any():
            theta = random_cycle(rng, code, m)
        bock = max_commutativity_level(code, m + 1) >= m + 1
        if bock:
            verdict_cases += 1
            base = bockstein_defect(code, theta).trivial
        try:
            table = logical_action(code, theta).entries
            table_cases += 1
        except NotLogical:
            table = None
        for _ in range(shifts):
            shifted, s = random_boundary_shift(rng, code, theta)
            if bock and bockstein_defect(code, shifted).trivial != base:
                verdict_changes += 1
            if table is not None:
                try:
                    other = logical_action(code, shifted).entries
                except NotLogical:
                    other = None
                if other != table:
                    table_changes.append((code.name, m, theta.to_tuple(), tuple(s.tolist())))
    detail = (
        f"Bockstein verdict: {verdict_changes} changes over {verdict_cases} cases; "
        f"logical_action table: {len(table_changes)} changes over {table_cases} cases"
    )
    if table_changes:
        name, m, theta, s = table_changes[0]
        levels = sorted({c[1] for c in table_changes})
        detail += f" (levels {levels}; first: {name} m={m} theta={theta} s={s})"
    return verdict_changes == 0 and not table_changes, detail


# 6 -------------------------------------------------------------------------


def check_ring_linalg(instances=500):
    rng = np.random.default_rng(SEED + 6)
    bad = []
    for idx in range(instances):
        e = int(rng.integers(1, 4))
        rows, cols = int(rng.integers(0, 5)), int(rng.integers(0, 5))
        A = ResidueMatrix(rng.integers(0, 1 << e, size=(rows, cols)), e, cols=cols)
        mod = 1 << e
        targets = [rng.integers(0, mod, size=rows)]
        if cols:
            targets.append((A.array @ rng.integers(0, mod, size=cols)) % mod)
        for b in targets:
            x = solve_mod(A, ResidueVector(b, e))
            if (x is not None) != solvable(A.array, b, cols, e):
                bad.append((idx, "solve verdict"))
            elif x is not None and ((A.array @ x.array - b) % mod).any():
                bad.append((idx, "solve residual"))
        K = kernel_basis_mod(A)
        if row_span(K.array, cols, e) != kernel(A.array, cols, e):
            bad.append((idx, "kernel"))
        exps = module_invariants(A)
        expected = [int(np.prod([1 << min(x, j) for x in exps])) for j in range(e + 1)]
        if torsion_counts(A.array, cols, e) != expected:
            bad.append((idx, "invariants"))
    detail = f"{instances} matrices up to 4x4, e <= 3; {len(bad)} disagreements"
    if bad:
        detail += f"; first {bad[0]}"
    return not bad, detail


# 7 -------------------------------------------------------------------------


def check_cli_goldens():
    bad = []
    for stem, argv, status in DOCUMENTED:
        for as_json in (True, False):
            full = argv + (["--json"] if as_json else [])
            out, err = io.StringIO(), io.StringIO()
            with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
                got = main(full)
            if got != status or out.getvalue() + err.getvalue() != golden_path(stem, as_json).read_text():
                bad.append(f"{stem} ({'json' if as_json else 'text'}, in-process)")
        proc = subprocess.run(
            [sys.executable, "-m", "bocklift", *argv, "--json"], capture_output=True
        )
        if proc.returncode != status or proc.stdout != golden_path(stem, True).read_bytes():
            bad.append(f"{stem} (subprocess)")
    detail = f"{len(DOCUMENTED)} documented invocations; {len(bad)} mismatches"
    if bad:
        detail += ": " + ", ".join(bad)
    return not bad, detail


CRITERIA = [
    (1, "lift_once matches exhaustive omega search", check_lift_equivalence),
    (2, "full-rank codes have trivial Bockstein", check_full_rank),
    (3, "catalog regressions", check_catalog),
    (4, "chain-lift solver matches exhaustive (A, B) search", check_chain_lift_suite),
    (5, "representative independence", check_representative_independence),
    (6, "ring_linalg against enumeration", check_ring_linalg),
    (7, "CLI goldens", check_cli_goldens),
]


def _line(number, title, passed, detail):
    return f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}: {detail}"


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check):
    passed, detail = check()
    RESULTS[number] = _line(number, title, passed, detail)
    print(RESULTS[number])
    assert passed, detail


if __name__ == "__main__":
    failed = 0
    for number, title, check in CRITERIA:
        passed, detail = check()
        failed += not passed
        print(_line(number, title, passed, detail), flush=True)
    sys.exit(1 if failed else 0)
