"""Acceptance criteria 1-9.  Every check is an exact equality with a wall-clock budget.

Run with ``pytest tests/test_acceptance.py -v -s`` or directly as a script;
each criterion prints one ``PASS``/``FAIL`` line.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from oracles import power_series_exp, wick_matching_vev  # noqa: E402
from toricgw.characters import character  # noqa: E402
from toricgw.coefrings import QCoefficient, lambda_expand  # noqa: E402
from toricgw.feynman import free_energy  # noqa: E402
from toricgw.fock import vev_exponential_pair  # noqa: E402
from toricgw.partitions import enumerate_partitions, z_factor  # noqa: E402
from toricgw.suites import (  # noqa: E402
    chemistry_suite,
    feynman_suite,
    graphs_suite,
    hopf_suite,
    main_suite,
    wick_suite,
)
from toricgw.toric import PRESET_NAMES, gv_extract, preset, z_product  # noqa: E402

def _report(n: int, title: str, ok: bool, elapsed: float, budget: float) -> None:
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"[{status}] criterion {n}: {title} ({elapsed:.2f}s / budget {budget:.0f}s)")

def _run(n, title, budget, body, capsys):
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    if capsys is None:
        _report(n, title, ok, elapsed, budget)
    else:
        with capsys.disabled():
            print()
            _report(n, title, ok, elapsed, budget)
    assert ok, detail
    assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"

def _failures(rep):
    return rep.passed, [f"{c.name}: {c.detail}" for c in rep.failures()]

# 1 ----------------------------------------------------------------------

def wick_body():
    ok, detail = _failures(wick_suite(seed=1))
    # independent oracle: perfect matchings and a power-series exponential
    parts = [p for n in range(7) for p in enumerate_partitions(n)]
    for mu in parts:
        for nu in parts:
            word = [(0, x) for x in mu] + [(0, -x) for x in nu]
            if wick_matching_vev(word) != (z_factor(mu) if mu == nu else 0):
                ok, detail = False, detail + [f"matching oracle {mu} {nu}"]
    rng = random.Random(2024)
    for _ in range(3):
        a = {}
        for n in range(1, 11):
            a[n] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            a[-n] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        series = vev_exponential_pair(a, 10)
        exponent = [Fraction(0)] * 11
        for n in range(1, 6):
            exponent[2 * n] = a[n] * a[-n] / n
        if [series.coefficient((j,)) for j in range(11)] != power_series_exp(exponent, 10):
            ok, detail = False, detail + ["exponential oracle"]
    return ok, detail

def test_criterion_1_wick(capsys):
    _run(1, "Wick contractions and the exponential identity", 5, wick_body, capsys)

# 2 ----------------------------------------------------------------------

def test_criterion_2_chemistry(capsys):
    _run(2, "chemistry lemma on all balanced profiles with at most 6 bonds, edge degree <= 5",
         60, lambda: _failures(chemistry_suite(seed=7, max_degree=5)), capsys)

# 3 ----------------------------------------------------------------------

def test_criterion_3_graph_identities(capsys):
    _run(3, "degree and genus identities on all graphs of total degree <= 4",
         30, lambda: _failures(graphs_suite(max_total=4)), capsys)

# 4 ----------------------------------------------------------------------

def test_criterion_4_feynman(capsys):
    _run(4, "operator vev = graph sum, exp(connected) = full",
         300, lambda: _failures(feynman_suite(seed=11, D=3, max_size=3, n_seeds=3)), capsys)

# 5 ----------------------------------------------------------------------

def characters_body():
    bad = []
    for n in range(9):
        parts = enumerate_partitions(n)
        table = {(nu, mu): character(nu, mu) for nu in parts for mu in parts}
        for nu in parts:
            for rho in parts:
                total = sum(Fraction(table[nu, mu] * table[rho, mu], z_factor(mu)) for mu in parts)
                if total != (1 if nu == rho else 0):
                    bad.append((nu, rho))
    return not bad, bad

def test_criterion_5_characters(capsys):
    _run(5, "character orthogonality for |nu| <= 8", 30, characters_body, capsys)

# 6 ----------------------------------------------------------------------

def test_criterion_6_main_theorem(capsys):
    _run(6, "localization = product for p2 (D=3), p1xp1 and b1 (D=2) at c = 2, 5/3",
         600, lambda: _failures(main_suite()), capsys)

# 7 ----------------------------------------------------------------------

def test_criterion_7_hopf(capsys):
    _run(7, "W symmetry, head/tail independence and base values",
         60, lambda: _failures(hopf_suite(max_size=4)), capsys)

# 8 ----------------------------------------------------------------------

def gv_body():
    bad = []
    for name in PRESET_NAMES:
        table = gv_extract(preset(name), 3)
        if not table or not all(isinstance(n, int) for n in table.values()):
            bad.append(name)
    p2 = gv_extract(preset("p2"), 3)
    got = [p2.get(((d,), 0)) for d in (1, 2, 3)]
    if got != [3, -6, 27]:
        bad.append(f"p2 genus zero {got}")
    return not bad, bad

def test_criterion_8_gv(capsys):
    _run(8, "integral invariants for all presets; local P2 gives 3, -6, 27", 120, gv_body, capsys)

# 9 ----------------------------------------------------------------------

def xi_body():
    w = QCoefficient.w_power(1)
    ex = lambda_expand(1 / (w - 1 / w) ** 2, 2)
    ok = ex.coefficients == {-2: Fraction(1), 0: Fraction(-1, 12), 2: Fraction(1, 240)}
    F = free_energy(z_product(preset("p2"), 1))
    lead = lambda_expand(F.coefficient((1,)), 2)
    ok &= lead.valuation() == -2
    return ok, [str(ex), str(lead)]

def test_criterion_9_xi(capsys):
    _run(9, "xi-expansion of 1/(w-1/w)^2 and the genus-zero pole of F", 5, xi_body, capsys)

CRITERIA = [
    test_criterion_1_wick,
    test_criterion_2_chemistry,
    test_criterion_3_graph_identities,
    test_criterion_4_feynman,
    test_criterion_5_characters,
    test_criterion_6_main_theorem,
    test_criterion_7_hopf,
    test_criterion_8_gv,
    test_criterion_9_xi,
]

if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        try:
            crit(None)
        except AssertionError as exc:
            failed += 1
            print(f"    {exc}")
    sys.exit(1 if failed else 0)
