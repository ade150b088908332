"""Named verification suites shared by the command line and the test-suite.

Each suite returns a :class:`SuiteReport`: a list of named checks, each
exact (no tolerances).  A suite passes iff every check passes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .characters import orthogonality_defect
from .coefrings import NovikovSeries, QCoefficient, lambda_expand
from .feynman import EdgeRule, degree_vectors, free_energy, partition_function_graphsum, partition_function_vev, random_weight_table
from .fock import BosonIndex, vev, vev_exponential_pair
from .graphs import AtomProfile, balanced_profiles, chemistry_vev, degree_identities, enumerate_graphs, profile_graph_sum
from .partitions import enumerate_partitions, z_factor
from .toric import PRESET_NAMES, derive_tau, gv_extract, preset, z_localization, z_product
from .wzw import hook_form, schur_at_rho, w_hopf


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def _partitions_up_to(n: int) -> list[tuple[int, ...]]:
    return [p for m in range(n + 1) for p in enumerate_partitions(m)]


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 7))


# ---------------------------------------------------------------------------

def wick_suite(seed: int = 0, max_size: int = 6, exp_degree: int = 10, n_sets: int = 3) -> SuiteReport:
    rep = SuiteReport("wick")
    parts = _partitions_up_to(max_size)
    bad = []
    for mu in parts:
        ann = [(BosonIndex(0, x), 1) for x in mu]
        for nu in parts:
            cre = [(BosonIndex(0, -x), 1) for x in nu]
            expected = z_factor(mu) if mu == nu else 0
            if vev(ann + cre) != expected:
                bad.append((mu, nu))
    rep.add(f"<beta_mu beta_-nu> = delta z_mu, |mu|,|nu| <= {max_size}", not bad, f"{len(bad)} mismatches")
    bad = []
    for m in range(-max_size, max_size + 1):
        for n in range(-max_size, max_size + 1):
            if m == 0 or n == 0:
                continue
            wd = sorted([(BosonIndex(0, m), 1), (BosonIndex(0, n), 1)], key=lambda f: -f[0].mode)
            if vev(wd) != (abs(m) if m == -n else 0):
                bad.append((m, n))
    rep.add(f"<;beta_m beta_n;> = |m| delta_(m,-n), |m|,|n| <= {max_size}", not bad, f"{len(bad)} mismatches")
    rng = random.Random(seed)
    for j in range(n_sets):
        a = {}
        for n in range(1, exp_degree + 1):
            a[n] = _random_rational(rng)
            a[-n] = _random_rational(rng)
        lhs = vev_exponential_pair(a, exp_degree)
        exponent = NovikovSeries(
            ("t",), exp_degree,
            {((2 * n,), 0): a[n] * a[-n] / n for n in range(1, exp_degree // 2 + 1)},
        )
        rep.add(f"exponential identity, coefficient set {j}, degree {exp_degree}", lhs == exponent.exp())
    return rep


def chemistry_suite(seed: int = 0, max_bonds: int = 6, max_degree: int = 4, ks: tuple[int, ...] = (2, 3)) -> SuiteReport:
    rep = SuiteReport("chemistry")
    rep.add("empty profile has vev 1", chemistry_vev(AtomProfile(2, {})) == 1)
    for k in ks:
        profiles = balanced_profiles(k, max_bonds, max_degree)
        bad = [p for p in profiles if chemistry_vev(p) != profile_graph_sum(p)]
        rep.add(
            f"k={k}: vev = sum 1/(|Aut| prod d_e) on {len(profiles)} balanced profiles",
            not bad,
            f"{len(bad)} mismatches",
        )
    # a few unbalanced profiles, chosen by seed, must give zero on both sides
    rng = random.Random(seed)
    zeros = True
    for _ in range(10):
        k = rng.choice(ks)
        i = rng.randrange(k)
        atom = (i, (rng.randint(1, 3),), ())
        prof = AtomProfile(k, {atom: rng.randint(1, 2)})
        zeros &= chemistry_vev(prof) == 0 and profile_graph_sum(prof) == 0
    rep.add("unbalanced profiles vanish", zeros)
    return rep


def graphs_suite(seed: int = 0, max_total: int = 4, ks: tuple[int, ...] = (2, 3)) -> SuiteReport:
    rep = SuiteReport("graphs")
    for k in ks:
        bad = 0
        count = 0
        for d in degree_vectors(k, max_total):
            for g, _ in enumerate_graphs(k, d):
                count += 1
                if not all(degree_identities(g).values()):
                    bad += 1
        rep.add(f"k={k}: degree and genus identities on {count} graphs", bad == 0, f"{bad} failures")
    return rep


def feynman_suite(seed: int = 0, D: int = 3, max_size: int = 3, ks: tuple[int, ...] = (2, 3), n_seeds: int = 3) -> SuiteReport:
    rep = SuiteReport("feynman")
    for k in ks:
        for s in range(seed, seed + n_seeds):
            wt = random_weight_table(k, max_size, random.Random(s))
            er = EdgeRule.plain(k)
            full = partition_function_graphsum(wt, er, D)
            rep.add(f"k={k} seed={s}: operator vev = graph sum", partition_function_vev(wt, er, D) == full)
            conn = partition_function_graphsum(wt, er, D, connected_only=True)
            rep.add(f"k={k} seed={s}: exp(connected) = full", conn.exp() == full)
            rep.add(f"k={k} seed={s}: log(full) = connected", free_energy(full) == conn)
    return rep


def characters_suite(seed: int = 0, max_size: int = 8) -> SuiteReport:
    rep = SuiteReport("characters")
    for n in range(max_size + 1):
        parts = enumerate_partitions(n)
        bad = sum(1 for a in parts for b in parts if orthogonality_defect(a, b) != 0)
        rep.add(f"orthogonality for |nu| = {n}", bad == 0, f"{bad} failures")
    return rep


def hopf_suite(seed: int = 0, max_size: int = 4) -> SuiteReport:
    rep = SuiteReport("hopf")
    w = QCoefficient.w_power(1)
    rep.add("W(0,0) = 1", w_hopf((), ()) == 1)
    rep.add("W((1),0) = 1/(w - 1/w)", w_hopf((1,), ()) == 1 / (w - 1 / w))
    parts = _partitions_up_to(max_size)
    asym = [(a, b) for a in parts for b in parts if w_hopf(a, b) != w_hopf(b, a)]
    rep.add(f"W symmetric for |mu|,|nu| <= {max_size}", not asym, f"{len(asym)} failures")
    heads = [
        (a, b) for a in parts for b in parts
        if w_hopf(a, b, len(a)) != w_hopf(a, b, len(a) + 1) or w_hopf(a, b, len(a)) != w_hopf(a, b, len(a) + 2)
    ]
    rep.add("head length independence", not heads, f"{len(heads)} failures")
    rep.add("s(q^rho) matches the hook form", all(schur_at_rho(p) == hook_form(p) for p in parts))
    return rep


MAIN_CASES = (("p2", 3), ("p1xp1", 2), ("b1", 2))
MAIN_TORUS = (Fraction(2), Fraction(5, 3))


def main_suite(seed: int = 0, cases=MAIN_CASES, torus=MAIN_TORUS) -> SuiteReport:
    rep = SuiteReport("main")
    for name, D in cases:
        surf = preset(name)
        prod = z_product(surf, D)
        outs = []
        for c in torus:
            tau = derive_tau(surf, c)
            rep.add(f"{name} c={c}: s_i = tau_i + 1/tau_(i+1)", tau.satisfies(surf.s))
            loc = z_localization(surf, tau, D)
            outs.append(loc)
            rep.add(f"{name} D={D} c={c}: localization = product", loc == prod)
        rep.add(f"{name}: localization independent of c", all(o == outs[0] for o in outs))
    return rep


GV_EXPECTED = {
    "p2": {((1,), 0): 3, ((2,), 0): -6, ((3,), 0): 27},
    "p1xp1": {((1, 0), 0): -2, ((0, 1), 0): -2},
}


def gv_suite(seed: int = 0, D: int = 3) -> SuiteReport:
    rep = SuiteReport("gv")
    for name in PRESET_NAMES:
        try:
            table = gv_extract(preset(name), D)
        except ArithmeticError as exc:
            rep.add(f"{name}: integral invariants to degree {D}", False, str(exc))
            continue
        rep.add(f"{name}: integral invariants to degree {D}", all(isinstance(n, int) for n in table.values()))
        for key, n in GV_EXPECTED.get(name, {}).items():
            rep.add(f"{name}: n^{key[1]}_{key[0]} = {n}", table.get(key) == n, f"got {table.get(key)}")
    return rep


def xi_suite(seed: int = 0) -> SuiteReport:
    rep = SuiteReport("xi")
    w = QCoefficient.w_power(1)
    ex = lambda_expand(1 / (w - 1 / w) ** 2, 2)
    rep.add(
        "1/(w - 1/w)^2 = xi^-2 - 1/12 + xi^2/240",
        ex.coefficients == {-2: Fraction(1), 0: Fraction(-1, 12), 2: Fraction(1, 240)},
        str(ex),
    )
    F = free_energy(z_product(preset("p2"), 1))
    rep.add("p2: t^1 coefficient of F starts at xi^-2", lambda_expand(F.coefficient((1,)), 2).valuation() == -2)
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "wick": wick_suite,
    "chemistry": chemistry_suite,
    "graphs": graphs_suite,
    "feynman": feynman_suite,
    "characters": characters_suite,
    "hopf": hopf_suite,
    "main": main_suite,
    "gv": gv_suite,
    "xi": xi_suite,
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](seed=seed)
