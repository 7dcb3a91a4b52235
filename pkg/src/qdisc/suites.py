"""Named verification suites and the acceptance criteria.

Every suite is a function ``degree -> Report``.  The acceptance criteria are
numbered 1..12; each one builds its own report and carries a time budget.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Callable

from . import calculus, covalg, fock, hopf, roots, verma
from .calculus import FORMS, MU_RANGE, dolbeault_system
from .covalg import ANTI, HOLO, POL, PolElement
from .ncpoly import NCPoly, verify_rewrite_system
from .report import Report
from .scalar import ONE, q, qpow, verify_scalar

DEFAULT_DEGREE = 6


def degree_bound(explicit: int | None = None) -> int:
    """``explicit`` if given, else $QDISC_DEGREE_BOUND, else 6."""
    if explicit is not None:
        return explicit
    raw = os.environ.get("QDISC_DEGREE_BOUND")
    if raw is None:
        return DEFAULT_DEGREE
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"QDISC_DEGREE_BOUND must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("QDISC_DEGREE_BOUND must be positive")
    return value


def shipped_systems():
    yield hopf.uqsl2_system("FKE")
    yield hopf.uqsl2_system("EKF")
    yield POL
    yield FORMS
    for mu in MU_RANGE:
        yield dolbeault_system(mu)


def _ncpoly(degree: int) -> Report:
    rep = Report(f"rewriting (degree {degree})")
    for sys in shipped_systems():
        rep.merge(verify_rewrite_system(sys, degree))
    return rep


def _hopf(degree: int) -> Report:
    depth = min(degree, 5)
    rep = hopf.verify_hopf_axioms(depth)
    return rep.merge(hopf.verify_star_antipode(depth))


def _first_order(degree: int) -> Report:
    rep = Report(f"first-order calculi (degree {degree})")
    for calc in calculus.CALCULI:
        rep.merge(calculus.verify_first_order(calc, degree))
    return rep


def _invariant(degree: int) -> Report:
    depth = min(degree, 4)
    sols = covalg.solve_invariant_integral(depth)
    rep = Report(f"invariant integral (depth {depth})")
    rep.record("solution space is one-dimensional", len(sols) == 1, f"dimension {len(sols)}")
    for nu in sols:
        rep.merge(covalg.verify_invariant_integral(nu, depth))
    rep.data["dimension"] = len(sols)
    return rep


SUITES: dict[str, Callable[[int], Report]] = {
    "scalar": lambda d: verify_scalar(),
    "ncpoly": _ncpoly,
    "hopf": _hopf,
    "verma": verma.verify_verma,
    "covalg": covalg.verify_covalg,
    "calculus": calculus.verify_calculus,
    "first-order": _first_order,
    "dolbeault": calculus.verify_dolbeault,
    "roots": lambda d: roots.verify_roots(),
    "fock": lambda d: fock.verify_fock(),
    "invariant": _invariant,
}


# -- acceptance criteria -------------------------------------------------------


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    budget: float | None  # seconds
    run: Callable[[], Report]


def _c1() -> Report:
    rep = Report("a- a+ through the R-matrix and through the rewrite rule")
    am, ap = PolElement.monomial(0, 1), PolElement.monomial(1, 0)
    expected = PolElement({(1, 1): qpow(2), (0, 0): q * (1 - q * q)})
    rep.record("R-matrix route", covalg.pol_product(am, ap) == expected, covalg.pol_product(am, ap))
    rep.record("rewrite route", covalg.pol_product_rewrite(am, ap) == expected, covalg.pol_product_rewrite(am, ap))
    return rep


def _c2() -> Report:
    rep = Report("involution on the generators and the disc relation")
    am, ap = PolElement.monomial(0, 1), PolElement.monomial(1, 0)
    rep.record("a+* = q^-2 a-", covalg.pol_involution(ap) == am.scale(qpow(-2)), covalg.pol_involution(ap))
    rep.record("a-* = q^2 a+", covalg.pol_involution(am) == ap.scale(qpow(2)), covalg.pol_involution(am))
    z, zs = covalg.z, covalg.z_star
    rel = covalg.pol_product(zs, z) - covalg.pol_product(z, zs).scale(qpow(2))
    rep.record("z* z - q^2 z z* = 1 - q^2", rel == PolElement.scalar(1 - q * q), rel)
    rep.record("z* = involution of z", covalg.pol_involution(z) == zs, covalg.pol_involution(z))
    return rep


def _c3() -> Report:
    rep = Report("pairing action against the q-difference closed forms, j <= 10")
    for side in (ANTI, HOLO):
        for j in range(11):
            f = covalg.power(side, j)
            for g in ("K", "Ki", "E", "F"):
                got = covalg.dual_action(NCPoly.word(g), f).power_coeffs()
                want = covalg.closed_form_action(g, side, {j: ONE})
                rep.record(f"{side} side", got == want, f"{g} on power {j}: {got} vs {want}")
    return rep


def _c4() -> Report:
    rep = Report("E^j a-^j is the q-product, j <= 8")
    for j in range(9):
        want = ONE
        for k in range(1, j + 1):
            want = want * (qpow(-2 * k) - 1) / (qpow(-2) - 1)
        got = covalg.dual_action(NCPoly.word(*("E",) * j), covalg.power(ANTI, j)).power_coeffs()
        rep.record("E^j(a-^j)", got == {0: want}, f"j={j}: {got}")
    return rep


def _c5() -> Report:
    rep = Report("Hopf *-algebra axioms")
    rep.merge(hopf.verify_hopf_axioms(4))
    rep.merge(hopf.verify_star_antipode(4))
    rep.merge(covalg.verify_pol_involution(5, ("E", "F", "K", "EF")))
    return rep


def _c6() -> Report:
    return calculus.verify_calculus(8)


def _c7() -> Report:
    rep = Report("Lambda^1 spans up to degree 8")
    for calc in ("lambda1_holo", "lambda1_anti"):
        sub = calculus.verify_first_order(calc, 8)
        rep.merge(sub)
        dims = sub.data.get("dimensions", {})
        rep.record("every graded component is one-dimensional",
                   len(dims) == 8 and set(dims.values()) == {1}, f"{calc}: {dims}")
    return rep


def _c8() -> Report:
    return calculus.verify_dolbeault(6, MU_RANGE, 4)


def _c9() -> Report:
    rep = Report("cominuscule classification")
    for s, n in roots.labeled_types(8):
        if s in "BCD" and n > 6:
            continue
        c = roots.CartanData.of_type(s, n)
        tag = f"{s}{n}"
        scan = roots.cominuscule_nodes(c)
        rep.record("coefficient scan = highest-root route", scan == roots.cominuscule_nodes_from_highest_root(c), tag)
        if s == "A":
            rep.record("A_n: all nodes", scan == set(range(1, n + 1)), f"{tag}: {sorted(scan)}")
        elif s in "BCD" or (s == "E" and n in (6, 7)):
            rep.record("B_n, C_n, D_n, E6, E7: nonempty", bool(scan), tag)
        else:
            rep.record("E8, F4, G2: empty", not scan, f"{tag}: {sorted(scan)}")
    return rep


def _c10() -> Report:
    rep = Report("parabolic factorization of w0, rank <= 5")
    for s, n in roots.labeled_types(5):
        c = roots.CartanData.of_type(s, n)
        g = roots.WeylGroup(c)
        for j0 in range(1, n + 1):
            f = roots.parabolic_factorization(c, j0)
            word = f.w0_prime.letters + f.u0.letters
            tag = f"{s}{n}, j0={j0}"
            rep.record("l(w0) = l(w0') + l(u0)", f.w0.length == f.w0_prime.length + f.u0.length, tag)
            rep.record("w0' u0 = w0", g.element(word) == g.element(f.w0.letters), tag)
            rep.record("concatenated word is reduced", g.is_reduced(word), tag)
    return rep


def _c11() -> Report:
    return fock.verify_fock((0.3, 0.5, 0.9), 256, 512, 0.7)


def _c12() -> Report:
    return _invariant(4)


CRITERIA = (
    Criterion(1, "R-matrix product a- a+", 1.0, _c1),
    Criterion(2, "involution and disc relation", None, _c2),
    Criterion(3, "dual-action closed forms", 10.0, _c3),
    Criterion(4, "E^j a-^j product identity", None, _c4),
    Criterion(5, "Hopf *-algebra suite", None, _c5),
    Criterion(6, "calculus suite", None, _c6),
    Criterion(7, "Lambda^1 spans", None, _c7),
    Criterion(8, "Dolbeault suite", None, _c8),
    Criterion(9, "cominuscule classification", None, _c9),
    Criterion(10, "Weyl factorization", 60.0, _c10),
    Criterion(11, "Fock numerics", 30.0, _c11),
    Criterion(12, "invariant integral", None, _c12),
)


def run_criterion(crit: Criterion) -> Report:
    start = time.perf_counter()
    rep = crit.run()
    elapsed = time.perf_counter() - start
    out = Report(f"criterion {crit.number}: {crit.title}", data={"seconds": round(elapsed, 4)})
    out.checks.extend(rep.checks)
    if crit.budget is not None:
        out.record(f"runtime < {crit.budget:g} s", elapsed < crit.budget, f"{elapsed:.3f} s")
    return out


def acceptance(numbers=None) -> Report:
    rep = Report("acceptance")
    for crit in CRITERIA:
        if numbers and crit.number not in numbers:
            continue
        sub = run_criterion(crit)
        rep.merge(sub)
        rep.data[str(crit.number)] = {"passed": sub.passed, "seconds": sub.data["seconds"]}
    return rep


def suite_names() -> list[str]:
    return list(SUITES) + ["acceptance", "all"]


def run_suite(name: str, degree: int | None = None) -> Report:
    d = degree_bound(degree)
    if name == "acceptance":
        return acceptance()
    if name == "all":
        rep = Report(f"all suites (degree {d})")
        for key, fn in SUITES.items():
            rep.merge(fn(d))
        return rep.merge(acceptance())
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](d)


def _job(args):
    name, degree = args
    return run_suite(name, degree)


def run_parallel(names, degree: int | None = None) -> list[Report]:
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor() as pool:
        return list(pool.map(_job, [(n, degree) for n in names]))
