"""
The matrix-coefficient rational function sigma(u, v, w), its polynomial
specialization sigma0(u, w) at v = v_min(u, w), the product-form test behind
the "GK type" classification, and the full triple classification.

sigma is always evaluated through its combinatorial expansion

    sigma(u, v, w) = sum over x >= u, y <= v of
                     q^(-len(y)) * theta(x, y, w) * bar r(y, v),

with the sum grouped by y: the inner sum over x is a pure q-polynomial that
is shared across all v for a fixed (u, w). No vanishing shortcut is taken:
the zero of sigma for v not >= v_min is a computed outcome, which is what
makes the vanishing verification meaningful.

A triple with v >= v_min(u, w) is "of GK type" when

    sigma(u, v, w) = sigma0(u, w) * prod over alpha in S(u, v, w) of
                     (1 - q^-1 x^alpha) / (1 - x^alpha),

tested by exact cross-multiplied equality. Classification enumerates all
|W|^3 triples, counts those with v >= v_min (asserting their sigma is indeed
nonzero), counts the GK ones, and reports the exceptions in canonical word
form. The enumeration parallelizes over w against read-only shared tables;
the report is sorted canonically afterwards, so its bytes do not depend on
the worker count.
"""

from __future__ import annotations

import json
import multiprocessing
import random
from dataclasses import dataclass, field

from .coxeter import CoxeterGroup, Element, _bits
from .demazure import v_min_idx
from .hecke import ThetaTable
from .polyring import LaurentPoly, RationalFn
from .rpoly import RPolyTable, s_set_idx

__all__ = [
    "SigmaEngine",
    "ClassificationReport",
    "classify",
    "verify_main_theorem",
    "verify_vanishing",
]


class SigmaEngine:
    """sigma evaluation over one group, with shared memoized tables."""

    def __init__(
        self,
        group: CoxeterGroup,
        rtable: RPolyTable | None = None,
        theta: ThetaTable | None = None,
    ):
        self.group = group
        self.rtable = rtable if rtable is not None else RPolyTable(group)
        self.theta = theta if theta is not None else ThetaTable(group)
        self.rtable.group.check_same(group)
        self.theta.group.check_same(group)
        self._vmin: dict = {}
        self._sset3: dict = {}
        self._gk_factor: dict = {}

    # -- building blocks -----------------------------------------------------

    def vmin_idx(self, u: int, w: int) -> int:
        key = (u, w)
        val = self._vmin.get(key)
        if val is None:
            val = v_min_idx(self.group, u, w)
            self._vmin[key] = val
        return val

    def s_set3_idx(self, u: int, v: int, w: int) -> frozenset:
        key = (self.vmin_idx(u, w), v)
        val = self._sset3.get(key)
        if val is None:
            val = s_set_idx(self.group, key[0], v)
            self._sset3[key] = val
        return val

    def gk_factor(self, roots: frozenset) -> RationalFn:
        """prod over alpha in roots of (1 - q^-1 x^alpha)/(1 - x^alpha)."""
        val = self._gk_factor.get(roots)
        if val is None:
            g = self.group
            num = LaurentPoly.one(g.rank)
            den = []
            for a in sorted(roots):
                beta = g.positive_roots[a]
                num = num * LaurentPoly(g.rank, {
                    (0,) * (g.rank + 1): 1,
                    (-1,) + tuple(beta): -1,
                })
                den.append(beta)
            val = RationalFn(num, den)
            self._gk_factor[roots] = val
        return val

    # -- sigma ---------------------------------------------------------------

    def _xi(self, u: int, y: int, w: int) -> LaurentPoly:
        """Sum of theta(x, y, w) over x >= u; a q-polynomial."""
        g = self.group
        out = LaurentPoly.zero(0)
        for x in _bits(g.up_masks[u]):
            out = out + self.theta.theta_idx(x, y, w)
        return out

    def sigma_idx(self, u: int, v: int, w: int, xi_cache: dict | None = None) -> RationalFn:
        g = self.group
        acc = RationalFn.zero(g.rank)
        for y in _bits(g.down_masks[v]):
            if xi_cache is not None:
                xi = xi_cache.get(y)
                if xi is None:
                    xi = self._xi(u, y, w)
                    xi_cache[y] = xi
            else:
                xi = self._xi(u, y, w)
            if xi.is_zero():
                continue
            coeff = xi.shift_q(-g.lengths[y]).embed(g.rank)
            acc = acc + self.rtable.bar_r_idx(y, v).mul_poly(coeff)
        return acc

    def sigma(self, u: Element, v: Element, w: Element) -> RationalFn:
        g = self.group
        for el in (u, v, w):
            g.check_same(el.group)
        return self.sigma_idx(u.index, v.index, w.index)

    def sigma0_idx(self, u: int, w: int) -> LaurentPoly:
        vm = self.vmin_idx(u, w)
        val = self.sigma_idx(u, vm, w)
        if val.den or not val.num.is_q_only():
            raise RuntimeError(
                "sigma at v_min kept torus dependence; this is a bug, "
                f"not bad input (u={self.group.word_str(u)}, "
                f"w={self.group.word_str(w)}, value={val})"
            )
        return val.num.q_only()

    def sigma0(self, u: Element, w: Element) -> LaurentPoly:
        g = self.group
        g.check_same(u.group)
        g.check_same(w.group)
        return self.sigma0_idx(u.index, w.index)

    def main_theorem_rhs_idx(self, u: int, w: int) -> LaurentPoly:
        """q^(-len(v_min)) times the length generating series of [u, w*v_min]."""
        g = self.group
        vm = self.vmin_idx(u, w)
        wv = g.mul_idx(w, vm)
        shift = -g.lengths[vm]
        terms: dict = {}
        for z in _bits(g.interval_mask(u, wv)):
            k = (g.lengths[z] + shift,)
            terms[k] = terms.get(k, 0) + 1
        return LaurentPoly(0, terms)

    # -- GK form -------------------------------------------------------------

    def is_gk_idx(self, u: int, v: int, w: int, sig: RationalFn | None = None) -> bool:
        g = self.group
        vm = self.vmin_idx(u, w)
        if not g.leq_idx(vm, v):
            raise ValueError(
                "GK type is undefined when sigma vanishes "
                f"(v={g.word_str(v)} is not >= v_min={g.word_str(vm)})"
            )
        if sig is None:
            sig = self.sigma_idx(u, v, w)
        sigma0 = self.sigma0_idx(u, w)
        rhs = self.gk_factor(self.s_set3_idx(u, v, w)).mul_poly(
            sigma0.embed(g.rank)
        )
        return sig == rhs

    def is_gk(self, u: Element, v: Element, w: Element) -> bool:
        g = self.group
        for el in (u, v, w):
            g.check_same(el.group)
        return self.is_gk_idx(u.index, v.index, w.index)

    # -- mu cross-check path ---------------------------------------------------

    def mu_element(self, v: Element) -> dict:
        """The Hecke coefficients of the intertwining image of the identity:
        maps y^{-1} to q^(-len(y)) * bar r(y, v)."""
        g = self.group
        g.check_same(v.group)
        out = {}
        for y in _bits(g.down_masks[v.index]):
            rf = self.rtable.bar_r_idx(y, v.index).mul_poly(
                LaurentPoly.q_power(g.rank, -g.lengths[y])
            )
            out[Element(g, g.inv_table[y])] = rf
        return out

    def sigma_via_mu_idx(self, u: int, v: int, w: int) -> RationalFn:
        """Oracle route: sum over x >= u of lambda_w(T_x * mu(v)), with the
        Hecke product carried out before the functional is applied."""
        g = self.group
        mu = {
            y: self.rtable.bar_r_idx(y, v).mul_poly(
                LaurentPoly.q_power(g.rank, -g.lengths[y])
            )
            for y in _bits(g.down_masks[v])
        }
        total = RationalFn.zero(g.rank)
        for x in _bits(g.up_masks[u]):
            cell: dict = {}
            for y, c in mu.items():
                for s, poly in self.theta.product(x, y).items():
                    add = c.mul_poly(poly.embed(g.rank))
                    prev = cell.get(s)
                    cell[s] = add if prev is None else prev + add
            val = RationalFn.zero(g.rank)
            for s, rf in cell.items():
                if g.leq_idx(s, w):
                    val = val + rf.mul_poly(
                        LaurentPoly.q_power(g.rank, g.lengths[s])
                    )
            total = total + val
        return total

    # -- classification ------------------------------------------------------

    def prefill_shared_tables(self) -> None:
        """Fill the tables every worker reads: all bar r values and all
        T-basis products. Per-w theta values are computed inside workers."""
        self.rtable.prefill()
        g = self.group
        for x in range(g.order):
            for y in range(g.order):
                self.theta.product(x, y)

    def classify_for_w(self, w: int) -> tuple:
        """All triples with this w: (nonzero, gk, rows)."""
        g = self.group
        rows = []
        nonzero = 0
        gk = 0
        for u in range(g.order):
            vm = self.vmin_idx(u, w)
            xi_cache: dict = {}
            sigma0 = None
            for v in _bits(g.up_masks[vm]):
                sig = self.sigma_idx(u, v, w, xi_cache)
                if sig.is_zero():
                    raise RuntimeError(
                        "sigma vanished although v >= v_min; this is a bug "
                        f"(u={g.word_str(u)}, v={g.word_str(v)}, "
                        f"w={g.word_str(w)})"
                    )
                nonzero += 1
                if v == vm:
                    if sig.den or not sig.num.is_q_only():
                        raise RuntimeError(
                            "sigma at v_min kept torus dependence "
                            f"(u={g.word_str(u)}, w={g.word_str(w)})"
                        )
                    sigma0 = sig.num.q_only()
                rhs = self.gk_factor(self.s_set3_idx(u, v, w)).mul_poly(
                    sigma0.embed(g.rank)
                )
                flag = sig == rhs
                if flag:
                    gk += 1
                rows.append(
                    (g.word_str(u), g.word_str(v), g.word_str(w), flag, str(sigma0))
                )
        return nonzero, gk, rows


@dataclass
class ClassificationReport:
    """Per-type classification statistics plus the per-triple audit rows."""

    cartan_type: str
    total_triples: int
    nonzero_count: int
    gk_count: int
    exceptions: list = field(default_factory=list)  # (u, v, w) word triples
    rows: list = field(default_factory=list)  # (u, v, w, is_gk, sigma0 str)

    def to_json_dict(self) -> dict:
        return {
            "type": self.cartan_type,
            "total": self.total_triples,
            "nonzero": self.nonzero_count,
            "gk": self.gk_count,
            "exceptions": [
                {"u": u, "v": v, "w": w} for (u, v, w) in self.exceptions
            ],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_csv_text(self) -> str:
        lines = ["type,u,v,w,is_gk,sigma0"]
        for u, v, w, flag, sigma0 in self.rows:
            flag_s = "true" if flag else "false"
            lines.append(f"{self.cartan_type},{u},{v},{w},{flag_s},{sigma0}")
        return "\n".join(lines) + "\n"


_WORKER_ENGINE: SigmaEngine | None = None


def _classify_worker(w: int) -> tuple:
    assert _WORKER_ENGINE is not None
    return _WORKER_ENGINE.classify_for_w(w)


def classify(
    group: CoxeterGroup | None = None,
    jobs: int = 1,
    engine: SigmaEngine | None = None,
) -> ClassificationReport:
    """Classify every triple of the group; deterministic for any job count."""
    global _WORKER_ENGINE
    if engine is None:
        if group is None:
            raise ValueError("need a group or an engine")
        engine = SigmaEngine(group)
    g = engine.group
    engine.prefill_shared_tables()
    w_indices = range(g.order)
    if jobs > 1 and "fork" in multiprocessing.get_all_start_methods():
        ctx = multiprocessing.get_context("fork")
        _WORKER_ENGINE = engine
        try:
            with ctx.Pool(processes=jobs) as pool:
                parts = pool.map(_classify_worker, w_indices)
        finally:
            _WORKER_ENGINE = None
    else:
        parts = [engine.classify_for_w(w) for w in w_indices]
    nonzero = sum(p[0] for p in parts)
    gk = sum(p[1] for p in parts)
    rows = [row for p in parts for row in p[2]]
    rows.sort(key=lambda row: (row[0], row[1], row[2]))
    exceptions = [(u, v, w) for (u, v, w, flag, _) in rows if not flag]
    report = ClassificationReport(
        cartan_type=str(g.cartan_type),
        total_triples=g.order**3,
        nonzero_count=nonzero,
        gk_count=gk,
        exceptions=exceptions,
        rows=rows,
    )
    assert report.gk_count + len(report.exceptions) == report.nonzero_count
    return report


def _main_theorem_for_w(engine: SigmaEngine, w: int) -> bool:
    g = engine.group
    for u in range(g.order):
        vm = engine.vmin_idx(u, w)
        sig = engine.sigma_idx(u, vm, w)
        if sig.den or not sig.num.is_q_only():
            return False
        if sig.num.q_only() != engine.main_theorem_rhs_idx(u, w):
            return False
    return True


def _main_theorem_worker(w: int) -> bool:
    assert _WORKER_ENGINE is not None
    return _main_theorem_for_w(_WORKER_ENGINE, w)


def verify_main_theorem(
    group: CoxeterGroup,
    engine: SigmaEngine | None = None,
    jobs: int = 1,
) -> bool:
    """Check sigma(u, v_min, w) is torus-free and matches the translated
    Bruhat-interval length series, for every pair (u, w)."""
    global _WORKER_ENGINE
    if engine is None:
        engine = SigmaEngine(group)
    g = engine.group
    if jobs > 1 and "fork" in multiprocessing.get_all_start_methods():
        engine.prefill_shared_tables()
        ctx = multiprocessing.get_context("fork")
        _WORKER_ENGINE = engine
        try:
            with ctx.Pool(processes=jobs) as pool:
                results = pool.map(_main_theorem_worker, range(g.order))
        finally:
            _WORKER_ENGINE = None
        return all(results)
    return all(_main_theorem_for_w(engine, w) for w in range(g.order))


def verify_vanishing(
    group: CoxeterGroup,
    samples: int = 2000,
    seed: int = 987654321,
    engine: SigmaEngine | None = None,
) -> bool:
    """Check sigma(u, v, w) == 0 for v not >= v_min(u, w); exhaustive for
    groups of order at most 10, else on ``samples`` seeded random triples."""
    if engine is None:
        engine = SigmaEngine(group)
    g = engine.group
    if g.order <= 10:
        for u in range(g.order):
            for w in range(g.order):
                vm = engine.vmin_idx(u, w)
                up = g.up_masks[vm]
                for v in range(g.order):
                    if not up >> v & 1:
                        if not engine.sigma_idx(u, v, w).is_zero():
                            return False
        return True
    rng = random.Random(seed)
    found = 0
    while found < samples:
        u = rng.randrange(g.order)
        v = rng.randrange(g.order)
        w = rng.randrange(g.order)
        if g.leq_idx(engine.vmin_idx(u, w), v):
            continue
        if not engine.sigma_idx(u, v, w).is_zero():
            return False
        found += 1
    return True
