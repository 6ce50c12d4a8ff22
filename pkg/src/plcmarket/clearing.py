"""Equilibrium verification via exact feasibility over demand sets.

Deciding whether a price vector is an equilibrium requires searching the
whole product of per-trader optimal-bundle sets: at tie prices a trader may
split money across the tie frontier, and the split matters for clearing.
The search is an exact-rational circulation problem over money:

* a source arc per trader carries her mandatory tie spend (an exact equality
  when the cutoff rate is positive) or her optional residual spend,
* an arc per tie offer is capped by the offer's money capacity,
* a sink arc per good carries that good's clearing window, shifted by the
  forced purchases that no optimal bundle can avoid.

Zero-priced goods never carry money; they are checked arithmetically (forced
satiation amounts must fit under the window ceiling, and free top-ups can
always reach the window floor).
"""

from dataclasses import dataclass
from fractions import Fraction

from .demand import Bundle, DemandSet, canonical_bundle, in_opt, optimal_demand
from .errors import InternalInvariantViolation, InvalidMarket, UnboundedDemand
from .flow import Arc, feasible_circulation
from .model import Market, PriceVector, normalize_prices

EXACT = "exact"
APPROXIMATE = "approximate"
QUASI = "quasi"
MODES = (EXACT, APPROXIMATE, QUASI)


@dataclass(frozen=True)
class GoodBalance:
    good: int
    supply: Fraction
    allocated: Fraction
    imbalance: Fraction
    bound: Fraction


@dataclass(frozen=True)
class Certificate:
    verdict: str  # "accept" | "reject"
    reason: str | None
    mode: str
    epsilon: Fraction
    allocation: tuple[Bundle, ...] | None
    report: tuple[GoodBalance, ...] | None

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"


def _windows(m: Market, p: PriceVector, mode: str, eps: Fraction):
    """Per-good [lo, hi] on total allocation.

    Approximate mode uses the two-sided eps window around supply (a zero
    supply degenerates it to the point {0}).  Exact and quasi modes demand
    equality on positively priced goods and allow free disposal at price 0.
    """
    out = []
    for s, price in zip(m.supplies(), p.prices):
        if mode == APPROXIMATE:
            out.append((max(Fraction(0), s * (1 - eps)), s * (1 + eps)))
        elif price > 0:
            out.append((s, s))
        else:
            out.append((Fraction(0), s))
    return out


def _solve(
    m: Market,
    p: PriceVector,
    demands: list[DemandSet | None],
    waived: set[int],
    windows,
) -> list[list[Fraction]] | None:
    """Feasibility core; returns per-trader quantity vectors or None."""
    n = m.n_goods
    minq = []
    for i, d in enumerate(demands):
        if i in waived or d is None:
            minq.append([Fraction(0)] * n)
        else:
            minq.append(list(d.forced))

    for k in range(n):
        if p.prices[k] == 0:
            if sum(row[k] for row in minq) > windows[k][1]:
                return None

    total_money = sum(
        (d.budget for d in demands if d is not None), Fraction(0)
    )
    inf = total_money + 1
    arcs: list[Arc] = []
    qty_arcs: list[tuple[int, int, int]] = []  # (arc index, trader, good)
    for i, d in enumerate(demands):
        if i in waived or d is None:
            continue
        if d.cutoff_rate > 0:
            arcs.append(Arc("src", ("t", i), d.tie_spend, d.tie_spend))
            for o in d.tie_offers:
                ub = inf if o.quantity_cap is None else o.quantity_cap * o.unit_cost
                qty_arcs.append((len(arcs), i, o.good))
                arcs.append(Arc(("t", i), ("g", o.good), Fraction(0), ub))
        elif d.tie_spend > 0 and d.priced_goods:
            arcs.append(Arc("src", ("t", i), Fraction(0), d.tie_spend))
            for k in d.priced_goods:
                qty_arcs.append((len(arcs), i, k))
                arcs.append(Arc(("t", i), ("g", k), Fraction(0), inf))
    for k in range(n):
        if p.prices[k] == 0:
            continue
        forced_k = sum(row[k] for row in minq)
        lo, hi = windows[k]
        lo_money = max(Fraction(0), lo - forced_k) * p.prices[k]
        hi_money = (hi - forced_k) * p.prices[k]
        arcs.append(Arc(("g", k), "snk", lo_money, hi_money))
    arcs.append(Arc("snk", "src", Fraction(0), inf))

    flows = feasible_circulation(arcs)
    if flows is None:
        return None
    alloc = [list(row) for row in minq]
    for arc_idx, i, k in qty_arcs:
        alloc[i][k] += flows[arc_idx] / p.prices[k]
    for k in range(n):
        if p.prices[k] == 0:
            short = windows[k][0] - sum(row[k] for row in alloc)
            if short > 0:
                alloc[0][k] += short  # free top-up, utility-neutral beyond satiation
    return alloc


def _report(m: Market, bundles, eps: Fraction) -> tuple[GoodBalance, ...]:
    rows = []
    for k, s in enumerate(m.supplies()):
        a = sum((b.quantities[k] for b in bundles), Fraction(0))
        rows.append(GoodBalance(good=k, supply=s, allocated=a, imbalance=a - s, bound=eps * s))
    return tuple(rows)


def clearing_feasibility(
    m: Market, p: PriceVector, eps
) -> tuple[Bundle, ...] | None:
    """Existence of an optimal allocation clearing every good within eps.

    Propagates UnboundedDemand; returns a witness allocation or None.
    """
    eps = Fraction(eps)
    demands = [optimal_demand(t, p, i) for i, t in enumerate(m.traders)]
    alloc = _solve(m, p, demands, set(), _windows(m, p, APPROXIMATE, eps))
    if alloc is None:
        return None
    return tuple(Bundle(tuple(row)) for row in alloc)


def verify(m: Market, p: PriceVector, mode: str, eps=0) -> Certificate:
    """Full verdict with witness and per-good clearing report.

    The input vector is normalized first.  Exact and quasi modes pin eps to 0;
    quasi waives optimality for zero-income traders, who may then receive any
    zero-cost bundle.
    """
    if mode not in MODES:
        raise InvalidMarket(f"unknown verification mode {mode!r}")
    eps = Fraction(eps) if mode == APPROXIMATE else Fraction(0)
    if eps < 0:
        raise InvalidMarket("epsilon must be nonnegative")
    p = normalize_prices(p)

    demands: list[DemandSet | None] = []
    waived: set[int] = set()
    for i, trader in enumerate(m.traders):
        try:
            d = optimal_demand(trader, p, i)
        except UnboundedDemand as exc:
            income = sum((w * q for w, q in zip(trader.endowment, p.prices)), Fraction(0))
            if mode == QUASI and income == 0:
                waived.add(i)
                demands.append(None)
                continue
            return Certificate("reject", str(exc), mode, eps, None, None)
        if mode == QUASI and d.budget == 0:
            waived.add(i)  # the zero-cost arm subsumes their optimal bundles
        demands.append(d)

    alloc = _solve(m, p, demands, waived, _windows(m, p, mode, eps))
    if alloc is None:
        canonical = tuple(
            canonical_bundle(d) if d is not None else Bundle((Fraction(0),) * m.n_goods)
            for d in demands
        )
        return Certificate(
            "reject", "clearing-infeasible", mode, eps, None, _report(m, canonical, eps)
        )

    bundles = tuple(Bundle(tuple(row)) for row in alloc)
    _check_witness(m, p, bundles, waived, _windows(m, p, mode, eps))
    return Certificate("accept", None, mode, eps, bundles, _report(m, bundles, eps))


def _check_witness(m, p, bundles, waived, windows):
    """Re-validate an accept witness from scratch; a failure here is a bug."""
    for i, (trader, b) in enumerate(zip(m.traders, bundles)):
        if i in waived:
            if b.cost(p) != 0:
                raise InternalInvariantViolation(f"waived trader {i} got a costly bundle")
        elif not in_opt(trader, p, b, i):
            raise InternalInvariantViolation(f"witness bundle for trader {i} is not optimal")
    for k, (lo, hi) in enumerate(windows):
        total = sum((b.quantities[k] for b in bundles), Fraction(0))
        if not lo <= total <= hi:
            raise InternalInvariantViolation(f"witness violates clearing window on good {k}")


def imbalance_profile(m: Market, p: PriceVector, eps=0) -> tuple[GoodBalance, ...]:
    """Per-good balance of the canonical (deterministic) demand bundles.

    No feasibility search: this is the cheap score used by grid search, and
    it can differ from verify's verdict exactly when tie flexibility matters.
    """
    eps = Fraction(eps)
    bundles = tuple(
        canonical_bundle(optimal_demand(t, p, i)) for i, t in enumerate(m.traders)
    )
    return _report(m, bundles, eps)
