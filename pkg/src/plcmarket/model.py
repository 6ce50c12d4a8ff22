"""Exchange-market domain types and structural classification.

A market holds a fixed number of divisible goods and a list of traders, each
with a nonnegative endowment vector and one PLC utility piece per good; a
trader's utility of a bundle is the sum of the per-good pieces.  All
quantities are exact rationals.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import AllZeroPrices, InvalidMarket, InvalidPriceVector
from .plc import PLCFunction


@dataclass(frozen=True)
class TraderSpec:
    endowment: tuple[Fraction, ...]
    utilities: tuple[PLCFunction, ...]
    label: str | None = None

    def utility(self, quantities) -> Fraction:
        """Additively separable utility of a bundle."""
        return sum((f(Fraction(x)) for f, x in zip(self.utilities, quantities)), Fraction(0))


@dataclass(frozen=True)
class Market:
    n_goods: int
    traders: tuple[TraderSpec, ...]

    def __post_init__(self):
        if self.n_goods < 1:
            raise InvalidMarket("market needs at least one good")
        if not self.traders:
            raise InvalidMarket("market needs at least one trader")
        for idx, t in enumerate(self.traders):
            if len(t.endowment) != self.n_goods or len(t.utilities) != self.n_goods:
                raise InvalidMarket(f"trader {idx} has wrong vector length")
            if any(w < 0 for w in t.endowment):
                raise InvalidMarket(f"trader {idx} has a negative endowment entry")
        if all(s == 0 for s in self.supplies()):
            raise InvalidMarket("total endowment is zero for every good")

    def supplies(self) -> tuple[Fraction, ...]:
        """Total endowment per good."""
        totals = [Fraction(0)] * self.n_goods
        for t in self.traders:
            for k, w in enumerate(t.endowment):
                totals[k] += w
        return tuple(totals)


def make_market(n_goods: int, traders) -> Market:
    return Market(n_goods, tuple(traders))


@dataclass(frozen=True)
class PriceVector:
    prices: tuple[Fraction, ...]
    normalized: bool = False

    def __post_init__(self):
        if not self.prices:
            raise InvalidPriceVector("empty price vector")
        if any(p < 0 for p in self.prices):
            raise InvalidPriceVector("negative price")
        if all(p == 0 for p in self.prices):
            raise AllZeroPrices("price vector is all zeros")
        if self.normalized:
            if min(p for p in self.prices if p > 0) != 1:
                raise InvalidPriceVector("normalized flag set but min nonzero price is not 1")

    def __len__(self) -> int:
        return len(self.prices)


def prices(values, normalized: bool = False) -> PriceVector:
    return PriceVector(tuple(Fraction(v) for v in values), normalized)


def normalize_prices(p: PriceVector) -> PriceVector:
    """Scale so the smallest nonzero entry is 1; zero entries are preserved."""
    scale = min(q for q in p.prices if q > 0)
    return PriceVector(tuple(q / scale for q in p.prices), normalized=True)


def economy_graph(m: Market) -> list[set[int]]:
    """Directed trader graph: edge i -> j iff i owns a good j strictly wants.

    Materialized as adjacency sets, built from per-good owner/wanter lists so
    the cost is proportional to the number of realized edges.
    """
    n = len(m.traders)
    adj: list[set[int]] = [set() for _ in range(n)]
    for k in range(m.n_goods):
        owners = [i for i, t in enumerate(m.traders) if t.endowment[k] > 0]
        wanters = [j for j, t in enumerate(m.traders) if t.utilities[k].is_strictly_monotone]
        for i in owners:
            for j in wanters:
                if i != j:
                    adj[i].add(j)
    return adj


def is_strongly_connected(adj: list[set[int]]) -> bool:
    """True iff every ordered pair of vertices is joined by a directed path."""
    n = len(adj)
    if n <= 1:
        return True
    radj: list[set[int]] = [set() for _ in range(n)]
    for i, outs in enumerate(adj):
        for j in outs:
            radj[j].add(i)

    def covers_all(graph):
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in graph[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == n

    return covers_all(adj) and covers_all(radj)


@dataclass(frozen=True)
class MarketClassReport:
    """Structural classification against the sparse 2-linear market contract.

    alpha_bound is the tightest usable bound (the largest first slope) when
    every nonzero utility piece has last slope >= 1, else None.  sparsity_t is
    the largest per-trader support size over endowments and utilities.
    """

    is_2_linear: bool
    alpha_bound: Fraction | None
    sparsity_t: int
    strongly_connected: bool
    alpha_ok: bool
    sparsity_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.is_2_linear and self.alpha_ok and self.sparsity_ok and self.strongly_connected


def classify_market(m: Market, alpha, t: int) -> MarketClassReport:
    alpha = Fraction(alpha)
    two_linear = True
    boundable = True
    max_first_slope = Fraction(0)
    sparsity = 0
    for trader in m.traders:
        endow_support = sum(1 for w in trader.endowment if w > 0)
        util_support = 0
        for f in trader.utilities:
            if f.is_zero:
                continue
            util_support += 1
            if f.n_segments > 2:
                two_linear = False
            if f.slopes[-1] < 1:
                boundable = False
            max_first_slope = max(max_first_slope, f.slopes[0])
        sparsity = max(sparsity, endow_support, util_support)
    alpha_bound = max_first_slope if boundable else None
    return MarketClassReport(
        is_2_linear=two_linear,
        alpha_bound=alpha_bound,
        sparsity_t=sparsity,
        strongly_connected=is_strongly_connected(economy_graph(m)),
        alpha_ok=boundable and max_first_slope <= alpha,
        sparsity_ok=sparsity <= t,
    )
