"""The price-regulating market family.

For n >= 2 the market M_n has n goods and one trader per ordered pair (i, j)
of distinct goods: she owns 1/n of good i, values good i at slope 2 and good
j at slope 1, and nothing else.  A normalized price vector is a (1/n)-approx
equilibrium of M_n exactly when every entry lies in [1, 2], which is what
lets prices encode free variables x_k = p_k - 1 in [0, 1].
"""

from fractions import Fraction

from .clearing import APPROXIMATE, Certificate, GoodBalance
from .demand import Bundle, in_opt
from .errors import InternalInvariantViolation, NTooSmall, OutOfRegulationBox
from .model import Market, PriceVector, TraderSpec, normalize_prices
from .plc import ZERO_PLC, linear_plc


def build_mn(n: int) -> Market:
    """Construct M_n; traders are ordered lexicographically by (i, j)."""
    if n < 2:
        raise NTooSmall(f"price-regulating market needs n >= 2, got {n}")
    share = Fraction(1, n)
    traders = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            endow = [Fraction(0)] * n
            endow[i] = share
            utils = [ZERO_PLC] * n
            utils[i] = linear_plc(2)
            utils[j] = linear_plc(1)
            traders.append(
                TraderSpec(tuple(endow), tuple(utils), label=f"S({i + 1},{j + 1})")
            )
    return Market(n, tuple(traders))


def check_regulation_box(n: int, p: PriceVector) -> bool:
    """True iff p has length n and every entry lies in [1, 2]."""
    return len(p.prices) == n and all(1 <= q <= 2 for q in p.prices)


def regulation_forward_witness(n: int, p: PriceVector) -> Certificate:
    """Accept certificate for an in-box price vector of M_n.

    Normalizes first (the box is closed under normalization), then checks
    that the identity allocation x_s = w_s is optimal for every trader.  A
    failed optimality check here would falsify the forward direction of the
    price-regulation property, so it raises instead of rejecting.
    """
    p = normalize_prices(p)
    if not check_regulation_box(n, p):
        raise OutOfRegulationBox(f"prices {p.prices} not in [1,2]^{n}")
    m = build_mn(n)
    bundles = tuple(Bundle(t.endowment) for t in m.traders)
    for i, trader in enumerate(m.traders):
        if not in_opt(trader, p, bundles[i], i):
            raise InternalInvariantViolation(
                f"endowment bundle not optimal for trader {i} at {p.prices}"
            )
    eps = Fraction(1, n)
    supply = Fraction(n - 1, n)
    report = tuple(
        GoodBalance(
            good=k,
            supply=supply,
            allocated=supply,
            imbalance=Fraction(0),
            bound=eps * supply,
        )
        for k in range(n)
    )
    return Certificate("accept", None, APPROXIMATE, eps, bundles, report)
