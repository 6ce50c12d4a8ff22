import random
from fractions import Fraction as F

import pytest

from plcmarket.errors import AllZeroPrices, InvalidMarket, InvalidPriceVector
from plcmarket.model import (
    Market,
    TraderSpec,
    classify_market,
    economy_graph,
    is_strongly_connected,
    normalize_prices,
    prices,
)
from plcmarket.plc import ZERO_PLC, linear_plc, validate_plc
from plcmarket.regulating import build_mn


def test_normalize_examples():
    assert normalize_prices(prices([2, 4])).prices == (F(1), F(2))
    assert normalize_prices(prices([0, 3])).prices == (F(0), F(1))
    assert normalize_prices(prices([1, 1])).prices == (F(1), F(1))


def test_normalize_idempotent_and_scale_invariant():
    rng = random.Random(3)
    for _ in range(100):
        vec = [F(rng.randint(0, 12), rng.randint(1, 8)) for _ in range(rng.randint(1, 5))]
        if all(v == 0 for v in vec):
            continue
        p = normalize_prices(prices(vec))
        assert normalize_prices(p).prices == p.prices
        c = F(rng.randint(1, 9), rng.randint(1, 9))
        assert normalize_prices(prices([c * v for v in vec])).prices == p.prices


def test_price_vector_validation():
    with pytest.raises(AllZeroPrices):
        prices([0, 0])
    with pytest.raises(InvalidPriceVector):
        prices([-1, 2])
    with pytest.raises(InvalidPriceVector):
        prices([2, 3], normalized=True)
    assert prices([1, 3], normalized=True).normalized


def test_market_validation():
    t = TraderSpec((F(1),), (linear_plc(1),))
    with pytest.raises(InvalidMarket):
        Market(2, (t,))  # wrong vector length
    with pytest.raises(InvalidMarket):
        Market(1, (TraderSpec((F(-1),), (ZERO_PLC,)),))
    with pytest.raises(InvalidMarket):
        Market(1, (TraderSpec((F(0),), (ZERO_PLC,)),))  # no supply anywhere


def test_economy_graph_m2():
    g = economy_graph(build_mn(2))
    assert g == [{1}, {0}]
    assert is_strongly_connected(g)


def test_economy_graph_no_edge_to_indifferent_trader():
    a = TraderSpec((F(1), F(0)), (linear_plc(1), ZERO_PLC))
    b = TraderSpec((F(0), F(1)), (ZERO_PLC, ZERO_PLC))
    g = economy_graph(Market(2, (a, b)))
    assert g[0] == set()  # b wants nothing
    assert g[1] == set()  # a does not want b's good; self loops excluded
    assert is_strongly_connected(g) is False


def test_single_trader_graph():
    m = Market(1, (TraderSpec((F(1),), (linear_plc(1),)),))
    assert economy_graph(m) == [set()]
    assert is_strongly_connected(economy_graph(m))


def test_two_isolated_traders():
    a = TraderSpec((F(1), F(0)), (linear_plc(1), ZERO_PLC))
    b = TraderSpec((F(0), F(1)), (ZERO_PLC, linear_plc(1)))
    assert not is_strongly_connected(economy_graph(Market(2, (a, b))))


def test_mn_strongly_connected_range():
    for n in range(2, 9):
        assert is_strongly_connected(economy_graph(build_mn(n)))


def test_mn_graph_is_shared_good_digraph():
    # edge (i,j) -> (k,l) exactly when the owned good i is one of (k, l)
    for n in (3, 4):
        m = build_mn(n)
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        g = economy_graph(m)
        for a, (i, _) in enumerate(pairs):
            for b, (k, l) in enumerate(pairs):
                expected = a != b and i in (k, l)
                assert (b in g[a]) == expected


def test_classify_mn():
    rep = classify_market(build_mn(4), 2, 2)
    assert rep.all_ok
    assert rep.alpha_bound == 2
    assert rep.sparsity_t == 2


def test_classify_fractional_slope_breaks_alpha():
    t = TraderSpec((F(1),), (validate_plc([F(1, 2)], []),))
    rep = classify_market(Market(1, (t,)), 27, 23)
    assert rep.alpha_bound is None
    assert not rep.alpha_ok


def test_classify_three_segments_not_2_linear():
    t = TraderSpec((F(1),), (validate_plc([3, 2, 1], [1, 2]),))
    rep = classify_market(Market(1, (t,)), 27, 23)
    assert not rep.is_2_linear


def test_classify_agrees_with_definitional_predicates():
    from oracles import random_market

    rng = random.Random(13)
    alpha, t_limit = F(4), 2
    for _ in range(60):
        m = random_market(rng)
        rep = classify_market(m, alpha, t_limit)
        nonzero = [f for tr in m.traders for f in tr.utilities if not f.is_zero]
        assert rep.is_2_linear == all(len(f.slopes) <= 2 for f in nonzero)
        assert rep.alpha_ok == all(
            f.slopes[0] <= alpha and f.slopes[-1] >= 1 for f in nonzero
        )
        assert rep.sparsity_ok == all(
            sum(1 for w in tr.endowment if w > 0) <= t_limit
            and sum(1 for f in tr.utilities if not f.is_zero) <= t_limit
            for tr in m.traders
        )
