from fractions import Fraction as F

import pytest

from plcmarket import serialize
from plcmarket.clearing import APPROXIMATE, verify
from plcmarket.errors import InputError
from plcmarket.games import mixed, validate_game
from plcmarket.model import prices
from plcmarket.rational import format_rational, parse_rational
from plcmarket.reduction import build_reduced_market
from plcmarket.regulating import build_mn
from plcmarket.search import SearchConfig, search_equilibrium, unit_box


def test_parse_rational_forms():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-3/6") == F(-1, 2)  # auto-reduced
    assert parse_rational("5") == F(5)
    assert parse_rational(7) == F(7)
    assert format_rational(F(3, 4)) == "3/4"
    assert format_rational(F(5)) == "5/1"


def test_parse_rational_rejections():
    with pytest.raises(InputError):
        parse_rational("1/0")
    with pytest.raises(InputError):
        parse_rational(0.5)
    with pytest.raises(InputError):
        parse_rational("abc")
    with pytest.raises(InputError):
        parse_rational(True)


def test_market_round_trip():
    m = build_mn(3)
    obj = serialize.market_to_obj(m)
    back = serialize.market_from_obj(obj)
    assert back == m


def test_reduced_market_round_trip():
    game = validate_game([[1, F(-1, 2)], [0, F(1, 4)]], [[0, 1], [-1, 0]])
    market, meta = build_reduced_market(game)
    assert serialize.market_from_obj(serialize.market_to_obj(market)) == market
    assert serialize.meta_from_obj(serialize.meta_to_obj(meta)) == meta


def test_prices_round_trip():
    p = prices([1, F(3, 2), 0], normalized=True)
    assert serialize.prices_from_obj(serialize.prices_to_obj(p)) == p


def test_game_and_strategy_round_trip():
    g = validate_game([[1, -1], [-1, 1]], [[-1, 1], [1, -1]])
    assert serialize.game_from_obj(serialize.game_to_obj(g)) == g
    x, y = mixed([F(1, 3), F(2, 3)]), mixed([1, 0])
    assert serialize.strategies_from_obj(serialize.strategies_to_obj(x, y)) == (x, y)


def test_game_declared_size_must_match():
    obj = {"n": 3, "A": [["0", "0"], ["0", "0"]], "B": [["0", "0"], ["0", "0"]]}
    with pytest.raises(InputError):
        serialize.game_from_obj(obj)


def test_certificate_serialization_shape():
    m = build_mn(2)
    cert = verify(m, prices([1, 2]), APPROXIMATE, F(1, 2))
    obj = serialize.certificate_to_obj(cert)
    assert obj["verdict"] == "accept"
    assert obj["epsilon"] == "1/2"
    assert len(obj["allocation"]) == len(m.traders)
    assert {row["good"] for row in obj["report"]} == {0, 1}


def test_search_report_serialization():
    rep = search_equilibrium(
        build_mn(2), SearchConfig(box=unit_box(2), grid_k=2, refine_rounds=0, epsilon=F(1, 2))
    )
    obj = serialize.search_report_to_obj(rep)
    assert obj["accepted"] is True
    assert obj["best_price"]["normalized"] is True


def test_malformed_market_objects():
    with pytest.raises(InputError):
        serialize.market_from_obj({"traders": []})
    with pytest.raises(InputError):
        serialize.market_from_obj({"n_goods": 1, "traders": [{"endowment": ["1"]}]})
    with pytest.raises(InputError):
        serialize.market_from_obj(
            {"n_goods": 1, "traders": [{"endowment": [0.5], "utilities": [{"kind": "zero"}]}]}
        )
