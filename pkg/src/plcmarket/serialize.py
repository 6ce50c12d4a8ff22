"""JSON schemas for all file formats.

Rationals travel as "num/den" strings (plain integer strings are accepted on
input).  Serialization is deterministic: sorted keys, two-space indent, one
trailing newline.
"""

import json

from fractions import Fraction

from .clearing import Certificate
from .errors import InputError
from .games import BimatrixGame, MixedStrategy, validate_game
from .model import Market, PriceVector, TraderSpec
from .plc import PLCFunction, validate_plc
from .rational import format_rational, parse_rational
from .reduction import ReducedMarketMeta
from .search import SearchReport


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing key {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"{where}: key {key!r} has wrong type")
    return value


# --- PLC / market -------------------------------------------------------------


def plc_to_obj(f: PLCFunction):
    if f.is_zero:
        return {"kind": "zero"}
    return {
        "slopes": [format_rational(s) for s in f.slopes],
        "breaks": [format_rational(a) for a in f.breaks],
    }


def plc_from_obj(obj) -> PLCFunction:
    if not isinstance(obj, dict):
        raise InputError("utility entry must be an object")
    if obj.get("kind") == "zero":
        return validate_plc([], [])
    slopes = [parse_rational(s) for s in _require(obj, "slopes", list, "utility")]
    breaks = [parse_rational(a) for a in _require(obj, "breaks", list, "utility")]
    return validate_plc(slopes, breaks)


def market_to_obj(m: Market):
    traders = []
    for t in m.traders:
        entry = {
            "endowment": [format_rational(w) for w in t.endowment],
            "utilities": [plc_to_obj(f) for f in t.utilities],
        }
        if t.label is not None:
            entry["label"] = t.label
        traders.append(entry)
    return {"n_goods": m.n_goods, "traders": traders}


def market_from_obj(obj) -> Market:
    n_goods = _require(obj, "n_goods", int, "market")
    traders = []
    for idx, entry in enumerate(_require(obj, "traders", list, "market")):
        where = f"trader {idx}"
        endow = tuple(parse_rational(w) for w in _require(entry, "endowment", list, where))
        utils = tuple(plc_from_obj(u) for u in _require(entry, "utilities", list, where))
        label = entry.get("label")
        if label is not None and not isinstance(label, str):
            raise InputError(f"{where}: label must be a string")
        traders.append(TraderSpec(endow, utils, label))
    return Market(n_goods, tuple(traders))


# --- prices -------------------------------------------------------------------


def prices_to_obj(p: PriceVector):
    return {
        "prices": [format_rational(q) for q in p.prices],
        "normalized": p.normalized,
    }


def prices_from_obj(obj) -> PriceVector:
    values = tuple(parse_rational(q) for q in _require(obj, "prices", list, "prices"))
    normalized = obj.get("normalized", False)
    if not isinstance(normalized, bool):
        raise InputError("prices: normalized must be a boolean")
    return PriceVector(values, normalized)


# --- games / strategies ---------------------------------------------------------


def game_to_obj(g: BimatrixGame):
    return {
        "n": g.n,
        "A": [[format_rational(v) for v in row] for row in g.A],
        "B": [[format_rational(v) for v in row] for row in g.B],
    }


def game_from_obj(obj) -> BimatrixGame:
    n = _require(obj, "n", int, "game")
    A = [[parse_rational(v) for v in row] for row in _require(obj, "A", list, "game")]
    B = [[parse_rational(v) for v in row] for row in _require(obj, "B", list, "game")]
    g = validate_game(A, B)
    if g.n != n:
        raise InputError(f"game: declared n={n} but matrices are {g.n}x{g.n}")
    return g


def strategies_to_obj(x: MixedStrategy, y: MixedStrategy):
    return {
        "x": [format_rational(w) for w in x.weights],
        "y": [format_rational(w) for w in y.weights],
    }


def strategies_from_obj(obj) -> tuple[MixedStrategy, MixedStrategy]:
    x = MixedStrategy(tuple(parse_rational(w) for w in _require(obj, "x", list, "profile")))
    y = MixedStrategy(tuple(parse_rational(w) for w in _require(obj, "y", list, "profile")))
    return x, y


# --- metadata, certificates, search reports -------------------------------------


def meta_to_obj(meta: ReducedMarketMeta):
    return {
        "game_n": meta.game_n,
        "n_goods": meta.n_goods,
        "s_count": meta.s_count,
        "u_pairs": [list(p) for p in meta.u_pairs],
        "v_pairs": [list(p) for p in meta.v_pairs],
        "i_count": meta.i_count,
    }


def meta_from_obj(obj) -> ReducedMarketMeta:
    return ReducedMarketMeta(
        game_n=_require(obj, "game_n", int, "meta"),
        n_goods=_require(obj, "n_goods", int, "meta"),
        s_count=_require(obj, "s_count", int, "meta"),
        u_pairs=tuple((int(i), int(j)) for i, j in _require(obj, "u_pairs", list, "meta")),
        v_pairs=tuple((int(i), int(j)) for i, j in _require(obj, "v_pairs", list, "meta")),
        i_count=_require(obj, "i_count", int, "meta"),
    )


def certificate_to_obj(cert: Certificate):
    obj = {
        "verdict": cert.verdict,
        "mode": cert.mode,
        "epsilon": format_rational(cert.epsilon),
        "reason": cert.reason,
        "allocation": None,
        "report": None,
    }
    if cert.allocation is not None:
        obj["allocation"] = [
            [format_rational(q) for q in b.quantities] for b in cert.allocation
        ]
    if cert.report is not None:
        obj["report"] = [
            {
                "good": row.good,
                "supply": format_rational(row.supply),
                "allocated": format_rational(row.allocated),
                "imbalance": format_rational(row.imbalance),
                "bound": format_rational(row.bound),
            }
            for row in cert.report
        ]
    return obj


def _score_str(score: Fraction | None) -> str:
    return "inf" if score is None else format_rational(score)


def search_report_to_obj(rep: SearchReport):
    return {
        "best_price": None if rep.best_price is None else prices_to_obj(rep.best_price),
        "best_max_relative_imbalance": _score_str(rep.best_max_relative_imbalance),
        "accepted": rep.accepted,
        "trace": [[rnd, _score_str(score)] for rnd, score in rep.trace],
        "certificate": None if rep.certificate is None else certificate_to_obj(rep.certificate),
    }
