"""Compiler from sparse bimatrix games to 2-linear exchange markets.

Given an n x n game, the reduced market has N = 2n + 2 goods.  The first n
price entries encode the row player's strategy and the next n the column
player's, via x_k = p_k - 1.  The trader population:

* S traders: the price-regulating pairs over all N goods (endowment 1/n of
  their first good, linear slopes 2 and 1), which pin every price to [1, 2];
* U traders, one per ordered row pair (i, j): payoff-difference gadgets over
  A's rows, carrying the positive part C of A_i - A_j on the y-block goods
  and a balancing amount E of good 2n+1, wanting the negative part D and the
  mirror balance F at slope 27, good i at slopes [9, 1], and good 2n+2 as an
  unbounded slope-3 money sink;
* V traders: the same gadget on B's columns with the x/y blocks swapped;
* I traders, one per strategy good: a 1/n^12 sliver of good 2n+1 traded for
  their own good, which breaks ties in the aggregate flow direction.

The gadget scalars satisfy E + sum(C) = F + sum(D), E * F = 0, and both are
at most 40 for sparse normalized inputs.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateExtraction, NTooSmall, ShapeMismatch
from .games import BimatrixGame, MixedStrategy
from .model import Market, PriceVector, TraderSpec
from .plc import ZERO_PLC, PLCFunction, linear_plc, validate_plc


@dataclass(frozen=True)
class GadgetVectors:
    C: tuple[Fraction, ...]
    D: tuple[Fraction, ...]
    E: Fraction
    F: Fraction


def _split(diffs) -> GadgetVectors:
    C = tuple(max(d, Fraction(0)) for d in diffs)
    D = tuple(max(-d, Fraction(0)) for d in diffs)
    sum_c, sum_d = sum(C), sum(D)
    if sum_d >= sum_c:
        return GadgetVectors(C, D, sum_d - sum_c, Fraction(0))
    return GadgetVectors(C, D, Fraction(0), sum_c - sum_d)


def gadget_vectors_row(A, i: int, j: int) -> GadgetVectors:
    """Positive/negative split of row difference A_i - A_j with balancing scalars."""
    return _split([A[i][k] - A[j][k] for k in range(len(A))])


def gadget_vectors_col(B, i: int, j: int) -> GadgetVectors:
    """Positive/negative split of column difference B_i - B_j (columns of B)."""
    return _split([B[k][i] - B[k][j] for k in range(len(B))])


@dataclass(frozen=True)
class ReducedMarketMeta:
    game_n: int
    n_goods: int
    s_count: int
    u_pairs: tuple[tuple[int, int], ...]
    v_pairs: tuple[tuple[int, int], ...]
    i_count: int

    @property
    def aux_goods(self) -> tuple[int, int]:
        return 2 * self.game_n, 2 * self.game_n + 1

    def trader_slices(self) -> dict[str, tuple[int, int]]:
        s0 = 0
        u0 = s0 + self.s_count
        v0 = u0 + len(self.u_pairs)
        i0 = v0 + len(self.v_pairs)
        return {
            "s": (s0, u0),
            "u": (u0, v0),
            "v": (v0, i0),
            "i": (i0, i0 + self.i_count),
        }


def _kinked(high, low, knee) -> PLCFunction:
    return validate_plc((Fraction(high), Fraction(low)), (knee,))


def build_reduced_market(game: BimatrixGame) -> tuple[Market, ReducedMarketMeta]:
    """Build the reduced market and its index metadata.

    Trader order is S block, U block, V block, I block; U and V pairs are
    lexicographic.  S traders keep the 1/n endowment of the n x n game even
    though they range over all 2n + 2 goods.
    """
    n = game.n
    if n < 2:
        raise NTooSmall("reduction needs a game with n >= 2 actions")
    N = 2 * n + 2
    aux1, aux2 = 2 * n, 2 * n + 1
    inv_n4 = Fraction(1, n**4)
    inv_n5 = Fraction(1, n**5)
    inv_n12 = Fraction(1, n**12)
    traders: list[TraderSpec] = []

    for i in range(N):
        for j in range(N):
            if i == j:
                continue
            endow = [Fraction(0)] * N
            endow[i] = Fraction(1, n)
            utils = [ZERO_PLC] * N
            utils[i] = linear_plc(2)
            utils[j] = linear_plc(1)
            traders.append(TraderSpec(tuple(endow), tuple(utils), f"S({i + 1},{j + 1})"))
    s_count = len(traders)

    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for i, j in pairs:
        gv = gadget_vectors_row(game.A, i, j)
        endow = [Fraction(0)] * N
        endow[i] = inv_n4
        for k in range(n):
            endow[n + k] = gv.C[k] * inv_n5
        endow[aux1] = gv.E * inv_n5
        utils = [ZERO_PLC] * N
        utils[i] = _kinked(9, 1, inv_n4)
        utils[aux2] = linear_plc(3)
        for k in range(n):
            if gv.D[k] > 0:
                utils[n + k] = _kinked(27, 1, gv.D[k] * inv_n5)
        if gv.F > 0:
            utils[aux1] = _kinked(27, 1, gv.F * inv_n5)
        traders.append(TraderSpec(tuple(endow), tuple(utils), f"U({i + 1},{j + 1})"))

    for i, j in pairs:
        gv = gadget_vectors_col(game.B, i, j)
        endow = [Fraction(0)] * N
        endow[n + i] = inv_n4
        for k in range(n):
            endow[k] = gv.C[k] * inv_n5
        endow[aux1] = gv.E * inv_n5
        utils = [ZERO_PLC] * N
        utils[n + i] = _kinked(9, 1, inv_n4)
        utils[aux2] = linear_plc(3)
        for k in range(n):
            if gv.D[k] > 0:
                utils[k] = _kinked(27, 1, gv.D[k] * inv_n5)
        if gv.F > 0:
            utils[aux1] = _kinked(27, 1, gv.F * inv_n5)
        traders.append(TraderSpec(tuple(endow), tuple(utils), f"V({i + 1},{j + 1})"))

    for i in range(2 * n):
        endow = [Fraction(0)] * N
        endow[aux1] = inv_n12
        utils = [ZERO_PLC] * N
        utils[i] = linear_plc(1)
        traders.append(TraderSpec(tuple(endow), tuple(utils), f"I({i + 1})"))

    meta = ReducedMarketMeta(
        game_n=n,
        n_goods=N,
        s_count=s_count,
        u_pairs=tuple(pairs),
        v_pairs=tuple(pairs),
        i_count=2 * n,
    )
    return Market(N, tuple(traders)), meta


@dataclass(frozen=True)
class Extraction:
    x: MixedStrategy
    y: MixedStrategy
    x_raw: tuple[Fraction, ...]  # p_k - 1 before normalization (clamped at 0)
    y_raw: tuple[Fraction, ...]
    clamped: bool


def extract_strategies(p: PriceVector, meta: ReducedMarketMeta) -> Extraction:
    """Read a strategy pair off a price vector of the reduced market.

    Entries below 1 only arise from non-equilibrium inputs; their encoded
    weights are clamped to 0 and the clamping is reported.  Raises
    DegenerateExtraction when either block encodes the zero vector.
    """
    n = meta.game_n
    if len(p.prices) != 2 * n + 2:
        raise ShapeMismatch(f"expected {2 * n + 2} prices, got {len(p.prices)}")
    clamped = False
    raw = []
    for q in p.prices[: 2 * n]:
        w = q - 1
        if w < 0:
            clamped = True
            w = Fraction(0)
        raw.append(w)
    x_raw, y_raw = tuple(raw[:n]), tuple(raw[n:])
    sum_x, sum_y = sum(x_raw), sum(y_raw)
    if sum_x == 0 or sum_y == 0:
        raise DegenerateExtraction("strategy block of the price vector is all ones")
    x = MixedStrategy(tuple(w / sum_x for w in x_raw))
    y = MixedStrategy(tuple(w / sum_y for w in y_raw))
    return Extraction(x, y, x_raw, y_raw, clamped)
