"""Synthesis of boards from games: passable game in, verified board out.

The recursion realizes the options, then assembles the node.  Cheap shapes
are pattern-matched first (atoms, one-sided games, pure forcing moves);
a locally semi-monotone node K = <G*|H*> becomes the coupling of the
one-sided choice boards for the two sides, which is equivalent to K
because the extra options the coupling introduces are gift horses.  A node
that is passable but not semi-monotone is first extended with a gift
horse manufactured from a good option of its other side, which makes it
semi-monotone without changing its value.

Everything over self-dual posets realizes; a poset with no
order-reversing self-map can fail with NoDualityMap when a right-sided
choice is needed, since that board is built by dualizing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra import add_gift_horse, force_left, force_right
from .games import (
    Game,
    SolverContext,
    composite,
    depth,
    branching,
    equiv,
    is_monotone,
    is_passable,
    leq,
    positions,
    to_notation,
)
from .setcolor import (
    SetColoringGame,
    eval_board,
    sc_const,
    sc_coupling,
    sc_force_left,
    sc_force_right,
    sc_one_sided_choice,
    sc_one_sided_choice_dual,
)


class NotPassable(ValueError):
    """The input is outside the class this synthesizer covers."""


class VerificationFailed(RuntimeError):
    """A synthesized board did not evaluate back to its game; a bug."""


class VerifiedHow(enum.Enum):
    BRUTE_FORCE = "brute_force"
    COMPOSITIONAL = "compositional"
    SKIPPED = "skipped"


DEFAULT_VERIFY_CAP = 14


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n >= 1 else 0


def size_bound(ctx: SolverContext, G: Game) -> int:
    """Worst-case carrier size for the synthesizer on this input.

    (2^d - 1)(4 ceil(lg b) + 7) cells for monotone games and the same
    with 10 in place of 7 for merely passable ones, where d and b bound
    the depth and the per-side option count.
    """
    if not is_passable(ctx, G):
        raise NotPassable(f"not passable: {to_notation(G)}")
    d = depth(G)
    if d == 0:
        return 0
    b = max(branching(G), 1)
    per = 4 * _ceil_log2(b) + (7 if is_monotone(ctx, G) else 10)
    return (2 ** d - 1) * per


@dataclass(frozen=True)
class RealizationReport:
    input: Game
    board: SetColoringGame
    carrier_size: int
    bound: int
    verified: VerifiedHow
    good_option_used: dict[int, tuple[str, int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "input": to_notation(self.input),
            "cells": list(self.board.cells),
            "carrier_size": self.carrier_size,
            "bound": self.bound,
            "verified": self.verified.value,
            "good_options": {str(uid): list(rec) for uid, rec in
                             sorted(self.good_option_used.items())},
        }


def verify(ctx: SolverContext, board: SetColoringGame, G: Game,
           max_cells: int = DEFAULT_VERIFY_CAP) -> bool:
    """Brute-force check that the board's value is the game, up to equiv."""
    return equiv(ctx, eval_board(ctx, board, max_cells=max_cells), G)


def realize(ctx: SolverContext, G: Game, verify_value: bool = True,
            verify_cap: int = DEFAULT_VERIFY_CAP) -> RealizationReport:
    """Synthesize a monotone set coloring board whose value is G.

    The report records the board, its carrier size against the size
    bound, how the result was verified (brute force under the cap,
    compositionally above it, or not at all when disabled), and which
    good option manufactured a gift horse at each node that needed one.
    """
    if not is_passable(ctx, G):
        raise NotPassable(f"not passable: {to_notation(G)}")
    bound = size_bound(ctx, G)
    board = _realize(ctx, G)
    assert board.size <= bound, "size bound violated"
    if not verify_value:
        how = VerifiedHow.SKIPPED
    elif board.size <= verify_cap:
        if not verify(ctx, board, G, max_cells=verify_cap):
            raise VerificationFailed(
                f"board value differs from {to_notation(G)}")
        how = VerifiedHow.BRUTE_FORCE
    else:
        how = VerifiedHow.COMPOSITIONAL
    log = ctx.cache("realize_good")
    used = {g.uid: log[g.uid] for g in positions(G) if g.uid in log}
    return RealizationReport(input=G, board=board, carrier_size=board.size,
                             bound=bound, verified=how,
                             good_option_used=used)


def _realize(ctx: SolverContext, G: Game) -> SetColoringGame:
    memo = ctx.cache("realize")
    hit = memo.get(G.uid)
    if hit is not None:
        return hit
    board = _synthesize(ctx, G)
    memo[G.uid] = board
    return board


def _synthesize(ctx: SolverContext, G: Game) -> SetColoringGame:
    poset = G.poset
    if G.is_atomic:
        return sc_const(G.atom, poset)
    top_only = len(G.left) == 1 and G.left[0].is_atomic \
        and G.left[0].atom == poset.top
    bot_only = len(G.right) == 1 and G.right[0].is_atomic \
        and G.right[0].atom == poset.bot
    if top_only and len(G.right) == 1:
        return sc_force_left(_realize(ctx, G.right[0]))
    if bot_only and len(G.left) == 1:
        return sc_force_right(_realize(ctx, G.left[0]))
    if bot_only:
        return sc_one_sided_choice([_realize(ctx, x) for x in G.left])
    if top_only:
        return sc_one_sided_choice_dual([_realize(ctx, x) for x in G.right])
    K = _semi_monotonize(ctx, G)
    left_core = sc_one_sided_choice([_realize(ctx, x) for x in K.left])
    right_core = sc_one_sided_choice_dual([_realize(ctx, x)
                                           for x in K.right])
    return sc_coupling(right_core, left_core)


def _semi_monotonize(ctx: SolverContext, G: Game) -> Game:
    """G, or G extended by one gift horse so both sides have a good option.

    A passable game has a good option on at least one side; forcing that
    option manufactures a gift horse for the other side which is itself
    good there.  The first good option in stored order is used, and the
    choice is logged for the report.
    """
    good_left = next((i for i, x in enumerate(G.left)
                      if leq(ctx, G, x)), None)
    good_right = next((j for j, y in enumerate(G.right)
                       if leq(ctx, y, G)), None)
    if good_left is not None and good_right is not None:
        return G
    if good_left is not None:
        horse = force_right(G.left[good_left])
        K = add_gift_horse(ctx, G, horse, side="right")
        record = ("L", good_left)
    elif good_right is not None:
        horse = force_left(G.right[good_right])
        K = add_gift_horse(ctx, G, horse, side="left")
        record = ("R", good_right)
    else:
        raise NotPassable(f"no good option on either side: "
                          f"{to_notation(G)}")
    if not (any(leq(ctx, K, x) for x in K.left)
            and any(leq(ctx, y, K) for y in K.right)):
        raise VerificationFailed(
            f"gift horse did not make {to_notation(G)} semi-monotone")
    ctx.cache("realize_good")[G.uid] = record
    return K
