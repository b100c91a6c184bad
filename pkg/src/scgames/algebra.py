"""Sum, map, gift horses, and the gadget constructors.

The sum of games over posets A and B lives over product(A, B); both
players keep their options in either summand.  Mapping a monotone function
over a game relabels its leaves.  Composing the two with the projector
functions gives "gadget application": a game X over P3 (or P4) with marked
atom a (and b) acts on games G (and H), and for the four gadget games this
action agrees, up to equivalence, with the corresponding direct constructor
below.

Scope warning: the agreement is guaranteed for passable arguments only.
Sum does not respect equivalence of arbitrary games, and the agreement for
the binary gadgets genuinely fails on non-passable inputs (smallest found:
coupling applied to {bot|bot} and {bot|a}).  The unary forcing equations
have no known failures even off the passable class.
"""

from __future__ import annotations

import enum
import random
from typing import Iterable, Optional

from .games import (
    Game,
    PosetMismatch,
    SolverContext,
    UnknownAtom,
    atomic,
    bot,
    composite,
    equiv,
    top,
    tri,
)
from .poset import AtomPoset, MonotoneFn, builtin, product, projector_f, \
    projector_g


class NotAGiftHorse(ValueError):
    """The offered option fails the tri precondition, so adding it could
    change the value."""


class GadgetKind(enum.Enum):
    LEFT_FORCE = "left_force"
    RIGHT_FORCE = "right_force"
    CHOICE = "choice"
    COUPLING = "coupling"


def sum_games(ctx: SolverContext, G: Game, H: Game) -> Game:
    """Disjunctive sum over the product poset."""
    memo = ctx.cache("sum")
    key = (G.uid, H.uid)
    hit = memo.get(key)
    if hit is not None:
        return hit
    pr = product(G.poset, H.poset)
    if G.is_atomic and H.is_atomic:
        out = atomic(pr.pair(G.atom, H.atom), pr)
    else:
        lefts = [sum_games(ctx, gl, H) for gl in G.left]
        lefts += [sum_games(ctx, G, hl) for hl in H.left]
        rights = [sum_games(ctx, gr, H) for gr in G.right]
        rights += [sum_games(ctx, G, hr) for hr in H.right]
        out = composite(lefts, rights, pr)
    memo[key] = out
    return out


def map_game(ctx: SolverContext, f: MonotoneFn, G: Game) -> Game:
    """Apply a monotone function to every leaf."""
    if f.domain is not G.poset:
        raise PosetMismatch("function domain differs from the game's poset")
    memo = ctx.cache("map")
    key = (id(f), G.uid)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if G.is_atomic:
        out = atomic(f(G.atom), f.codomain)
    else:
        out = composite([map_game(ctx, f, x) for x in G.left],
                        [map_game(ctx, f, x) for x in G.right],
                        f.codomain)
    memo[key] = out
    return out


def gadget_apply(ctx: SolverContext, X: Game, G: Game) -> Game:
    """X + G collapsed back to G's poset through the P3 projector."""
    if X.poset is not builtin("P3"):
        raise PosetMismatch("gadget must live over P3")
    return map_game(ctx, projector_f(G.poset), sum_games(ctx, X, G))


def gadget_apply2(ctx: SolverContext, X: Game, G: Game, H: Game) -> Game:
    """X + G + H collapsed through the P4 projector; sums associate left."""
    if X.poset is not builtin("P4"):
        raise PosetMismatch("gadget must live over P4")
    if G.poset is not H.poset:
        raise PosetMismatch("the two argument games must share a poset")
    return map_game(ctx, projector_g(G.poset),
                    sum_games(ctx, sum_games(ctx, X, G), H))


# -- the four direct constructors ---------------------------------------------

def force_left(G: Game) -> Game:
    return composite([top(G.poset)], [G])


def force_right(G: Game) -> Game:
    return composite([G], [bot(G.poset)])


def choice(G: Game, H: Game) -> Game:
    return composite([force_left(G), force_left(H)],
                     [force_right(G), force_right(H)])


def coupling(G: Game, H: Game) -> Game:
    return composite([G, force_left(H)], [force_right(G), H])


def gadget_game(kind: GadgetKind) -> Game:
    """The fixed game over P3/P4 whose application realizes the constructor."""
    if kind in (GadgetKind.LEFT_FORCE, GadgetKind.RIGHT_FORCE):
        a = atomic("a", builtin("P3"))
        return force_left(a) if kind is GadgetKind.LEFT_FORCE \
            else force_right(a)
    a, b = atomic("a", builtin("P4")), atomic("b", builtin("P4"))
    return choice(a, b) if kind is GadgetKind.CHOICE else coupling(a, b)


def upl(S: Iterable[Game]) -> Game:
    """A package of left options: one forced entry into the whole set."""
    opts = tuple(S)
    if not opts:
        raise ValueError("need at least one game")
    p = opts[0].poset
    return force_left(composite(opts, [bot(p)], p))


def downr(S: Iterable[Game]) -> Game:
    opts = tuple(S)
    if not opts:
        raise ValueError("need at least one game")
    p = opts[0].poset
    return force_right(composite([top(p)], opts, p))


def add_gift_horse(ctx: SolverContext, G: Game, H: Game, side: str) -> Game:
    """Add an option that is provably harmless, preserving the value.

    A left gift horse needs tri(H, G); a right one needs tri(G, H).  The
    preservation holds for all games, not just passable ones.
    """
    if G.is_atomic:
        raise NotAGiftHorse("atomic games take no extra options")
    if side == "left":
        if not tri(ctx, H, G):
            raise NotAGiftHorse("tri(H, G) fails")
        out = composite(G.left + (H,), G.right, G.poset)
    elif side == "right":
        if not tri(ctx, G, H):
            raise NotAGiftHorse("tri(G, H) fails")
        out = composite(G.left, G.right + (H,), G.poset)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    assert equiv(ctx, out, G), "gift horse changed the value: bug"
    return out


def substitute_atoms(X: Game, subst: dict[str, Game],
                     poset: AtomPoset) -> Game:
    """Replace marked leaves by whole games; extrema map to extrema.

    Every leaf of X must be top, bottom, or a key of subst; the images all
    live over the target poset.
    """
    for g in subst.values():
        if g.poset is not poset:
            raise PosetMismatch("substitution images over the wrong poset")

    def walk(g: Game) -> Game:
        if g.is_atomic:
            if g.atom == g.poset.top:
                return top(poset)
            if g.atom == g.poset.bot:
                return bot(poset)
            if g.atom in subst:
                return subst[g.atom]
            raise UnknownAtom(f"no substitution image for {g.atom!r}")
        return composite([walk(x) for x in g.left],
                         [walk(x) for x in g.right], poset)

    return walk(X)


def falsify_gadget_game(ctx: SolverContext, X: Game, trials: int = 50,
                        rng: Optional[random.Random] = None,
                        max_depth: int = 2, max_branch: int = 2):
    """Search for a witness that X does not act by substitution.

    Random passable games over the diamond poset are thrown at X; the
    first G (and H, when X is binary over P4) with gadget application
    inequivalent to literal substitution is returned, else None.  Only
    passable candidates are fair: non-passable ones refute even the four
    true gadgets.  A None cannot certify gadget-hood, only fail to
    refute it.
    """
    from .sampling import random_passable_game

    if rng is None:
        rng = random.Random(0)
    target = builtin("P4")
    binary = X.poset is builtin("P4")
    if not binary and X.poset is not builtin("P3"):
        raise PosetMismatch("gadget candidates live over P3 or P4")
    for _ in range(trials):
        g = random_passable_game(ctx, rng, target, max_depth, max_branch)
        if binary:
            h = random_passable_game(ctx, rng, target, max_depth, max_branch)
            lhs = gadget_apply2(ctx, X, g, h)
            rhs = substitute_atoms(X, {"a": g, "b": h}, target)
            if not equiv(ctx, lhs, rhs):
                return (g, h)
        else:
            lhs = gadget_apply(ctx, X, g)
            rhs = substitute_atoms(X, {"a": g}, target)
            if not equiv(ctx, lhs, rhs):
                return (g,)
    return None
