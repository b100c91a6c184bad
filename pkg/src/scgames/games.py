"""Games over an atom poset: construction, order, simplification, predicates.

A game is an atomic leaf [a] (a an atom of the poset) or a composite node
with non-empty sets of left and right options.  Nodes are hash-consed into
a global table: structurally equal games are the same object, and every
game carries a small integer ``uid``.  All memo tables key on uids.

The order is a pair of mutually recursive relations.  ``leq(G, H)`` holds
iff every left option of G is ``tri``-below H, G is ``tri``-below every
right option of H, and additionally ``tri(G, H)`` whenever G or H is
atomic.  ``tri(G, H)`` holds iff some right option of G is leq-below H, or
G is leq-below some left option of H, or both are atomic with comparable
atoms.  Equivalence is leq both ways.  leq is reflexive on all games;
whether it is transitive on non-passable games is an open question we test
empirically but never rely on (see simplify).

A composite game is locally passable iff tri(G, G), i.e. it has a good
option on at least one side; atomic games are locally passable by fiat.
The global predicates quantify the local ones over all positions.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Optional

from .poset import AtomPoset


class UnknownAtom(ValueError):
    """Atom name not present in the poset."""


class EmptyOptionSet(ValueError):
    """Composite games need at least one option on each side."""


class PosetMismatch(ValueError):
    """Operation mixes games (or maps) over different posets."""


class NotAnOption(ValueError):
    """The claimed option is not an option of the game."""


class NoDualityMap(ValueError):
    """The poset has no order-reversing self-map we can find."""


class SimplificationDiverged(RuntimeError):
    """Rewrite pass cap exceeded; indicates a bug, not a hard input."""


_GAMES: dict[tuple, "Game"] = {}
_NEXT_UID = [0]

# structural metric memos, global because games are interned globally
_DEPTH: dict[int, int] = {}
_BRANCH: dict[int, int] = {}
_DUAL: dict[int, "Game"] = {}
_SWAP: dict[int, "Game"] = {}


class Game:
    """Interned game node.  Build via :func:`atomic` / :func:`composite`.

    ``atom`` is None for composites; ``left``/``right`` are () for leaves
    and uid-sorted tuples of Games otherwise.
    """

    __slots__ = ("poset", "atom", "left", "right", "uid")

    def __init__(self, poset: AtomPoset, atom: Optional[str],
                 left: tuple["Game", ...], right: tuple["Game", ...],
                 uid: int):
        self.poset = poset
        self.atom = atom
        self.left = left
        self.right = right
        self.uid = uid

    @property
    def is_atomic(self) -> bool:
        return self.atom is not None

    def __repr__(self) -> str:
        return to_notation(self)


def atomic(a: str, poset: AtomPoset) -> Game:
    if a not in poset:
        raise UnknownAtom(f"atom {a!r} not in poset")
    key = ("a", id(poset), a)
    g = _GAMES.get(key)
    if g is None:
        g = Game(poset, a, (), (), _NEXT_UID[0])
        _NEXT_UID[0] += 1
        _GAMES[key] = g
    return g


def composite(lefts: Iterable[Game], rights: Iterable[Game],
              poset: Optional[AtomPoset] = None) -> Game:
    """Interned composite with the given option sets (deduplicated).

    The poset is inferred from the options when not given explicitly.
    """
    ls = _dedup(lefts)
    rs = _dedup(rights)
    if not ls or not rs:
        raise EmptyOptionSet("left and right option sets must be non-empty")
    if poset is None:
        poset = ls[0].poset
    for g in ls + rs:
        if g.poset is not poset:
            raise PosetMismatch("options live over different posets")
    key = ("c", id(poset), tuple(g.uid for g in ls), tuple(g.uid for g in rs))
    g = _GAMES.get(key)
    if g is None:
        g = Game(poset, None, ls, rs, _NEXT_UID[0])
        _NEXT_UID[0] += 1
        _GAMES[key] = g
    return g


def _dedup(games: Iterable[Game]) -> tuple[Game, ...]:
    seen = {}
    for g in games:
        seen[g.uid] = g
    return tuple(seen[u] for u in sorted(seen))


def top(poset: AtomPoset) -> Game:
    return atomic(poset.top, poset)


def bot(poset: AtomPoset) -> Game:
    return atomic(poset.bot, poset)


class SolverContext:
    """Memo tables for the recursive relations, confined to one thread.

    ``cache(name)`` hands out extra per-context dicts so the other modules
    (sum, map, board evaluation, synthesis) share this object's lifetime
    without this module knowing their key shapes.
    """

    __slots__ = ("leq", "tri", "simp", "passable", "monotone", "local",
                 "stats", "_extra")

    def __init__(self):
        self.leq: dict[tuple[int, int], bool] = {}
        self.tri: dict[tuple[int, int], bool] = {}
        self.simp: dict[int, Game] = {}
        self.passable: dict[int, bool] = {}
        self.monotone: dict[int, bool] = {}
        self.local: dict[int, str] = {}
        self.stats = defaultdict(int)
        self._extra: dict[str, dict] = {}

    def cache(self, name: str) -> dict:
        d = self._extra.get(name)
        if d is None:
            d = self._extra[name] = {}
        return d


def _check_pair(G: Game, H: Game) -> None:
    if G.poset is not H.poset:
        raise PosetMismatch("games live over different posets")


def leq(ctx: SolverContext, G: Game, H: Game) -> bool:
    """The main order relation; see the module docstring for the clauses."""
    _check_pair(G, H)
    return _leq(ctx, G, H)


def tri(ctx: SolverContext, G: Game, H: Game) -> bool:
    """Companion relation of leq ("less than or confused with")."""
    _check_pair(G, H)
    return _tri(ctx, G, H)


def _leq(ctx: SolverContext, G: Game, H: Game) -> bool:
    key = (G.uid, H.uid)
    hit = ctx.leq.get(key)
    if hit is not None:
        return hit
    res = (all(_tri(ctx, gl, H) for gl in G.left)
           and all(_tri(ctx, G, hr) for hr in H.right))
    if res and (G.is_atomic or H.is_atomic):
        res = _tri(ctx, G, H)
    ctx.leq[key] = res
    return res


def _tri(ctx: SolverContext, G: Game, H: Game) -> bool:
    key = (G.uid, H.uid)
    hit = ctx.tri.get(key)
    if hit is not None:
        return hit
    if G.is_atomic and H.is_atomic:
        res = G.poset.le(G.atom, H.atom)
    else:
        res = (any(_leq(ctx, gr, H) for gr in G.right)
               or any(_leq(ctx, G, hl) for hl in H.left))
    ctx.tri[key] = res
    return res


def equiv(ctx: SolverContext, G: Game, H: Game) -> bool:
    _check_pair(G, H)
    return _leq(ctx, G, H) and _leq(ctx, H, G)


def is_good_left(ctx: SolverContext, G: Game, option: Game) -> bool:
    """A left option is good when moving to it is no loss for Left."""
    if option not in G.left:
        raise NotAnOption("not a left option of the game")
    return _leq(ctx, G, option)


def is_good_right(ctx: SolverContext, G: Game, option: Game) -> bool:
    if option not in G.right:
        raise NotAnOption("not a right option of the game")
    return _leq(ctx, option, G)


def local_class(ctx: SolverContext, G: Game) -> str:
    """Strongest local label: atomic, monotone, semi_monotone, passable, none."""
    hit = ctx.local.get(G.uid)
    if hit is not None:
        return hit
    if G.is_atomic:
        res = "atomic"
    else:
        good_l = [_leq(ctx, G, x) for x in G.left]
        good_r = [_leq(ctx, x, G) for x in G.right]
        if all(good_l) and all(good_r):
            res = "monotone"
        elif any(good_l) and any(good_r):
            res = "semi_monotone"
        elif any(good_l) or any(good_r):
            res = "passable"
        else:
            res = "none"
    ctx.local[G.uid] = res
    return res


def is_passable(ctx: SolverContext, G: Game) -> bool:
    """Every position has a good option (or is atomic)."""
    hit = ctx.passable.get(G.uid)
    if hit is not None:
        return hit
    # local passability is exactly tri(G, G)
    res = _tri(ctx, G, G) and all(is_passable(ctx, x)
                                  for x in G.left + G.right)
    ctx.passable[G.uid] = res
    return res


def is_monotone(ctx: SolverContext, G: Game) -> bool:
    """Every option of every position is good."""
    hit = ctx.monotone.get(G.uid)
    if hit is not None:
        return hit
    res = (local_class(ctx, G) in ("atomic", "monotone")
           and all(is_monotone(ctx, x) for x in G.left + G.right))
    ctx.monotone[G.uid] = res
    return res


# -- simplification ----------------------------------------------------------

_SIMPLIFY_PASS_CAP = 1000


def simplify(ctx: SolverContext, G: Game) -> Game:
    """An equivalent, usually smaller game.

    Bottom-up over positions; at each node, a composite equivalent to a
    single atom becomes that atom, and otherwise we iterate to a fixpoint
    of (1) removing dominated options, which is unconditionally sound by
    the gift-horse argument, and (2) bypassing reversible options whose
    reversing target is composite.  The order relation is not known to be
    transitive on non-passable games, so the atom collapse is tested
    directly against the input, every bypass is committed only after an
    explicit equivalence check against the current node, and the final
    result is checked against the input; if that last check fails we
    return the input unchanged rather than a wrong answer.
    """
    hit = ctx.simp.get(G.uid)
    if hit is not None:
        return hit
    if G.is_atomic:
        ctx.simp[G.uid] = G
        return G
    for a in G.poset.elements:
        cand = atomic(a, G.poset)
        if _leq(ctx, cand, G) and _leq(ctx, G, cand):
            ctx.simp[G.uid] = cand
            return cand
    ls = _dedup(simplify(ctx, x) for x in G.left)
    rs = _dedup(simplify(ctx, x) for x in G.right)
    passes = 0
    while True:
        passes += 1
        if passes > _SIMPLIFY_PASS_CAP:
            raise SimplificationDiverged(f"no fixpoint after {passes} passes")
        cur = composite(ls, rs, G.poset)
        ls2 = _prune_dominated(ctx, ls, keep_large=True)
        rs2 = _prune_dominated(ctx, rs, keep_large=False)
        if ls2 is not ls or rs2 is not rs:
            ls, rs = ls2, rs2
            continue
        new_ls = _bypass(ctx, cur, ls, left_side=True)
        if new_ls is not None:
            ls = new_ls
            continue
        new_rs = _bypass(ctx, cur, rs, left_side=False)
        if new_rs is not None:
            rs = new_rs
            continue
        break
    out = composite(ls, rs, G.poset)
    if out is not G and not equiv(ctx, out, G):
        # only reachable through a transitivity failure; keep the input
        ctx.stats["simplify_fallback"] += 1
        out = G
    ctx.simp[G.uid] = out
    return out


def _prune_dominated(ctx, options, keep_large):
    """Drop one dominated option, or return the tuple untouched.

    For left options larger is better, so X goes when some other Y has
    X <= Y; right options dually.  Equivalent pairs keep the smaller uid.
    One removal per call: the relation is not trusted to be transitive,
    and stepwise removal can never empty the set.
    """
    if len(options) < 2:
        return options
    for x in options:
        for y in options:
            if y is x:
                continue
            lo, hi = (x, y) if keep_large else (y, x)
            if _leq(ctx, lo, hi) and (y.uid < x.uid or not _leq(ctx, hi, lo)):
                return tuple(o for o in options if o is not x)
    return options


def _bypass(ctx, cur, options, left_side):
    """First committable reversibility bypass on one side, else None.

    A left option X reverses through a right option X^R with X^R <= cur;
    bypass replaces X by the left options of X^R.  Only composite targets
    are bypassed (the atomic case needs canonical-form rules we do not
    claim), and the rewrite is kept only if it verifiably preserves the
    value of the node.
    """
    for x in options:
        if x.is_atomic:
            continue
        targets = x.right if left_side else x.left
        for t in targets:
            if t.is_atomic:
                continue
            ok = _leq(ctx, t, cur) if left_side else _leq(ctx, cur, t)
            if not ok:
                continue
            rest = tuple(o for o in options if o is not x)
            new = _dedup(rest + (t.left if left_side else t.right))
            cand = (composite(new, cur.right, cur.poset) if left_side
                    else composite(cur.left, new, cur.poset))
            if equiv(ctx, cand, cur):
                return new
    return None


# -- structural metrics ------------------------------------------------------

def depth(G: Game) -> int:
    hit = _DEPTH.get(G.uid)
    if hit is None:
        hit = 0 if G.is_atomic else 1 + max(depth(x)
                                            for x in G.left + G.right)
        _DEPTH[G.uid] = hit
    return hit


def branching(G: Game) -> int:
    """Max option count on either side over all positions; 0 when atomic."""
    hit = _BRANCH.get(G.uid)
    if hit is None:
        local = max(len(G.left), len(G.right))
        hit = max([local] + [branching(x) for x in G.left + G.right])
        _BRANCH[G.uid] = hit
    return hit


def positions(G: Game) -> list[Game]:
    """All distinct positions, the game itself first, options before leaves."""
    out = []
    seen = set()
    stack = [G]
    while stack:
        g = stack.pop()
        if g.uid in seen:
            continue
        seen.add(g.uid)
        out.append(g)
        stack.extend(reversed(g.left + g.right))
    return out


def position_count(G: Game) -> int:
    return len(positions(G))


# -- symmetries --------------------------------------------------------------

def dual(G: Game) -> Game:
    """Swap sides recursively and reverse atoms by the poset's duality map."""
    dm = G.poset.dual_atom_map()
    if dm is None:
        raise NoDualityMap("poset has no order-reversing self-map")
    return _relabel(G, dm, swap_sides=True, memo=_DUAL)


def swap_ab(G: Game) -> Game:
    """Relabel the atoms a and b into each other; needs them incomparable."""
    p = G.poset
    if "a" not in p or "b" not in p or p.le("a", "b") or p.le("b", "a"):
        raise ValueError("poset has no a/b exchange symmetry")
    m = {e: e for e in p.elements}
    m["a"], m["b"] = "b", "a"
    for x in p.elements:
        for y in p.elements:
            if p.le(x, y) != p.le(m[x], m[y]):
                raise ValueError("a/b exchange is not an order automorphism")
    return _relabel(G, m, swap_sides=False, memo=_SWAP)


def _relabel(G, table, swap_sides, memo):
    hit = memo.get(G.uid)
    if hit is not None:
        return hit
    if G.is_atomic:
        out = atomic(table[G.atom], G.poset)
    else:
        ls = tuple(_relabel(x, table, swap_sides, memo) for x in G.left)
        rs = tuple(_relabel(x, table, swap_sides, memo) for x in G.right)
        out = composite(rs, ls, G.poset) if swap_sides else \
            composite(ls, rs, G.poset)
    memo[G.uid] = out
    return out


# -- notation ----------------------------------------------------------------

def to_notation(G: Game, unicode: bool = False) -> str:
    """Braces/bar text form; inverse of notation.parse_game.

    Option lists are printed sorted by their rendered text, so the output
    is stable across construction orders.
    """
    if G.is_atomic:
        p = G.poset
        if G.atom == p.top:
            return "⊤" if unicode else "top"
        if G.atom == p.bot:
            return "⊥" if unicode else "bot"
        return G.atom
    ls = sorted(to_notation(x, unicode) for x in G.left)
    rs = sorted(to_notation(x, unicode) for x in G.right)
    return "{" + ",".join(ls) + "|" + ",".join(rs) + "}"
