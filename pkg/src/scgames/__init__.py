"""Combinatorial values of monotone set coloring games.

The pieces, bottom up: finite atom posets with top and bottom (poset),
games over them with the order, equivalence, and simplification
machinery (games, notation, sampling), sums, atom maps, and the gadget
constructors (algebra), boards with monotone payoffs and their
evaluation (setcolor), synthesis of a board for any passable game
(realize), and the exhaustive small-board census (catalog).  The cli
module wires these to the scgames command.
"""

from .poset import AtomPoset, antichain_poset, builtin, make_poset
from .games import (Game, SolverContext, atomic, composite, dual, equiv,
                    is_monotone, is_passable, leq, simplify, swap_ab,
                    to_notation, top, bot)
from .notation import parse_game
from .algebra import choice, coupling, force_left, force_right, map_game, \
    sum_games
from .setcolor import (SetColoringGame, eval_board, eval_position,
                       load_board, save_board, shipped_board)
from .realize import RealizationReport, realize, size_bound
from .catalog import build_catalog, expand_fixture, load_fixture, \
    verify_appendix

__version__ = "0.1.0"

__all__ = [
    "AtomPoset", "antichain_poset", "builtin", "make_poset",
    "Game", "SolverContext", "atomic", "composite", "dual", "equiv",
    "is_monotone", "is_passable", "leq", "simplify", "swap_ab",
    "to_notation", "top", "bot",
    "parse_game",
    "choice", "coupling", "force_left", "force_right", "map_game",
    "sum_games",
    "SetColoringGame", "eval_board", "eval_position", "load_board",
    "save_board", "shipped_board",
    "RealizationReport", "realize", "size_bound",
    "build_catalog", "expand_fixture", "load_fixture", "verify_appendix",
    "__version__",
]
