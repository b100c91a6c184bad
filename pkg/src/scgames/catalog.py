"""Census of threshold-board values over the two-atom diamond.

A monotone payoff on n cells over P4 is a pair of monotone boolean
conditions, one per middle atom; the value of a coloring is the join of
the atoms whose condition holds.  Monotone conditions are in bijection
with antichains of required-black cell sets, so the n-cell boards are
exactly the antichain pairs: M(n)^2 of them, where M runs
2, 3, 6, 20, 168, 7581 (the Dedekind numbers).

build_catalog walks every board by increasing cell count, evaluates it,
and keeps one representative per value class together with the first
witness board at the minimal count.  The shipped table
(data/appendix_p4.json) lists the values through five cells the way a
printed table would: explicit entries per cell count, with the forced
forms <top|G> and <G|bot> and the dual / a-b-swap images left implicit.
expand_fixture rebuilds the full value set from it; verify_appendix
re-evaluates every printed board against its claimed value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator, Optional

from .algebra import force_left, force_right
from .games import (Game, SolverContext, UnknownAtom, dual, equiv, simplify,
                    swap_ab, to_notation)
from .notation import GameSyntaxError, parse_game
from .poset import (AtomPoset, UnknownPoset, builtin, poset_from_json,
                    poset_to_json)
from .setcolor import (CarrierTooLarge, SetColoringGame, Threshold,
                       board_from_json, board_to_json, eval_board)


class FixtureParseError(ValueError):
    """The value-table file does not have the expected shape."""


# Enumerating 5 cells means 7581^2 boards; that only happens sharded.
DEFAULT_ENUM_CAP = 4

# Antichain counts of the n-cube for n = 0..5.
DEDEKIND = (2, 3, 6, 20, 168, 7581)


# -- enumeration ---------------------------------------------------------------

def antichains(n: int) -> Iterator[tuple[int, ...]]:
    """All antichains of subsets of an n-set, as sorted mask tuples.

    Canonical DFS order: each antichain extends its prefix with a
    numerically larger mask incomparable to everything chosen, so the
    stream is stable across runs and shardable by plain index.
    """
    def rec(start: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        yield tuple(chosen)
        for m in range(start, 1 << n):
            if all((m & c) != m and (m & c) != c for c in chosen):
                chosen.append(m)
                yield from rec(m + 1, chosen)
                chosen.pop()
    return rec(0, [])


def _pattern(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def enum_payoffs(n: int, poset: Optional[AtomPoset] = None,
                 max_cells: int = DEFAULT_ENUM_CAP
                 ) -> Iterator[SetColoringGame]:
    """Every n-cell threshold board over the diamond, M(n)^2 in total.

    Fixed order: outer loop the a-antichain, inner the b-antichain, both
    in canonical DFS order, so shards can cut the stream by index.
    """
    poset = builtin("P4") if poset is None else poset
    if poset is not builtin("P4"):
        raise ValueError("payoff enumeration is specific to the two-atom "
                         "diamond; other posets have no antichain-pair form")
    if n > max_cells:
        raise CarrierTooLarge(
            f"{n} cells means {DEDEKIND[n] if n < 6 else '...'}^2 boards; "
            f"cap is {max_cells} (shard the census instead)")
    cells = tuple(f"c{i}" for i in range(n))
    pats = [tuple(_pattern(m, n) for m in ac) for ac in antichains(n)]

    def gen():
        for pa in pats:
            for pb in pats:
                yield SetColoringGame(
                    poset, cells, Threshold(poset, n, {"a": pa, "b": pb}))
    return gen()


# -- the catalog ---------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    value: Game               # simplified representative
    board: SetColoringGame    # first witness, at the minimal cell count
    cells: int


@dataclass(frozen=True)
class ValueCatalog:
    """Pairwise-inequivalent values with their smallest witness boards."""
    poset: AtomPoset
    entries: tuple[CatalogEntry, ...]

    def values(self) -> list[Game]:
        return [e.value for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def build_catalog(ctx: SolverContext, n: int,
                  max_cells: int = DEFAULT_ENUM_CAP) -> ValueCatalog:
    """Evaluate every board with at most n cells and dedup the values.

    Boards run in increasing cell count, so the recorded witness is at
    the minimal count and ties go to the first board enumerated.
    """
    poset = builtin("P4")
    if n > max_cells:
        raise CarrierTooLarge(f"census of {n} cells exceeds the cap of "
                              f"{max_cells}")
    entries: list[CatalogEntry] = []
    seen: dict[int, int] = {}    # value uid -> entry index, aliases included
    for k in range(n + 1):
        for S in enum_payoffs(k, poset, max_cells=max_cells):
            v = eval_board(ctx, S)
            idx = seen.get(v.uid)
            if idx is None:
                for i, e in enumerate(entries):
                    if equiv(ctx, v, e.value):
                        idx = i
                        break
            if idx is None:
                seen[v.uid] = len(entries)
                entries.append(CatalogEntry(v, S, k))
            else:
                seen[v.uid] = idx
    return ValueCatalog(poset, tuple(entries))


def dedupe_values(ctx: SolverContext, games) -> list[Game]:
    """One simplified representative per equivalence class, first seen wins."""
    reps: list[Game] = []
    seen: set[int] = set()
    for g in games:
        g = simplify(ctx, g)
        if g.uid in seen:
            continue
        seen.add(g.uid)
        if not any(equiv(ctx, g, r) for r in reps):
            reps.append(g)
    return reps


def merge_catalogs(ctx: SolverContext, catalogs) -> ValueCatalog:
    """Combine shard catalogs, keeping the smallest witness per value."""
    catalogs = list(catalogs)
    if not catalogs:
        raise ValueError("nothing to merge")
    poset = catalogs[0].poset
    if any(c.poset is not poset for c in catalogs):
        raise ValueError("catalogs over different posets")
    pool = sorted((e for c in catalogs for e in c.entries),
                  key=lambda e: e.cells)   # stable, so shard order breaks ties
    entries: list[CatalogEntry] = []
    seen: dict[int, int] = {}
    for e in pool:
        v = simplify(ctx, e.value)
        idx = seen.get(v.uid)
        if idx is None:
            for i, r in enumerate(entries):
                if equiv(ctx, v, r.value):
                    idx = i
                    break
        if idx is None:
            seen[v.uid] = len(entries)
            entries.append(CatalogEntry(v, e.board, e.cells))
        else:
            seen[v.uid] = idx
    return ValueCatalog(poset, tuple(entries))


def catalog_to_json(cat: ValueCatalog) -> dict:
    return {
        "poset": poset_to_json(cat.poset),
        "entries": [{"value": to_notation(e.value),
                     "cells": e.cells,
                     "board": board_to_json(e.board)} for e in cat.entries],
    }


def catalog_from_json(obj, ctx: Optional[SolverContext] = None
                      ) -> ValueCatalog:
    """Rebuild a snapshot; pass a context to re-simplify the values."""
    poset = poset_from_json(obj["poset"])
    entries = []
    for row in obj["entries"]:
        v = parse_game(row["value"], poset)
        if ctx is not None:
            v = simplify(ctx, v)
        entries.append(CatalogEntry(v, board_from_json(row["board"]),
                                    row["cells"]))
    return ValueCatalog(poset, tuple(entries))


# -- the shipped value table ---------------------------------------------------

@dataclass(frozen=True)
class FixtureEntry:
    value: str                # notation of the claimed value
    a: tuple[str, ...]        # required-black patterns for the a condition
    b: tuple[str, ...]


@dataclass(frozen=True)
class FixtureSection:
    cells: int
    closure_forms: bool       # section also implies <top|G>, <G|bot> forms
    entries: tuple[FixtureEntry, ...]


@dataclass(frozen=True)
class AppendixFixture:
    poset: AtomPoset
    sections: tuple[FixtureSection, ...]    # consecutive cell counts from 0


def _check_patterns(pats, cells: int, where: str) -> tuple[str, ...]:
    out = []
    for s in pats:
        if not isinstance(s, str) or len(s) != cells or set(s) - {"0", "1"}:
            raise FixtureParseError(f"{where}: bad pattern {s!r} for "
                                    f"{cells} cells")
        out.append(s)
    masks = [sum(1 << i for i, c in enumerate(s) if c == "1") for s in out]
    for i, m1 in enumerate(masks):
        for m2 in masks[i + 1:]:
            if m1 & m2 == m1 or m1 & m2 == m2:
                raise FixtureParseError(f"{where}: patterns are not an "
                                        "antichain")
    return tuple(out)


def fixture_from_json(obj) -> AppendixFixture:
    if not isinstance(obj, dict) or "poset" not in obj or "sections" not in obj:
        raise FixtureParseError("expected an object with poset and sections")
    try:
        poset = builtin(obj["poset"])
    except (UnknownPoset, TypeError):
        raise FixtureParseError(f"unknown poset {obj['poset']!r}") from None
    sections = []
    for idx, sec in enumerate(obj["sections"]):
        if not isinstance(sec, dict) or sec.get("cells") != idx:
            raise FixtureParseError("sections must run consecutively from "
                                    "0 cells")
        entries = []
        for e in sec.get("entries", ()):
            if not isinstance(e, dict) or not {"value", "a", "b"} <= set(e):
                raise FixtureParseError(f"section {idx}: entry needs value, "
                                        "a and b")
            where = f"section {idx}, {e.get('value')!r}"
            try:
                parse_game(e["value"], poset)
            except (GameSyntaxError, UnknownAtom) as err:
                raise FixtureParseError(f"{where}: {err}") from None
            entries.append(FixtureEntry(
                e["value"],
                _check_patterns(e["a"], idx, where),
                _check_patterns(e["b"], idx, where)))
        sections.append(FixtureSection(idx, bool(sec.get("closure_forms")),
                                       tuple(entries)))
    return AppendixFixture(poset, tuple(sections))


def load_fixture(path=None) -> AppendixFixture:
    """Load a value table; the default is the one shipped with the package."""
    if path is None:
        text = (resources.files("scgames") / "data"
                / "appendix_p4.json").read_text()
    else:
        text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FixtureParseError(f"not valid JSON: {e}") from None
    return fixture_from_json(obj)


def expand_fixture(fixture: AppendixFixture, n: int,
                   ctx: Optional[SolverContext] = None) -> set[Game]:
    """The full value set through n cells that the table implies.

    Each section contributes its explicit entries; sections flagged with
    closure_forms also contribute <top|G> and <G|bot> for every value
    already obtained on fewer cells.  Everything is closed under dual
    and the a/b swap and deduplicated by equivalence.
    """
    if ctx is None:
        ctx = SolverContext()
    if not 0 <= n < len(fixture.sections):
        raise ValueError(f"table has no section for {n} cells")
    have: list[Game] = []
    seen: set[int] = set()

    def add(g: Game) -> None:
        g = simplify(ctx, g)
        for img in (g, dual(g), swap_ab(g), swap_ab(dual(g))):
            img = simplify(ctx, img)
            if img.uid in seen:
                continue
            seen.add(img.uid)
            if not any(equiv(ctx, img, r) for r in have):
                have.append(img)

    for k in range(n + 1):
        sec = fixture.sections[k]
        if sec.closure_forms:
            for g in list(have):      # snapshot: forms of the smaller values
                add(force_left(g))
                add(force_right(g))
        for e in sec.entries:
            add(parse_game(e.value, fixture.poset))
    return set(have)


# -- re-checking the printed boards ---------------------------------------------

@dataclass(frozen=True)
class AppendixCheck:
    cells: int
    claimed: str     # value notation as listed
    got: str         # what the printed board evaluates to
    ok: bool


@dataclass(frozen=True)
class AppendixReport:
    checks: tuple[AppendixCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[AppendixCheck]:
        return [c for c in self.checks if not c.ok]


def verify_appendix(ctx: SolverContext,
                    fixture: AppendixFixture) -> AppendixReport:
    """Evaluate every explicit board in the table against its listed value."""
    checks = []
    for sec in fixture.sections:
        cells = tuple(f"c{i}" for i in range(sec.cells))
        for e in sec.entries:
            claimed = parse_game(e.value, fixture.poset)
            S = SetColoringGame(
                fixture.poset, cells,
                Threshold(fixture.poset, sec.cells, {"a": e.a, "b": e.b}))
            got = eval_board(ctx, S)
            checks.append(AppendixCheck(sec.cells, e.value, to_notation(got),
                                        equiv(ctx, got, claimed)))
    return AppendixReport(tuple(checks))
