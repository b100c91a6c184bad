"""Finite atom posets with top and bottom, products, and monotone maps.

Posets are interned: building the same poset twice (same element order, same
order relation) returns the same object, so ``is`` is a valid "same poset"
test everywhere else in the package.  Element order is part of the identity.
Instances are immutable after construction; the intern table relies on the
GIL for consistency, which is fine for CPython.
"""

from __future__ import annotations

from typing import Iterable, Optional


class NotAPartialOrder(ValueError):
    """The relation has a cycle, so its closure violates antisymmetry."""


class NoTopOrBottom(ValueError):
    """The poset lacks a maximum or a minimum element."""


class UnknownPoset(ValueError):
    """Name does not denote a builtin poset."""


class SupremumUndefined(ValueError):
    """A requested join does not exist in the poset."""


_UNSET = object()

_INTERN: dict[tuple, "AtomPoset"] = {}


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class AtomPoset:
    """A finite partial order on named elements, with top and bottom.

    The order is stored as dense upward bitmask rows after transitive
    closure, so ``le`` is O(1).  Use :func:`make_poset`, :func:`builtin`,
    or :func:`product` to build instances; the constructor is internal.
    """

    __slots__ = (
        "elements",
        "top",
        "bot",
        "key",
        "_index",
        "_up",
        "_components",
        "_pair",
        "_split",
        "_dual",
        "_lattice",
    )

    def __init__(self, elements: tuple[str, ...], up: tuple[int, ...],
                 top: str, bot: str, key: tuple):
        self.elements = elements
        self._index = {e: i for i, e in enumerate(elements)}
        self._up = up
        self.top = top
        self.bot = bot
        self.key = key
        self._components = None
        self._pair = None
        self._split = None
        self._dual = _UNSET
        self._lattice = None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        b = builtin_name(self)
        if b is not None:
            return f"AtomPoset({b})"
        return f"AtomPoset({len(self.elements)} elements)"

    def index(self, name: str) -> int:
        return self._index[name]

    def le(self, x: str, y: str) -> bool:
        """Return whether x <= y."""
        return bool(self._up[self._index[x]] >> self._index[y] & 1)

    def join2(self, x: str, y: str) -> str:
        ix, iy = self._index[x], self._index[y]
        ub = self._up[ix] & self._up[iy]
        minimal = [i for i in _bits(ub)
                   if all(not (self._up[j] >> i & 1) for j in _bits(ub) if j != i)]
        if len(minimal) != 1:
            raise SupremumUndefined(f"join of {x!r} and {y!r} does not exist")
        return self.elements[minimal[0]]

    def join(self, names: Iterable[str]) -> str:
        """Least upper bound of a (possibly empty) set of elements."""
        acc = self.bot
        for x in names:
            acc = self.join2(acc, x)
        return acc

    def is_lattice(self) -> bool:
        if self._lattice is None:
            ok = True
            for x in self.elements:
                for y in self.elements:
                    try:
                        self.join2(x, y)
                    except SupremumUndefined:
                        ok = False
                        break
                if not ok:
                    break
            self._lattice = ok
        return self._lattice

    @property
    def components(self) -> Optional[tuple["AtomPoset", "AtomPoset"]]:
        return self._components

    def pair(self, x: str, y: str) -> str:
        """Element name of (x, y) in a product poset."""
        if self._pair is None:
            raise ValueError("not a product poset")
        return self._pair[(x, y)]

    def split(self, name: str) -> tuple[str, str]:
        if self._split is None:
            raise ValueError("not a product poset")
        return self._split[name]

    def dual_atom_map(self) -> Optional[dict[str, str]]:
        """An order-reversing involution, or None if the search fails.

        The search is deliberately simple: swap top and bottom, keep every
        other element fixed, and for products recurse componentwise.  This
        covers Bool, P3, P4, antichain posets, and their products; posets
        that are self-dual only under a nontrivial relabeling come back None.
        """
        if self._dual is _UNSET:
            self._dual = self._find_dual()
        return self._dual

    def _find_dual(self) -> Optional[dict[str, str]]:
        if self._components is not None:
            a, b = self._components
            da, db = a.dual_atom_map(), b.dual_atom_map()
            if da is None or db is None:
                return None
            return {self._pair[(x, y)]: self._pair[(da[x], db[y])]
                    for x in a.elements for y in b.elements}
        cand = {e: e for e in self.elements}
        cand[self.top] = self.bot
        cand[self.bot] = self.top
        for x in self.elements:
            for y in self.elements:
                if self.le(x, y) != self.le(cand[y], cand[x]):
                    return None
        return cand


def make_poset(elements: Iterable[str], le: Iterable[tuple[str, str]]) -> AtomPoset:
    """Build (or intern) a poset from elements and a generating relation.

    The reflexive-transitive closure is computed here; ``le`` may be any
    generating set of pairs.  Raises NotAPartialOrder on cycles and
    NoTopOrBottom when a maximum or minimum is missing.
    """
    elements = tuple(elements)
    if not elements:
        raise NoTopOrBottom("empty poset")
    if len(set(elements)) != len(elements):
        raise ValueError("duplicate element names")
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    up = [1 << i for i in range(n)]
    for x, y in le:
        if x not in index or y not in index:
            raise ValueError(f"relation mentions unknown element {x!r} or {y!r}")
        up[index[x]] |= 1 << index[y]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            row = up[i]
            new = row
            for j in _bits(row):
                new |= up[j]
            if new != row:
                up[i] = new
                changed = True
    for i in range(n):
        for j in _bits(up[i]):
            if j != i and up[j] >> i & 1:
                raise NotAPartialOrder(
                    f"{elements[i]!r} and {elements[j]!r} are in a cycle")
    tops = [i for i in range(n) if all(up[j] >> i & 1 for j in range(n))]
    bots = [i for i in range(n) if up[i] == (1 << n) - 1]
    if len(tops) != 1 or len(bots) != 1:
        raise NoTopOrBottom("poset must have a unique top and bottom")
    return _intern(elements, tuple(up), elements[tops[0]], elements[bots[0]])


def _intern(elements, up, top, bot) -> AtomPoset:
    key = (elements, up)
    have = _INTERN.get(key)
    if have is None:
        have = AtomPoset(elements, up, top, bot, key)
        _INTERN[key] = have
    return have


_BUILTIN_SPECS = {
    "Bool": (("bot", "top"), (("bot", "top"),)),
    "P3": (("bot", "a", "top"), (("bot", "a"), ("a", "top"))),
    "P4": (("bot", "a", "b", "top"),
           (("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top"))),
}


def builtin(name: str) -> AtomPoset:
    """One of the builtin posets: Bool, P3 (chain), P4 (diamond)."""
    spec = _BUILTIN_SPECS.get(name)
    if spec is None:
        raise UnknownPoset(f"unknown builtin poset {name!r}")
    return make_poset(*spec)


def builtin_name(poset: AtomPoset) -> Optional[str]:
    for name in _BUILTIN_SPECS:
        if builtin(name) is poset:
            return name
    return None


def antichain_poset(n: int, prefix: str = "a") -> AtomPoset:
    """Top, bottom, and n pairwise incomparable atoms a1..an."""
    atoms = [f"{prefix}{i}" for i in range(1, n + 1)]
    le = [("bot", x) for x in atoms] + [(x, "top") for x in atoms]
    le.append(("bot", "top"))
    return make_poset(["bot", *atoms, "top"], le)


def product(a: AtomPoset, b: AtomPoset) -> AtomPoset:
    """Componentwise product, with elements named "(x,y)"."""
    elements = []
    pair = {}
    for x in a.elements:
        for y in b.elements:
            name = f"({x},{y})"
            pair[(x, y)] = name
            elements.append(name)
    nb = len(b.elements)
    up = []
    for i, x in enumerate(a.elements):
        arow = a._up[i]
        for j in range(nb):
            brow = b._up[j]
            row = 0
            for i2 in _bits(arow):
                base = i2 * nb
                row |= sum(1 << (base + j2) for j2 in _bits(brow))
            up.append(row)
    p = _intern(tuple(elements), tuple(up),
                pair[(a.top, b.top)], pair[(a.bot, b.bot)])
    if p._pair is None:
        p._components = (a, b)
        p._pair = pair
        p._split = {v: k for k, v in pair.items()}
    return p


def poset_to_json(p: AtomPoset) -> dict:
    name = builtin_name(p)
    if name is not None:
        return {"builtin": name}
    le = []
    for i, x in enumerate(p.elements):
        for j in _bits(p._up[i]):
            if j != i:
                le.append([x, p.elements[j]])
    return {"elements": list(p.elements), "le": le}


def poset_from_json(obj) -> AtomPoset:
    if not isinstance(obj, dict):
        raise ValueError("poset must be a JSON object")
    if "builtin" in obj:
        return builtin(obj["builtin"])
    if "elements" not in obj:
        raise ValueError("poset object needs 'builtin' or 'elements'")
    le = [tuple(pr) for pr in obj.get("le", ())]
    return make_poset(obj["elements"], le)


class MonotoneFn:
    """A monotone map between atom posets, given by an explicit table.

    Totality and monotonicity are checked at construction time.
    """

    __slots__ = ("domain", "codomain", "table")

    def __init__(self, domain: AtomPoset, codomain: AtomPoset,
                 table: dict[str, str]):
        for x in domain.elements:
            if x not in table:
                raise ValueError(f"table is missing {x!r}")
            if table[x] not in codomain:
                raise ValueError(f"table value {table[x]!r} not in codomain")
        if len(table) != len(domain.elements):
            raise ValueError("table mentions elements outside the domain")
        for i, x in enumerate(domain.elements):
            fx = table[x]
            for j in _bits(domain._up[i]):
                if not codomain.le(fx, table[domain.elements[j]]):
                    raise ValueError(
                        f"not monotone: {x!r} <= {domain.elements[j]!r} but "
                        f"{fx!r} !<= {table[domain.elements[j]]!r}")
        self.domain = domain
        self.codomain = codomain
        self.table = dict(table)

    def __call__(self, x: str) -> str:
        return self.table[x]

    def __repr__(self) -> str:
        return f"MonotoneFn({len(self.domain)} -> {len(self.codomain)})"


_PROJ_F: dict[int, MonotoneFn] = {}
_PROJ_G: dict[int, MonotoneFn] = {}
_IDENTITY: dict[int, MonotoneFn] = {}


def projector_f(a: AtomPoset) -> MonotoneFn:
    """P3 x A -> A: top goes to top, bot to bot, and 'a' selects the A part."""
    fn = _PROJ_F.get(id(a))
    if fn is None:
        p3 = builtin("P3")
        dom = product(p3, a)
        table = {}
        for x in p3.elements:
            for y in a.elements:
                table[dom.pair(x, y)] = (
                    a.top if x == "top" else a.bot if x == "bot" else y)
        fn = MonotoneFn(dom, a, table)
        _PROJ_F[id(a)] = fn
    return fn


def projector_g(a: AtomPoset) -> MonotoneFn:
    """(P4 x A) x A -> A: top/bot are absorbing; 'a' picks the first A
    component and 'b' the second."""
    fn = _PROJ_G.get(id(a))
    if fn is None:
        p4 = builtin("P4")
        inner = product(p4, a)
        dom = product(inner, a)
        table = {}
        for x in p4.elements:
            for y in a.elements:
                for z in a.elements:
                    name = dom.pair(inner.pair(x, y), z)
                    table[name] = (a.top if x == "top" else
                                   a.bot if x == "bot" else
                                   y if x == "a" else z)
        fn = MonotoneFn(dom, a, table)
        _PROJ_G[id(a)] = fn
    return fn


def identity_fn(a: AtomPoset) -> MonotoneFn:
    fn = _IDENTITY.get(id(a))
    if fn is None:
        fn = MonotoneFn(a, a, {e: e for e in a.elements})
        _IDENTITY[id(a)] = fn
    return fn
