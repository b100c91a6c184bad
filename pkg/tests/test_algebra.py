import random

import pytest

from conftest import P3, P4, parse
from scgames.algebra import (
    GadgetKind,
    NotAGiftHorse,
    add_gift_horse,
    choice,
    coupling,
    downr,
    falsify_gadget_game,
    force_left,
    force_right,
    gadget_apply,
    gadget_apply2,
    gadget_game,
    map_game,
    substitute_atoms,
    sum_games,
    upl,
)
from scgames.games import (
    PosetMismatch,
    UnknownAtom,
    atomic,
    bot,
    branching,
    composite,
    depth,
    dual,
    equiv,
    is_passable,
    leq,
    local_class,
    top,
)
from scgames.poset import builtin, identity_fn, product, projector_f
from scgames.sampling import random_game, random_passable_game


def test_sum_of_atoms_is_atomic_pair(ctx):
    s = sum_games(ctx, atomic("a", P4), atomic("b", P4))
    pr = product(P4, P4)
    assert s is atomic(pr.pair("a", "b"), pr)


def test_sum_with_one_atomic_side(ctx):
    s = sum_games(ctx, parse("{top|bot}"), atomic("b", P4))
    pr = product(P4, P4)
    expect = composite([atomic(pr.pair("top", "b"), pr)],
                       [atomic(pr.pair("bot", "b"), pr)], pr)
    assert s is expect


def test_sum_interleaves_options(ctx):
    g = parse("{top|bot}")
    s = sum_games(ctx, g, g)
    assert len(s.left) == 2 and len(s.right) == 2
    assert depth(s) == 2


def test_sum_crosses_posets(ctx):
    s = sum_games(ctx, top(P3), bot(P4))
    pr = product(P3, P4)
    assert s is atomic(pr.pair("top", "bot"), pr)


def test_sum_congruence_for_passable_games(ctx):
    # equal values + equal values stay equal values, given passability;
    # the partner of each sample is itself plus a harmless extra option
    rng = random.Random(2001)
    for _ in range(30):
        g = random_passable_game(ctx, rng, P4, max_depth=2, max_branch=2)
        h = random_passable_game(ctx, rng, P4, max_depth=2, max_branch=2)
        g2 = add_gift_horse(ctx, g, bot(P4), "left") \
            if not g.is_atomic else g
        h2 = add_gift_horse(ctx, h, top(P4), "right") \
            if not h.is_atomic else h
        assert equiv(ctx, sum_games(ctx, g, h), sum_games(ctx, g2, h2))


def test_map_identity_is_identity(ctx):
    rng = random.Random(2002)
    for _ in range(20):
        g = random_game(rng, P4, max_depth=3, max_branch=2)
        assert map_game(ctx, identity_fn(P4), g) is g


def test_map_applies_table_to_leaves(ctx):
    f = projector_f(P4)
    dom = f.domain
    g = atomic(dom.pair("a", "b"), dom)
    assert map_game(ctx, f, g) is atomic("b", P4)


def test_map_preserves_shape(ctx):
    rng = random.Random(2003)
    f = projector_f(P4)
    for _ in range(20):
        g = random_game(rng, f.domain, max_depth=3, max_branch=2)
        m = map_game(ctx, f, g)
        assert depth(m) == depth(g)
        assert branching(m) <= branching(g)


def test_map_rejects_wrong_domain(ctx):
    with pytest.raises(PosetMismatch):
        map_game(ctx, projector_f(P4), top(P4))


def test_gadget_game_shapes():
    assert gadget_game(GadgetKind.LEFT_FORCE) is parse("{top|a}", P3)
    assert gadget_game(GadgetKind.RIGHT_FORCE) is parse("{a|bot}", P3)
    assert gadget_game(GadgetKind.CHOICE) is \
        parse("{{top|a},{top|b}|{a|bot},{b|bot}}")
    assert gadget_game(GadgetKind.COUPLING) is parse("{a,{top|b}|{a|bot},b}")


def test_constructor_templates():
    a, b = atomic("a", P4), atomic("b", P4)
    assert force_left(a) is parse("{top|a}")
    assert force_right(a) is parse("{a|bot}")
    assert coupling(a, b) is parse("{a,{top|b}|{a|bot},b}")
    assert choice(a, b) is parse("{{top|a},{top|b}|{a|bot},{b|bot}}")


def test_gadget_apply_requires_gadget_poset(ctx):
    with pytest.raises(PosetMismatch):
        gadget_apply(ctx, top(P4), top(P4))
    with pytest.raises(PosetMismatch):
        gadget_apply2(ctx, top(P3), top(P4), top(P4))


def _samples(rng, n, **kw):
    return [random_game(rng, P4, kw.get("max_depth", 2), 2) for _ in range(n)]


def test_left_force_equation(ctx):
    x = gadget_game(GadgetKind.LEFT_FORCE)
    rng = random.Random(2004)
    for g in _samples(rng, 50):
        assert equiv(ctx, gadget_apply(ctx, x, g), force_left(g))


def test_right_force_equation(ctx):
    x = gadget_game(GadgetKind.RIGHT_FORCE)
    rng = random.Random(2005)
    for g in _samples(rng, 50):
        assert equiv(ctx, gadget_apply(ctx, x, g), force_right(g))


def test_choice_equation(ctx):
    # scoped to passable arguments; see test_binary_equations_need_passability
    x = gadget_game(GadgetKind.CHOICE)
    rng = random.Random(2006)
    for _ in range(50):
        g = random_passable_game(ctx, rng, P4, 2, 2)
        h = random_passable_game(ctx, rng, P4, 2, 2)
        assert equiv(ctx, gadget_apply2(ctx, x, g, h), choice(g, h))


def test_coupling_equation(ctx):
    x = gadget_game(GadgetKind.COUPLING)
    rng = random.Random(2007)
    for _ in range(50):
        g = random_passable_game(ctx, rng, P4, 2, 2)
        h = random_passable_game(ctx, rng, P4, 2, 2)
        assert equiv(ctx, gadget_apply2(ctx, x, g, h), coupling(g, h))


def test_binary_equations_need_passability(ctx):
    # smallest counterexamples found by exhausting depth-1 games: the
    # coupling action and the identity action both break when an
    # argument is not passable, so the passable scoping above is not
    # an artifact of weak sampling
    g, h = parse("{bot|bot}"), parse("{bot|a}")
    assert is_passable(ctx, g) and not is_passable(ctx, h)
    xc = gadget_game(GadgetKind.COUPLING)
    assert not equiv(ctx, gadget_apply2(ctx, xc, g, h), coupling(g, h))
    xi = parse("{{top|a}|a}", P3)
    assert not equiv(ctx, gadget_apply(ctx, xi, h), h)


def test_non_gadget_still_acts_as_identity(ctx):
    # {{top|a}|a} + G keeps the value of a passable G, yet it is not a
    # gadget game: substitution produces {{top|G}|G}, which can differ
    x = parse("{{top|a}|a}", P3)
    rng = random.Random(2008)
    for _ in range(20):
        g = random_passable_game(ctx, rng, P4, 2, 2)
        assert equiv(ctx, gadget_apply(ctx, x, g), g)
    found = falsify_gadget_game(ctx, x, trials=50,
                                rng=random.Random(2009))
    assert found is not None
    (g,) = found
    assert not equiv(ctx, gadget_apply(ctx, x, g),
                     substitute_atoms(x, {"a": g}, P4))


def test_falsify_finds_nothing_for_real_gadgets(ctx):
    for kind in (GadgetKind.LEFT_FORCE, GadgetKind.RIGHT_FORCE):
        x = gadget_game(kind)
        assert falsify_gadget_game(ctx, x, trials=50,
                                   rng=random.Random(2010)) is None


def test_passability_closure_is_exact(ctx):
    rng = random.Random(2011)
    for _ in range(30):
        g = random_passable_game(ctx, rng, P4, max_depth=2, max_branch=2)
        h = random_passable_game(ctx, rng, P4, max_depth=2, max_branch=2)
        assert is_passable(ctx, force_left(g))
        assert is_passable(ctx, force_right(g))
        assert is_passable(ctx, choice(g, h))
        assert is_passable(ctx, coupling(g, h))


def test_choice_of_forced_merges_option_sets(ctx):
    # {G1..Gk|bot} and {H1..Hm|bot} glued by the choice shape give
    # {G1..Gk,H1..Hm|bot}; this is what the halving synthesis leans on
    rng = random.Random(2012)
    for _ in range(30):
        s = [random_game(rng, P4, 1, 2) for _ in range(rng.randint(1, 2))]
        t = [random_game(rng, P4, 1, 2) for _ in range(rng.randint(1, 2))]
        cs = composite(s, [bot(P4)], P4)
        ct = composite(t, [bot(P4)], P4)
        merged = composite(s + t, [bot(P4)], P4)
        assert equiv(ctx, choice(cs, ct), merged)


def test_locally_monotone_pair_equals_its_coupling(ctx):
    rng = random.Random(2013)
    hits = 0
    for _ in range(200):
        g = random_game(rng, P4, 1, 2)
        h = random_game(rng, P4, 1, 2)
        k = composite([g], [h], P4)
        if local_class(ctx, k) == "monotone":
            hits += 1
            assert equiv(ctx, k, coupling(g, h))
    assert hits > 5


def test_upl_structure():
    assert upl([atomic("a", P4)]) is parse("{top|{a|bot}}")
    assert downr([atomic("a", P4)]) is parse("{{top|a}|bot}")
    with pytest.raises(ValueError):
        upl([])


def test_upl_is_left_equivalent_replacement(ctx):
    rng = random.Random(2014)
    for _ in range(30):
        s = [random_game(rng, P4, 1, 2) for _ in range(rng.randint(1, 2))]
        x = random_game(rng, P4, 1, 2)
        y = random_game(rng, P4, 1, 2)
        with_upl = composite([upl(s), x], [y], P4)
        plain = composite(s + [x], [y], P4)
        assert equiv(ctx, with_upl, plain)


def test_downr_is_dual_of_upl():
    rng = random.Random(2015)
    for _ in range(20):
        g = random_game(rng, P4, 2, 2)
        assert dual(upl([g])) is downr([dual(g)])


def test_gift_horse_example(ctx):
    g = parse("{top|bot}")
    out = add_gift_horse(ctx, g, bot(P4), "left")
    assert out is parse("{bot,top|bot}")
    assert equiv(ctx, out, g)


def test_gift_horse_rejects_bad_offer(ctx):
    g = parse("{bot|bot}")
    with pytest.raises(NotAGiftHorse):
        add_gift_horse(ctx, g, top(P4), "left")
    with pytest.raises(NotAGiftHorse):
        add_gift_horse(ctx, parse("a"), bot(P4), "left")
    with pytest.raises(ValueError):
        add_gift_horse(ctx, g, bot(P4), "sideways")


def test_gift_horse_semi_monotonization(ctx):
    # a passable game with a good left option G_i tolerates the extra
    # right option {G_i|bot} and becomes locally semi-monotone
    rng = random.Random(2016)
    hits = 0
    for _ in range(60):
        k = random_passable_game(ctx, rng, P4, max_depth=2, max_branch=2)
        if k.is_atomic:
            continue
        good = [x for x in k.left if leq(ctx, k, x)]
        if not good:
            continue
        hits += 1
        k2 = add_gift_horse(ctx, k, force_right(good[0]), "right")
        assert equiv(ctx, k2, k)
        assert local_class(ctx, k2) in ("semi_monotone", "monotone")
    assert hits > 10


def test_substitute_atoms(ctx):
    x = parse("{top|a}", P3)
    g = parse("{a,b|bot}")
    assert substitute_atoms(x, {"a": g}, P4) is composite([top(P4)], [g], P4)
    with pytest.raises(UnknownAtom):
        substitute_atoms(parse("{a|bot}", P3), {}, P4)
    with pytest.raises(PosetMismatch):
        substitute_atoms(x, {"a": top(P3)}, P4)
