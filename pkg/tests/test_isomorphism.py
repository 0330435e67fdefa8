import random

import pytest

from shrubmine import (
    Dataset,
    add_leaf,
    find_embedding,
    is_frequent,
    parse_tree,
    subtree_iso,
    support_set,
    tree_equal,
)

from reference import naive_subtree_iso, random_tree


def test_single_vertex_embeds_everywhere():
    rng = random.Random(1)
    single = parse_tree("()")
    for _ in range(50):
        assert subtree_iso(single, random_tree(rng, rng.randint(1, 20)), "unordered")
        assert subtree_iso(single, random_tree(rng, rng.randint(1, 20)), "ordered")


def test_star_embeds_below_root_with_witness():
    star = parse_tree("(()())")
    target = parse_tree("((()()))")
    witness = find_embedding(star, target, "unordered")
    assert witness is not None
    middle = target.children[target.root][0]
    assert witness.mapping[star.root] == middle
    assert witness.is_valid_for(star, target, "unordered")
    assert naive_subtree_iso(star, target, "unordered")


def test_ordered_child_order_matters():
    pattern = parse_tree("(()(()))")
    target = parse_tree("((())())")
    assert not subtree_iso(pattern, target, "ordered")
    reversed_pattern = parse_tree("((())())")
    assert subtree_iso(reversed_pattern, target, "ordered")
    assert naive_subtree_iso(pattern, target, "ordered") is False
    assert naive_subtree_iso(reversed_pattern, target, "ordered") is True


def test_tree_equal_examples():
    t = parse_tree("(()(()))")
    assert tree_equal(t, t, "ordered")
    permuted = parse_tree("((())())")
    assert tree_equal(t, permuted, "unordered")
    assert not tree_equal(t, permuted, "ordered")
    assert not tree_equal(t, parse_tree("(())"), "unordered")


def test_tree_equal_is_mutual_containment():
    rng = random.Random(3)
    for _ in range(500):
        a = random_tree(rng, rng.randint(1, 8))
        b = random_tree(rng, rng.randint(1, 8))
        for mode in ("ordered", "unordered"):
            mutual = subtree_iso(a, b, mode) and subtree_iso(b, a, mode)
            assert mutual == tree_equal(a, b, mode)


def test_support_set_examples():
    ds = Dataset.from_trees([parse_tree("(())"), parse_tree("((()()))")], "unordered")
    single = parse_tree("()")
    assert support_set(single, ds).indices == (0, 1)
    star2 = parse_tree("(()())")
    assert support_set(star2, ds).indices == (1,)
    for i, t in enumerate(ds.trees):
        assert i in support_set(t, ds).indices


def test_is_frequent_examples():
    ds = Dataset.from_trees([parse_tree("(())"), parse_tree("((()()))")], "unordered")
    assert is_frequent(parse_tree("(()())"), ds, 1)
    assert not is_frequent(parse_tree("(()())"), ds, 2)
    assert not is_frequent(parse_tree("()"), ds, 3)
    with pytest.raises(ValueError):
        is_frequent(parse_tree("()"), ds, 0)


def test_reflexive_and_transitive():
    rng = random.Random(5)
    for _ in range(500):
        a = random_tree(rng, rng.randint(1, 8))
        b = random_tree(rng, rng.randint(1, 10))
        c = random_tree(rng, rng.randint(1, 12))
        for mode in ("ordered", "unordered"):
            assert subtree_iso(a, a, mode)
            if subtree_iso(a, b, mode) and subtree_iso(b, c, mode):
                assert subtree_iso(a, c, mode)


def test_antisymmetry_up_to_iso():
    rng = random.Random(6)
    for _ in range(400):
        a = random_tree(rng, rng.randint(1, 8))
        b = random_tree(rng, rng.randint(1, 8))
        for mode in ("ordered", "unordered"):
            if subtree_iso(a, b, mode) and subtree_iso(b, a, mode):
                assert tree_equal(a, b, mode)


def test_agreement_with_embedding_oracle_small():
    rng = random.Random(8)
    pool = [random_tree(rng, rng.randint(1, 8)) for _ in range(40)]
    for a in pool:
        for b in pool:
            for mode in ("ordered", "unordered"):
                assert subtree_iso(a, b, mode) == naive_subtree_iso(a, b, mode)


def test_monotone_under_add_leaf():
    rng = random.Random(9)
    for _ in range(200):
        pattern = random_tree(rng, rng.randint(1, 6))
        target = random_tree(rng, rng.randint(1, 8))
        for mode in ("ordered", "unordered"):
            if subtree_iso(pattern, target, mode):
                for v in target.nodes():
                    assert subtree_iso(pattern, add_leaf(target, v), mode)


def test_witnesses_validate():
    rng = random.Random(10)
    found = 0
    for _ in range(500):
        pattern = random_tree(rng, rng.randint(1, 6))
        target = random_tree(rng, rng.randint(1, 9))
        for mode in ("ordered", "unordered"):
            witness = find_embedding(pattern, target, mode)
            assert (witness is not None) == subtree_iso(pattern, target, mode)
            if witness is not None:
                found += 1
                assert witness.is_valid_for(pattern, target, mode)
    assert found > 100
