import random

import pytest

from treesearch import (
    InvalidDecisionTreeError,
    InvalidInstanceError,
    format_decision_tree,
    format_instance,
    format_x3c,
    greedy,
    parse_decision_tree,
    parse_instance,
    parse_x3c,
)
from treesearch.gen import random_tree


def test_instance_round_trip_random():
    rng = random.Random(24)
    for _ in range(30):
        t = random_tree(rng.randint(1, 25), rng.randrange(10**6), (0, 99))
        assert parse_instance(format_instance(t)) == t


def test_instance_round_trip_preserves_children_order():
    from treesearch import InputTree

    t = InputTree([-1, 0, 0], [1, 2, 3], [[2, 1], [], []])
    again = parse_instance(format_instance(t))
    assert again.children[0] == (2, 1)
    assert again == t


def test_parse_errors_carry_line_numbers():
    with pytest.raises(InvalidInstanceError, match="line 3"):
        parse_instance("2 0\n0 -1 1\n1 9 1\n")
    with pytest.raises(InvalidInstanceError, match="line 2"):
        parse_instance("2 0\n0 -1 x\n1 0 1\n")


def test_duplicate_node_line_rejected():
    with pytest.raises(InvalidInstanceError, match="twice"):
        parse_instance("2 0\n0 -1 1\n0 -1 1\n")


def test_decision_tree_round_trip():
    rng = random.Random(25)
    for _ in range(20):
        t = random_tree(rng.randint(1, 20), rng.randrange(10**6), (0, 9))
        strategy = greedy(t)
        assert parse_decision_tree(format_decision_tree(strategy)) == strategy


def test_decision_tree_bad_keys_rejected():
    with pytest.raises(InvalidDecisionTreeError):
        parse_decision_tree('{"ask": 1}')


def test_x3c_round_trip():
    n, fam = 6, [(0, 1, 2), (3, 4, 5)]
    assert parse_x3c(format_x3c(n, fam)) == (n, [(0, 1, 2), (3, 4, 5)])


def test_x3c_bad_arity():
    with pytest.raises(InvalidInstanceError, match="exactly 3"):
        parse_x3c("6 1\n0 1\n")
