from hypothesis import given

import reference as ref
from clausal.builders import gen_php
from clausal.cnf import Cnf, clause, satisfies
from clausal.errors import TooManyVariables
from clausal.oracle import implies, is_redundant, is_satisfiable, sat_brute
from clausal.propagation import up_derives
from conftest import clauses, cnfs

import pytest

X, Y = 1, 2


def test_sat_examples():
    assert not sat_brute(Cnf.from_lists([[X], [-X]])).satisfiable
    assert not is_satisfiable(gen_php(2))
    v = sat_brute(Cnf.from_lists([[X, Y]]))
    assert v.satisfiable and v.witness == {1: 1, 2: 0}


def test_scale_limit():
    with pytest.raises(TooManyVariables):
        sat_brute(Cnf([(v,) for v in range(1, 27)]))


def test_redundant_examples():
    g = Cnf.from_lists([[X, Y], [X, -Y]])
    assert is_redundant(clause(-X, -Y), g)
    g3 = Cnf.from_lists([[X, Y], [X, -Y], [-X, -Y]])
    # adding y makes the formula unsatisfiable
    assert not is_redundant(clause(Y), g3)
    assert is_redundant(clause(X, Y), g)


def test_implies_examples():
    assert implies(Cnf.from_lists([[X]]), clause(X, Y))
    assert not implies(Cnf.from_lists([[X, Y], [X, -Y]]), clause(-X, -Y))


@given(cnfs(max_var=6, max_clauses=12))
def test_agrees_with_reference_and_witness_is_model(g):
    v = sat_brute(g)
    assert v.satisfiable == ref.satisfiable(g.clauses)
    if v.satisfiable:
        assert set(v.witness) == set(range(1, g.num_vars + 1))
        alpha = {k if b else -k for k, b in v.witness.items()}
        assert satisfies(alpha, g)
    assert sat_brute(g) == v


@given(cnfs(max_var=6, max_clauses=10), clauses())
def test_up_derives_implies_entailment(g, c):
    if up_derives(g, c):
        assert implies(g, c)
    assert implies(g, c) == ref.entails(g.clauses, c)
