import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import reference as ref
from clausal.builders import gen_cook_er_php, gen_php
from clausal.cnf import SATISFIED, Cnf, clause, restrict
from clausal.errors import InputNotVerified, ProofFormatError, UnsupportedSystem
from clausal.model import (
    AddBC, AddRAT, AddSBC, ExtTriple, LambdaMember, Proof, ProofWriter, Resolve, Weaken, derived,
    proof_size,
)
from clausal.proof_format import parse_proof, write_proof
from clausal.proofs import Verdict, check, hoist_blocked_additions
from clausal.redundancy import blocking_pivot, kernel
from clausal.simulation import refute_resolution
from conftest import cnfs

X, Y, Z = 1, 2, 3


def test_trivial_resolution():
    g = Cnf.from_lists([[X], [-X]])
    rep = check(g, Proof("res", (Resolve(1, 2, X, ()),)))
    assert rep.verdict is Verdict.VERIFIED and rep.size == 2
    assert str(rep) == "VERIFIED size=2"


def test_intro_bc_refutation():
    g = Cnf.from_lists([[X, Y], [X, -Y]])
    w = ProofWriter("bc", g)
    w.add_bc(-Y, clause(-X, -Y))
    x = w.resolve(clause(X, Y), clause(X, -Y))
    rep = check(g, w.proof(), require_refutation=False)
    assert rep.ok and x == (X,)


def test_bc_step_accepted_then_refutation():
    g = Cnf.from_lists([[X, Y], [X, -Y], [-X, Y], [-X, -Y]])
    w = ProofWriter("bc", g)
    a = w.resolve(clause(X, Y), clause(X, -Y))
    b = w.resolve(clause(-X, Y), clause(-X, -Y))
    w.resolve(a, b)
    assert check(g, w.proof()).ok


@pytest.mark.parametrize("system,step,reason", [
    ("res", Resolve(1, 9, X, ()), "antecedent id 9 out of range"),
    ("res", Resolve(1, 1, X, ()), "do not clash"),
    ("res", Resolve(1, 2, Y, ()), "not on pivot"),
    ("res", Resolve(1, 2, X, (Y,)), "differs from the resolvent"),
    ("res", Weaken(1, (Y,)), "not a subset"),
    ("res", Weaken(1, (-X, X)), "tautological"),
    ("res", Weaken(1, (X, 7)), "exceeds"),
    ("res", AddBC(X, (X,)), "not allowed"),
    ("bc", AddBC(Y, (-X, Y)), "not blocked"),
    ("bc", AddBC(Z, (X, Y)), "pivot not in clause"),
    ("rat", AddRAT(Y, (-X, Y)), "not a RAT"),
    ("sbc", AddSBC((Y,), (-X, Y)), "not set-blocked"),
    ("sbc", AddSBC((Z,), (-X, Y)), "witness is not a subset"),
    ("er", ExtTriple(2, X, Y), "not above num_vars"),
    ("er", ExtTriple(5, X, 4), "undefined variable"),
])
def test_rejection_reasons(system, step, reason):
    g = Cnf([(X,), (-X, -Y), (-Y, -Z)], 3)
    rep = check(g, Proof(system, (step,)))
    assert rep.verdict is Verdict.REJECTED and rep.step == 1
    assert reason in rep.reason
    assert str(rep).startswith("REJECTED at step 1: ")


def test_rejects_without_empty_clause():
    g = Cnf.from_lists([[X, Y]])
    rep = check(g, Proof("res", ()))
    assert not rep.ok and "empty clause" in rep.reason
    assert check(g, Proof("res", ()), require_refutation=False).ok


def test_er_triple_rules():
    g = Cnf([(X,), (-X,)], 2)
    ok = Proof("er", (ExtTriple(3, X, Y), Resolve(1, 2, X, ())))
    assert check(g, ok).ok
    reuse = Proof("er", (ExtTriple(3, X, Y), ExtTriple(3, X, -Y)))
    assert "reused" in check(g, reuse).reason
    late = Proof("er", (Resolve(1, 2, X, ()), ExtTriple(3, X, Y)))
    rep = check(g, late)
    assert rep.step == 2 and "after the resolution phase" in rep.reason
    # extension clauses take ids 3, 4, 5 in the listed order
    table = derived(g, ok)
    assert table[3:6] == [(1, -3), (2, -3), (-1, -2, 3)]


def test_ger_lambda_checked():
    g = Cnf([(X, Y), (-X, Y), (X, -Y), (-X, -Y)], 3)
    good = Proof("ger", (LambdaMember((Z,)),))
    assert check(g, good, require_refutation=False).ok
    bad = Proof("ger", (LambdaMember((X,)),))
    rep = check(g, bad, require_refutation=False)
    assert rep.step == 1 and "blocked extension" in rep.reason
    late = Proof("ger", (Resolve(1, 3, Y, (X,)), LambdaMember((Z,))))
    assert "after the resolution phase" in check(g, late, require_refutation=False).reason


def test_duplicate_result_consumes_id():
    g = Cnf.from_lists([[X], [-X]])
    p = Proof("res", (Weaken(1, (X,)), Resolve(3, 2, X, ())))
    assert check(g, p).ok


def test_check_is_deterministic():
    g = gen_php(2)
    p = refute_resolution(g)
    assert check(g, p) == check(g, p)


# grammar


def test_parse_resolution_line():
    p = parse_proof("p proof res\nr 1 2 1 0\n", num_clauses=2)
    assert p == Proof("res", (Resolve(1, 2, 1, ()),))


def test_parse_sbc_line():
    p = parse_proof("p proof sbc\ns 2 -1 -2 -1 -2 3 0\n")
    assert p.steps == (AddSBC((-1, -2), (-1, -2, 3)),)


@pytest.mark.parametrize("text,msg", [
    ("p proof res\nq 1 0\n", "unknown step tag"),
    ("p proof res\nr 1 5 1 0\n", "out of range"),
    ("p proof sbc\ns 3 -1 0\n", "witness arity"),
    ("r 1 2 1 0\n", "before"),
    ("p proof zz\n", "malformed header"),
    ("p proof res\nw 1 2\n", "end with 0"),
    ("", "missing"),
])
def test_parse_errors(text, msg):
    with pytest.raises(ProofFormatError, match=msg):
        parse_proof(text, num_clauses=2)


def test_roundtrip_canonicalizes():
    text = "c hi\np proof sbc\ns 2 -2 -1 3 -2 -1 0\nb 1 2 1 0\nw 4 2 1 -3 0\n"
    p = parse_proof(text)
    assert p.steps[0] == AddSBC((-1, -2), (-1, -2, 3))
    out = write_proof(p)
    assert parse_proof(out) == p
    assert write_proof(parse_proof(out)) == out


@pytest.mark.parametrize("n", [1, 2])
def test_roundtrip_builder_proof(n):
    p = gen_cook_er_php(n).to_proof()
    assert parse_proof(write_proof(p)) == p


# sizes


def test_proof_sizes():
    assert proof_size(Proof("res", (Resolve(1, 2, 1, ()),))) == 2
    er = Proof("er", (ExtTriple(9, 1, 2), Resolve(1, 2, 1, ()), Resolve(1, 2, 1, ()), Resolve(1, 2, 1, ())))
    assert proof_size(er) == 7
    res = Proof("res", (Resolve(1, 2, 1, ()),))
    assert proof_size(Proof("ger", res.steps)) == proof_size(res)
    ger = Proof("ger", (LambdaMember((3,)), LambdaMember((4,)), Resolve(1, 2, 1, ())))
    assert proof_size(ger) == 2 + 2


# hoisting


def _interleaved():
    g = Cnf([(X, Y), (X, -Y), (-X, Y), (-X, -Y)], 3)
    w = ProofWriter("bc", g)
    a = w.resolve(clause(X, Y), clause(X, -Y))
    w.add_bc(Z, clause(-X, Z))
    b = w.resolve(clause(-X, Y), clause(-X, -Y))
    w.resolve(a, b)
    return g, w.proof()


def test_hoist_moves_blocked_additions_first():
    g, p = _interleaved()
    assert check(g, p).ok
    h = hoist_blocked_additions(g, p)
    assert isinstance(h.steps[0], AddBC)
    assert check(g, h).ok
    assert set(derived(g, h)[1:]) == set(derived(g, p)[1:])


def test_hoist_identity_without_bc():
    g = gen_php(2)
    p = refute_resolution(g)
    p = Proof("bc", p.steps)
    assert hoist_blocked_additions(g, p) == p


def test_hoist_errors():
    g, p = _interleaved()
    with pytest.raises(UnsupportedSystem):
        hoist_blocked_additions(g, Proof("sbc", p.steps))
    with pytest.raises(InputNotVerified):
        hoist_blocked_additions(g, Proof("bc", p.steps[:1]))


@given(cnfs(max_var=5, max_clauses=12), st.randoms(use_true_random=False))
def test_hoist_random_bc_proofs(g, rnd):
    assume(not ref.satisfiable(g.clauses))
    g8 = Cnf(g.clauses, 8)
    res = refute_resolution(g)
    table = derived(g, res)
    w = ProofWriter("bc", g8)
    for s in res.steps:
        if rnd.random() < 0.4:
            # positive fresh literals never occur negated, so these are blocked
            fresh = 8 - rnd.randint(0, 2)
            w.add_bc(fresh, clause(-rnd.randint(1, 5), fresh))
        w.resolve(table[s.a], table[s.b])
    p = w.proof()
    assert check(g8, p).ok
    h = hoist_blocked_additions(g8, p)
    n_bc = p.count(AddBC)
    assert all(isinstance(s, AddBC) for s in h.steps[:n_bc])
    assert [s for s in h.steps if isinstance(s, AddBC)] == [s for s in p.steps if isinstance(s, AddBC)]
    assert check(g8, h).ok


# soundness


def _mutate(p: Proof, rnd) -> Proof:
    steps = list(p.steps)
    k = rnd.randrange(len(steps))
    s = steps[k]
    if isinstance(s, Resolve):
        steps[k] = Resolve(s.a, max(1, s.b + rnd.choice([-1, 1])), s.pivot, s.result)
    else:
        del steps[k]
    return Proof(p.system, tuple(steps))


@given(cnfs(max_var=6, max_clauses=14), st.randoms(use_true_random=False))
def test_verified_implies_unsat(g, rnd):
    sat = ref.satisfiable(g.clauses)
    if not sat:
        p = refute_resolution(g)
        assert check(g, p).ok
        candidates = [p] + [_mutate(p, rnd) for _ in range(3) if p.steps]
    else:
        # random blocked additions and resolutions must never reach the empty clause
        w = ProofWriter("bc", g)
        for _ in range(8):
            cs = w.clauses()
            if not cs:
                break
            a, b = rnd.choice(cs), rnd.choice(cs)
            try:
                w.resolve(a, b)
            except ValueError:
                pass
        candidates = [w.proof()]
    for q in candidates:
        if check(g, q).ok:
            assert not sat


# restriction of resolution proofs


def _restrict_res(g: Cnf, p: Proof, alpha):
    table = derived(g, p)
    base = restrict(g, alpha)
    w = ProofWriter("res", base)
    for s in p.steps:
        target = restrict(s.result, alpha)
        if target is SATISFIED:
            continue
        if isinstance(s, Weaken):
            w.weaken(restrict(table[s.a], alpha), target)
            continue
        a, b = table[s.a], table[s.b]
        if s.pivot in alpha or -s.pivot in alpha:
            neg = a if (-s.pivot if s.pivot in alpha else s.pivot) in a else b
            w.weaken(restrict(neg, alpha), target)
        else:
            w.resolve(restrict(a, alpha), restrict(b, alpha))
    return base, w.proof()


@given(cnfs(max_var=5, max_clauses=12), st.randoms(use_true_random=False))
def test_resolution_proofs_survive_restriction(g, rnd):
    assume(not ref.satisfiable(g.clauses))
    p = refute_resolution(g)
    vs = sorted(g.variables())
    alpha = frozenset(v if rnd.random() < 0.5 else -v for v in rnd.sample(vs, rnd.randint(0, len(vs))))
    base, q = _restrict_res(g, p, alpha)
    assert check(base, q).ok


# GER fallback to BC when the input is its own kernel


def _ger_of_php(n):
    er = gen_cook_er_php(n)
    g = er.base.with_num_vars(er.top_var())
    w = ProofWriter("ger", g)
    for c in er.ext_clauses():
        w.lam(c)
    w.splice(Cnf(g.clauses + tuple(er.ext_clauses()), g.num_vars), Proof("res", er.resolution))
    return g, w.proof()


def _ger_to_bc(g: Cnf, p: Proof) -> Proof:
    lam = [s.result for s in p.steps if isinstance(s, LambdaMember)]
    order = kernel(Cnf(g.clauses + tuple(lam), g.num_vars)).elimination_order
    assert set(order) == set(lam) - set(g.clauses)
    w = ProofWriter("bc", g, dedupe=False)
    for c in reversed(order):
        pivot = blocking_pivot(c, w.current())
        assert pivot is not None
        w.add_bc(pivot, c)
    for c in lam:
        if c not in w:  # already present in g
            w.weaken(c, c)
    table = derived(g, p)
    for s in p.steps[len(lam):]:
        if isinstance(s, Resolve):
            w.resolve(table[s.a], table[s.b])
        else:
            w.weaken(table[s.a], s.result)
    return w.proof()


@pytest.mark.parametrize("n", [2, 3])
def test_ger_fallback_to_bc(n):
    g, p = _ger_of_php(n)
    assert kernel(g).kernel == g
    rep = check(g, p)
    assert rep.ok
    bc = _ger_to_bc(g, p)
    rep_bc = check(g, bc)
    assert rep_bc.ok and rep_bc.size == rep.size


@given(st.integers(0, 2**32))
def test_checker_agrees_with_reference_replay(seed):
    import test_acceptance as acc
    rnd = random.Random(seed)
    cnf, proof = acc._random_proof(rnd, rnd.randrange(6))
    mutant = acc._mutate(rnd, cnf, proof) if proof.steps else proof
    for q in (proof, mutant):
        assert check(cnf, q).ok == ref.proof_valid(cnf.clauses, cnf.num_vars, q)
