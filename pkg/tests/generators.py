"""Random instance and proof generators shared by the unit and acceptance tests."""


from clausal.builders import ErProof, gen_cook_er_php, gen_php, transform_h
from clausal.cnf import TAUTOLOGY, Cnf, normalize_clause, resolvent
from clausal.model import Resolve, ProofWriter
from clausal.propagation import up_derives
from clausal.proofs import check
from clausal.redundancy import is_blocked, is_rat
from clausal.simulation import refute_resolution


def random_clause(rnd, num_vars, lo=1, hi=3):
    vs = rnd.sample(range(1, num_vars + 1), rnd.randint(lo, min(hi, num_vars)))
    return normalize_clause(v * rnd.choice((1, -1)) for v in vs)


def random_cnf(rnd, num_vars, n_clauses, lo=1, hi=3):
    return Cnf([random_clause(rnd, num_vars, lo, hi) for _ in range(n_clauses)], num_vars)


def random_rat_instance(rnd, max_vars=12, allow_blocked=False):
    """(gamma, c, p) with c a RAT for p w.r.t. gamma, c not in gamma."""
    while True:
        n = rnd.randint(3, max_vars)
        gamma = random_cnf(rnd, n, rnd.randint(2, 2 * n), 1, 3)
        c = random_clause(rnd, n, 1, 3)
        if c in gamma:
            continue
        for p in rnd.sample(c, len(c)):
            if is_rat(c, p, gamma) and (allow_blocked or not is_blocked(c, p, gamma)):
                return gamma, c, p


def php1_er():
    """An ER proof of PHP_1 with one triple so H(PHP_1) has a pair."""
    gamma = gen_php(1)
    return ErProof(gamma, ((3, 1, 2),), (Resolve(1, 3, 1, (-2,)), Resolve(2, 7, 2, ())))


def er_for(n):
    return php1_er() if n == 1 else gen_cook_er_php(n)


def _up_clause(rnd, w, base_vars, extra=()):
    """A clause over base variables (plus ``extra``) that is UP-derivable now."""
    cur = w.current()
    for _ in range(40):
        if rnd.random() < 0.5:
            e = rnd.choice(w.clauses())
            lits = [l for l in e if abs(l) <= base_vars]
            lits += [v * rnd.choice((1, -1)) for v in rnd.sample(range(1, base_vars + 1), rnd.randint(0, min(2, base_vars)))]
        else:
            lits = [v * rnd.choice((1, -1)) for v in rnd.sample(range(1, base_vars + 1), rnd.randint(1, min(3, base_vars)))]
        d = normalize_clause(list(lits) + list(extra))
        if d is not TAUTOLOGY and up_derives(cur, d):
            return d
    return None


def random_h_rat_proof(rnd, n, n_steps=12, refute=True):
    """A random rat proof over H(PHP_n) mixing every kind of step the
    restriction translator distinguishes.  Returns (gamma, h, pairs, proof)."""
    gamma = gen_php(n)
    er = er_for(n)
    h, pairs = transform_h(gamma, er)
    bv = gamma.num_vars
    w = ProofWriter("rat", h)
    ops = ["weaken", "resolve", "rat_pair", "rat_base", "y_detour"]
    for _ in range(n_steps):
        op = rnd.choice(ops)
        x, y = rnd.choice(pairs.pairs)
        cs = w.clauses()
        if op == "weaken":
            e = rnd.choice(cs)
            v = rnd.choice([x, y] + list(range(1, bv + 1)))
            d = normalize_clause(e + (v * rnd.choice((1, -1)),))
            if d is not TAUTOLOGY:
                w.weaken(e, d)
        elif op == "resolve":
            for _ in range(30):
                a, b = rnd.choice(cs), rnd.choice(cs)
                r = resolvent(a, b)
                if r is not None and r is not TAUTOLOGY:
                    w.resolve(a, b)
                    break
        elif op == "rat_pair":
            lit = rnd.choice((-x, -y, -x, -y, x, y))
            d = _up_clause(rnd, w, bv)
            if d is not None:
                c = normalize_clause(d + (lit,))
                if is_rat(c, lit, w.current()):
                    w.add_rat(lit, c)
        elif op == "rat_base":
            d = _up_clause(rnd, w, bv, extra=rnd.choice(((), (-x,), (-y,))))
            if d is not None:
                free = [v for v in range(1, bv + 1) if v not in {abs(l) for l in d}]
                if free:
                    lit = rnd.choice(free) * rnd.choice((1, -1))
                    c = normalize_clause(d + (lit,))
                    if is_rat(c, lit, w.current()):
                        w.add_rat(lit, c)
        else:
            # weaken into -y then resolve it away against -x or y
            e = rnd.choice([c for c in cs if all(abs(l) <= bv for l in c)])
            d = normalize_clause(e + (-y,))
            if d is not TAUTOLOGY and -x not in d and x not in d and y not in d:
                w.weaken(e, d)
                w.resolve(d, normalize_clause((-x, y)))
    if refute:
        w.splice(gamma, refute_resolution(gamma))
    proof = w.proof()
    assert check(h, proof, require_refutation=refute).ok
    return gamma, h, pairs, proof
