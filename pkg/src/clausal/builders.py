"""Formula generators, the Cook-style extended resolution proof of the
pigeonhole principle, the G and H transformations, and proof builders over
them.

Variable numbering
------------------
PHP_n: pigeon ``i`` in hole ``k`` is ``(i - 1) * n + k`` (row-major).
BPHP_n with ``n = 2**b``: bit ``l`` of pigeon ``i`` is ``(i - 1) * b + l``.
Extension variables follow the base variables in triple order; the pair
variables of H come after every variable used by the ER proof.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import List, Tuple

from .cnf import Cnf, clause
from .errors import InputNotVerified
from .model import ExtTriple, Proof, ProofWriter, Resolve, Weaken, derived, proof_size


def php_var(n: int, i: int, k: int) -> int:
    return (i - 1) * n + k


def gen_php(n: int) -> Cnf:
    if n < 1:
        raise ValueError("PHP needs n >= 1")
    p = lambda i, k: php_var(n, i, k)
    clauses = [clause(*(p(i, k) for k in range(1, n + 1))) for i in range(1, n + 2)]
    for k in range(1, n + 1):
        for i in range(1, n + 2):
            for j in range(i + 1, n + 2):
                clauses.append(clause(-p(i, k), -p(j, k)))
    return Cnf(clauses, n * (n + 1))


def gen_bphp(n: int) -> Cnf:
    if n < 2 or n & (n - 1):
        raise ValueError("BPHP needs n to be a power of two, at least 2")
    b = n.bit_length() - 1
    v = lambda i, l: (i - 1) * b + l
    clauses = []
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            for hole in itertools.product((0, 1), repeat=b):
                lits = []
                for l, bit in enumerate(hole, 1):
                    # "pigeon's bit l differs from the hole's bit l"
                    lits.append(v(i, l) if bit == 0 else -v(i, l))
                    lits.append(v(j, l) if bit == 0 else -v(j, l))
                clauses.append(clause(*lits))
    return Cnf(clauses, (n + 1) * b)


@dataclass(frozen=True)
class ErProof:
    """An extended resolution proof: extension triples, then resolution.

    ``resolution`` is numbered over the base CNF followed by the three
    clauses of each triple.
    """

    base: Cnf
    triples: Tuple[Tuple[int, int, int], ...]
    resolution: Tuple

    @property
    def t(self) -> int:
        return len(self.triples)

    @property
    def extension_vars(self) -> List[int]:
        return [x for x, _, _ in self.triples]

    def ext_clauses(self) -> list:
        out = []
        for x, p, q in self.triples:
            out.extend(ExtTriple(x, p, q).clauses())
        return out

    def to_proof(self) -> Proof:
        steps = [ExtTriple(*tr) for tr in self.triples]
        return Proof("er", tuple(steps) + tuple(self.resolution))

    @classmethod
    def from_proof(cls, base: Cnf, proof: Proof) -> "ErProof":
        if proof.system != "er":
            raise ValueError(f"expected an er proof, got {proof.system}")
        triples = []
        k = 0
        while k < len(proof.steps) and isinstance(proof.steps[k], ExtTriple):
            s = proof.steps[k]
            triples.append((s.x, s.p, s.q))
            k += 1
        return cls(base, tuple(triples), tuple(proof.steps[k:]))

    def top_var(self) -> int:
        top = max([self.base.num_vars] + self.extension_vars)
        for s in self.resolution:
            if s.result:
                top = max(top, max(abs(l) for l in s.result))
        return top

    def verify(self) -> None:
        from .proofs import check

        report = check(self.base, self.to_proof())
        if not report.ok:
            raise InputNotVerified(f"ER proof does not verify: {report}")

    def size(self) -> int:
        return proof_size(self.to_proof())


def gen_cook_er_php(n: int) -> ErProof:
    """Cook's reduction from PHP_m to PHP_{m-1}, iterated down to PHP_1.

    The level-(m-1) variable for pigeon i, hole k is
    ``p[i,k] or (p[i,m] and p[m+1,k])``, introduced as two binary
    conjunctions: ``a <-> p[i,m] & p[m+1,k]`` and ``b <-> -p[i,k] & -a``,
    with ``-b`` standing for the new variable.
    """
    php = gen_php(n)
    lit = {(i, k): php_var(n, i, k) for i in range(1, n + 2) for k in range(1, n + 1)}
    nxt = php.num_vars + 1
    levels = []  # (m, lit map at level m, {(i,k): (a, b)})
    triples = []
    for m in range(n, 1, -1):
        defs = {}
        for i in range(1, m + 1):
            for k in range(1, m):
                a, b = nxt, nxt + 1
                nxt += 2
                triples.append((a, lit[i, m], lit[m + 1, k]))
                triples.append((b, -lit[i, k], -a))
                defs[i, k] = (a, b)
        levels.append((m, dict(lit), defs))
        lit = {(i, k): -defs[i, k][1] for i in range(1, m + 1) for k in range(1, m)}

    w = ProofWriter("er", php)
    for tr in triples:
        w.ext(*tr)

    for m, L, defs in levels:
        def hole(i, j, k):
            return clause(-L[i, k], -L[j, k])

        def pigeon(i):
            return clause(*(L[i, k] for k in range(1, m + 1)))

        def tri(i, k):
            a, b = defs[i, k]
            A = ExtTriple(a, L[i, m], L[m + 1, k]).clauses()
            B = ExtTriple(b, -L[i, k], -a).clauses()
            return A, B

        # pigeon axioms of the next level
        for i in range(1, m + 1):
            s = pigeon(i)
            for k in range(1, m):
                s = w.resolve(s, tri(i, k)[1][0])
            t = pigeon(m + 1)
            for k in range(1, m):
                A, B = tri(i, k)
                r = w.resolve(A[2], B[1])
                t = w.resolve(t, r)
            t = w.resolve(t, hole(i, m + 1, m))
            w.resolve(t, s)

        # hole axioms of the next level
        for k in range(1, m):
            for i in range(1, m + 1):
                for j in range(i + 1, m + 1):
                    Ai, Bi = tri(i, k)
                    Aj, Bj = tri(j, k)
                    ui = w.resolve(Bi[2], Ai[0])
                    vi = w.resolve(Bi[2], Ai[1])
                    uj = w.resolve(Bj[2], Aj[0])
                    vj = w.resolve(Bj[2], Aj[1])
                    wji = w.resolve(w.resolve(vj, hole(i, j, k)), hole(i, m + 1, k))
                    wij = w.resolve(w.resolve(vi, hole(i, j, k)), hole(j, m + 1, k))
                    left = w.resolve(ui, wji)
                    right = w.resolve(w.resolve(uj, wij), hole(i, j, m))
                    w.resolve(left, right)

    # PHP_1 over the final literals
    p1, p2 = clause(lit[1, 1]), clause(lit[2, 1])
    h = clause(-lit[1, 1], -lit[2, 1])
    w.resolve(w.resolve(p1, h), p2)

    proof = w.proof()
    return ErProof.from_proof(php, proof)


def _replay(w: ProofWriter, er: ErProof) -> None:
    """Re-emit the resolution part of ``er`` by clause value."""
    table = derived(er.base, er.to_proof())
    for s in er.resolution:
        if isinstance(s, Resolve):
            w.resolve(table[s.a], table[s.b])
        elif isinstance(s, Weaken):
            w.weaken(table[s.a], s.result)
        else:
            raise ValueError(f"unexpected step in ER resolution part: {s!r}")


def transform_g(gamma: Cnf, er: ErProof, verify: bool = True) -> Cnf:
    """Gamma plus ``x or C`` and ``-x or C`` for each extension variable x and
    each clause C of gamma."""
    if verify:
        er.verify()
    clauses = list(gamma.clauses)
    for x in er.extension_vars:
        clauses.extend(clause(x, *c) for c in gamma.clauses)
        clauses.extend(clause(-x, *c) for c in gamma.clauses)
    return Cnf(clauses, max([gamma.num_vars] + er.extension_vars))


@dataclass(frozen=True)
class PairAllocation:
    """Extension variable ``x_i`` paired with its fresh partner ``y_i``."""

    pairs: Tuple[Tuple[int, int], ...]
    base_num_vars: int
    num_vars: int

    @property
    def t(self) -> int:
        return len(self.pairs)

    def alpha(self) -> frozenset:
        """The restriction setting every pair variable true."""
        return frozenset(v for pair in self.pairs for v in pair)

    def to_json(self) -> str:
        return json.dumps(
            {"base_num_vars": self.base_num_vars, "num_vars": self.num_vars,
             "pairs": [list(p) for p in self.pairs]},
            indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "PairAllocation":
        d = json.loads(text)
        try:
            pairs = tuple((int(x), int(y)) for x, y in d["pairs"])
            return cls(pairs, int(d["base_num_vars"]), int(d["num_vars"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed pair allocation: {e}") from None


def transform_h(gamma: Cnf, er: ErProof, verify: bool = True) -> Tuple[Cnf, PairAllocation]:
    """Gamma plus ``-x_i or y_i`` and ``x_i or -y_i`` for each extension
    variable, with fresh y_i allocated above everything the ER proof uses."""
    if verify:
        er.verify()
    start = max(gamma.num_vars, er.top_var()) + 1
    pairs = tuple((x, start + i) for i, x in enumerate(er.extension_vars))
    num_vars = start + len(pairs) - 1 if pairs else gamma.num_vars
    alloc = PairAllocation(pairs, gamma.num_vars, num_vars)
    return h_from_pairs(gamma, alloc), alloc


def h_from_pairs(gamma: Cnf, pairs: PairAllocation) -> Cnf:
    clauses = list(gamma.clauses)
    for x, y in pairs.pairs:
        clauses.append(clause(-x, y))
        clauses.append(clause(x, -y))
    return Cnf(clauses, pairs.num_vars)


def build_rat_proof_of_g(gamma: Cnf, er: ErProof, verify: bool = True) -> Proof:
    g = transform_g(gamma, er, verify)
    w = ProofWriter("rat", g)
    for x, p, q in er.triples:
        w.add_rat(-x, clause(-x, p))
        w.add_rat(-x, clause(-x, q))
        w.add_rat(x, clause(x, -p, -q))
    _replay(w, er)
    return w.proof()


def build_ger_proof_of_h(gamma: Cnf, er: ErProof, pairs: PairAllocation = None,
                         verify: bool = True) -> Proof:
    h, alloc = transform_h(gamma, er, verify)
    if pairs is not None and pairs != alloc:
        raise ValueError("pair allocation does not match the ER proof")
    w = ProofWriter("ger", h)
    for c in er.ext_clauses():
        w.lam(c)
    _replay(w, er)
    return w.proof()


def build_sbc_proof_of_h(gamma: Cnf, er: ErProof, pairs: PairAllocation = None,
                         verify: bool = True) -> Proof:
    h, alloc = transform_h(gamma, er, verify)
    if pairs is not None and pairs != alloc:
        raise ValueError("pair allocation does not match the ER proof")
    w = ProofWriter("sbc", h)
    made = []
    for (x, p, q), (_, y) in zip(er.triples, alloc.pairs):
        e1 = w.add_sbc((-x, -y), clause(-x, -y, p))
        e2 = w.add_sbc((-x, -y), clause(-x, -y, q))
        e3 = w.add_sbc((x, y), clause(x, y, -p, -q))
        made.append((x, y, e1, e2, e3))
    for x, y, e1, e2, e3 in made:
        w.resolve(e1, clause(-x, y))
        w.resolve(e2, clause(-x, y))
        w.resolve(e3, clause(x, -y))
    _replay(w, er)
    return w.proof()


def sbc_php_clause(n: int, i: int, j: int, k: int):
    """The clause added for (i, j, k) and its witness."""
    p = lambda a, b: php_var(n, a, b)
    lits = [-p(i, k), -p(j, i)]
    lits += [p(l, k) for l in range(1, n + 2) if l != i]
    lits += [p(l, i) for l in range(1, n + 2) if l != j]
    witness = clause(-p(i, k), -p(j, i), p(i, i), p(j, k))
    return clause(*lits), witness


def build_sbc_proof_of_php(n: int) -> Proof:
    """Assume the first pigeon sits in the first hole, reduce to PHP_{n-1},
    repeat."""
    php = gen_php(n)
    p = lambda a, b: php_var(n, a, b)
    w = ProofWriter("sbc", php)
    triples = [(i, j, k) for i in range(1, n)
               for j in range(i + 1, n + 2) for k in range(i + 1, n + 1)]
    added = {}
    for i, j, k in triples:
        c, wit = sbc_php_clause(n, i, j, k)
        added[i, j, k] = w.add_sbc(wit, c)

    for i, j, k in triples:
        cur = added[i, j, k]
        for l in range(1, n + 2):
            if l != i:
                cur = w.resolve(cur, clause(-p(i, k), -p(l, k)))
        for l in range(1, n + 2):
            if l != j:
                cur = w.resolve(cur, clause(-p(j, i), -p(l, i)))

    for i in range(1, n + 1):
        for j in range(i + 1, n + 2):
            cur = clause(*(p(i, k) for k in range(1, n + 1)))
            for k in range(1, n + 1):
                if k < i:
                    other = clause(-p(i, k))
                else:
                    other = clause(-p(i, k), -p(j, i))
                cur = w.resolve(cur, other)
    cur = clause(*(p(n + 1, k) for k in range(1, n + 1)))
    for i in range(1, n + 1):
        cur = w.resolve(cur, clause(-p(n + 1, i)))
    return w.proof()
