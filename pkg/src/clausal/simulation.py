"""Replacing RAT additions by blocked-clause derivations, and translating
RAT proofs of H(Gamma) into RAT proofs of Gamma by restriction.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Dict, List, Tuple

from .builders import PairAllocation, h_from_pairs
from .cnf import SATISFIED, TAUTOLOGY, Cnf, clause_key, normalize_clause, project, restrict, var
from .errors import (
    InputNotVerified,
    NotARat,
    SatisfiableInput,
    StepNotRestrictable,
    TooManyVariables,
)
from .model import AddBC, AddRAT, Proof, ProofWriter, Resolve, Weaken, derived, proof_size
from .propagation import extract_input_resolution
from .redundancy import _check_pivot, is_rat

log = logging.getLogger(__name__)

MAX_VARS = 20


def nonblocking_cnf(c, p: int, gamma: Cnf) -> Cnf:
    """Residues on ``-p`` that keep ``c`` from being blocked, minus ``c``."""
    _check_pivot(c, p)
    rest = [l for l in c if l != p]
    cs = set(c)
    out = []
    for d in project(gamma, -p):
        if normalize_clause(rest + list(d)) is TAUTOLOGY:
            continue
        out.append(tuple(l for l in d if l not in cs))
    return Cnf(out, gamma.num_vars)


def _check_scale(gamma: Cnf):
    n = len(gamma.variables())
    if n > MAX_VARS:
        raise TooManyVariables(f"{n} occurring variables, limit is {MAX_VARS}")


def minimal_cover(gamma: Cnf) -> Cnf:
    """Clauses whose negations are the minimal satisfying partial assignments."""
    _check_scale(gamma)
    clauses = sorted(gamma.clauses, key=clause_key)
    found = set()

    def search(alpha: frozenset):
        for c in clauses:
            if not any(l in alpha for l in c):
                for l in c:
                    if -l not in alpha:
                        search(alpha | {l})
                return
        found.add(alpha)

    search(frozenset())

    def satisfied(alpha):
        return all(any(l in alpha for l in c) for c in clauses)

    minimal = [a for a in found if all(not satisfied(a - {l}) for l in a)]
    out = sorted((normalize_clause(-l for l in a) for a in minimal), key=clause_key)
    return Cnf(out, gamma.num_vars)


def refute_resolution(gamma: Cnf) -> Proof:
    """Weakening-free tree-like resolution refutation found by a plain
    splitting search (no unit propagation)."""
    _check_scale(gamma)
    if () in gamma:
        return Proof("res")
    clauses = list(gamma.clauses)
    w = ProofWriter("res", gamma)

    def falsified(alpha):
        for c in clauses:
            if all(-l in alpha for l in c):
                return c
        return None

    def branch_literal(alpha):
        best = None
        for c in clauses:
            if any(l in alpha for l in c):
                continue
            free = [l for l in c if -l not in alpha]
            if best is None or len(free) < len(best):
                best = free
        return None if best is None else best[0]

    def refute(alpha: frozenset):
        c = falsified(alpha)
        if c is not None:
            return c
        l = branch_literal(alpha)
        if l is None:
            raise SatisfiableInput("the formula is satisfiable")
        # falsify the chosen literal first: short clauses then fail quickly
        c1 = refute(alpha | {-l})
        if l not in c1:
            return c1
        c2 = refute(alpha | {l})
        if -l not in c2:
            return c2
        return w.resolve(c1, c2)

    refute(frozenset())
    return w.proof()


@dataclass(frozen=True)
class SimulationReport:
    sigma_size: int
    mu_size: int
    refutation_size: int
    n: int
    bound: int
    actual: int

    def to_dict(self) -> dict:
        return asdict(self)


def _attach(w: ProofWriter, base: Cnf, refutation: Proof, c) -> None:
    """Replay ``refutation`` with every clause extended by ``c``."""
    table = derived(base, refutation)
    for s in refutation.steps:
        a = normalize_clause(table[s.a] + c)
        b = normalize_clause(table[s.b] + c)
        w.resolve(a, b)


def simulate_rat_step(c, p: int, gamma: Cnf) -> Tuple[Proof, SimulationReport]:
    """A blocked-clause derivation from gamma that ends with ``c``.

    The returned fragment is numbered over ``gamma``.
    """
    c = normalize_clause(c)
    _check_pivot(c, p)
    if not is_rat(c, p, gamma):
        raise NotARat(f"{list(c)} is not a RAT for {p}")
    sigma = nonblocking_cnf(c, p, gamma)
    _check_scale(sigma)
    w = ProofWriter("bc", gamma)
    for d in sigma:
        w.splice(gamma, extract_input_resolution(gamma, c + d))

    try:
        refutation = refute_resolution(sigma)
        mu = Cnf((), gamma.num_vars)
        base = sigma
    except SatisfiableInput:
        mu = minimal_cover(sigma)
        for e in mu:
            w.add_bc(p, normalize_clause(c + e))
        base = Cnf(sigma.clauses + mu.clauses, gamma.num_vars)
        refutation = refute_resolution(base)
    _attach(w, base, refutation, c)
    assert c in w

    fragment = w.proof()
    n = len(gamma.variables())
    ref_size = proof_size(refutation)
    report = SimulationReport(
        sigma_size=len(sigma),
        mu_size=len(mu),
        refutation_size=ref_size,
        n=n,
        bound=len(sigma) * (n + 1) + len(mu) + ref_size,
        actual=proof_size(fragment),
    )
    return fragment, report


def translate_rat_to_bc_with_reports(cnf: Cnf, proof: Proof) -> Tuple[Proof, List[SimulationReport]]:
    if proof.system not in ("rat", "bc"):
        raise ValueError(f"expected a rat proof, got {proof.system}")
    table = derived(cnf, proof)
    w = ProofWriter("bc", cnf)
    reports = []
    for k, s in enumerate(proof.steps, 1):
        if isinstance(s, Resolve):
            w.resolve(table[s.a], table[s.b])
        elif isinstance(s, Weaken):
            w.weaken(table[s.a], s.result)
        elif isinstance(s, AddBC):
            w.add_bc(s.pivot, s.result)
        elif isinstance(s, AddRAT):
            if s.result in w:
                continue
            current = w.current()
            try:
                frag, report = simulate_rat_step(s.result, s.pivot, current)
            except (NotARat, TooManyVariables) as e:
                raise type(e)(f"step {k}: {e}") from e
            w.splice(current, frag)
            reports.append(report)
        else:
            raise ValueError(f"step {k}: {type(s).__name__} cannot occur in a rat proof")
    return w.proof(), reports


def translate_rat_to_bc(cnf: Cnf, proof: Proof) -> Proof:
    return translate_rat_to_bc_with_reports(cnf, proof)[0]


# How each step of a restricted proof was handled:
#   satisfied        the restricted clause is true and the step is dropped
#   pair_resolution  resolution on a pair variable, replaced by a weakening
#   resolution       resolution on a surviving variable, kept
#   weakening        kept, with restricted clauses
#   pair_addition    redundancy step on a pair variable, rebuilt by input resolution
#   addition         redundancy step on a surviving variable, kept restricted
CASES = ("satisfied", "pair_resolution", "resolution", "weakening", "pair_addition", "addition")


def restrict_h_rat_proof_with_cases(gamma: Cnf, pairs: PairAllocation,
                                    proof: Proof, h: Cnf = None) -> Tuple[Proof, Dict[str, int]]:
    """Restrict every clause of a rat derivation from H(gamma) by setting
    all pair variables true, repairing the steps that break."""
    from .proofs import check

    if h is None:
        h = h_from_pairs(gamma, pairs)
    if proof.system != "rat":
        raise StepNotRestrictable(f"expected a rat proof, got {proof.system}")
    if not check(h, proof, require_refutation=False).ok:
        raise InputNotVerified("input proof does not verify over H")

    alpha = pairs.alpha()
    paired = {var(l) for l in alpha}
    table = derived(h, proof)
    w = ProofWriter("rat", gamma)
    counts = dict.fromkeys(CASES, 0)

    def r(cl):
        return restrict(cl, alpha)

    for k, s in enumerate(proof.steps, 1):
        target = r(s.result)
        if target is SATISFIED:
            counts["satisfied"] += 1
            continue
        if isinstance(s, Resolve):
            a, b = table[s.a], table[s.b]
            if s.pivot in paired:
                neg = a if -s.pivot in a else b  # the premise falsified on the pivot
                w.weaken(r(neg), target)
                counts["pair_resolution"] += 1
            else:
                w.resolve(r(a), r(b))
                counts["resolution"] += 1
        elif isinstance(s, Weaken):
            w.weaken(r(table[s.a]), target)
            counts["weakening"] += 1
        elif isinstance(s, (AddRAT, AddBC)):
            if var(s.pivot) in paired:
                current = w.current()
                w.splice(current, extract_input_resolution(current, target))
                counts["pair_addition"] += 1
            elif isinstance(s, AddBC):
                w.add_bc(s.pivot, target)
                counts["addition"] += 1
            else:
                w.add_rat(s.pivot, target)
                counts["addition"] += 1
        else:
            raise StepNotRestrictable(f"step {k}: {type(s).__name__}")
    return w.proof(), counts


def restrict_h_rat_proof(gamma: Cnf, pairs: PairAllocation, proof: Proof, h: Cnf = None) -> Proof:
    return restrict_h_rat_proof_with_cases(gamma, pairs, proof, h)[0]
