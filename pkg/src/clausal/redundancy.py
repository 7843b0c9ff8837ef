"""Redundancy predicates (blocked, RAT, set-blocked), kernels and blocked
extensions.

The predicates accept either a ``Cnf`` or a ``ClauseDB``; the latter keeps an
occurrence index and an incremental propagator, which is what the proof
checker uses while the clause set grows.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

from .cnf import TAUTOLOGY, Clause, Cnf, clause_key, negate, normalize_clause, project, satisfies
from .errors import EmptyWitness, PivotNotInClause, WitnessNotSubset
from .propagation import Propagator


class ClauseDB:
    """A growing clause set with per-literal occurrence lists."""

    def __init__(self, clauses: Iterable[Clause] = ()):
        self.clauses: list = []
        self.members: set = set()
        self.occ: dict = {}
        self._prop: Optional[Propagator] = None
        for c in clauses:
            self.add(c)

    def add(self, c: Clause) -> None:
        c = tuple(c)
        if c in self.members:
            return
        self.members.add(c)
        self.clauses.append(c)
        for l in c:
            self.occ.setdefault(l, []).append(c)
        if self._prop is not None:
            self._prop.add_clause(c)

    def __contains__(self, c) -> bool:
        return tuple(c) in self.members

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def containing(self, lit: int) -> list:
        return self.occ.get(lit, [])

    @property
    def propagator(self) -> Propagator:
        if self._prop is None:
            self._prop = Propagator(self.clauses)
        return self._prop

    def to_cnf(self, num_vars: Optional[int] = None) -> Cnf:
        if num_vars is None:
            return Cnf(self.clauses)
        return Cnf(self.clauses, num_vars)


GammaLike = Union[Cnf, ClauseDB]


def _as_db(gamma: GammaLike) -> ClauseDB:
    return gamma if isinstance(gamma, ClauseDB) else ClauseDB(gamma)


def _containing(gamma: GammaLike, lit: int):
    if isinstance(gamma, ClauseDB):
        return gamma.containing(lit)
    return [d for d in gamma if lit in d]


def _check_pivot(c, p):
    if p not in c:
        raise PivotNotInClause(f"pivot {p} not in clause {list(c)}")


def is_blocked(c: Clause, p: int, gamma: GammaLike) -> bool:
    """Every resolvent of ``c`` on ``p`` against ``gamma`` is tautological."""
    _check_pivot(c, p)
    rest = {-l for l in c if l != p}
    for d in _containing(gamma, -p):
        if not any(l in rest for l in d):
            return False
    return True


def is_blocked_by_projection(c: Clause, p: int, gamma: GammaLike) -> bool:
    """Same judgment via the projection: the negation of ``c - p`` satisfies
    every residue of ``gamma`` on ``-p``."""
    _check_pivot(c, p)
    alpha = negate(l for l in c if l != p)
    if isinstance(gamma, ClauseDB):
        gamma = gamma.to_cnf()
    return satisfies(alpha, project(gamma, -p))


def blocking_pivot(c: Clause, gamma: GammaLike) -> Optional[int]:
    for p in c:
        if is_blocked(c, p, gamma):
            return p
    return None


def is_rat(c: Clause, p: int, gamma: GammaLike) -> bool:
    """Every resolvent of ``c`` on ``p`` against ``gamma`` is unit-derivable."""
    _check_pivot(c, p)
    db = _as_db(gamma)
    rest = [l for l in c if l != p]
    rest_c = tuple(rest)
    for d in db.containing(-p):
        d_rest = tuple(l for l in d if l != -p)
        u = normalize_clause(rest + list(d_rest))
        if u is TAUTOLOGY:
            continue
        # cheap sufficient conditions before propagating
        if u in db or d_rest in db or rest_c in db:
            continue
        if not db.propagator.derives(u):
            return False
    return True


@dataclass(frozen=True)
class SbcWitness:
    lits: Tuple[int, ...]

    def __post_init__(self):
        w = normalize_clause(self.lits)
        if w is TAUTOLOGY:
            raise ValueError("witness is tautological")
        if not w:
            raise EmptyWitness("set-blocked witness must be nonempty")
        object.__setattr__(self, "lits", w)


def is_sbc(c: Clause, witness, gamma: GammaLike) -> bool:
    """``c`` is set-blocked for the witness subset with respect to ``gamma``."""
    lits = witness.lits if isinstance(witness, SbcWitness) else tuple(witness)
    if not lits:
        raise EmptyWitness("set-blocked witness must be nonempty")
    w = set(lits)
    if not w <= set(c):
        raise WitnessNotSubset(f"witness {sorted(w)} is not a subset of {list(c)}")
    neg_w = {-l for l in w}
    outside = {-l for l in c if l not in w}  # negated c minus witness
    seen = set()
    for nl in neg_w:
        for d in _containing(gamma, nl):
            if d in seen:
                continue
            seen.add(d)
            if any(l in w for l in d):
                continue
            if not any(l in outside for l in d if l not in neg_w):
                return False
    return True


@dataclass(frozen=True)
class KernelResult:
    kernel: Cnf
    elimination_order: Tuple[Clause, ...]


def kernel(gamma: Cnf, rng: Optional[random.Random] = None) -> KernelResult:
    """Remove blocked clauses until none is left.

    Deterministic mode removes the first blocked clause in canonical order at
    each round.  With ``rng`` a uniformly random blocked clause is removed
    instead (used to test that the result does not depend on the order).
    """
    if rng is not None:
        return _kernel_random(gamma, rng)
    db = ClauseDB(gamma)
    active = set(db.members)
    order = []
    heap = [(clause_key(c), c) for c in db.clauses]
    heapq.heapify(heap)
    queued = set(db.members)
    while heap:
        _, c = heapq.heappop(heap)
        queued.discard(c)
        if c not in active:
            continue
        if _blocked_in(c, db, active):
            active.discard(c)
            order.append(c)
            # clauses whose blockedness may change: those containing -l, l in c
            for l in c:
                for e in db.containing(-l):
                    if e in active and e not in queued:
                        queued.add(e)
                        heapq.heappush(heap, (clause_key(e), e))
    kept = [c for c in gamma.clauses if c in active]
    return KernelResult(Cnf(kept, gamma.num_vars), tuple(order))


def _blocked_in(c, db: ClauseDB, active: set) -> bool:
    for p in c:
        rest = {-l for l in c if l != p}
        if all(any(l in rest for l in d) for d in db.containing(-p) if d in active):
            return True
    return False


def _kernel_random(gamma: Cnf, rng: random.Random) -> KernelResult:
    db = ClauseDB(gamma)
    active = set(db.members)
    order = []
    while True:
        candidates = [c for c in db.clauses if c in active and _blocked_in(c, db, active)]
        if not candidates:
            break
        c = rng.choice(candidates)
        active.discard(c)
        order.append(c)
    kept = [c for c in gamma.clauses if c in active]
    return KernelResult(Cnf(kept, gamma.num_vars), tuple(order))


def is_blocked_extension(gamma: Cnf, lam: Iterable[Clause]) -> bool:
    """ker(gamma + lam) equals ker(gamma) as clause sets."""
    lam = list(lam)
    if not lam:
        return True
    both = gamma.add(*lam)
    return kernel(both).kernel.clause_set == kernel(gamma).kernel.clause_set
