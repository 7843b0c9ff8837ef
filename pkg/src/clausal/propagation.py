"""Unit propagation, the unit-derivability judgment, and extraction of
short input-resolution derivations from propagation traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .cnf import TAUTOLOGY, Clause, Cnf, clause_key, is_tautological, normalize_clause, resolvent
from .errors import NotUpDerivable
from .model import Proof, Resolve, Weaken


@dataclass(frozen=True)
class UpTrace:
    """Units in assignment order with the index (into ``gamma.clauses``) of
    the clause that forced them; assumptions have antecedent ``None``."""

    units: Tuple[Tuple[int, Optional[int]], ...]
    conflict: Optional[int] = None

    @property
    def refuted(self) -> bool:
        return self.conflict is not None

    def to_comments(self) -> List[str]:
        out = []
        for lit, ante in self.units:
            src = "assumed" if ante is None else f"clause {ante + 1}"
            out.append(f"c up {lit} ({src})")
        if self.conflict is not None:
            out.append(f"c up conflict in clause {self.conflict + 1}")
        return out


def up_refutes(gamma: Cnf, assumptions: Iterable[int] = ()) -> UpTrace:
    """Propagate ``gamma`` under ``assumptions`` to fixpoint or conflict.

    Deterministic: the assumptions are propagated first, then clauses are
    scanned in canonical order; each unit found is propagated to fixpoint
    (FIFO, affected clauses in canonical order) before the scan continues.
    """
    clauses = gamma.clauses
    true: set = set()
    units: list = []
    for a in assumptions:
        if -a in true:
            raise ValueError("inconsistent assumptions")
        if a not in true:
            true.add(a)
            units.append((a, None))

    order = sorted(range(len(clauses)), key=lambda i: clause_key(clauses[i]))
    occ: dict = {}
    for i in order:
        for l in clauses[i]:
            occ.setdefault(l, []).append(i)

    queue = [l for l, _ in units]

    def visit(i):
        # returns True on conflict
        free = None
        for l in clauses[i]:
            if l in true:
                return False
            if -l not in true:
                if free is not None:
                    return False
                free = l
        if free is None:
            return True
        true.add(free)
        units.append((free, i))
        queue.append(free)
        return False

    head = 0

    def drain():
        nonlocal head
        while head < len(queue):
            l = queue[head]
            head += 1
            for i in occ.get(-l, ()):
                if visit(i):
                    return i
        return None

    conflict = drain()
    if conflict is not None:
        return UpTrace(tuple(units), conflict)
    for i in order:
        if visit(i):
            return UpTrace(tuple(units), i)
        conflict = drain()
        if conflict is not None:
            return UpTrace(tuple(units), conflict)
    return UpTrace(tuple(units), None)


def up_derives(gamma: Cnf, lits: Iterable[int]) -> bool:
    """Gamma derives the clause ``lits`` by unit propagation."""
    lits = list(lits)
    if is_tautological(lits):
        return True
    return up_refutes(gamma, [-l for l in lits]).refuted


class Propagator:
    """Incremental two-watched-literal propagation over a growing clause set.

    Top-level units stay assigned; ``conflicts_under`` assigns assumptions on
    top, propagates and backtracks.  Used by the proof checker, where the
    clause set only grows.
    """

    def __init__(self, clauses: Iterable[Clause] = ()):
        self.true: set = set()
        self.trail: list = []
        self.watches: dict = {}
        self.inconsistent = False
        self.size = 0
        for c in clauses:
            self.add_clause(c)

    def value(self, l: int):
        if l in self.true:
            return True
        if -l in self.true:
            return False
        return None

    def _assign(self, l: int):
        self.true.add(l)
        self.trail.append(l)

    def add_clause(self, c: Clause) -> None:
        self.size += 1
        if self.inconsistent:
            return
        lits = sorted(c, key=lambda l: (self.value(l) is False, self.value(l) is not True))
        if not lits or self.value(lits[0]) is False:
            self.inconsistent = True
            return
        if len(lits) == 1:
            if self.value(lits[0]) is None:
                self._assign(lits[0])
                if self._propagate(len(self.trail) - 1):
                    self.inconsistent = True
            return
        lits = list(lits)
        self.watches.setdefault(lits[0], []).append(lits)
        self.watches.setdefault(lits[1], []).append(lits)
        if self.value(lits[1]) is False and self.value(lits[0]) is None:
            self._assign(lits[0])
            if self._propagate(len(self.trail) - 1):
                self.inconsistent = True

    def _propagate(self, head: int) -> bool:
        """Process trail from ``head``; True on conflict."""
        trail = self.trail
        true = self.true
        watches = self.watches
        while head < len(trail):
            falsified = -trail[head]
            head += 1
            ws = watches.get(falsified)
            if not ws:
                continue
            keep = []
            conflict = False
            i = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if conflict:
                    keep.append(c)
                    continue
                if c[0] == falsified:
                    c[0], c[1] = c[1], c[0]
                other = c[0]
                if other in true:
                    keep.append(c)
                    continue
                for k in range(2, len(c)):
                    l = c[k]
                    if -l not in true:
                        c[1], c[k] = l, c[1]
                        watches.setdefault(l, []).append(c)
                        break
                else:
                    keep.append(c)
                    if -other in true:
                        conflict = True
                    else:
                        true.add(other)
                        trail.append(other)
            watches[falsified] = keep
            if conflict:
                return True
        return False

    def conflicts_under(self, assumptions: Iterable[int]) -> bool:
        if self.inconsistent:
            return True
        mark = len(self.trail)
        conflict = False
        for a in assumptions:
            if -a in self.true:
                conflict = True
                break
            if a not in self.true:
                self._assign(a)
        if not conflict:
            conflict = self._propagate(mark)
        for l in self.trail[mark:]:
            self.true.discard(l)
        del self.trail[mark:]
        return conflict

    def derives(self, lits: Iterable[int]) -> bool:
        lits = list(lits)
        if is_tautological(lits):
            return True
        return self.conflicts_under([-l for l in lits])


def extract_input_resolution(gamma: Cnf, c: Iterable[int]) -> Proof:
    """Input-resolution derivation of ``c`` from ``gamma``, given that gamma
    derives ``c`` by unit propagation.

    Built recursively: pick a unit literal ``p`` of gamma plus the negation
    of ``c``, derive ``c`` restricted by ``p`` from gamma restricted by ``p``,
    then lift that derivation back, re-inserting ``-p`` where it was
    removed.  Shape: at most one weakening first, then resolutions that each
    use a clause of gamma.  Every derived clause is subsumed by gamma plus
    ``c``.  Ids in the fragment are numbered over ``gamma``.
    """
    c = normalize_clause(c)
    if c is TAUTOLOGY:
        raise NotUpDerivable("target clause is tautological")
    if not up_derives(gamma, c):
        raise NotUpDerivable(f"{list(c)} is not derivable by unit propagation")
    start, weak, inputs = _chain(list(gamma.clauses), c)

    ids = {cl: i + 1 for i, cl in reversed(list(enumerate(gamma.clauses)))}
    steps: list = []
    next_id = len(gamma) + 1
    cur, cur_id = start, ids[start]
    if weak is not None:
        steps.append(Weaken(cur_id, weak))
        cur, cur_id = weak, next_id
        next_id += 1
    for d in inputs:
        v, cur = resolvent(cur, d)
        steps.append(Resolve(cur_id, ids[d], v, cur))
        cur_id = next_id
        next_id += 1
    assert cur == c
    return Proof("res", tuple(steps))


def _run(start, weak, inputs):
    cur = weak if weak is not None else start
    for d in inputs:
        cur = resolvent(cur, d)[1]
    return cur


def _chain(clauses: list, c: Clause):
    """(start clause, optional weakening of it, clauses resolved in turn)."""
    members = set(clauses)
    if c in members:
        return c, None, []
    if () in members:
        return (), c, []
    occurring = {abs(l) for cl in clauses for l in cl}
    units = sorted((cl for cl in members if len(cl) == 1), key=clause_key)
    cands = [cl[0] for cl in units]
    cands += [-l for l in c if abs(l) in occurring]
    p = cands[0]
    if p in c:
        # p is a unit clause of gamma inside c
        return (p,), c, []

    rest = []
    for cl in clauses:
        if p in cl:
            continue
        rest.append(tuple(l for l in cl if l != -p))
    rest = list(dict.fromkeys(rest))
    c_rest = tuple(l for l in c if l != -p)
    s, w, ds = _chain(rest, c_rest)

    def lift(d):
        if d in members:
            return d
        up = normalize_clause(d + (-p,))
        assert up in members
        return up

    start = lift(s)
    weak = w
    if w is not None and start != s:
        weak = normalize_clause(w + (-p,))
    inputs = [lift(d) for d in ds]
    final = _run(start, weak, inputs)
    if -p in c:
        # carry -p from the first clause on, so every clause stays subsumed by c
        first = weak if weak is not None else start
        if -p not in first:
            weak = normalize_clause(first + (-p,))
    elif -p in final:
        inputs.append((p,))
    return start, weak, inputs


def is_input_shaped(gamma: Cnf, fragment: Proof) -> bool:
    """At most one leading weakening, then resolutions with a premise in gamma."""
    m = len(gamma)
    for k, step in enumerate(fragment.steps):
        if isinstance(step, Weaken):
            if k != 0:
                return False
        elif isinstance(step, Resolve):
            if min(step.a, step.b) > m:
                return False
        else:
            return False
    return True
