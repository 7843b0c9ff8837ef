"""Proof object model.

Clause ids: the input clauses are numbered ``1..m`` in CNF order, then every
step takes the next id (an extension triple takes three).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

from .cnf import TAUTOLOGY, Clause, Cnf, normalize_clause, resolvent

SYSTEMS = ("res", "bc", "rat", "sbc", "ger", "er")


@dataclass(frozen=True)
class Resolve:
    a: int
    b: int
    pivot: int  # variable
    result: Clause


@dataclass(frozen=True)
class Weaken:
    a: int
    result: Clause


@dataclass(frozen=True)
class AddBC:
    pivot: int  # literal
    result: Clause


@dataclass(frozen=True)
class AddRAT:
    pivot: int
    result: Clause


@dataclass(frozen=True)
class AddSBC:
    witness: Tuple[int, ...]
    result: Clause


@dataclass(frozen=True)
class ExtTriple:
    x: int
    p: int
    q: int

    def clauses(self) -> Tuple[Clause, Clause, Clause]:
        out = []
        for lits in ((-self.x, self.p), (-self.x, self.q), (self.x, -self.p, -self.q)):
            c = normalize_clause(lits)
            if c is TAUTOLOGY:
                raise ValueError(f"extension triple {self} yields a tautology")
            out.append(c)
        return tuple(out)


@dataclass(frozen=True)
class LambdaMember:
    result: Clause


ProofStep = Union[Resolve, Weaken, AddBC, AddRAT, AddSBC, ExtTriple, LambdaMember]


def step_width(step) -> int:
    return 3 if isinstance(step, ExtTriple) else 1


def step_results(step) -> Tuple[Clause, ...]:
    if isinstance(step, ExtTriple):
        return step.clauses()
    return (step.result,)


@dataclass(frozen=True)
class Proof:
    system: str
    steps: Tuple[ProofStep, ...] = ()

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise ValueError(f"unknown proof system {self.system!r}")
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self):
        return len(self.steps)

    def count(self, kind) -> int:
        return sum(isinstance(s, kind) for s in self.steps)


def proof_size(proof: Proof) -> int:
    """Number of CNFs in the sequence, plus the extension for ger/er."""
    if proof.system == "er":
        triples = proof.count(ExtTriple)
        return 3 * triples + 1 + (len(proof.steps) - triples)
    return 1 + len(proof.steps)


def derived(cnf: Cnf, proof: Proof) -> List[Optional[Clause]]:
    """Clause table indexed by id (slot 0 unused), taken from the step results.

    No validation happens here; see ``proofs.check``.
    """
    table: List[Optional[Clause]] = [None]
    table.extend(cnf.clauses)
    for step in proof.steps:
        table.extend(step_results(step))
    return table


class ProofWriter:
    """Accumulates proof steps while letting builders address clauses by value.

    With ``dedupe`` (the default) a step whose result is already present is
    dropped, so the emitted proof never re-derives a clause.
    """

    def __init__(self, system: str, cnf: Cnf, dedupe: bool = True):
        self.system = system
        self.cnf = cnf
        self.dedupe = dedupe
        self.steps: list = []
        self.table: List[Optional[Clause]] = [None]
        self.ids: dict = {}
        for c in cnf.clauses:
            self._register(c)

    def _register(self, c: Clause) -> int:
        self.table.append(c)
        i = len(self.table) - 1
        self.ids.setdefault(c, i)
        return i

    def __contains__(self, c) -> bool:
        return tuple(c) in self.ids

    def id_of(self, c: Clause) -> int:
        try:
            return self.ids[tuple(c)]
        except KeyError:
            raise KeyError(f"clause {c!r} has not been derived") from None

    def clauses(self) -> List[Clause]:
        return list(self.ids)

    def current(self) -> Cnf:
        return Cnf(self.ids, max(self.cnf.num_vars, _top(self.ids)))

    def _emit(self, step, result: Clause) -> Clause:
        if self.dedupe and result in self.ids:
            return result
        self.steps.append(step)
        self._register(result)
        return result

    def resolve(self, a: Clause, b: Clause) -> Clause:
        r = resolvent(a, b)
        if r is None or r is TAUTOLOGY:
            raise ValueError(f"cannot resolve {a!r} with {b!r}")
        v, result = r
        return self._emit(Resolve(self.id_of(a), self.id_of(b), v, result), result)

    def weaken(self, a: Clause, result: Clause) -> Clause:
        if a == tuple(result):
            return a
        return self._emit(Weaken(self.id_of(a), tuple(result)), tuple(result))

    def add_bc(self, pivot: int, c: Clause) -> Clause:
        return self._emit(AddBC(pivot, tuple(c)), tuple(c))

    def add_rat(self, pivot: int, c: Clause) -> Clause:
        return self._emit(AddRAT(pivot, tuple(c)), tuple(c))

    def add_sbc(self, witness: Iterable[int], c: Clause) -> Clause:
        w = normalize_clause(witness)
        return self._emit(AddSBC(w, tuple(c)), tuple(c))

    def lam(self, c: Clause) -> Clause:
        return self._emit(LambdaMember(tuple(c)), tuple(c))

    def ext(self, x: int, p: int, q: int) -> Tuple[Clause, ...]:
        step = ExtTriple(x, p, q)
        cs = step.clauses()
        self.steps.append(step)
        for c in cs:
            self._register(c)
        return cs

    def splice(self, base: Cnf, fragment: Proof) -> None:
        """Re-emit the steps of ``fragment`` (numbered over ``base``) here."""
        table = derived(base, fragment)
        for step in fragment.steps:
            if isinstance(step, Resolve):
                self.resolve(table[step.a], table[step.b])
            elif isinstance(step, Weaken):
                self.weaken(table[step.a], step.result)
            elif isinstance(step, AddBC):
                self.add_bc(step.pivot, step.result)
            elif isinstance(step, AddRAT):
                self.add_rat(step.pivot, step.result)
            elif isinstance(step, AddSBC):
                self.add_sbc(step.witness, step.result)
            elif isinstance(step, LambdaMember):
                self.lam(step.result)
            else:
                self.ext(step.x, step.p, step.q)

    def proof(self) -> Proof:
        return Proof(self.system, tuple(self.steps))


def _top(clauses) -> int:
    return max((abs(l) for c in clauses for l in c), default=0)
