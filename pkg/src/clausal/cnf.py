"""Literals, clauses, CNFs, partial assignments and the basic operations on them.

Literals are nonzero ints (DIMACS convention).  A clause is a tuple of
literals in canonical order: by variable ascending, and since a clause is
nontautological each variable occurs once.  Tautologies are never clause
values; producers return the ``TAUTOLOGY`` marker instead.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, Mapping, Tuple, Union

from .errors import ZeroLiteralError

Literal = int
Clause = Tuple[int, ...]
PartialAssignment = frozenset  # set of literals made true

EMPTY: Clause = ()


class Marker(enum.Enum):
    TAUTOLOGY = "tautology"
    SATISFIED = "satisfied"

    def __repr__(self):
        return self.name


TAUTOLOGY = Marker.TAUTOLOGY
SATISFIED = Marker.SATISFIED


def var(lit: int) -> int:
    return lit if lit > 0 else -lit


def lit_key(lit: int) -> int:
    # negative polarity before positive
    return 2 * abs(lit) + (lit > 0)


def clause_key(clause: Clause) -> tuple:
    """Sort key giving the canonical clause order."""
    return tuple(lit_key(l) for l in clause)


def normalize_clause(lits: Iterable[int]) -> Union[Clause, Marker]:
    seen = set()
    for l in lits:
        if l == 0:
            raise ZeroLiteralError("literal code 0 is not allowed")
        if -l in seen:
            return TAUTOLOGY
        seen.add(l)
    return tuple(sorted(seen, key=lit_key))


def clause(*lits: int) -> Clause:
    """Build a clause, raising on tautologies.  Handy for literals in code."""
    c = normalize_clause(lits)
    if c is TAUTOLOGY:
        raise ValueError(f"tautological literal set {lits!r}")
    return c


def is_tautological(lits: Iterable[int]) -> bool:
    s = set(lits)
    return any(-l in s for l in s)


def negate(lits: Iterable[int]) -> frozenset:
    return frozenset(-l for l in lits)


def union(a: Iterable[int], b: Iterable[int]) -> Union[Clause, Marker]:
    return normalize_clause(list(a) + list(b))


def resolvent(a: Clause, b: Clause) -> Union[Tuple[int, Clause], Marker, None]:
    """Resolve two clauses on their unique clashing variable.

    Returns ``(pivot_var, result)``, ``None`` when they do not clash and
    ``TAUTOLOGY`` when they clash on more than one variable.
    """
    sb = set(b)
    clash = [l for l in a if -l in sb]
    if not clash:
        return None
    if len(clash) > 1:
        return TAUTOLOGY
    p = clash[0]
    rest = [l for l in a if l != p] + [l for l in b if l != -p]
    return var(p), normalize_clause(rest)


def partial_assignment(spec: Union[Mapping[int, int], Iterable[int]]) -> frozenset:
    """Accept ``{var: 0/1}`` or an iterable of true literals."""
    if isinstance(spec, Mapping):
        lits = []
        for v, b in spec.items():
            if v <= 0:
                raise ValueError(f"bad variable {v}")
            if b not in (0, 1, True, False):
                raise ValueError(f"bad value {b!r} for variable {v}")
            lits.append(v if b else -v)
        return frozenset(lits)
    lits = frozenset(spec)
    if 0 in lits:
        raise ZeroLiteralError("literal code 0 is not allowed")
    if any(-l in lits for l in lits):
        raise ValueError("inconsistent partial assignment")
    return lits


class Cnf:
    """An immutable set of clauses with a declared variable universe.

    Clause order (first occurrence) is kept because proof files number
    input clauses in file order; equality is set equality.
    """

    __slots__ = ("clauses", "num_vars", "_set")

    def __init__(self, clauses: Iterable[Clause] = (), num_vars: int | None = None):
        seen = {}
        top = 0
        for c in clauses:
            c = tuple(c)
            if c not in seen:
                seen[c] = None
                if c:
                    top = max(top, max(abs(l) for l in c))
        if num_vars is None:
            num_vars = top
        elif top > num_vars:
            raise ValueError(f"variable {top} exceeds num_vars={num_vars}")
        object.__setattr__(self, "clauses", tuple(seen))
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "_set", frozenset(seen))

    def __setattr__(self, name, value):
        raise AttributeError("Cnf is immutable")

    @classmethod
    def from_lists(cls, lists: Iterable[Iterable[int]], num_vars: int | None = None) -> "Cnf":
        out = []
        for lits in lists:
            c = normalize_clause(lits)
            if c is TAUTOLOGY:
                raise ValueError(f"tautological clause {list(lits)!r}")
            out.append(c)
        return cls(out, num_vars)

    @property
    def clause_set(self) -> frozenset:
        return self._set

    def variables(self) -> set:
        return {abs(l) for c in self.clauses for l in c}

    def __len__(self):
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __contains__(self, c):
        return tuple(c) in self._set

    def __eq__(self, other):
        if not isinstance(other, Cnf):
            return NotImplemented
        return self._set == other._set and self.num_vars == other.num_vars

    def __hash__(self):
        return hash((self._set, self.num_vars))

    def __repr__(self):
        return f"Cnf(num_vars={self.num_vars}, clauses={list(self.clauses)!r})"

    def add(self, *clauses: Clause, num_vars: int | None = None) -> "Cnf":
        nv = self.num_vars if num_vars is None else num_vars
        extra_top = max((abs(l) for c in clauses for l in c), default=0)
        return Cnf(self.clauses + tuple(clauses), max(nv, extra_top))

    def with_num_vars(self, num_vars: int) -> "Cnf":
        return Cnf(self.clauses, num_vars)

    def sorted(self) -> "Cnf":
        return Cnf(sorted(self.clauses, key=clause_key), self.num_vars)


def restrict(target, alpha: Iterable[int]):
    """Restrict a clause or CNF under a partial assignment (set of true literals).

    A clause satisfied by ``alpha`` restricts to ``SATISFIED``; a CNF drops
    its satisfied clauses and keeps ``num_vars``.
    """
    alpha = alpha if isinstance(alpha, frozenset) else frozenset(alpha)
    if isinstance(target, Cnf):
        out = []
        for c in target.clauses:
            r = _restrict_clause(c, alpha)
            if r is not SATISFIED:
                out.append(r)
        return Cnf(out, target.num_vars)
    return _restrict_clause(tuple(target), alpha)


def _restrict_clause(c: Clause, alpha: frozenset):
    kept = []
    for l in c:
        if l in alpha:
            return SATISFIED
        if -l not in alpha:
            kept.append(l)
    return tuple(kept)


def project(gamma: Cnf, p: int) -> Cnf:
    """Residues ``C - {p}`` of the clauses of ``gamma`` containing ``p``."""
    return Cnf((tuple(l for l in c if l != p) for c in gamma.clauses if p in c), gamma.num_vars)


def subsumes(a, b) -> bool:
    if isinstance(a, Cnf) or isinstance(b, Cnf):
        if not (isinstance(a, Cnf) and isinstance(b, Cnf)):
            raise TypeError("subsumes needs two clauses or two CNFs")
        return cnf_subsumes(a.clauses, b.clauses)
    return set(a) <= set(b)


def cnf_subsumes(gamma: Iterable[Clause], delta: Iterable[Clause]) -> bool:
    """``gamma`` subsumes ``delta``: every clause of delta contains one of gamma."""
    gamma = [frozenset(c) for c in set(gamma)]
    by_lit: dict = {}
    for g in gamma:
        if not g:
            return True
        by_lit.setdefault(min(g), []).append(g)
    for d in delta:
        ds = frozenset(d)
        if not any(g <= ds for l in ds for g in by_lit.get(l, ())):
            return False
    return True


def satisfies(alpha: Iterable[int], target) -> bool:
    alpha = alpha if isinstance(alpha, (set, frozenset)) else set(alpha)
    if isinstance(target, Cnf):
        return all(any(l in alpha for l in c) for c in target.clauses)
    return any(l in alpha for l in target)
