"""Brute-force ground truth for small formulas (tests and debugging only)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from .cnf import Cnf, is_tautological
from .errors import TooManyVariables

MAX_VARS = 25


@dataclass(frozen=True)
class OracleVerdict:
    satisfiable: bool
    witness: Optional[Dict[int, int]] = None  # var -> 0/1 over 1..num_vars


def sat_brute(gamma: Cnf) -> OracleVerdict:
    """Exhaustive search over the occurring variables.

    Finds the first model in counting order with variable 1 as the least
    significant bit, so the witness is deterministic.
    """
    vs = sorted(gamma.variables(), reverse=True)
    if len(vs) > MAX_VARS:
        raise TooManyVariables(f"{len(vs)} occurring variables, limit is {MAX_VARS}")
    if () in gamma:
        return OracleVerdict(False)
    # a clause can be evaluated once its smallest variable is assigned
    due: dict = {}
    for c in gamma.clauses:
        due.setdefault(min(abs(l) for l in c), []).append(c)
    value: dict = {}

    def ok(v):
        for c in due.get(v, ()):
            if not any((value[abs(l)] == 1) == (l > 0) for l in c):
                return False
        return True

    def search(k):
        if k == len(vs):
            return True
        v = vs[k]
        for b in (0, 1):
            value[v] = b
            if ok(v) and search(k + 1):
                return True
        del value[v]
        return False

    if not search(0):
        return OracleVerdict(False)
    witness = {v: value.get(v, 0) for v in range(1, gamma.num_vars + 1)}
    return OracleVerdict(True, witness)


def is_satisfiable(gamma: Cnf) -> bool:
    return sat_brute(gamma).satisfiable


def is_redundant(c, gamma: Cnf) -> bool:
    """Removing and adding ``c`` both preserve satisfiability."""
    c = tuple(c)
    without = Cnf([d for d in gamma.clauses if d != c], gamma.num_vars)
    s = is_satisfiable(gamma)
    return is_satisfiable(without) == s == is_satisfiable(gamma.add(c))


def implies(gamma: Cnf, c) -> bool:
    c = list(c)
    if is_tautological(c):
        return True
    return not is_satisfiable(gamma.add(*[(-l,) for l in c]))
