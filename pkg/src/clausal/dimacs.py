"""DIMACS CNF reading and writing."""

from __future__ import annotations

import logging

from .cnf import TAUTOLOGY, Cnf, normalize_clause
from .errors import DimacsError

log = logging.getLogger(__name__)


def parse_dimacs(text: str) -> Cnf:
    num_vars = num_clauses = None
    clauses = []
    current: list = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(f"line {lineno}: negative header count")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed token {tok!r}") from None
            if lit == 0:
                c = normalize_clause(current)
                if c is TAUTOLOGY:
                    log.warning("line %d: dropping tautological clause %s", lineno, current)
                else:
                    clauses.append(c)
                current = []
                continue
            if abs(lit) > num_vars:
                raise DimacsError(
                    f"line {lineno}: variable {abs(lit)} out of range (num_vars={num_vars})")
            current.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is not terminated by 0")
    if len(clauses) != num_clauses:
        log.warning("header declares %d clauses, found %d", num_clauses, len(clauses))
    return Cnf(clauses, num_vars)


def write_dimacs(cnf: Cnf, comments=()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {cnf.num_vars} {len(cnf)}")
    for c in cnf.clauses:
        lines.append(" ".join(map(str, c + (0,))))
    return "\n".join(lines) + "\n"


def read_dimacs(path) -> Cnf:
    with open(path, encoding="ascii") as f:
        return parse_dimacs(f.read())
