"""Clausal proof systems with redundancy rules: generators, builders and a
checker for resolution, blocked-clause, RAT, set-blocked, blocked-extension
and extended-resolution proofs."""

from .cnf import Clause, Cnf, clause, normalize_clause, project, restrict, subsumes
from .dimacs import parse_dimacs, write_dimacs
from .model import Proof, proof_size
from .proof_format import parse_proof, write_proof
from .proofs import CheckReport, Verdict, check

__all__ = [
    "CheckReport",
    "Clause",
    "Cnf",
    "Proof",
    "Verdict",
    "check",
    "clause",
    "normalize_clause",
    "parse_dimacs",
    "parse_proof",
    "project",
    "proof_size",
    "restrict",
    "subsumes",
    "write_dimacs",
    "write_proof",
]
