"""Proof checking for the six systems and the blocked-addition normalizer.

The checker replays steps forward over the growing clause set.  Each step
either extends the set or produces a rejection naming the (1-based) step and
the reason.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .cnf import TAUTOLOGY, Cnf, normalize_clause, resolvent, var
from .errors import InputNotVerified, UnsupportedSystem
from .model import (
    AddBC,
    AddRAT,
    AddSBC,
    ExtTriple,
    LambdaMember,
    Proof,
    Resolve,
    Weaken,
    derived,
    proof_size,
)
from .redundancy import ClauseDB, is_blocked, is_blocked_extension, is_rat, is_sbc

ALLOWED = {
    "res": (Resolve, Weaken),
    "bc": (Resolve, Weaken, AddBC),
    "rat": (Resolve, Weaken, AddBC, AddRAT),
    "sbc": (Resolve, Weaken, AddBC, AddSBC),
    "ger": (Resolve, Weaken, LambdaMember),
    "er": (Resolve, Weaken, ExtTriple),
}
PREFIX_KIND = {"ger": LambdaMember, "er": ExtTriple}


class Verdict(enum.Enum):
    VERIFIED = "VERIFIED"
    REJECTED = "REJECTED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CheckReport:
    verdict: Verdict
    size: int
    step: Optional[int] = None  # 1-based index of the failing step
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.VERIFIED

    def __str__(self):
        if self.ok:
            return f"VERIFIED size={self.size}"
        where = f" at step {self.step}" if self.step is not None else ""
        return f"REJECTED{where}: {self.reason}"


class _Reject(Exception):
    pass


def check(cnf: Cnf, proof: Proof, require_refutation: bool = True) -> CheckReport:
    """Verify ``proof`` against ``cnf``.

    With ``require_refutation=False`` a proof that is valid step by step but
    never derives the empty clause is still VERIFIED; used for derivation
    fragments.
    """
    size = proof_size(proof)
    system = proof.system
    allowed = ALLOWED[system]
    prefix_kind = PREFIX_KIND.get(system)

    table = [None] + list(cnf.clauses)
    db = ClauseDB(cnf.clauses)
    limit = cnf.num_vars
    ext_vars: set = set()
    lam: list = []
    in_prefix = prefix_kind is not None
    lam_checked = system != "ger"

    def reject(k, reason):
        return CheckReport(Verdict.REJECTED, size, k, reason)

    def clause_of(step_id):
        if not isinstance(step_id, int) or step_id < 1 or step_id >= len(table):
            raise _Reject(f"antecedent id {step_id} out of range")
        return table[step_id]

    def result_of(step):
        c = normalize_clause(step.result)
        if c is TAUTOLOGY:
            raise _Reject("result clause is tautological")
        if tuple(step.result) != c:
            raise _Reject("result clause is not in canonical form")
        for l in c:
            if var(l) > limit:
                raise _Reject(f"variable {var(l)} exceeds the allowed range ({limit})")
        return c

    for k, step in enumerate(proof.steps, 1):
        try:
            if not isinstance(step, allowed):
                raise _Reject(f"{type(step).__name__} is not allowed in a {system} proof")
            if prefix_kind is not None:
                if isinstance(step, prefix_kind):
                    if not in_prefix:
                        raise _Reject(f"{type(step).__name__} after the resolution phase began")
                elif in_prefix:
                    in_prefix = False
                    if system == "ger":
                        if not is_blocked_extension(cnf, lam):
                            return reject(1, "lambda is not a blocked extension of the input")
                        lam_checked = True

            if isinstance(step, Resolve):
                a, b = clause_of(step.a), clause_of(step.b)
                c = result_of(step)
                r = resolvent(a, b)
                if r is None:
                    raise _Reject("antecedents do not clash")
                if r is TAUTOLOGY:
                    raise _Reject("resolvent is tautological")
                v, res = r
                if v != step.pivot:
                    raise _Reject(f"antecedents clash on {v}, not on pivot {step.pivot}")
                if res != c:
                    raise _Reject("listed clause differs from the resolvent")
                new = (c,)
            elif isinstance(step, Weaken):
                a = clause_of(step.a)
                c = result_of(step)
                if not set(a) <= set(c):
                    raise _Reject("antecedent is not a subset of the weakened clause")
                new = (c,)
            elif isinstance(step, AddBC):
                c = result_of(step)
                if step.pivot not in c:
                    raise _Reject("pivot not in clause")
                if not is_blocked(c, step.pivot, db):
                    raise _Reject(f"clause is not blocked for {step.pivot}")
                new = (c,)
            elif isinstance(step, AddRAT):
                c = result_of(step)
                if step.pivot not in c:
                    raise _Reject("pivot not in clause")
                if not is_rat(c, step.pivot, db):
                    raise _Reject(f"clause is not a RAT for {step.pivot}")
                new = (c,)
            elif isinstance(step, AddSBC):
                c = result_of(step)
                w = normalize_clause(step.witness)
                if w is TAUTOLOGY or not w:
                    raise _Reject("witness is empty or tautological")
                if not set(w) <= set(c):
                    raise _Reject("witness is not a subset of the clause")
                if not is_sbc(c, w, db):
                    raise _Reject("clause is not set-blocked for the witness")
                new = (c,)
            elif isinstance(step, LambdaMember):
                c = result_of(step)
                lam.append(c)
                new = (c,)
            else:  # ExtTriple
                x = step.x
                if not isinstance(x, int) or x <= cnf.num_vars:
                    raise _Reject(f"extension variable {x} is not above num_vars={cnf.num_vars}")
                if x in ext_vars:
                    raise _Reject(f"extension variable {x} reused")
                for lit in (step.p, step.q):
                    if lit == 0 or not (var(lit) <= cnf.num_vars or var(lit) in ext_vars):
                        raise _Reject(f"literal {lit} is over an undefined variable")
                if step.p == -step.q:
                    raise _Reject("extension triple over complementary literals")
                ext_vars.add(x)
                limit = max(limit, x)
                new = step.clauses()
        except _Reject as e:
            return reject(k, str(e))
        for c in new:
            table.append(c)
            db.add(c)

    if not lam_checked and not is_blocked_extension(cnf, lam):
        return reject(1, "lambda is not a blocked extension of the input")
    if require_refutation and () not in db:
        return reject(None, "the empty clause was not derived")
    return CheckReport(Verdict.VERIFIED, size)


def hoist_blocked_additions(cnf: Cnf, proof: Proof) -> Proof:
    """Move every AddBC step to the front of a bc proof, keeping their order."""
    if proof.system != "bc":
        raise UnsupportedSystem(f"hoisting is defined for bc proofs, not {proof.system}")
    if not check(cnf, proof).ok:
        raise InputNotVerified("input proof does not verify")
    m = len(cnf)
    bcs = [k for k, s in enumerate(proof.steps) if isinstance(s, AddBC)]
    rest = [k for k, s in enumerate(proof.steps) if not isinstance(s, AddBC)]
    new_id = {i: i for i in range(1, m + 1)}
    for pos, k in enumerate(bcs + rest):
        new_id[m + 1 + k] = m + 1 + pos
    out = []
    for k in bcs + rest:
        s = proof.steps[k]
        if isinstance(s, Resolve):
            s = Resolve(new_id[s.a], new_id[s.b], s.pivot, s.result)
        elif isinstance(s, Weaken):
            s = Weaken(new_id[s.a], s.result)
        out.append(s)
    return Proof("bc", tuple(out))


__all__ = [
    "CheckReport",
    "Verdict",
    "check",
    "derived",
    "hoist_blocked_additions",
    "proof_size",
]
