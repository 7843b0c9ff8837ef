"""Line-based proof files.

    p proof <res|bc|rat|sbc|ger|er>
    r <id1> <id2> <var> <lit>* 0     resolvent
    w <id> <lit>* 0                  weakening
    b <pivot> <lit>* 0               blocked clause addition
    t <pivot> <lit>* 0               RAT addition
    s <k> <lit>{k} <lit>* 0          set-blocked addition, witness first
    x <lit>* 0                       blocked-extension member
    e <var> <p> <q> 0                extension triple (takes three ids)

Lines starting with ``c`` are comments.  Clause ids count the input clauses
first (1..m), then one per step, three per ``e`` line.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .cnf import TAUTOLOGY, lit_key, normalize_clause
from .errors import ProofFormatError
from .model import (
    SYSTEMS,
    AddBC,
    AddRAT,
    AddSBC,
    ExtTriple,
    LambdaMember,
    Proof,
    Resolve,
    Weaken,
    step_width,
)


def _clause(lits, lineno):
    c = normalize_clause(lits)
    if c is TAUTOLOGY:
        # kept as written so the checker can reject it with a step index
        return tuple(sorted(set(lits), key=lit_key))
    return c


def parse_proof(text: str, num_clauses: Optional[int] = None) -> Proof:
    """Parse a proof file.  With ``num_clauses`` antecedent ids are checked
    against the ids available at each step."""
    system = None
    steps = []
    next_id = (num_clauses or 0) + 1
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0] == "c":
            continue
        tag = toks[0]
        if tag == "p":
            if system is not None:
                raise ProofFormatError(f"line {lineno}: duplicate header")
            if len(toks) != 3 or toks[1] != "proof" or toks[2] not in SYSTEMS:
                raise ProofFormatError(f"line {lineno}: malformed header {line.strip()!r}")
            system = toks[2]
            continue
        if system is None:
            raise ProofFormatError(f"line {lineno}: step before 'p proof' header")
        try:
            nums = [int(t) for t in toks[1:]]
        except ValueError:
            raise ProofFormatError(f"line {lineno}: malformed integer") from None
        if not nums or nums[-1] != 0:
            raise ProofFormatError(f"line {lineno}: line must end with 0")
        nums = nums[:-1]
        if 0 in nums and tag != "e":
            raise ProofFormatError(f"line {lineno}: literal 0 inside a line")

        def need(n):
            if len(nums) < n:
                raise ProofFormatError(f"line {lineno}: too few fields for '{tag}'")

        def check_id(i):
            if i < 1 or (num_clauses is not None and i >= next_id):
                raise ProofFormatError(f"line {lineno}: id {i} out of range")
            return i

        if tag == "r":
            need(3)
            if nums[2] <= 0:
                raise ProofFormatError(f"line {lineno}: pivot must be a positive variable")
            step = Resolve(check_id(nums[0]), check_id(nums[1]), nums[2], _clause(nums[3:], lineno))
        elif tag == "w":
            need(1)
            step = Weaken(check_id(nums[0]), _clause(nums[1:], lineno))
        elif tag == "b":
            need(1)
            step = AddBC(nums[0], _clause(nums[1:], lineno))
        elif tag == "t":
            need(1)
            step = AddRAT(nums[0], _clause(nums[1:], lineno))
        elif tag == "s":
            need(1)
            k = nums[0]
            if k < 1 or len(nums) < 1 + k:
                raise ProofFormatError(f"line {lineno}: witness arity {k} does not match")
            step = AddSBC(_clause(nums[1:1 + k], lineno), _clause(nums[1 + k:], lineno))
        elif tag == "x":
            step = LambdaMember(_clause(nums, lineno))
        elif tag == "e":
            if len(nums) != 3 or 0 in nums or nums[0] < 0:
                raise ProofFormatError(f"line {lineno}: 'e' takes a variable and two literals")
            step = ExtTriple(*nums)
        else:
            raise ProofFormatError(f"line {lineno}: unknown step tag {tag!r}")
        steps.append(step)
        next_id += step_width(step)
    if system is None:
        raise ProofFormatError("missing 'p proof' header")
    return Proof(system, tuple(steps))


def _lits(c) -> str:
    return " ".join(str(l) for l in tuple(c) + (0,))


def format_step(step) -> str:
    if isinstance(step, Resolve):
        return f"r {step.a} {step.b} {step.pivot} {_lits(step.result)}"
    if isinstance(step, Weaken):
        return f"w {step.a} {_lits(step.result)}"
    if isinstance(step, AddBC):
        return f"b {step.pivot} {_lits(step.result)}"
    if isinstance(step, AddRAT):
        return f"t {step.pivot} {_lits(step.result)}"
    if isinstance(step, AddSBC):
        w = " ".join(map(str, step.witness))
        return f"s {len(step.witness)} {w} {_lits(step.result)}"
    if isinstance(step, LambdaMember):
        return f"x {_lits(step.result)}"
    if isinstance(step, ExtTriple):
        return f"e {step.x} {step.p} {step.q} 0"
    raise TypeError(f"not a proof step: {step!r}")


def write_proof(proof: Proof, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p proof {proof.system}")
    lines.extend(format_step(s) for s in proof.steps)
    return "\n".join(lines) + "\n"


def read_proof(path, num_clauses: Optional[int] = None) -> Proof:
    with open(path, encoding="ascii") as f:
        return parse_proof(f.read(), num_clauses)
