"""Right-greedy stack passes where the stack content must avoid a pattern set.

One pass reads the input left to right through a single stack.  Before each
push the stack is read top to bottom as a word; if pushing the next input
value on top would make that word contain a forbidden pattern, the top is
popped to the output instead and the test runs again.  When the input is
exhausted the stack is flushed.  A two-stack machine chains a pass for the
patterns {sigma, tau} into the classical increasing-stack pass (forbidden
pattern 21), which sorts exactly the 231-avoiding inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .perms import (
    BivincularPattern,
    PatternSet,
    Permutation,
    _word_contains,
    _word_contains_bivincular,
)


class EmptyPatternSet(ValueError):
    """A stack pass needs at least one forbidden pattern."""


class DegeneratePair(ValueError):
    """The two-stack machine needs two distinct patterns."""


PUSH = "PUSH"
POP_BLOCKED = "POP_BLOCKED"
POP_FLUSH = "POP_FLUSH"

PATTERN_21 = Permutation((2, 1))
PATTERN_231 = Permutation((2, 3, 1))
WEST_PATTERNS = PatternSet.of(PATTERN_21)


@dataclass(frozen=True)
class StackStep:
    """State right after one machine action.

    ``stack_top_to_bottom`` is the stack read from its top; a push consumes
    the head of the input, either pop moves the old stack top to the output.
    """

    action: str
    moved_value: int
    input_rest: tuple[int, ...]
    stack_top_to_bottom: tuple[int, ...]
    output_so_far: tuple[int, ...]


@dataclass(frozen=True)
class StackTrace:
    machine: PatternSet
    input: Permutation
    steps: tuple[StackStep, ...]
    output: Permutation

    def to_json_dict(self) -> dict:
        return {
            "machine": pattern_set_names(self.machine),
            "input": list(self.input.entries),
            "steps": [
                {
                    "action": s.action,
                    "moved_value": s.moved_value,
                    "input_rest": list(s.input_rest),
                    "stack": list(s.stack_top_to_bottom),
                    "output": list(s.output_so_far),
                }
                for s in self.steps
            ],
            "output": list(self.output.entries),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def pattern_name(p: Permutation | BivincularPattern) -> str:
    """Short stable name for a pattern, used in labels and serialized output."""
    if isinstance(p, BivincularPattern):
        base = "".join(str(v) for v in p.base.entries)
        if (
            len(p.base) == 3
            and p.adjacent_positions == frozenset({2})
            and p.adjacent_values == frozenset({2})
        ):
            return f"{base}-star"
        pos = ",".join(str(i) for i in sorted(p.adjacent_positions))
        val = ",".join(str(v) for v in sorted(p.adjacent_values))
        return f"{base}|pos:{pos}|val:{val}"
    return "".join(str(v) for v in p.entries)


def pattern_set_names(patterns: PatternSet) -> list[str]:
    return [pattern_name(p) for p in patterns.classical] + [
        pattern_name(p) for p in patterns.bivincular
    ]


# ---- the pass itself ---------------------------------------------------

# A pattern of length 2 or 3 is compiled to the tuple of "is less than"
# comparisons between its entries; a candidate subsequence matches exactly
# when its own comparison tuple is equal.  Longer classical patterns and all
# bivincular patterns take the generic containment path.


@lru_cache(maxsize=None)
def _compile(patterns: PatternSet):
    if patterns.is_empty():
        raise EmptyPatternSet("need at least one forbidden pattern")
    rels2 = []
    rels3 = []
    general_classical = []
    for p in patterns.classical:
        w = p.entries
        if len(w) < 2:
            raise ValueError("forbidden patterns must have length >= 2")
        if len(w) == 2:
            rels2.append(w[0] < w[1])
        elif len(w) == 3:
            rels3.append((w[0] < w[1], w[0] < w[2], w[1] < w[2]))
        else:
            general_classical.append(w)
    for b in patterns.bivincular:
        if len(b.base) < 2:
            raise ValueError("forbidden patterns must have length >= 2")
    return tuple(rels2), tuple(rels3), tuple(general_classical), patterns.bivincular


def _blocked(stack: list[int], v: int, compiled) -> bool:
    """Would pushing v on the stack create a forbidden occurrence?

    The stack already avoids every pattern, and the hypothetical new top is
    the first letter of the word read top to bottom, so only occurrences
    starting at v need checking for the compiled short patterns.
    """
    rels2, rels3, general_classical, bivincular = compiled
    m = len(stack)
    if rels2:
        for a in stack:
            if (v < a) in rels2:
                return True
    if rels3 and m >= 2:
        for i in range(m - 1, 0, -1):
            a = stack[i]
            va = v < a
            for j in range(i - 1, -1, -1):
                b = stack[j]
                if (va, v < b, a < b) in rels3:
                    return True
    if general_classical or bivincular:
        word = (v,) + tuple(reversed(stack))
        for w in general_classical:
            if _word_contains(word, w):
                return True
        for b in bivincular:
            if _word_contains_bivincular(word, b):
                return True
    return False


def _word_pass(word: Sequence[int], compiled) -> tuple[int, ...]:
    stack: list[int] = []
    out: list[int] = []
    emit = out.append
    push = stack.append
    pop = stack.pop
    for v in word:
        while stack and _blocked(stack, v, compiled):
            emit(pop())
        push(v)
    while stack:
        emit(pop())
    return tuple(out)


def _west_word(word: Sequence[int]) -> tuple[int, ...]:
    stack: list[int] = []
    out: list[int] = []
    for v in word:
        while stack and stack[-1] < v:
            out.append(stack.pop())
        stack.append(v)
    while stack:
        out.append(stack.pop())
    return tuple(out)


def _word_contains_231(w: Sequence[int]) -> bool:
    # occurrence (i, j, k): w[k] < w[i] < w[j], so an i < j with
    # min(w[j+1:]) < w[i] < w[j] is exactly what to look for
    n = len(w)
    if n < 3:
        return False
    suffix_min = [0] * (n + 1)
    suffix_min[n] = max(w) + 1
    for t in range(n - 1, -1, -1):
        v = w[t]
        below = suffix_min[t + 1]
        suffix_min[t] = v if v < below else below
    for j in range(1, n - 1):
        vj = w[j]
        floor = suffix_min[j + 1]
        for i in range(j):
            if floor < w[i] < vj:
                return True
    return False


def _sortable_word(word: Sequence[int], compiled) -> bool:
    mid = _word_pass(word, compiled)
    sortable = not _word_contains_231(mid)
    # cross-check against running the second stack for real
    assert sortable == (_west_word(mid) == tuple(range(1, len(mid) + 1)))
    return sortable


@lru_cache(maxsize=None)
def _compile_pair(sigma: Permutation, tau: Permutation):
    if sigma == tau:
        raise DegeneratePair(f"need two distinct patterns, got {sigma} twice")
    return _compile(PatternSet.of(sigma, tau))


# ---- public operations -------------------------------------------------


def pattern_stack_pass(
    x: Permutation,
    patterns: PatternSet,
    want_trace: bool = False,
) -> "Permutation | tuple[Permutation, StackTrace]":
    """One right-greedy pass of x through a pattern-avoiding stack.

    Returns the output permutation, or with ``want_trace`` the pair of
    output and a full step-by-step trace.
    """
    patterns = PatternSet.coerce(patterns)
    compiled = _compile(patterns)
    if not want_trace:
        return Permutation(_word_pass(x.entries, compiled))

    steps: list[StackStep] = []
    stack: list[int] = []
    out: list[int] = []
    pending = x.entries
    i = 0
    while i < len(pending):
        v = pending[i]
        if stack and _blocked(stack, v, compiled):
            t = stack.pop()
            out.append(t)
            steps.append(
                StackStep(POP_BLOCKED, t, pending[i:], tuple(reversed(stack)), tuple(out))
            )
        else:
            stack.append(v)
            i += 1
            steps.append(
                StackStep(PUSH, v, pending[i:], tuple(reversed(stack)), tuple(out))
            )
    while stack:
        t = stack.pop()
        out.append(t)
        steps.append(StackStep(POP_FLUSH, t, (), tuple(reversed(stack)), tuple(out)))
    output = Permutation(tuple(out))
    return output, StackTrace(patterns, x, tuple(steps), output)


def west_pass(x: Permutation, want_trace: bool = False):
    """The classical stack-sorting pass: the stack stays increasing top down.

    Behaves exactly like ``pattern_stack_pass`` with the single forbidden
    pattern 21, but runs on a fast path.

    >>> str(west_pass(Permutation.from_digits("3412")))
    '3 1 2 4'
    """
    if want_trace:
        return pattern_stack_pass(x, WEST_PATTERNS, want_trace=True)
    return Permutation(_west_word(x.entries))


def machine(x: Permutation, sigma: Permutation, tau: Permutation) -> Permutation:
    """The two-stack machine: a {sigma, tau}-avoiding pass, then the 21 pass.

    >>> p = Permutation.from_digits
    >>> str(pattern_stack_pass(p("2314"), PatternSet.of(p("132"), p("321"))))
    '3 4 1 2'
    >>> str(machine(p("2314"), p("132"), p("321")))
    '3 1 2 4'
    >>> str(machine(p("4213"), p("132"), p("321")))
    '1 2 3 4'
    """
    if sigma == tau:
        raise DegeneratePair(f"need two distinct patterns, got {sigma} twice")
    mid = pattern_stack_pass(x, PatternSet.of(sigma, tau))
    return west_pass(mid)


def is_sortable(x: Permutation, sigma: Permutation, tau: Permutation) -> bool:
    """Does the (sigma, tau)-machine sort x to the identity?

    Decided by testing the intermediate word for 231: the final increasing
    stack sorts a word exactly when the word avoids 231.

    >>> p = Permutation.from_digits
    >>> [is_sortable(p(w), p("132"), p("321")) for w in ("4213", "2314")]
    [True, False]
    """
    return _sortable_word(x.entries, _compile_pair(sigma, tau))


def validate_trace(trace: StackTrace) -> None:
    """Assert the mechanical invariants of a recorded pass.

    Checks conservation (input, stack and output always partition the
    entries), stack legality after every step, and greediness: every blocked
    pop is justified because pushing the pending value would have created a
    forbidden occurrence, and flush pops happen only on empty input.
    """
    patterns = trace.machine
    full = sorted(trace.input.entries)

    def stack_legal(word: tuple[int, ...]) -> bool:
        return not (
            any(_word_contains(word, p.entries) for p in patterns.classical)
            or any(_word_contains_bivincular(word, b) for b in patterns.bivincular)
        )

    prev_rest = trace.input.entries
    prev_stack: tuple[int, ...] = ()
    prev_out: tuple[int, ...] = ()
    for step in trace.steps:
        combined = sorted(step.input_rest + step.stack_top_to_bottom + step.output_so_far)
        assert combined == full, "conservation violated"
        assert stack_legal(step.stack_top_to_bottom), "stack holds a forbidden pattern"
        if step.action == PUSH:
            assert prev_rest and step.moved_value == prev_rest[0]
            assert step.input_rest == prev_rest[1:]
            assert step.stack_top_to_bottom == (step.moved_value,) + prev_stack
            assert step.output_so_far == prev_out
        else:
            assert prev_stack and step.moved_value == prev_stack[0]
            assert step.stack_top_to_bottom == prev_stack[1:]
            assert step.output_so_far == prev_out + (step.moved_value,)
            assert step.input_rest == prev_rest
            if step.action == POP_BLOCKED:
                assert prev_rest, "blocked pop with no pending input"
                assert not stack_legal((prev_rest[0],) + prev_stack), "pop not justified"
            else:
                assert step.action == POP_FLUSH and not prev_rest, "flush before input ran out"
        prev_rest = step.input_rest
        prev_stack = step.stack_top_to_bottom
        prev_out = step.output_so_far
    assert prev_rest == () and prev_stack == ()
    assert prev_out == trace.output.entries
