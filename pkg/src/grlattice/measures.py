"""Subsets of the positive integers under the lexicographic order.

A :class:`Measure` is a finite set, or a finite prefix followed by one
infinite arithmetic progression.  ``I <= J`` holds iff the least element of
the symmetric difference (if any) lies in ``J``; a side with no difference
counts as +infinity.  This order is total, with the empty set at the bottom.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _canonical(prefix, tail):
    prefix = tuple(prefix)
    if tail is None:
        return prefix, None
    start, step = tail
    # absorb arithmetic suffixes of the prefix into the tail
    while prefix and prefix[-1] == start - step:
        start = prefix[-1]
        prefix = prefix[:-1]
    return prefix, (start, step)


@functools.total_ordering
@dataclass(frozen=True)
class Measure:
    prefix: tuple[int, ...] = ()
    tail: tuple[int, int] | None = None  # (start, step)

    def __post_init__(self):
        if _canonical(self.prefix, self.tail) != (self.prefix, self.tail):
            raise ValueError(
                f"non-canonical measure {self.prefix!r} + {self.tail!r}; use canonicalize()"
            )

    # order

    def __lt__(self, other: Measure) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return lex_cmp(self, other) is Ordering.LT

    def __contains__(self, n: int) -> bool:
        return member(self, n)

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    def elements(self, upto: int) -> list[int]:
        """Members of the set that are ``<= upto``."""
        return [n for n in range(1, upto + 1) if member(self, n)]

    def max_finite(self) -> int:
        """Largest element of a finite measure (0 for the empty set)."""
        if self.tail is not None:
            raise ValueError("infinite measure has no maximum")
        return self.prefix[-1] if self.prefix else 0

    def with_element(self, n: int) -> Measure:
        """Finite measure with ``n`` appended; ``n`` must exceed every element."""
        if self.tail is not None or (self.prefix and self.prefix[-1] >= n):
            raise ValueError(f"cannot append {n} to {self}")
        return Measure(self.prefix + (n,))

    def to_json(self) -> dict:
        tail = None if self.tail is None else {"start": self.tail[0], "step": self.tail[1]}
        return {"prefix": list(self.prefix), "tail": tail}

    @classmethod
    def from_json(cls, data: dict) -> Measure:
        tail = data.get("tail")
        return canonicalize(
            data.get("prefix", []),
            None if tail is None else (tail["start"], tail["step"]),
        )

    def __str__(self) -> str:
        items = [str(n) for n in self.prefix]
        if self.tail is not None:
            start, step = self.tail
            items += [str(start + k * step) for k in range(3)] + ["..."]
        return "{" + ",".join(items) + "}"


EMPTY = Measure()


def canonicalize(prefix: Iterable[int], tail: tuple[int, int] | None = None) -> Measure:
    prefix = [int(n) for n in prefix]
    if any(n < 1 for n in prefix):
        raise ValueError(f"prefix entries must be positive: {prefix}")
    if any(a >= b for a, b in zip(prefix, prefix[1:])):
        raise ValueError(f"prefix must be strictly increasing: {prefix}")
    if tail is not None:
        start, step = int(tail[0]), int(tail[1])
        if step < 1:
            raise ValueError(f"tail step must be >= 1, got {step}")
        if start < 1:
            raise ValueError(f"tail start must be positive, got {start}")
        if prefix and start <= prefix[-1]:
            raise ValueError(f"tail start {start} must exceed prefix maximum {prefix[-1]}")
        tail = (start, step)
    p, t = _canonical(prefix, tail)
    return Measure(p, t)


def finite(elements: Iterable[int]) -> Measure:
    """Measure of a finite set given in any order."""
    return canonicalize(sorted(set(elements)))


def member(measure: Measure, n: int) -> bool:
    if measure.tail is not None:
        start, step = measure.tail
        if n >= start and (n - start) % step == 0:
            return True
    return n in measure.prefix


def _scan_bound(a: Measure, b: Measure) -> int:
    bound = 0
    steps = []
    for m in (a, b):
        if m.prefix:
            bound = max(bound, m.prefix[-1])
        if m.tail is not None:
            bound = max(bound, m.tail[0])
            steps.append(m.tail[1])
    return bound + (math.lcm(*steps) if steps else 0)


def lex_cmp(a: Measure, b: Measure) -> Ordering:
    if a == b:
        return Ordering.EQ
    for n in range(1, _scan_bound(a, b) + 1):
        in_a, in_b = member(a, n), member(b, n)
        if in_a != in_b:
            # first difference lies in b: inf(b \ a) < inf(a \ b)
            return Ordering.LT if in_b else Ordering.GT
    return Ordering.EQ


def sup_finite(family: Iterable[Measure]) -> Measure:
    best = EMPTY
    for m in family:
        if best < m:
            best = m
    return best


def inf_finite(family: Iterable[Measure]) -> Measure:
    family = list(family)
    if not family:
        raise ValueError("infimum of an empty family is the (unrepresented) top element")
    return min(family)


def join(a: Measure, b: Measure) -> Measure:
    return b if a < b else a


class ChainLimitError(RuntimeError):
    pass


def chain_limit(
    generator: Callable[[int], Measure],
    direction: str = "sup",
    probe_bound: int = 40,
    window: int = 4,
    max_generations: int | None = None,
) -> Measure:
    """Limit of a monotone chain ``generator(1), generator(2), ...``.

    Digits (memberships of 1, 2, ...) are declared stable once they agree
    over ``window`` consecutive generations; stability is sought for the
    first ``probe_bound`` digits.  The stabilized digits are then read as a
    finite set or as a prefix plus an arithmetic tail.

    Heuristic: a chain whose digits change after the probed generations is
    misread.  Callers certify results against closed forms.
    """
    if direction not in ("sup", "inf"):
        raise ValueError(f"direction must be 'sup' or 'inf', got {direction!r}")
    if max_generations is None:
        max_generations = 4 * probe_bound + window
    digits = range(1, probe_bound + 1)
    history: list[tuple[bool, ...]] = []
    previous: Measure | None = None
    for n in range(1, max_generations + 1):
        current = generator(n)
        if previous is not None:
            step = lex_cmp(previous, current)
            if (direction == "sup" and step is Ordering.GT) or (
                direction == "inf" and step is Ordering.LT
            ):
                raise ChainLimitError(
                    f"generator is not monotone ({direction}) at index {n}: {previous} -> {current}"
                )
        previous = current
        history.append(tuple(member(current, k) for k in digits))
        if len(history) >= window and len(set(history[-window:])) == 1:
            return _read_digits(history[-1], probe_bound)
    raise ChainLimitError(
        f"digits 1..{probe_bound} did not stabilize within {max_generations} generations"
    )


def _read_digits(bits: Sequence[bool], probe_bound: int) -> Measure:
    elements = [k + 1 for k, b in enumerate(bits) if b]
    upper = [e for e in elements if e > probe_bound // 2]
    if not upper:
        return canonicalize(elements)
    # an arithmetic tail must cover the upper half of the probed range
    for i in range(len(elements) - 2):
        rest = elements[i:]
        step = rest[1] - rest[0]
        if all(b - a == step for a, b in zip(rest, rest[1:])) and rest[-1] + step > probe_bound:
            if len(rest) >= 3:
                return canonicalize(elements[:i], (rest[0], step))
    raise ChainLimitError(f"no arithmetic tail within {probe_bound} digits: {elements}")
