"""Event kinds and the report type shared by the solvers and the oracle."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import ContractError


class EventKind(enum.Enum):
    TOO_CLOSE = "too-close"
    TOO_FAR = "too-far"
    THREE_ALIGNED = "three-aligned"


#: Defect expressions, named after the labelling a = d(focus, i),
#: b = d(focus, j), c = d(i, j), with the signs used to build them.
DEFECTS = (
    ("a+b-c", (1, 1, -1)),  # focus in the middle
    ("a+c-b", (1, -1, 1)),  # i in the middle
    ("b+c-a", (-1, 1, 1)),  # j in the middle
)


@dataclass(frozen=True)
class AlignmentWitness:
    """Which defect fired for a triple, and the resulting ordering.

    ``triple`` lists the object indices outer, middle, outer.  ``defect`` is
    one of the :data:`DEFECTS` names, or ``"coincident"`` when two of the
    three objects share a position at time 0.
    """

    defect: str
    triple: tuple[int, int, int]

    @property
    def middle(self) -> int:
        return self.triple[1]


@dataclass(frozen=True)
class EventReport:
    """Earliest event found by a solver.

    ``min_time`` is ``None`` when no event happens on the horizon.
    ``participants`` holds object indices for Too Close / Too Far and
    ``(i, j)`` index pairs for 3-Aligned, sorted.  ``witnesses`` is aligned
    with ``participants`` for 3-Aligned and empty otherwise.
    """

    kind: EventKind
    focus: int
    min_time: Optional[float]
    participants: tuple = ()
    witnesses: tuple[AlignmentWitness, ...] = ()

    def __post_init__(self):
        if (self.min_time is None) != (not self.participants):
            raise ContractError("participants must be nonempty exactly when an event exists")

    @property
    def found(self) -> bool:
        return self.min_time is not None

    @property
    def witness(self) -> Optional[AlignmentWitness]:
        return self.witnesses[0] if self.witnesses else None
