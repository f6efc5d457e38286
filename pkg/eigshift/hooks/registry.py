"""
Hook Registry - Callback plumbing for solver lifecycle events.

Hook providers register callbacks per event type; the solver fires events
before and after every outer iteration.
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Iterable, Protocol

import numpy as np
import numpy.typing as npt

if TYPE_CHECKING:
    from ..solver.block import IterateBlock


@dataclass(frozen=True)
class OuterStartEvent:
    outer_index: int
    tau: float
    block: "IterateBlock"


@dataclass(frozen=True)
class OuterEndEvent:
    outer_index: int
    block: "IterateBlock"
    residuals: npt.NDArray[np.float64]
    converged: bool


class HookProvider(Protocol):
    def register_hooks(self, registry: "HookRegistry") -> None: ...


class HookRegistry:
    """Maps event types to the callbacks interested in them."""

    def __init__(self, providers: Iterable[HookProvider] = ()):
        self._callbacks: dict[type, list[Callable]] = defaultdict(list)
        for provider in providers:
            provider.register_hooks(self)

    def add_callback(self, event_type: type, callback: Callable) -> None:
        self._callbacks[event_type].append(callback)

    def invoke(self, event: object) -> None:
        for callback in self._callbacks.get(type(event), []):
            callback(event)
