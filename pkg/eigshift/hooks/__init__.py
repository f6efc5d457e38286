"""
Hooks - Lifecycle callbacks for solver runs.
"""

from .logging_hook import IterationLoggingHook
from .registry import HookProvider, HookRegistry, OuterEndEvent, OuterStartEvent

__all__ = ["IterationLoggingHook", "HookProvider", "HookRegistry", "OuterStartEvent", "OuterEndEvent"]
