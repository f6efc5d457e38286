"""
Logging Hook - Log outer iterations before and after they run.
"""

from rich.console import Console

from .registry import HookRegistry, OuterEndEvent, OuterStartEvent


class IterationLoggingHook:
    """
    Hook that logs each outer iteration: the shift going in, Ritz values and residuals coming out.

    Usage:
        report = solve(A, config, hooks=[IterationLoggingHook()])
    """

    def __init__(self, verbose: bool = True, every: int = 1, console: Console | None = None):
        """
        Initialize the logging hook.

        Args:
            verbose: If True, print Ritz values and residuals. If False, just the iteration line.
            every: Only log every ``every``-th iteration (the converged one is always logged).
            console: Console to print to (default: a new stderr console).
        """
        self.iteration_count = 0
        self.verbose = verbose
        self.every = max(1, every)
        self.console = console or Console(stderr=True)

    def register_hooks(self, registry: HookRegistry) -> None:
        registry.add_callback(OuterStartEvent, self.log_start)
        registry.add_callback(OuterEndEvent, self.log_end)

    def _due(self, outer_index: int) -> bool:
        return outer_index % self.every == 0

    def log_start(self, event: OuterStartEvent) -> None:
        self.iteration_count += 1
        if self._due(event.outer_index):
            self.console.print(f"[dim]outer {event.outer_index:>5}[/dim]  tau = {event.tau:.10g}")

    def log_end(self, event: OuterEndEvent) -> None:
        if not (self._due(event.outer_index) or event.converged):
            return
        status = "[green]converged[/green]" if event.converged else "[dim]-[/dim]"
        line = f"[dim]outer {event.outer_index:>5}[/dim]  max residual = {event.residuals.max():.3e}  {status}"
        if self.verbose:
            ritz = ", ".join(f"{v:.12g}" for v in event.block.ritz_values)
            line += f"\n            ritz = ({ritz})"
        self.console.print(line)
