"""
Trajectory record shared by the master-space and reduced integrators.
"""

from dataclasses import dataclass, field
from typing import Any, Generic, TypeVar

import numpy as np

StateT = TypeVar("StateT")


@dataclass
class Trajectory(Generic[StateT]):
    """Sampled solution of a flow.

    Attributes:
        times: Strictly increasing sample times
        states: One state per sample time
        monitors: Named scalar series sampled alongside the states
    """

    times: list[float] = field(default_factory=list)
    states: list[StateT] = field(default_factory=list)
    monitors: dict[str, list[float]] = field(default_factory=dict)

    def append(self, time: float, state: StateT, **monitor_values: float) -> None:
        """Record a sample; times must keep increasing."""
        if self.times and time <= self.times[-1]:
            raise ValueError(f"non-increasing time {time} after {self.times[-1]}")
        self.times.append(float(time))
        self.states.append(state)
        for name, value in monitor_values.items():
            self.monitors.setdefault(name, []).append(float(value))

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> StateT:
        return self.states[-1]

    def monitor(self, name: str) -> np.ndarray:
        return np.asarray(self.monitors[name])

    def to_dict(self) -> dict[str, Any]:
        return {"times": list(self.times), "monitors": dict(self.monitors)}
