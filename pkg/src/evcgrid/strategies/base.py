from __future__ import annotations

import copy

from ..errors import NotApplicable
from ..game import AttackEvent, DefenseMove, GuardConfig
from ..grid import GridGraph


class DefenseStrategy:
    """Base class: a strategy instance is bound to one graph / one session.

    ``state`` is a small JSON-serializable dict (phase bit and the like)
    so sessions can be persisted and resumed.
    """

    tag: str = ""

    def __init__(self, graph: GridGraph):
        if not self.applicable(graph):
            raise NotApplicable(f"{self.tag} does not apply to "
                                f"{graph.kind.value}({graph.h},{graph.w},"
                                f"{graph.topology.value})")
        self.graph = graph
        self.state: dict = {}

    @classmethod
    def applicable(cls, graph: GridGraph) -> bool:
        raise NotImplementedError

    def initial_config(self, graph: GridGraph | None = None) -> GuardConfig:
        if graph is not None and graph is not self.graph:
            raise NotApplicable("strategy is bound to a different graph")
        return self._initial()

    def _initial(self) -> GuardConfig:
        raise NotImplementedError

    def defend(self, c: GuardConfig, a: AttackEvent) -> DefenseMove:
        raise NotImplementedError

    def clone(self) -> "DefenseStrategy":
        twin = type(self)(self.graph)
        twin.state = copy.deepcopy(self.state)
        return twin

    def set_state(self, state: dict) -> None:
        self.state = dict(state)
