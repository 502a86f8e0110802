from collections import deque
from typing import Deque, Dict, List

FAKE_INFINITY = -1


class HopcroftKarp:
    """
    Standalone Hopcroft-Karp over a left-to-right adjacency dict, used to cross-check
    the library matcher.
    """

    def __init__(self, graph_left: Dict[int, List[int]]) -> None:
        self._graph_left = graph_left
        self._left: List[int] = list(graph_left)
        self._reference_distance = FAKE_INFINITY
        self._pair_left: Dict[int, int] = {}
        self._pair_right: Dict[int, int] = {}
        self._dist_left: Dict[int, int] = {}

    def get_maximum_matching(self) -> Dict[int, int]:
        self._pair_left.clear()
        self._pair_right.clear()
        while self._bfs():
            for left in self._left:
                if left not in self._pair_left:
                    self._dfs(left)
        return dict(self._pair_left)

    def _bfs(self) -> bool:
        queue: Deque[int] = deque()
        for left in self._left:
            if left not in self._pair_left:
                queue.append(left)
                self._dist_left[left] = 0
            else:
                self._dist_left[left] = FAKE_INFINITY
        self._reference_distance = FAKE_INFINITY
        while queue:
            left = queue.popleft()
            distance = self._dist_left[left]
            if self._reference_distance != FAKE_INFINITY and distance >= self._reference_distance:
                continue
            for right in self._graph_left[left]:
                if right not in self._pair_right:
                    if self._reference_distance == FAKE_INFINITY:
                        self._reference_distance = distance + 1
                else:
                    other_left = self._pair_right[right]
                    if self._dist_left[other_left] == FAKE_INFINITY:
                        self._dist_left[other_left] = distance + 1
                        queue.append(other_left)
        return self._reference_distance != FAKE_INFINITY

    def _dfs(self, left: int) -> bool:
        for right in self._graph_left[left]:
            if right not in self._pair_right:
                if self._reference_distance == self._dist_left[left] + 1:
                    self._pair_left[left] = right
                    self._pair_right[right] = left
                    return True
            else:
                other_left = self._pair_right[right]
                if self._dist_left[other_left] == self._dist_left[left] + 1:
                    if self._dfs(other_left):
                        self._pair_left[left] = right
                        self._pair_right[right] = left
                        return True
        self._dist_left[left] = FAKE_INFINITY
        return False
