"""
Proposition name table
"""

import re
from typing import Dict, Iterable, List

from ..exceptions import PropositionClashError

CANONICAL_NAME = re.compile(r"p([1-9][0-9]*)")


class PropTable:
    """Maps proposition names to 1-based indices.

    ``p<n>`` always names index n. Other names receive the smallest free index
    the first time they are seen.
    """

    def __init__(self) -> None:
        self._by_name: Dict[str, int] = {}
        self._by_index: Dict[int, str] = {}

    def __len__(self) -> int:
        return len(self._by_name)

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    @staticmethod
    def canonical_index(name: str) -> int:
        match = CANONICAL_NAME.fullmatch(name)
        return int(match.group(1)) if match else 0

    def declare(self, name: str) -> int:
        """Return the index of a name, allocating one if needed"""
        if name in self._by_name:
            return self._by_name[name]
        index = self.canonical_index(name)
        if index:
            if index in self._by_index:
                raise PropositionClashError(
                    f"{name} clashes with proposition {self._by_index[index]!r}"
                )
        else:
            index = 1
            while index in self._by_index:
                index += 1
        self._by_name[name] = index
        self._by_index[index] = name
        return index

    def declare_all(self, names: Iterable[str]) -> List[int]:
        """Declare canonical names before aliases so aliases never take them"""
        names = list(dict.fromkeys(names))
        for name in names:
            if self.canonical_index(name):
                self.declare(name)
        return [self.declare(name) for name in names]

    def copy(self) -> "PropTable":
        table = PropTable()
        table._by_name = dict(self._by_name)
        table._by_index = dict(self._by_index)
        return table

    def update(self, other: "PropTable") -> None:
        """Take over every name of ``other``, which must extend this table"""
        self._by_name.update(other._by_name)
        self._by_index.update(other._by_index)

    def index(self, name: str) -> int:
        return self.declare(name)

    def name(self, index: int) -> str:
        return self._by_index.get(index, f"p{index}")

    def names(self, indices: Iterable[int]) -> List[str]:
        return sorted((self.name(i) for i in indices), key=self._sort_key)

    def _sort_key(self, name: str) -> tuple:
        return (self._by_name.get(name, self.canonical_index(name)), name)
