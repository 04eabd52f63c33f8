"""Cell request normalization and an in-process LRU cache of computed cells."""

import hashlib
from collections import OrderedDict
from fractions import Fraction

from src.schemas import CellDocument


def normalize_cell_request(group: str, point: tuple[Fraction, Fraction, Fraction]) -> str:
    """Canonical text of a cell request.

    Coordinates are written in lowest terms, so "2/4" and "1/2" map to the same key.

    Args:
        group: Catalog name of the group.
        point: Parsed base point.

    Returns:
        Normalized request string.
    """
    return f"{group.strip()}|" + ",".join(str(c) for c in point)


def hash_cell_request(normalized: str) -> str:
    """SHA-256 hex digest of a normalized request."""
    return hashlib.sha256(normalized.encode()).hexdigest()


class CellCache:
    """Least-recently-used store of cell documents keyed by request hash."""

    def __init__(self, max_size: int) -> None:
        self.max_size = max_size
        self._entries: OrderedDict[str, CellDocument] = OrderedDict()

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, key: str) -> CellDocument | None:
        document = self._entries.get(key)
        if document is not None:
            self._entries.move_to_end(key)
        return document

    def put(self, key: str, document: CellDocument) -> None:
        if self.max_size == 0:
            return
        self._entries[key] = document
        self._entries.move_to_end(key)
        while len(self._entries) > self.max_size:
            self._entries.popitem(last=False)

    def clear(self) -> None:
        self._entries.clear()
