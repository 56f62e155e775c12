"""File cache for catalog reports, keyed by a content hash that includes the code version."""

from __future__ import annotations

import functools
import hashlib
import json
import os
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Optional

ENV_VAR = "SCHUBERT_RIGIDITY_CACHE"


@functools.lru_cache(maxsize=None)
def code_version() -> str:
    """sha256 over every module and data file of the package, so any edit invalidates the cache."""
    h = hashlib.sha256()
    root = resources.files("schubert_rigidity")
    paths = sorted(p for p in Path(str(root)).rglob("*") if p.suffix in (".py", ".json"))
    for p in paths:
        h.update(p.relative_to(Path(str(root))).as_posix().encode())
        h.update(p.read_bytes())
    return h.hexdigest()


def default_dir() -> Path:
    if os.environ.get(ENV_VAR):
        return Path(os.environ[ENV_VAR])
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "schubert_rigidity"


def cache_key(type_text: str, node: int, options: Dict[str, Any]) -> str:
    payload = json.dumps({"type": type_text, "node": node, "code": code_version(), "options": options},
                         sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


class Cache:
    def __init__(self, directory: Optional[Path]) -> None:
        self.directory = directory

    def _path(self, key: str) -> Path:
        assert self.directory is not None
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Optional[str]:
        if self.directory is None:
            return None
        try:
            return self._path(key).read_text("utf-8")
        except OSError:
            return None

    def put(self, key: str, text: str) -> None:
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(text, "utf-8")
        os.replace(tmp, self._path(key))
