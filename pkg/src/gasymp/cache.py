"""Disk cache for expensive deterministic computations.

Entries are keyed by a content hash supplied by the caller and stored as one
JSON file per key.  Writers stage to a temporary file in the same directory
and publish with an atomic rename, so concurrent writers are safe; a corrupt
entry is treated as a miss and overwritten on the next store.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading


class DiskCache:
    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, f"gasymp_{key}.json")

    def get(self, key: str):
        try:
            with open(self._path(key), "r", encoding="utf-8") as fh:
                entry = json.load(fh)
        except (OSError, ValueError):
            return None
        if not isinstance(entry, dict) or entry.get("key") != key:
            return None
        return entry.get("value")

    def put(self, key: str, value) -> None:
        payload = json.dumps({"key": key, "value": value}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(prefix=".gasymp_", dir=self.directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
            os.replace(tmp, self._path(key))
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass

    def clear(self) -> int:
        removed = 0
        try:
            names = os.listdir(self.directory)
        except OSError:
            return 0
        for name in names:
            if name.startswith("gasymp_") and name.endswith(".json"):
                try:
                    os.unlink(os.path.join(self.directory, name))
                    removed += 1
                except OSError:
                    pass
        return removed


def content_key(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


_active_lock = threading.Lock()
_active_cache: DiskCache | None = None


def set_active_cache(cache: DiskCache | None) -> None:
    global _active_cache
    with _active_lock:
        _active_cache = cache


def get_active_cache() -> DiskCache | None:
    return _active_cache


def default_cache_dir() -> str:
    env = os.environ.get("GASYMP_CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "gasymp")
