"""Content-addressed on-disk cache for computed results.

Keys hash (package version, operation, parameters).  Each entry stores its
payload together with a SHA-256 checksum; an entry whose checksum does not
match is deleted and treated as a miss.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any

from . import __version__

ENV_VAR = "EXTCALC_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "extcalc"


def _canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: str | os.PathLike | None = None, version: str = __version__):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.version = version

    def key(self, op: str, params: dict) -> str:
        return _sha(_canonical({"version": self.version, "op": op, "params": params}))

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def get(self, op: str, params: dict) -> Any | None:
        path = self._path(self.key(op, params))
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            if _sha(payload) != entry["checksum"]:
                raise ValueError("checksum mismatch")
            return json.loads(payload)
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, TypeError):
            path.unlink(missing_ok=True)
            return None

    def put(self, op: str, params: dict, value: Any) -> None:
        path = self._path(self.key(op, params))
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = _canonical(value)
        text = _canonical({"checksum": _sha(payload), "op": op, "params": params, "payload": payload})
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)

    def get_or_compute(self, op: str, params: dict, compute) -> Any:
        hit = self.get(op, params)
        if hit is not None:
            return hit
        value = compute()
        self.put(op, params, value)
        return value

    def entries(self) -> list[Path]:
        if not self.directory.exists():
            return []
        return sorted(self.directory.glob("*/*.json"))

    def clear(self) -> int:
        files = self.entries()
        for f in files:
            f.unlink(missing_ok=True)
        return len(files)


class NullCache(ResultCache):
    """Cache that never stores anything."""

    def __init__(self):
        super().__init__(directory=os.devnull)

    def get(self, op, params):
        return None

    def put(self, op, params, value):
        pass

    def entries(self):
        return []
