"""On-disk cache of reduced hit-space bases.

One gzip-compressed JSON document per (n, d, max_sq)::

    {"format": "dicksonhit-hitbasis", "version": 1, "order": "grlex-desc-v1",
     "n": 3, "d": 10, "max_sq": null, "ncols": 66,
     "slots": [[i, [e1, ..., en]], ...],   # generator Sq^i(x^e) per tracking bit
     "rows": [[pivot, "hex"], ...],         # coordinates | slots << ncols
     "sha256": "..."}

The checksum covers every other key, serialised with sorted keys and no
whitespace.  Files written under another version or monomial order are
refused.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import os
from pathlib import Path

from .f2poly import monomials_of_degree
from .hitsolver import ReducedBasis

FORMAT = "dicksonhit-hitbasis"
FORMAT_VERSION = 1
ORDER_TAG = "grlex-desc-v1"
ENV_VAR = "DICKSONHIT_CACHE_DIR"


class CacheError(Exception):
    pass


class CacheVersionError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass


def default_cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR, ".dicksonhit-cache"))


def cache_path(directory, n: int, d: int, max_sq: int | None = None) -> Path:
    tag = "all" if max_sq is None else f"sq{max_sq}"
    return Path(directory) / f"hitbasis-n{n}-d{d}-{tag}.json.gz"


def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def cache_store(basis: ReducedBasis, directory) -> Path:
    payload = {
        "format": FORMAT,
        "version": FORMAT_VERSION,
        "order": ORDER_TAG,
        "n": basis.nvars,
        "d": basis.degree,
        "max_sq": basis.max_sq,
        "ncols": basis.ncols,
        "slots": [[i, list(m)] for i, m in basis.slots],
        "rows": [[p, format(basis.rows[p], "x")] for p in sorted(basis.rows)],
    }
    payload["sha256"] = _checksum(payload)
    path = cache_path(directory, basis.nvars, basis.degree, basis.max_sq)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with gzip.open(tmp, "wt", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
    tmp.replace(path)
    return path


def cache_load(n: int, d: int, directory, *, max_sq: int | None = None) -> ReducedBasis | None:
    path = cache_path(directory, n, d, max_sq)
    if not path.exists():
        return None
    try:
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, EOFError, ValueError) as exc:
        raise CacheChecksumError(f"{path}: unreadable cache entry ({exc})") from exc
    if not isinstance(payload, dict) or payload.get("format") != FORMAT:
        raise CacheChecksumError(f"{path}: not a hit-basis cache file")
    if payload.get("version") != FORMAT_VERSION or payload.get("order") != ORDER_TAG:
        raise CacheVersionError(
            f"{path}: written as version {payload.get('version')} / {payload.get('order')}, "
            f"expected {FORMAT_VERSION} / {ORDER_TAG}"
        )
    stored = payload.pop("sha256", None)
    if stored != _checksum(payload):
        raise CacheChecksumError(f"{path}: checksum mismatch")
    if (payload["n"], payload["d"], payload["max_sq"]) != (n, d, max_sq):
        raise CacheChecksumError(f"{path}: header does not match the requested basis")
    columns = monomials_of_degree(n, d)
    if payload["ncols"] != len(columns):
        raise CacheChecksumError(f"{path}: column count mismatch")
    return ReducedBasis(
        n,
        d,
        max_sq,
        columns,
        rows={p: int(h, 16) for p, h in payload["rows"]},
        slots=[(i, tuple(m)) for i, m in payload["slots"]],
    )


def cache_info(directory) -> list[dict]:
    out = []
    for path in sorted(Path(directory).glob("hitbasis-*.json.gz")):
        entry = {"file": path.name, "bytes": path.stat().st_size}
        try:
            with gzip.open(path, "rt", encoding="utf-8") as fh:
                payload = json.load(fh)
            entry.update(
                n=payload.get("n"),
                d=payload.get("d"),
                max_sq=payload.get("max_sq"),
                version=payload.get("version"),
                rank=len(payload.get("rows", [])),
            )
        except (OSError, EOFError, ValueError):
            entry["error"] = "unreadable"
        out.append(entry)
    return out


def cache_clear(directory) -> int:
    removed = 0
    for path in Path(directory).glob("hitbasis-*.json.gz"):
        path.unlink()
        removed += 1
    return removed
