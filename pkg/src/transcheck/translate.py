"""Translation backends, beam semantics, and the persistent query cache.

A query is (source text, src_lang, dst_lang, params); a backend returns
exactly params.beam ranked candidates. Queries are cached on disk keyed
by a content digest, so repeated queries are free and stochastic
backends cannot return inconsistent answers within one cache lifetime.
"""

import json
import os
import tempfile
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BackendMalformedReply, BackendUnavailable
from .rng import stable_digest

TEMPERATURE_MIN = 0.0001
TEMPERATURE_MAX = 2.0


@dataclass(frozen=True)
class TranslatorParams:
    beam: int = 1
    temperature: float = 0.1
    backend_id: str = "mock"
    extra: tuple = ()  # sorted (key, value) string pairs

    def __post_init__(self):
        if self.beam < 1:
            raise ValueError("beam must be at least 1")
        if not (0.0 < self.temperature <= TEMPERATURE_MAX):
            raise ValueError(f"temperature {self.temperature} outside (0, {TEMPERATURE_MAX}]")
        object.__setattr__(self, "extra", tuple(sorted(self.extra)))

    def with_temperature(self, temperature: float) -> "TranslatorParams":
        return TranslatorParams(self.beam, temperature, self.backend_id, self.extra)

    def extra_dict(self) -> dict:
        return dict(self.extra)

    def to_json(self) -> dict:
        return {"beam": self.beam, "temperature": round(self.temperature, 4),
                "backend_id": self.backend_id, "extra": dict(self.extra)}


@dataclass
class TranslationResult:
    candidates: list
    from_cache: bool
    backend_latency: float  # milliseconds


def cache_key(source: str, src_lang: str, dst_lang: str,
              params: TranslatorParams) -> str:
    # temperature rounds to 4 decimals so Gaussian mutation steps produce
    # distinct keys without float-noise duplicates
    return stable_digest(source, src_lang, dst_lang, params.beam,
                         round(params.temperature, 4), params.backend_id,
                         list(params.extra))


class QueryCache:
    """Content-addressed, append-only disk cache with an in-memory layer."""

    def __init__(self, cache_dir: str | Path | None):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self._memory: dict = {}
        self._lock = threading.Lock()

    def _path(self, key: str) -> Path:
        return self.cache_dir / key[:2] / f"{key}.json"

    def get(self, key: str):
        with self._lock:
            if key in self._memory:
                return self._memory[key]
        if self.cache_dir is None:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        candidates = json.loads(path.read_text(encoding="utf-8"))["candidates"]
        with self._lock:
            self._memory[key] = candidates
        return candidates

    def put(self, key: str, candidates: list):
        with self._lock:
            self._memory[key] = candidates
        if self.cache_dir is None:
            return
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump({"candidates": candidates}, handle)
            os.replace(tmp, path)  # atomic publish
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


class Translator:
    """Cache-fronted access to one backend, bounding in-flight queries."""

    def __init__(self, backend, cache: QueryCache | None = None,
                 max_inflight: int = 8):
        self.backend = backend
        self.cache = cache or QueryCache(None)
        self.backend_calls = 0
        self._sem = threading.Semaphore(max_inflight)
        self._lock = threading.Lock()

    def translate(self, source: str, src_lang: str, dst_lang: str,
                  params: TranslatorParams) -> TranslationResult:
        key = cache_key(source, src_lang, dst_lang, params)
        hit = self.cache.get(key)
        if hit is not None:
            return TranslationResult(list(hit), True, 0.0)
        with self._sem:
            start = time.monotonic()
            candidates = self.backend.query(source, src_lang, dst_lang, params)
            latency = (time.monotonic() - start) * 1000.0
        with self._lock:
            self.backend_calls += 1
        if not isinstance(candidates, list) or len(candidates) != params.beam \
                or not all(isinstance(c, str) for c in candidates):
            raise BackendMalformedReply(
                f"backend returned {len(candidates) if isinstance(candidates, list) else 'non-list'}"
                f" candidates for beam {params.beam}")
        self.cache.put(key, candidates)
        return TranslationResult(list(candidates), False, latency)


# --- wire-protocol backends ---------------------------------------------------

def _request_doc(source, src_lang, dst_lang, params) -> dict:
    return {"source": source, "src_lang": src_lang, "dst_lang": dst_lang,
            "beam": params.beam, "temperature": params.temperature,
            "extra": dict(params.extra)}


class HttpBackend:
    """POST /translate against a remote translation service."""

    def __init__(self, base_url: str, timeout_s: float = 60.0):
        self.base_url = base_url.rstrip("/")
        self.timeout_s = timeout_s
        self.identity = f"http:{self.base_url}"

    def query(self, source, src_lang, dst_lang, params) -> list:
        import requests

        try:
            reply = requests.post(
                f"{self.base_url}/translate",
                json=_request_doc(source, src_lang, dst_lang, params),
                timeout=self.timeout_s)
        except requests.RequestException as exc:
            raise BackendUnavailable(f"http backend: {exc}")
        if reply.status_code != 200:
            raise BackendUnavailable(
                f"http backend returned status {reply.status_code}")
        try:
            doc = reply.json()
            return list(doc["candidates"])
        except (ValueError, KeyError, TypeError) as exc:
            raise BackendMalformedReply(f"bad reply document: {exc}")


class CommandBackend:
    """Child process speaking one request/reply document per line."""

    def __init__(self, argv: list, timeout_s: float = 60.0):
        self.argv = list(argv)
        self.timeout_s = timeout_s
        self.identity = "cmd:" + " ".join(self.argv)
        self._proc = None
        self._lock = threading.Lock()

    def _ensure_process(self):
        import subprocess

        if self._proc is None or self._proc.poll() is not None:
            try:
                self._proc = subprocess.Popen(
                    self.argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                    text=True, bufsize=1)
            except OSError as exc:
                raise BackendUnavailable(f"command backend: {exc}")
        return self._proc

    def query(self, source, src_lang, dst_lang, params) -> list:
        import select

        with self._lock:
            proc = self._ensure_process()
            line = json.dumps(_request_doc(source, src_lang, dst_lang, params))
            try:
                proc.stdin.write(line + "\n")
                proc.stdin.flush()
            except (BrokenPipeError, OSError) as exc:
                raise BackendUnavailable(f"command backend pipe: {exc}")
            ready, _, _ = select.select([proc.stdout], [], [], self.timeout_s)
            if not ready:
                proc.kill()
                self._proc = None
                raise BackendUnavailable("command backend timed out")
            reply = proc.stdout.readline()
        if not reply:
            raise BackendUnavailable("command backend closed its stream")
        try:
            doc = json.loads(reply)
            return list(doc["candidates"])
        except (ValueError, KeyError, TypeError) as exc:
            raise BackendMalformedReply(f"bad reply line: {exc}")

    def close(self):
        with self._lock:
            if self._proc is not None and self._proc.poll() is None:
                self._proc.stdin.close()
                self._proc.terminate()
                self._proc.wait(timeout=5)
            self._proc = None
