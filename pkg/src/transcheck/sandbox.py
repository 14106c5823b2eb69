"""Subprocess execution of Python candidates behind retValues.

One isolated working directory per execution: the candidate function,
its test inputs, and a generated driver are written there, then the
configured interpreter runs the driver, which prints one serialized
value document per test case on stdout. The function's own prints are
redirected away so they cannot corrupt the protocol. A wall-clock
timeout kills the process; tests without an emitted line become
Timeout outcomes.
"""

import json
import shutil
import subprocess
import tempfile
from pathlib import Path

from .errors import SandboxFailure

_DRIVER = r"""
import contextlib, io, json, sys

sys.setrecursionlimit(3000)
tests = json.load(open("tests.json"))
source = open("func.py").read()
try:
    code = compile(source, "func.py", "exec")
except SyntaxError as exc:
    for _ in tests:
        print(json.dumps({"compile_fail": str(exc)}), flush=True)
    sys.exit(0)
namespace = {}
exec(code, namespace)
functions = [v for k, v in namespace.items()
             if k != "__builtins__" and callable(v)]
if not functions:
    for _ in tests:
        print(json.dumps({"crash": "no function defined"}), flush=True)
    sys.exit(0)
fn = functions[0]
for inputs in tests:
    sink = io.StringIO()
    try:
        with contextlib.redirect_stdout(sink):
            result = fn(*inputs)
        line = json.dumps({"ok": result})
    except BaseException as exc:
        line = json.dumps({"crash": f"{type(exc).__name__}: {exc}"})
    print(line, flush=True)
"""


def run_python_tests(source: str, test_inputs: list, interpreter: tuple,
                     timeout_ms: int) -> list:
    """Raw outcome documents, one dict per test case, in order."""
    workdir = Path(tempfile.mkdtemp(prefix="transcheck-exec-"))
    try:
        (workdir / "func.py").write_text(source, encoding="utf-8")
        (workdir / "tests.json").write_text(json.dumps(test_inputs), encoding="utf-8")
        (workdir / "driver.py").write_text(_DRIVER, encoding="utf-8")
        argv = [*interpreter, "-I", str(workdir / "driver.py")]
        try:
            proc = subprocess.run(
                argv, cwd=workdir, capture_output=True, text=True,
                timeout=timeout_ms / 1000.0)
            stdout = proc.stdout
            timed_out = False
        except subprocess.TimeoutExpired as exc:
            stdout = exc.stdout or b""
            if isinstance(stdout, bytes):
                stdout = stdout.decode("utf-8", "replace")
            timed_out = True
        except FileNotFoundError as exc:
            raise SandboxFailure(f"interpreter not found: {exc}")
        outcomes = []
        for line in stdout.splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                outcomes.append(json.loads(line))
            except json.JSONDecodeError:
                raise SandboxFailure(f"driver emitted a non-document line: {line!r}")
        if not timed_out and len(outcomes) != len(test_inputs):
            detail = (proc.stderr or "").strip()[:500]
            raise SandboxFailure(
                f"driver produced {len(outcomes)}/{len(test_inputs)} outcomes"
                + (f": {detail}" if detail else ""))
        while len(outcomes) < len(test_inputs):
            outcomes.append({"timeout": True})
        return outcomes[:len(test_inputs)]
    finally:
        shutil.rmtree(workdir, ignore_errors=True)


def check_python_syntax(source: str, interpreter: tuple, timeout_ms: int) -> bool:
    workdir = Path(tempfile.mkdtemp(prefix="transcheck-syn-"))
    try:
        path = workdir / "func.py"
        path.write_text(source, encoding="utf-8")
        try:
            proc = subprocess.run(
                [*interpreter, "-I", "-m", "py_compile", str(path)],
                cwd=workdir, capture_output=True, timeout=timeout_ms / 1000.0)
        except FileNotFoundError as exc:
            raise SandboxFailure(f"interpreter not found: {exc}")
        except subprocess.TimeoutExpired:
            raise SandboxFailure("syntax check timed out")
        return proc.returncode == 0
    finally:
        shutil.rmtree(workdir, ignore_errors=True)


def run_compile_command(template: tuple, source: str, filename: str,
                        timeout_ms: int) -> bool:
    """Run a {src}-templated compile command on wrapped source text."""
    workdir = Path(tempfile.mkdtemp(prefix="transcheck-cc-"))
    try:
        path = workdir / filename
        path.write_text(source, encoding="utf-8")
        argv = [part.replace("{src}", str(path)) for part in template]
        try:
            proc = subprocess.run(argv, cwd=workdir, capture_output=True,
                                  timeout=timeout_ms / 1000.0)
        except FileNotFoundError as exc:
            raise SandboxFailure(f"compiler not found: {exc}")
        except subprocess.TimeoutExpired:
            raise SandboxFailure("compile command timed out")
        return proc.returncode == 0
    finally:
        shutil.rmtree(workdir, ignore_errors=True)
