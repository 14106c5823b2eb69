"""Runtime values exchanged with executed programs.

Values are plain Python objects restricted to: int, float, bool, str,
list (of values), and None. JSON carries them unchanged. Equality is
kind-tagged: bool never equals int, and floats compare with tolerance.
"""

FLOAT_TOL = 1e-6

Value = int | float | bool | str | list | None


def is_value(v) -> bool:
    if v is None or isinstance(v, (bool, int, float, str)):
        return True
    if isinstance(v, list):
        return all(is_value(x) for x in v)
    return False


def values_equal(a: Value, b: Value, tol: float = FLOAT_TOL) -> bool:
    """Kind-tagged equality; floats within ``tol``, everything else exact."""
    if isinstance(a, bool) or isinstance(b, bool):
        return isinstance(a, bool) and isinstance(b, bool) and a == b
    if isinstance(a, float) or isinstance(b, float):
        if not isinstance(a, (int, float)) or not isinstance(b, (int, float)):
            return False
        return abs(a - b) <= tol
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(values_equal(x, y, tol) for x, y in zip(a, b))
    return a is None and b is None


def value_repr(v: Value) -> str:
    """Stable, JSON-flavored rendering used in reports."""
    import json

    return json.dumps(v)
