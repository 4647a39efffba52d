"""Collects one verdict line per acceptance criterion for the terminal summary."""

LINES: dict[int, str] = {}


def record(number: int, passed: bool, text: str) -> str:
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {text}"
    LINES[number] = line
    print(line)
    return line
