"""Shared store for the one-line-per-criterion acceptance report."""

REPORT = {}


def record(number, passed, detail, seconds=None):
    status = "PASS" if passed else "FAIL"
    timing = f" [{seconds:.2f}s]" if seconds is not None else ""
    line = f"criterion {number:>2}: {status}  {detail}{timing}"
    REPORT[number] = line
    print(line)
    return line
