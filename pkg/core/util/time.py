"""Stage timing helpers."""
import time
from contextlib import contextmanager


class Stopwatch:
    """Collects wall-clock seconds per named stage."""

    def __init__(self):
        self.timings: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - start, 3)

    def total(self) -> float:
        return round(sum(self.timings.values()), 3)
