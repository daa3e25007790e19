"""One result line per acceptance criterion, collected while the tests run."""

import functools
import time

import pytest

RESULTS: dict = {}


def criterion(n: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except pytest.skip.Exception as e:
                RESULTS[n] = f"criterion {n} SKIP {title}: {e}"
                print(RESULTS[n])
                raise
            except BaseException as e:
                RESULTS[n] = f"criterion {n} FAIL {title}: {str(e).splitlines()[0] if str(e) else type(e).__name__}"
                print(RESULTS[n])
                raise
            took = time.perf_counter() - start
            RESULTS[n] = f"criterion {n} PASS {title} ({detail}; {took:.2f} s)" if detail else \
                f"criterion {n} PASS {title} ({took:.2f} s)"
            print(RESULTS[n])
        return run
    return wrap
