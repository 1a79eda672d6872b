import pytest


@pytest.fixture
def verdict(capfd):
    """Print one pass/fail line straight to the terminal, capture or not.

    The acceptance gate uses this so every criterion leaves a visible
    one-line verdict in any pytest run, not only under ``-s``.
    """

    def emit(criterion: str, passed: bool, detail: str) -> None:
        status = "PASS" if passed else "FAIL"
        with capfd.disabled():
            print(f"[{status}] {criterion}: {detail}", flush=True)

    return emit
