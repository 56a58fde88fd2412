"""The ten acceptance criteria at their default sample sizes (seed 0). Each
criterion's pass/fail line is printed in the terminal summary."""
import pytest

from bioctonion import acceptance

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    result = getattr(acceptance, f"criterion_{number}")(seed=0)
    print(result.line())
    ACCEPTANCE_LINES.append(result.line())
    assert result.number == number
    assert result.passed, result.line()
