import math

import pytest


def naive_factor(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def naive_is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def naive_order(g: int, p: int) -> int:
    x, k = g % p, 1
    while x != 1:
        x = x * g % p
        k += 1
    return k


def naive_terms(r, s, u0, u1, N):
    out = [u0, u1]
    while len(out) <= N:
        out.append(r * out[-1] + s * out[-2])
    return out[: N + 1]


@pytest.fixture
def oracle_terms():
    return naive_terms


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
