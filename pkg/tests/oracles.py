"""Independent brute-force oracles shared by several test files."""

from collections import deque
from math import gcd

from feasichar.rootsystem import build_root_system


def orbit_count(label: str, m: int) -> int:
    """Weyl orbits on elements of exact order m in the torus, as K mod m."""
    rs = build_root_system(label)
    r, c = rs.rank, rs.cartan
    seen = set()
    orbits = 0
    for code in range(m**r):
        k = tuple((code // m**i) % m for i in range(r))
        if k in seen or gcd(m, *k) != 1:
            continue
        orbits += 1
        seen.add(k)
        queue = deque([k])
        while queue:
            x = queue.popleft()
            for i in range(r):
                a = sum(c[i][j] * x[j] for j in range(r))
                y = list(x)
                y[i] = (y[i] - a) % m
                y = tuple(y)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return orbits
