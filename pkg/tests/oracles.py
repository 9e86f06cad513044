"""Slow, obviously-correct reference implementations used only by the tests."""

from itertools import product


def bits_of(i, n):
    """Point v_i as (x1, ..., xn); x1 is the most significant bit."""
    return tuple((i >> (n - 1 - j)) & 1 for j in range(n))


def dot(u, x):
    return sum(a * b for a, b in zip(u, x)) % 2


def naive_walsh(tt, n):
    pts = [bits_of(i, n) for i in range(1 << n)]
    return [sum((-1) ** (tt[x] ^ dot(u, pts[x])) for x in range(1 << n)) for u in pts]


def naive_fourier(tt, n):
    pts = [bits_of(i, n) for i in range(1 << n)]
    return [sum(tt[x] * (-1) ** dot(u, pts[x]) for x in range(1 << n)) for u in pts]


def eval_anf(monomials, n):
    """Truth table by direct evaluation of each monomial at each point."""
    out = []
    for i in range(1 << n):
        x = bits_of(i, n)
        val = 0
        for mono in monomials:
            val ^= int(all(x[v - 1] for v in mono))
        out.append(val)
    return out


def all_anfs(n):
    """Every monomial set over n variables (2^(2^n) of them)."""
    monos = [frozenset(v + 1 for v in range(n) if bits >> v & 1) for bits in range(1 << n)]
    for choice in product((0, 1), repeat=len(monos)):
        yield [m for m, c in zip(monos, choice) if c]


def bfs_components(n, support):
    seen = set()
    comps = []
    for start in range(1 << n):
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        for x in queue:
            for s in support:
                y = x ^ s
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        comps.append(sorted(comp))
    return sorted(comps)


def dense_adjacency(n, support):
    return [[int((i ^ j) in support) for j in range(1 << n)] for i in range(1 << n)]


def matmul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def matpow(a, ell):
    out = a
    for _ in range(ell - 1):
        out = matmul(out, a)
    return out


def tt_of(code, n):
    return [(code >> i) & 1 for i in range(1 << n)]


def character_table(n):
    """M[u][x] = (-1)^(u.x), built pointwise from the definition."""
    pts = [bits_of(i, n) for i in range(1 << n)]
    return [[(-1) ** dot(u, x) for x in pts] for u in pts]
