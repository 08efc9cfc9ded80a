"""Independent oracles shared by the tests: plain BFS and brute-force subgroup enumeration."""
from collections import deque

from cremona.groups import closure


def oracle_distance(n, spectrum, bound=40):
    """Plain BFS over F_0..F_bound; None if F_1 is not reached."""
    dist = {n: 0}
    queue = deque([n])
    while queue:
        m = queue.popleft()
        if m == 1:
            return dist[m]
        nxt = [m + s for s in spectrum] + ([abs(m - s) for s in spectrum] if m >= 1 else [])
        for t in nxt:
            if t <= bound and t not in dist:
                dist[t] = dist[m] + 1
                queue.append(t)
    return None


def all_subgroups(P):
    """Every subgroup of a GroupTable, as frozensets of indices (joins of cyclic subgroups)."""
    def gen(idx):
        out, x = {0}, idx
        while x not in out:
            out.add(x)
            x = P.mul(x, idx)
        return frozenset(out)

    def join(A, B):
        span, queue = set(A | B), deque(A | B)
        while queue:
            x = queue.popleft()
            for y in list(span):
                for z in (P.mul(x, y), P.mul(y, x)):
                    if z not in span:
                        span.add(z)
                        queue.append(z)
        return frozenset(span)

    cyclic = {gen(i) for i in range(P.order)}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                J = join(A, C)
                if J not in subs:
                    new.add(J)
        subs |= new
        frontier = new
    return subs


def subgroup_table(P, S):
    gens = sorted(S - {0}) or [0]
    keys = [P.elements[i] for i in gens]
    return closure(keys, lambda a, b: P.elements[P.mul(P.index[a], P.index[b])], P.elements[0])
