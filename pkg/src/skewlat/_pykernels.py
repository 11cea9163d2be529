"""Pure-Python kernels.  Same algorithms and results as ``_ckernels.pyx``."""

from __future__ import annotations

from typing import Sequence

RIGHT_HANDED = 1
LEFT_HANDED = 2


def cell_choices(n: int, i: int, j: int) -> list[tuple[int, int]]:
    """Admissible (meet, join) values of an off-diagonal cell.

    The dualities force join = i exactly when meet = j, and join = j
    exactly when meet = i.
    """
    out = [(j, i), (i, j)]
    others = [v for v in range(n) if v != i and v != j]
    out.extend((m, k) for m in others for k in others)
    return out


def n_first_choices(n: int) -> int:
    return len(cell_choices(n, 0, 1)) if n > 1 else 1


def _assoc_ok(T: list[int], n: int, a: int, b: int) -> bool:
    v = T[a * n + b]
    # (a∘b)∘z against a∘(b∘z)
    for z in range(n):
        lhs = T[v * n + z]
        w = T[b * n + z]
        if lhs >= 0 and w >= 0:
            rhs = T[a * n + w]
            if rhs >= 0 and lhs != rhs:
                return False
    # (x∘a)∘b against x∘(a∘b)
    for x in range(n):
        u = T[x * n + a]
        rhs = T[x * n + v]
        if u >= 0 and rhs >= 0:
            lhs = T[u * n + b]
            if lhs >= 0 and lhs != rhs:
                return False
    # (x∘y)∘b with x∘y = a, against x∘(y∘b)
    # a∘(y∘z) with y∘z = b, against (a∘y)∘z
    for x in range(n):
        for y in range(n):
            if T[x * n + y] == a:
                w = T[y * n + b]
                if w >= 0:
                    rhs = T[x * n + w]
                    if rhs >= 0 and rhs != v:
                        return False
            if T[x * n + y] == b:
                u = T[a * n + x]
                if u >= 0:
                    lhs = T[u * n + y]
                    if lhs >= 0 and lhs != v:
                        return False
    return True


def _absorb_left_ok(P: list[int], Q: list[int], n: int, a: int, b: int) -> bool:
    # Q(P(y, x), x) = x
    v = P[a * n + b]
    q = Q[v * n + b]
    if q >= 0 and q != b:
        return False
    q = Q[a * n + b]
    if q >= 0 and q != b:
        for y in range(n):
            if P[y * n + b] == a:
                return False
    return True


def _absorb_right_ok(P: list[int], Q: list[int], n: int, a: int, b: int) -> bool:
    # Q(x, P(x, y)) = x
    v = P[a * n + b]
    q = Q[a * n + v]
    if q >= 0 and q != a:
        return False
    q = Q[a * n + b]
    if q >= 0 and q != a:
        for y in range(n):
            if P[a * n + y] == b:
                return False
    return True


def _handed_ok(M: list[int], n: int, a: int, b: int, flags: int) -> bool:
    # right: (x∧y)∧x = y∧x ; left: (x∧y)∧x = x∧y
    if flags & RIGHT_HANDED:
        # cell as (x, y)
        v = M[a * n + b]
        lhs = M[v * n + a]
        rhs = M[b * n + a]
        if lhs >= 0 and rhs >= 0 and lhs != rhs:
            return False
        # cell as (y, x) on the right-hand side
        v = M[b * n + a]
        if v >= 0:
            lhs = M[v * n + b]
            if lhs >= 0 and lhs != M[a * n + b]:
                return False
        # cell as the outer product (x∧y, x) with x = b, x∧y = a
        cur = M[a * n + b]
        for y in range(n):
            if M[b * n + y] == a:
                rhs = M[y * n + b]
                if rhs >= 0 and rhs != cur:
                    return False
    if flags & LEFT_HANDED:
        v = M[a * n + b]
        lhs = M[v * n + a]
        if lhs >= 0 and lhs != v:
            return False
        cur = M[a * n + b]
        for y in range(n):
            if M[b * n + y] == a and cur != a:
                return False
    return True


def _cell_ok(M: list[int], J: list[int], n: int, a: int, b: int, flags: int) -> bool:
    return (
        _assoc_ok(M, n, a, b)
        and _assoc_ok(J, n, a, b)
        and _absorb_left_ok(M, J, n, a, b)
        and _absorb_left_ok(J, M, n, a, b)
        and _absorb_right_ok(M, J, n, a, b)
        and _absorb_right_ok(J, M, n, a, b)
        and (not flags or _handed_ok(M, n, a, b, flags))
    )


def search(n: int, flags: int = 0, first: int = -1) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All labelled skew lattices on n elements as flat (meet, join) tuples.

    ``first`` restricts the search to one choice for the first free cell,
    which lets callers split the work into independent subtrees.
    """
    M = [-1] * (n * n)
    J = [-1] * (n * n)
    for x in range(n):
        M[x * n + x] = x
        J[x * n + x] = x
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    choices = [cell_choices(n, i, j) for i, j in cells]
    out: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    if not cells:
        if first <= 0:
            out.append((tuple(M), tuple(J)))
        return out

    def rec(k: int) -> None:
        if k == len(cells):
            out.append((tuple(M), tuple(J)))
            return
        i, j = cells[k]
        c = i * n + j
        opts = choices[k]
        if k == 0 and first >= 0:
            opts = [opts[first]]
        for m, jv in opts:
            M[c] = m
            J[c] = jv
            if _cell_ok(M, J, n, i, j, flags):
                rec(k + 1)
        M[c] = -1
        J[c] = -1

    rec(0)
    return out


def canonical_key(
    meet: Sequence[int], join: Sequence[int], n: int, perms: Sequence[Sequence[int]]
) -> tuple[bytes, tuple[int, ...]]:
    """Lexicographically least relabelled (meet, join) over ``perms``.

    ``perm[x]`` is the new label of old element x.  Returns the key and the
    permutation attaining it (first one in ``perms`` order on ties).
    """
    best = None
    best_perm: tuple[int, ...] = ()
    nn = n * n
    for perm in perms:
        inv = [0] * n
        for x, p in enumerate(perm):
            inv[p] = x
        cand = bytearray(2 * nn)
        smaller = best is None
        for idx in range(2 * nn):
            t = meet if idx < nn else join
            r = idx % nn
            a, b = divmod(r, n)
            val = perm[t[inv[a] * n + inv[b]]]
            if not smaller:
                bv = best[idx]
                if val > bv:
                    break
                if val < bv:
                    smaller = True
            cand[idx] = val
        else:
            if smaller:
                best = cand
                best_perm = tuple(perm)
    assert best is not None
    return bytes(best), best_perm
