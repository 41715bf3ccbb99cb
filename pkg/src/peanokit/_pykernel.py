"""Pure-Python evaluation kernel over a :class:`~peanokit.code.Code` table.

Also the only kernel that can record traces.
"""
from __future__ import annotations

from .code import COMP, JET_NONE, MU, PROJ, REC, SUCC, ZERO, jet_apply

OK, EXHAUSTED = 0, 1


class _Exhausted(Exception):
    pass


def run(code, args: tuple, fuel: int, jets: bool = True, log: list | None = None):
    """Evaluate ``code`` on ``args``; return ``(status, value, consumed)``.

    One unit of fuel is charged per node visit; a visit attempted with no
    fuel left stops the run with ``consumed == fuel``.
    """
    op, A, B, kids, jet = code.op, code.a, code.b, code.kids, code.jet
    use_jets = jets and log is None
    used = 0

    def ev(i, xs):
        nonlocal used
        if use_jets and jet[i] != JET_NONE:
            value, cost = jet_apply(jet[i], xs)
            if cost > fuel - used:
                used = fuel
                raise _Exhausted
            used += cost
            return value
        if used >= fuel:
            raise _Exhausted
        used += 1
        o = op[i]
        if o == PROJ:
            return xs[A[i] - 1]
        if o == COMP:
            return ev(A[i], tuple([ev(k, xs) for k in kids[i]]))
        if o == SUCC:
            return xs[0] + 1
        if o == ZERO:
            return 0
        if o == REC:
            ys = xs[1:]
            v = ev(A[i], ys)
            h = B[i]
            for k in range(xs[0]):
                v = ev(h, (k, v) + ys)
                if log is not None:
                    log.append(("rec", (k + 1,) + ys, v))
            return v
        if o == MU:
            body = A[i]
            y = 0
            while True:
                r = ev(body, xs + (y,))
                if log is not None:
                    log.append(("mu", xs + (y,), r))
                if r == 0:
                    return y
                y += 1
        raise AssertionError(f"bad opcode {o}")

    try:
        value = ev(code.root, tuple(args))
    except _Exhausted:
        return EXHAUSTED, None, used
    return OK, value, used
