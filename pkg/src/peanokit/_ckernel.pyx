# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled evaluation kernel.

Same node-visit semantics as ``_pykernel.run`` but with machine integers.
Values and fuel are limited to ``LIMIT``; anything that would leave that range
returns ``OVERFLOW`` and the caller reruns the evaluation in Python.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef long long i64
ctypedef unsigned long long u64

cdef enum:
    ZERO = 0
    SUCC = 1
    PROJ = 2
    COMP = 3
    REC = 4
    MU = 5

cdef enum:
    JET_PRED = 0
    JET_ADD = 1
    JET_MUL = 2
    JET_MONUS_R = 3

cdef enum:
    OK = 0
    EXHAUSTED = 1
    OVERFLOW = 2

cdef i64 LIMIT = (<i64>1) << 62
# saturation point for cost arithmetic: strictly above any admissible fuel
cdef u64 SAT = (<u64>1 << 62) + 1

LIMIT_PY = LIMIT


cdef inline u64 sat_add(u64 p, u64 q) noexcept nogil:
    cdef u64 r = p + q
    return SAT if r > SAT else r


cdef inline u64 sat_mul(u64 p, u64 q) noexcept nogil:
    if p == 0 or q == 0:
        return 0
    if p > SAT / q:
        return SAT
    cdef u64 r = p * q
    return SAT if r > SAT else r


cdef class Machine:
    cdef int n
    cdef int *op
    cdef int *a
    cdef int *b
    cdef int *jet
    cdef int *kstart
    cdef int *kcount
    cdef int *kids
    cdef i64 *stack
    cdef int cap
    cdef int sp
    cdef i64 used
    cdef i64 fuel
    cdef int status
    cdef bint jets
    cdef int root
    cdef int root_arity

    def __cinit__(self, code):
        cdef int i, j, total = 0
        self.n = len(code.op)
        self.op = <int *> malloc(self.n * sizeof(int))
        self.a = <int *> malloc(self.n * sizeof(int))
        self.b = <int *> malloc(self.n * sizeof(int))
        self.jet = <int *> malloc(self.n * sizeof(int))
        self.kstart = <int *> malloc(self.n * sizeof(int))
        self.kcount = <int *> malloc(self.n * sizeof(int))
        for i in range(self.n):
            total += len(code.kids[i])
        self.kids = <int *> malloc((total + 1) * sizeof(int))
        self.cap = code.stack_need() + 1
        self.stack = <i64 *> malloc(self.cap * sizeof(i64))
        if (self.op == NULL or self.a == NULL or self.b == NULL or self.jet == NULL
                or self.kstart == NULL or self.kcount == NULL or self.kids == NULL
                or self.stack == NULL):
            raise MemoryError()
        total = 0
        for i in range(self.n):
            self.op[i] = code.op[i]
            # Z[n] and P[i,n] carry small parameters; node references fit in int
            self.a[i] = code.a[i]
            self.b[i] = code.b[i]
            self.jet[i] = code.jet[i]
            self.kstart[i] = total
            self.kcount[i] = len(code.kids[i])
            for j in range(self.kcount[i]):
                self.kids[total + j] = code.kids[i][j]
            total += self.kcount[i]
        self.root = code.root
        self.root_arity = code.arity[code.root]

    def __dealloc__(self):
        free(self.op)
        free(self.a)
        free(self.b)
        free(self.jet)
        free(self.kstart)
        free(self.kcount)
        free(self.kids)
        free(self.stack)

    cdef i64 jet_eval(self, int j, i64 *xs) noexcept nogil:
        cdef u64 cost, x, y, tail
        cdef i64 value
        if j == JET_PRED:
            x = <u64> xs[0]
            cost = sat_add(2, x)
        elif j == JET_ADD:
            x = <u64> xs[0]
            cost = sat_add(2, sat_mul(3, x))
        elif j == JET_MUL:
            x = <u64> xs[0]
            y = <u64> xs[1]
            cost = sat_add(2, sat_mul(x, sat_add(5, sat_mul(3, y))))
        else:
            # monus_r(b, a)
            x = <u64> xs[0]
            y = <u64> xs[1]
            if x <= y:
                tail = sat_mul(x, 2 * y - x + 1)
            else:
                tail = sat_mul(y, y + 1)
            if tail < SAT:
                tail = tail / 2
            cost = sat_add(sat_add(2, sat_mul(4, x)), tail)
        if cost > <u64> (self.fuel - self.used):
            self.used = self.fuel
            self.status = EXHAUSTED
            return -1
        self.used += <i64> cost
        if j == JET_PRED:
            return xs[0] - 1 if xs[0] > 0 else 0
        if j == JET_ADD:
            value = xs[0] + xs[1]
            if value > LIMIT:
                self.status = OVERFLOW
                return -1
            return value
        if j == JET_MUL:
            if sat_mul(<u64> xs[0], <u64> xs[1]) > <u64> LIMIT:
                self.status = OVERFLOW
                return -1
            return xs[0] * xs[1]
        return xs[1] - xs[0] if xs[1] > xs[0] else 0

    cdef i64 ev(self, int i, i64 *xs, int nx) noexcept nogil:
        cdef int o, k, base, m
        cdef i64 v, r, y, x, step
        cdef i64 *buf
        if self.jets and self.jet[i] >= 0:
            return self.jet_eval(self.jet[i], xs)
        if self.used >= self.fuel:
            self.status = EXHAUSTED
            return -1
        self.used += 1
        o = self.op[i]
        if o == PROJ:
            return xs[self.a[i] - 1]
        if o == COMP:
            m = self.kcount[i]
            base = self.sp
            self.sp += m
            buf = self.stack + base
            for k in range(m):
                v = self.ev(self.kids[self.kstart[i] + k], xs, nx)
                if v < 0:
                    self.sp = base
                    return -1
                buf[k] = v
            r = self.ev(self.a[i], buf, m)
            self.sp = base
            return r
        if o == SUCC:
            if xs[0] >= LIMIT:
                self.status = OVERFLOW
                return -1
            return xs[0] + 1
        if o == ZERO:
            return 0
        if o == REC:
            x = xs[0]
            v = self.ev(self.a[i], xs + 1, nx - 1)
            if v < 0:
                return -1
            base = self.sp
            self.sp += nx + 1
            buf = self.stack + base
            if nx > 1:
                memcpy(buf + 2, xs + 1, (nx - 1) * sizeof(i64))
            step = 0
            while step < x:
                buf[0] = step
                buf[1] = v
                v = self.ev(self.b[i], buf, nx + 1)
                if v < 0:
                    self.sp = base
                    return -1
                step += 1
            self.sp = base
            return v
        if o == MU:
            base = self.sp
            self.sp += nx + 1
            buf = self.stack + base
            if nx > 0:
                memcpy(buf, xs, nx * sizeof(i64))
            y = 0
            while True:
                buf[nx] = y
                r = self.ev(self.a[i], buf, nx + 1)
                if r < 0:
                    self.sp = base
                    return -1
                if r == 0:
                    self.sp = base
                    return y
                y += 1
        self.status = OVERFLOW
        return -1

    def run(self, args, fuel, bint jets=True):
        """Return ``(status, value, consumed)``; ``status`` 2 means rerun in Python."""
        cdef int k, nx = len(args)
        cdef i64 r
        if fuel > LIMIT or nx != self.root_arity:
            return OVERFLOW, None, 0
        for k in range(nx):
            if args[k] > LIMIT:
                return OVERFLOW, None, 0
        for k in range(nx):
            self.stack[k] = args[k]
        self.sp = nx
        self.used = 0
        self.fuel = fuel
        self.status = OK
        self.jets = jets
        with nogil:
            r = self.ev(self.root, self.stack, nx)
        if r < 0:
            if self.status == EXHAUSTED:
                return EXHAUSTED, None, self.used
            return OVERFLOW, None, 0
        return OK, r, self.used
