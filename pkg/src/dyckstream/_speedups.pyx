# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scanning kernels.

Behavioral mirror of ``_fallback``: same constructors, same counters,
same status codes, minus the event tracer (tracing runs route to the
pure backend).  Moduli must stay below 2**62 so that every sum of two
residues fits in 64 bits and every product fits in 128.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

from ._status import (
    EXTRA_CLOSING as _PY_EXTRA_CLOSING,
    MISMATCHED as _PY_MISMATCHED,
    MISSING_CLOSING as _PY_MISSING_CLOSING,
    NEGATIVE_HEIGHT as _PY_NEGATIVE_HEIGHT,
    OK as _PY_OK,
)

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64

cdef int OK = _PY_OK
cdef int NEGATIVE_HEIGHT = _PY_NEGATIVE_HEIGHT
cdef int MISSING_CLOSING = _PY_MISSING_CLOSING
cdef int MISMATCHED = _PY_MISMATCHED
cdef int EXTRA_CLOSING = _PY_EXTRA_CLOSING

cdef u64 P_LIMIT = (<u64>1) << 62


cdef inline u64 mulmod(u64 a, u64 b, u64 p):
    return <u64>((<u128>a * <u128>b) % <u128>p)


cdef inline u64 powmod_counted(u64 base, u64 exponent, u64 p, long long* mults):
    # square-and-multiply; the count matches fingerprint.powmod_mult_count
    cdef u64 result = 1 % p
    cdef u64 b = base % p
    cdef long long count = 0
    while exponent:
        if exponent & 1:
            result = mulmod(result, b, p)
            count += 1
        exponent >>= 1
        if exponent:
            b = mulmod(b, b, p)
            count += 1
    mults[0] += count
    return result


cdef _check_params(long long n, object p, object alpha):
    if n < 0:
        raise ValueError("letter count must be >= 0")
    if p < 2 or p >= P_LIMIT:
        raise ValueError("modulus outside the compiled kernel range")
    if alpha < 0 or alpha >= p:
        raise ValueError("alpha must lie in [0, p)")


cdef class OnePassCore:
    """Block-structured forward scanner; see _fallback.OnePassCore."""

    cdef readonly long long n
    cdef readonly long long letters_read
    cdef readonly long long height
    cdef readonly long long block_size
    cdef readonly long long peak_stack
    cdef readonly long long hash_mults
    cdef readonly long long checks
    cdef readonly int status
    cdef u64 p
    cdef u64 alpha
    cdef u64* item_hash
    cdef long long* item_pending
    cdef long long stack_len
    cdef long long stack_cap
    cdef unsigned char* buf
    cdef unsigned char* ups
    cdef unsigned char* downs
    cdef long long buf_len
    cdef bint finished

    @property
    def backend(self):
        return "cython"

    def __cinit__(self, n, p, alpha, tracer=None):
        if tracer is not None:
            raise ValueError("the compiled kernels do not support tracing")
        _check_params(n, p, alpha)
        self.n = n
        self.p = p
        self.alpha = alpha
        cdef long long root = <long long>(<double>self.n ** 0.5)
        while root * root > self.n:
            root -= 1
        while (root + 1) * (root + 1) <= self.n:
            root += 1
        if root * root < self.n:
            root += 1
        if root < 1:
            root = 1
        self.block_size = root
        self.stack_cap = self.n // self.block_size + 3
        self.item_hash = <u64*>malloc(self.stack_cap * sizeof(u64))
        self.item_pending = <long long*>malloc(self.stack_cap * sizeof(long long))
        self.buf = <unsigned char*>malloc(self.block_size)
        self.ups = <unsigned char*>malloc(self.block_size)
        self.downs = <unsigned char*>malloc(self.block_size)
        if (self.item_hash == NULL or self.item_pending == NULL or
                self.buf == NULL or self.ups == NULL or self.downs == NULL):
            raise MemoryError()

    def __dealloc__(self):
        free(self.item_hash)
        free(self.item_pending)
        free(self.buf)
        free(self.ups)
        free(self.downs)

    def stack_items(self):
        return [(self.item_hash[i], self.item_pending[i])
                for i in range(self.stack_len)]

    def feed(self, data):
        if self.finished:
            raise ValueError("feed after finish")
        if self.status != OK:
            return False
        cdef const unsigned char[::1] view = data
        cdef Py_ssize_t m = view.shape[0]
        if self.letters_read + m > self.n:
            raise ValueError("stream longer than the declared length")
        self.letters_read += m
        cdef Py_ssize_t i = 0
        cdef long long take
        while i < m:
            take = self.block_size - self.buf_len
            if take > m - i:
                take = m - i
            memcpy(self.buf + self.buf_len, &view[i], take)
            self.buf_len += take
            i += take
            if self.buf_len == self.block_size:
                self.buf_len = 0
                if not self._process_block(self.buf, self.block_size):
                    return False
        return True

    def finish(self):
        if self.finished:
            return self.status
        if self.status != OK:
            self.finished = True
            return self.status
        if self.letters_read < self.n:
            raise ValueError("stream shorter than the declared length")
        self.finished = True
        cdef long long tail = self.buf_len
        if tail:
            self.buf_len = 0
            if not self._process_block(self.buf, tail):
                return self.status
        if self.stack_len:
            self.status = MISSING_CLOSING
        return self.status

    cdef bint _process_block(self, const unsigned char* block, long long blen):
        cdef long long nups = 0
        cdef long long ndowns = 0
        cdef long long i
        cdef unsigned char c
        for i in range(blen):
            c = block[i]
            if c & 1:
                if nups:
                    nups -= 1
                    if (self.ups[nups] ^ 1) != c:
                        self.status = MISMATCHED
                        return False
                else:
                    self.downs[ndowns] = c
                    ndowns += 1
            else:
                self.ups[nups] = c
                nups += 1
        cdef long long height = self.height
        cdef u64 p = self.p
        cdef u64 alpha = self.alpha
        cdef u64 ih
        cdef long long top
        for i in range(ndowns):
            c = self.downs[i]
            if self.stack_len == 0:
                self.status = EXTRA_CLOSING
                return False
            top = self.stack_len - 1
            if c == 1:
                ih = self.item_hash[top]
                ih += p - powmod_counted(alpha, <u64>height, p, &self.hash_mults)
                if ih >= p:
                    ih -= p
                self.item_hash[top] = ih
            height -= 1
            self.item_pending[top] -= 1
            if self.item_pending[top] == 0:
                self.checks += 1
                if self.item_hash[top] != 0:
                    self.status = MISMATCHED
                    return False
                self.stack_len -= 1
        cdef u64 uh = 0
        if nups:
            if self.stack_len >= self.stack_cap:
                raise MemoryError("stack capacity exceeded")
            for i in range(nups):
                height += 1
                if self.ups[i] == 0:
                    uh += powmod_counted(alpha, <u64>height, p, &self.hash_mults)
                    if uh >= p:
                        uh -= p
            self.item_hash[self.stack_len] = uh
            self.item_pending[self.stack_len] = nups
            self.stack_len += 1
            if self.stack_len > self.peak_stack:
                self.peak_stack = self.stack_len
        self.height = height
        return True


cdef class TwoPassCore:
    """Aligned-block scanner; see _fallback.TwoPassCore."""

    cdef readonly long long total
    cdef readonly long long letters_read
    cdef readonly long long height
    cdef readonly long long peak_stack
    cdef readonly long long hash_mults
    cdef readonly long long checks
    cdef readonly int status
    cdef u64 p
    cdef u64 alpha
    cdef u64* item_hash
    cdef long long* item_pending
    cdef long long* item_first
    cdef long long stack_len
    cdef long long stack_cap
    cdef bint finished

    @property
    def backend(self):
        return "cython"

    def __cinit__(self, total, p, alpha, tracer=None):
        if tracer is not None:
            raise ValueError("the compiled kernels do not support tracing")
        _check_params(total, p, alpha)
        if total & (total - 1):
            raise ValueError("total letter count must be a power of two or zero")
        self.total = total
        self.p = p
        self.alpha = alpha
        # the stack stays within twice the block-nesting depth; the cap
        # covers any 63-bit stream with room to spare
        self.stack_cap = 136
        self.item_hash = <u64*>malloc(self.stack_cap * sizeof(u64))
        self.item_pending = <long long*>malloc(self.stack_cap * sizeof(long long))
        self.item_first = <long long*>malloc(self.stack_cap * sizeof(long long))
        if (self.item_hash == NULL or self.item_pending == NULL or
                self.item_first == NULL):
            raise MemoryError()

    def __dealloc__(self):
        free(self.item_hash)
        free(self.item_pending)
        free(self.item_first)

    def stack_items(self):
        return [(self.item_hash[i], self.item_pending[i], self.item_first[i])
                for i in range(self.stack_len)]

    def feed(self, data):
        if self.finished:
            raise ValueError("feed after finish")
        if self.status != OK:
            return False
        cdef const unsigned char[::1] view = data
        cdef Py_ssize_t m = view.shape[0]
        if self.letters_read + m > self.total:
            raise ValueError("stream longer than the declared length")
        cdef u64 p = self.p
        cdef u64 alpha = self.alpha
        cdef long long j = self.letters_read
        cdef long long height = self.height
        cdef Py_ssize_t idx
        cdef unsigned char c
        cdef u64 ih
        cdef long long top, rest, block_len, start
        for idx in range(m):
            c = view[idx]
            j += 1
            if c & 1:
                if self.stack_len == 0:
                    self.status = NEGATIVE_HEIGHT
                    break
                top = self.stack_len - 1
                if c == 1:
                    ih = self.item_hash[top]
                    ih += p - powmod_counted(alpha, <u64>height, p,
                                             &self.hash_mults)
                    if ih >= p:
                        ih -= p
                    self.item_hash[top] = ih
                height -= 1
                self.item_pending[top] -= 1
                if self.item_pending[top] == 0:
                    self.checks += 1
                    if self.item_hash[top] != 0:
                        self.status = MISMATCHED
                        break
                    self.stack_len -= 1
            else:
                height += 1
                if c == 0:
                    ih = powmod_counted(alpha, <u64>height, p, &self.hash_mults)
                else:
                    ih = 0
                if self.stack_len >= self.stack_cap:
                    raise MemoryError("stack capacity exceeded")
                self.item_hash[self.stack_len] = ih
                self.item_pending[self.stack_len] = 1
                self.item_first[self.stack_len] = j
                self.stack_len += 1
                if self.stack_len > self.peak_stack:
                    self.peak_stack = self.stack_len
            rest = j
            block_len = 2
            while (rest & 1) == 0:
                start = j - block_len + 1
                if self.stack_len >= 2 and self.item_first[self.stack_len - 2] >= start:
                    top = self.stack_len - 1
                    ih = self.item_hash[top - 1] + self.item_hash[top]
                    if ih >= p:
                        ih -= p
                    self.item_hash[top - 1] = ih
                    self.item_pending[top - 1] += self.item_pending[top]
                    self.stack_len -= 1
                rest >>= 1
                block_len <<= 1
        self.letters_read = j
        self.height = height
        return self.status == OK

    def finish(self):
        if self.finished:
            return self.status
        if self.status != OK:
            self.finished = True
            return self.status
        if self.letters_read < self.total:
            raise ValueError("stream shorter than the declared length")
        self.finished = True
        if self.stack_len:
            self.status = MISSING_CLOSING
        return self.status


def oracle_scan(data):
    """Reference linear-space scan: (status, peak stack size, letters read)."""
    cdef const unsigned char[::1] view = data
    cdef Py_ssize_t m = view.shape[0]
    cdef unsigned char* stack = <unsigned char*>malloc(m if m else 1)
    if stack == NULL:
        raise MemoryError()
    cdef long long depth = 0
    cdef long long peak = 0
    cdef int status = OK
    cdef Py_ssize_t i
    cdef Py_ssize_t read = m
    cdef unsigned char c
    try:
        for i in range(m):
            c = view[i]
            if c & 1:
                if depth == 0:
                    status = NEGATIVE_HEIGHT
                    read = i + 1
                    break
                depth -= 1
                if stack[depth] != (c >> 1):
                    status = MISMATCHED
                    read = i + 1
                    break
            else:
                stack[depth] = c >> 1
                depth += 1
                if depth > peak:
                    peak = depth
        if status == OK and depth:
            status = MISSING_CLOSING
        return status, peak, read
    finally:
        free(stack)
