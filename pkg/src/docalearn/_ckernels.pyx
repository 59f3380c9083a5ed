# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled twin of ``_pykernels``; same signatures, same answers."""

from libc.stdint cimport int64_t, uint64_t, int32_t
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

from ._pykernels import distinguish as _py_distinguish

cdef int64_t RESET_CODE = -(1 << 30)
cdef int64_t FIELD = 1 << 16


cdef inline uint64_t pack(int64_t q1, int64_t n1, int64_t q2, int64_t n2):
    return (<uint64_t>(q1 + 1) << 48) | (<uint64_t>n1 << 32) | (<uint64_t>(q2 + 1) << 16) | <uint64_t>n2


def distinguish(nxt1, eff1, fin1, int m1, nxt2, eff2, fin2, int m2, int nsyms,
                int s1, int c1, int s2, int c2, int max_len, dedup=True):
    cdef int64_t n_states1 = len(fin1)
    cdef int64_t n_states2 = len(fin2)
    cdef int64_t max_counter = max(c1, c2) + max(m1, m2) * <int64_t>max_len
    if (not dedup or n_states1 + 1 >= FIELD or n_states2 + 1 >= FIELD
            or max_counter >= FIELD):
        return _py_distinguish(nxt1, eff1, fin1, m1, nxt2, eff2, fin2, m2, nsyms,
                               s1, c1, s2, c2, max_len, dedup)

    cdef vector[int32_t] tn1 = nxt1
    cdef vector[int32_t] te1 = eff1
    cdef vector[int32_t] tn2 = nxt2
    cdef vector[int32_t] te2 = eff2
    cdef vector[char] f1 = [1 if x else 0 for x in fin1]
    cdef vector[char] f2 = [1 if x else 0 for x in fin2]

    cdef vector[int32_t] nq1, nq2, nsym
    cdef vector[int64_t] nn1, nn2, npar
    cdef unordered_set[uint64_t] seen

    cdef bint acc1, acc2
    acc1 = s1 >= 0 and f1[s1]
    acc2 = s2 >= 0 and f2[s2]
    if acc1 != acc2:
        return []

    nq1.push_back(s1); nn1.push_back(c1); nq2.push_back(s2); nn2.push_back(c2)
    npar.push_back(-1); nsym.push_back(-1)
    seen.insert(pack(s1, c1, s2, c2))

    cdef int64_t lo = 0, hi = 1, node, idx, found = -1
    cdef int64_t q1, n1, q2, n2, t1, k1, t2, k2, e
    cdef int a, depth
    for depth in range(max_len):
        for node in range(lo, hi):
            q1 = nq1[node]; n1 = nn1[node]; q2 = nq2[node]; n2 = nn2[node]
            for a in range(nsyms):
                if q1 >= 0:
                    idx = (q1 * (m1 + 1) + (n1 if n1 < m1 else m1)) * nsyms + a
                    t1 = tn1[idx]
                    if t1 >= 0:
                        e = te1[idx]
                        k1 = 0 if e == RESET_CODE else n1 + e
                    else:
                        k1 = 0
                else:
                    t1 = -1; k1 = 0
                if q2 >= 0:
                    idx = (q2 * (m2 + 1) + (n2 if n2 < m2 else m2)) * nsyms + a
                    t2 = tn2[idx]
                    if t2 >= 0:
                        e = te2[idx]
                        k2 = 0 if e == RESET_CODE else n2 + e
                    else:
                        k2 = 0
                else:
                    t2 = -1; k2 = 0
                if not seen.insert(pack(t1, k1, t2, k2)).second:
                    continue
                nq1.push_back(t1); nn1.push_back(k1); nq2.push_back(t2); nn2.push_back(k2)
                npar.push_back(node); nsym.push_back(a)
                acc1 = t1 >= 0 and f1[t1]
                acc2 = t2 >= 0 and f2[t2]
                if acc1 != acc2:
                    found = nq1.size() - 1
                    break
            if found >= 0:
                break
        if found >= 0:
            break
        lo = hi
        hi = nq1.size()
        if lo == hi:
            return None
    if found < 0:
        return None
    word = []
    node = found
    while npar[node] >= 0:
        word.append(nsym[node])
        node = npar[node]
    word.reverse()
    return word


cdef class Runner:
    """Simulator over flat tables; ``run`` returns (state, counter) or None."""
    cdef vector[int32_t] nxt
    cdef vector[int32_t] eff
    cdef vector[char] fin
    cdef int m, nsyms

    def __init__(self, nxt, eff, fin, int m, int nsyms):
        self.nxt = nxt
        self.eff = eff
        self.fin = [1 if x else 0 for x in fin]
        self.m = m
        self.nsyms = nsyms

    cdef bint _run(self, int64_t* s, int64_t* c, word):
        cdef int64_t q = s[0], n = c[0], i, e
        cdef int a
        for a in word:
            i = (q * (self.m + 1) + (n if n < self.m else self.m)) * self.nsyms + a
            if self.nxt[i] < 0:
                return False
            e = self.eff[i]
            n = 0 if e == RESET_CODE else n + e
            q = self.nxt[i]
        s[0] = q
        c[0] = n
        return True

    def run(self, int64_t s, int64_t c, word):
        if not self._run(&s, &c, word):
            return None
        return s, c

    def accepts(self, int64_t s, int64_t c, word):
        if not self._run(&s, &c, word):
            return False
        return bool(self.fin[s])
