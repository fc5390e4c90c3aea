# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled spectrum kernel.

Same search as _spectrum.py (canonical spine backtracking with incremental
injective assignment and rollback), with bitmask adjacency and C arrays.
Node accounting and results are bit-identical to the pure kernel; the
parity test in tests/test_kernel_parity.py holds both to that.

Limits: at most 64 vertices (bitmask width); callers fall back to the pure
kernel beyond that.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef struct Trail:
    int depth
    int old_edge   # -1 for none
    int new_edge


cdef class _Kernel:
    cdef int n, m, L
    cdef long long budget, nodes
    cdef bint exhausted
    cdef unsigned long long* adj
    cdef int* cov_off      # (n*n+1) CSR offsets for pair -> covering edges
    cdef int* cov_dat
    cdef int* assign       # per depth
    cdef int* pair_at      # per depth, pair id
    cdef int* owner        # per edge, owning depth or -1
    cdef int* visited      # per edge, stamp
    cdef int stamp
    cdef Trail* trail
    cdef int* trail_start  # per depth
    cdef int trail_len
    cdef int depth_count
    cdef int* path
    cdef unsigned long long used

    def __cinit__(self, int n, edges, long long budget):
        cdef int i, u, v, pid
        self.n = n
        self.m = len(edges)
        self.budget = budget
        self.nodes = 0
        self.exhausted = False
        self.stamp = 0
        self.trail_len = 0
        self.depth_count = 0
        self.used = 0
        self.adj = <unsigned long long*> malloc(n * sizeof(unsigned long long))
        memset(self.adj, 0, n * sizeof(unsigned long long))
        counts = {}
        for i in range(self.m):
            e = edges[i]
            for a in range(len(e)):
                for b in range(a + 1, len(e)):
                    u = e[a]; v = e[b]
                    if u > v:
                        u, v = v, u
                    pid = u * n + v
                    if pid in counts:
                        counts[pid].append(i)
                    else:
                        counts[pid] = [i]
                    self.adj[u] |= (<unsigned long long>1) << v
                    self.adj[v] |= (<unsigned long long>1) << u
        self.cov_off = <int*> malloc((n * n + 1) * sizeof(int))
        total = sum(len(lst) for lst in counts.values())
        self.cov_dat = <int*> malloc(max(total, 1) * sizeof(int))
        cdef int pos = 0
        for pid in range(n * n):
            self.cov_off[pid] = pos
            if pid in counts:
                for i in counts[pid]:
                    self.cov_dat[pos] = i
                    pos += 1
        self.cov_off[n * n] = pos
        self.assign = <int*> malloc((n + 1) * sizeof(int))
        self.pair_at = <int*> malloc((n + 1) * sizeof(int))
        self.owner = <int*> malloc(max(self.m, 1) * sizeof(int))
        self.visited = <int*> malloc(max(self.m, 1) * sizeof(int))
        for i in range(self.m):
            self.owner[i] = -1
            self.visited[i] = 0
        self.trail = <Trail*> malloc((n + 1) * (n + 1) * sizeof(Trail))
        self.trail_start = <int*> malloc((n + 2) * sizeof(int))
        self.path = <int*> malloc((n + 1) * sizeof(int))

    def __dealloc__(self):
        free(self.adj); free(self.cov_off); free(self.cov_dat)
        free(self.assign); free(self.pair_at); free(self.owner)
        free(self.visited); free(self.trail); free(self.trail_start)
        free(self.path)

    cdef inline int spend(self):
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = True
            return -1
        return 0

    cdef bint _augment(self, int d):
        cdef int pid = self.pair_at[d]
        cdef int j, e, holder
        for j in range(self.cov_off[pid], self.cov_off[pid + 1]):
            e = self.cov_dat[j]
            if self.visited[e] == self.stamp:
                continue
            self.visited[e] = self.stamp
            holder = self.owner[e]
            if holder == -1 or self._augment(holder):
                self.trail[self.trail_len].depth = d
                self.trail[self.trail_len].old_edge = self.assign[d]
                self.trail[self.trail_len].new_edge = e
                self.trail_len += 1
                self.assign[d] = e
                self.owner[e] = d
                return True
        return False

    cdef bint push(self, int u, int v):
        cdef int pid
        if u > v:
            u, v = v, u
        pid = u * self.n + v
        cdef int d = self.depth_count
        self.pair_at[d] = pid
        self.assign[d] = -1
        self.trail_start[d] = self.trail_len
        self.depth_count += 1
        self.stamp += 1
        if self._augment(d):
            return True
        self.depth_count -= 1
        self.trail_len = self.trail_start[d]
        return False

    cdef void pop(self):
        cdef int top = self.depth_count - 1
        cdef int s = self.trail_start[top]
        cdef int i, d
        for i in range(s, self.trail_len):
            self.owner[self.trail[i].new_edge] = -1
            if self.trail[i].old_edge != -1:
                self.owner[self.trail[i].old_edge] = -1
        for i in range(self.trail_len - 1, s - 1, -1):
            self.assign[self.trail[i].depth] = self.trail[i].old_edge
        for i in range(s, self.trail_len):
            d = self.trail[i].depth
            if d != top and self.assign[d] != -1:
                self.owner[self.assign[d]] = d
        self.trail_len = s
        self.depth_count -= 1

    cdef inline bint pair_exists(self, int u, int v):
        cdef int pid
        if u > v:
            u, v = v, u
        pid = u * self.n + v
        return self.cov_off[pid + 1] > self.cov_off[pid]

    cdef tuple dfs(self, int depth):
        cdef int last = self.path[depth - 1]
        cdef int v1 = self.path[0]
        cdef unsigned long long cand, bit
        cdef int w
        if depth == self.L:
            if self.path[1] < self.path[self.L - 1] and self.pair_exists(v1, last):
                if self.spend() < 0:
                    return None
                if self.push(v1, last):
                    spine = tuple(self.path[i] for i in range(self.L))
                    assigned = tuple(self.assign[i] for i in range(self.L))
                    self.pop()
                    return (spine, assigned)
            return None
        cand = self.adj[last] & ~self.used
        if v1 < 63:
            cand &= ~(((<unsigned long long>1) << (v1 + 1)) - 1)
        else:
            cand = 0
        while cand:
            bit = cand & (~cand + 1)
            w = _bit_index(bit)
            cand ^= bit
            if self.spend() < 0:
                return None
            if not self.push(last, w):
                continue
            self.path[depth] = w
            self.used |= bit
            found = self.dfs(depth + 1)
            self.used &= ~bit
            self.pop()
            if found is not None:
                return found
            if self.exhausted:
                return None
        return None

    def search_length(self, int L):
        cdef int v1
        self.L = L
        for v1 in range(self.n):
            if _popcount(self.adj[v1]) < 2:
                continue
            self.path[0] = v1
            self.used = (<unsigned long long>1) << v1
            found = self.dfs(1)
            self.used = 0
            if self.exhausted:
                return None
            if found is not None:
                return found
        return None


cdef inline int _popcount(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline int _bit_index(unsigned long long bit):
    cdef int i = 0
    while bit > 1:
        bit >>= 1
        i += 1
    return i


def spectrum_search(int n, edges, int min_len, int max_len, long long budget):
    """Mirror of _spectrum.spectrum_search: (hits, nodes, exhausted)."""
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    kern = _Kernel(n, edges, budget)
    hits = []
    cdef int L
    lo = min_len if min_len > 3 else 3
    for L in range(lo, max_len + 1):
        if L > n or L > len(edges):
            break
        found = kern.search_length(L)
        if found is not None:
            spine, assigned = found
            hits.append((L, spine, assigned))
        if kern.exhausted:
            break
    return hits, kern.nodes, kern.exhausted
