# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled twin of ``_kernels_py``; valid only for spaces of at most 64 points."""

from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from libcpp.unordered_set cimport unordered_set


cdef inline vector[uint64_t] _masks(seq):
    cdef vector[uint64_t] out
    out.reserve(len(seq))
    for m in seq:
        out.push_back(<uint64_t>m)
    return out


cdef inline uint64_t _closure(uint64_t mask, const vector[uint64_t]& below) nogil:
    cdef uint64_t out = 0
    cdef int i = 0
    while mask:
        if mask & 1:
            out |= below[i]
        mask >>= 1
        i += 1
    return out


def down_closure(mask, below):
    cdef vector[uint64_t] b = _masks(below)
    return _closure(<uint64_t>mask, b)


def enumerate_downsets(order, below, limit):
    cdef vector[uint64_t] b = _masks(below)
    cdef vector[int] ordv
    cdef vector[uint64_t] strict
    cdef Py_ssize_t i, n = len(order)
    cdef long long cap = limit
    for i in range(<Py_ssize_t>b.size()):
        strict.push_back(b[i] & ~((<uint64_t>1) << i))
    for o in order:
        ordv.push_back(o)

    cdef vector[uint64_t] out
    cdef vector[int] st_pos
    cdef vector[uint64_t] st_cur
    cdef int pos, k
    cdef uint64_t cur
    st_pos.push_back(0)
    st_cur.push_back(0)
    while st_pos.size():
        pos = st_pos.back()
        cur = st_cur.back()
        st_pos.pop_back()
        st_cur.pop_back()
        if pos == n:
            out.push_back(cur)
            if <long long>out.size() > cap:
                return None
            continue
        k = ordv[pos]
        st_pos.push_back(pos + 1)
        st_cur.push_back(cur)
        if not (strict[k] & ~cur):
            st_pos.push_back(pos + 1)
            st_cur.push_back(cur | ((<uint64_t>1) << k))
    return [out[i] for i in range(<Py_ssize_t>out.size())]


def family_witness(masks, full):
    cdef vector[uint64_t] ms = _masks(masks)
    cdef vector[uint64_t] node_mask
    cdef vector[int] node_parent
    cdef vector[int] node_idx
    cdef unordered_set[uint64_t] seen
    cdef Py_ssize_t idx, j, count
    cdef uint64_t s
    cdef int hit = -1
    node_mask.push_back(<uint64_t>full)
    node_parent.push_back(-1)
    node_idx.push_back(-1)
    seen.insert(<uint64_t>full)
    for idx in range(<Py_ssize_t>ms.size()):
        count = node_mask.size()
        for j in range(count):
            s = node_mask[j] & ms[idx]
            if seen.count(s):
                continue
            seen.insert(s)
            node_mask.push_back(s)
            node_parent.push_back(j)
            node_idx.push_back(idx)
            if s == 0:
                hit = node_mask.size() - 1
                break
        if hit >= 0:
            break
    if hit < 0:
        return None
    fam = []
    while node_parent[hit] >= 0:
        fam.append(node_idx[hit])
        hit = node_parent[hit]
    return tuple(reversed(fam))


def has_decomposition(f, closed):
    cdef uint64_t ff = <uint64_t>f
    cdef vector[uint64_t] subs
    cdef uint64_t c
    for m in closed:
        c = <uint64_t>m
        if not (c & ~ff) and c != ff:
            subs.push_back(c)
    cdef Py_ssize_t a, b, k = subs.size()
    for a in range(k):
        for b in range(a, k):
            if (subs[a] | subs[b]) == ff:
                return subs[a], subs[b]
    return None


def common_upper_bounds(mask, above, full):
    cdef vector[uint64_t] ab = _masks(above)
    cdef uint64_t m = <uint64_t>mask
    cdef uint64_t out = <uint64_t>full
    cdef int i = 0
    while m:
        if m & 1:
            out &= ab[i]
        m >>= 1
        i += 1
    return out


cdef bint _families_ok(const vector[uint64_t]& opens, uint64_t full,
                       unordered_set[uint64_t]& seen, vector[uint64_t]& reach):
    cdef Py_ssize_t idx, j, count
    cdef uint64_t s
    seen.clear()
    reach.clear()
    seen.insert(full)
    reach.push_back(full)
    for idx in range(<Py_ssize_t>opens.size()):
        count = reach.size()
        for j in range(count):
            s = reach[j] & opens[idx]
            if s == 0:
                return False
            if not seen.count(s):
                seen.insert(s)
                reach.push_back(s)
    return True


def limit_masks(int n, above):
    cdef vector[uint64_t] ab = _masks(above)
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef uint64_t mask
    cdef int i
    cdef vector[uint64_t] opens
    cdef unordered_set[uint64_t] seen
    cdef vector[uint64_t] reach
    out = []
    for mask in range(1, full + 1):
        opens.clear()
        for i in range(n):
            if (mask >> i) & 1:
                opens.push_back(ab[i])
        if _families_ok(opens, full, seen, reach):
            out.append(mask)
    return out


def maximal_masks(masks):
    cdef vector[uint64_t] ms = _masks(masks)
    cdef Py_ssize_t a, b, k = ms.size()
    cdef bint keep
    out = []
    for a in range(k):
        keep = True
        for b in range(k):
            if ms[b] != ms[a] and not (ms[a] & ~ms[b]):
                keep = False
                break
        if keep:
            out.append(ms[a])
    return out


def is_monotone(below_src, images, below_tgt):
    cdef vector[uint64_t] bs = _masks(below_src)
    cdef vector[uint64_t] bt = _masks(below_tgt)
    cdef vector[int] im
    for t in images:
        im.push_back(t)
    cdef Py_ssize_t i
    cdef int j
    cdef uint64_t b, fi
    for i in range(<Py_ssize_t>bs.size()):
        b = bs[i]
        fi = bt[im[i]]
        j = 0
        while b:
            if (b & 1) and not ((fi >> im[j]) & 1):
                return False
            b >>= 1
            j += 1
    return True


def preimage(mask, images):
    cdef uint64_t m = <uint64_t>mask
    cdef uint64_t out = 0
    cdef int i = 0
    for t in images:
        if (m >> <int>t) & 1:
            out |= (<uint64_t>1) << i
        i += 1
    return out


def image(mask, images):
    cdef uint64_t m = <uint64_t>mask
    cdef uint64_t out = 0
    cdef vector[int] im
    for t in images:
        im.push_back(t)
    cdef int i = 0
    while m:
        if m & 1:
            out |= (<uint64_t>1) << im[i]
        m >>= 1
        i += 1
    return out


def extension_pairs(below, above, downsets, up_order):
    cdef vector[uint64_t] ab = _masks(above)
    cdef vector[uint64_t] ds = _masks(downsets)
    cdef vector[int] order
    for o in up_order:
        order.push_back(o)
    cdef int n = len(below)
    cdef uint64_t full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    cdef vector[uint64_t] strict_up
    cdef int i
    for i in range(n):
        strict_up.push_back(ab[i] & ~((<uint64_t>1) << i))
    cdef vector[int] pts
    cdef vector[int] st_pos
    cdef vector[uint64_t] st_cur
    cdef vector[uint64_t] out_d
    cdef vector[uint64_t] out_u
    cdef uint64_t d, m, x, cur
    cdef Py_ssize_t a
    cdef int pos, k, j
    for a in range(<Py_ssize_t>ds.size()):
        d = ds[a]
        m = full & ~d
        x = d
        i = 0
        while x:
            if x & 1:
                m &= ab[i]
            x >>= 1
            i += 1
        pts.clear()
        for j in range(<int>order.size()):
            i = order[j]
            if (m >> i) & 1 and not (ab[i] & ~m):
                pts.push_back(i)
        k = pts.size()
        st_pos.clear()
        st_cur.clear()
        st_pos.push_back(0)
        st_cur.push_back(0)
        while st_pos.size():
            pos = st_pos.back()
            cur = st_cur.back()
            st_pos.pop_back()
            st_cur.pop_back()
            if pos == k:
                out_d.push_back(d)
                out_u.push_back(cur)
                continue
            i = pts[pos]
            st_pos.push_back(pos + 1)
            st_cur.push_back(cur)
            if not (strict_up[i] & ~cur):
                st_pos.push_back(pos + 1)
                st_cur.push_back(cur | ((<uint64_t>1) << i))
    return [(out_d[a], out_u[a]) for a in range(<Py_ssize_t>out_d.size())]


cdef class _Scan:
    cdef vector[uint64_t] nb
    cdef vector[uint64_t] prod_below
    cdef vector[uint64_t] rects
    cdef vector[int] images
    cdef int n_prod
    cdef int mode
    cdef list out

    cdef bint _fails(self):
        cdef Py_ssize_t a
        cdef int i, total = self.nb.size()
        cdef uint64_t r, pre, cl
        for a in range(<Py_ssize_t>self.rects.size()):
            r = self.rects[a]
            pre = 0
            for i in range(total):
                if (r >> self.images[i]) & 1:
                    pre |= (<uint64_t>1) << i
            cl = _closure(r, self.nb)
            if pre != cl:
                return True
        return False

    cdef void assign(self, int pos):
        cdef int total = self.nb.size()
        cdef int v, q
        cdef bint ok, fails
        if pos == total:
            fails = self._fails()
            if self.mode == 2 or fails == (self.mode == 1):
                self.out.append((
                    tuple([self.nb[q] for q in range(total)]),
                    tuple([self.images[q] for q in range(self.n_prod, total)]),
                ))
            return
        for v in range(self.n_prod):
            self.images[pos] = v
            ok = True
            for q in range(pos):
                if ((self.nb[pos] >> q) & 1) and not ((self.prod_below[v] >> self.images[q]) & 1):
                    ok = False
                    break
                if ((self.nb[q] >> pos) & 1) and not ((self.prod_below[self.images[q]] >> v) & 1):
                    ok = False
                    break
            if ok:
                self.assign(pos + 1)


def _linear(masks):
    return sorted(range(len(masks)), key=lambda i: bin(masks[i]).count("1"))


def scan_extensions(below, above, int n_prod, prod_below, rects, int mode):
    cdef int n = len(below)
    downsets = enumerate_downsets(_linear(below), below, 1 << 30)
    pairs = extension_pairs(below, above, downsets, _linear(above))
    cdef _Scan s = _Scan()
    s.prod_below = _masks(prod_below)
    s.rects = _masks(rects)
    s.n_prod = n_prod
    s.mode = mode
    s.out = []
    cdef vector[uint64_t] base = _masks(below)
    cdef uint64_t full = ((<uint64_t>1) << (n + 1)) - 1
    cdef uint64_t prod_full = ((<uint64_t>1) << n_prod) - 1
    cdef uint64_t d, u, e = (<uint64_t>1) << n
    cdef int i
    s.images.resize(n + 1)
    for i in range(n_prod):
        s.images[i] = i
    for d, u in pairs:
        s.nb = base
        s.nb.push_back(d | e)
        for i in range(n):
            if (u >> i) & 1:
                s.nb[i] |= d | e
        if _closure(prod_full, s.nb) != full:
            continue
        s.assign(n_prod)
    return s.out


def canonical_config_key(below, psi_vals, int n_prod, prod_perms):
    import itertools
    cdef vector[uint64_t] b = _masks(below)
    cdef int n = b.size()
    cdef int k = n - n_prod
    cdef vector[int] tau
    cdef vector[uint64_t] new
    cdef vector[uint64_t] best_b
    cdef vector[int] ps, best_ps
    cdef vector[int] psi
    cdef int i, j, cmp
    cdef uint64_t m, out
    cdef bint have = False
    for v in psi_vals:
        psi.push_back(v)
    tau.resize(n)
    new.resize(n)
    ps.resize(k)
    for pp in prod_perms:
        for pe in itertools.permutations(range(k)):
            for i in range(n_prod):
                tau[i] = pp[i]
            for j in range(k):
                tau[n_prod + j] = n_prod + pe[j]
            for i in range(n):
                m = b[i]
                out = 0
                j = 0
                while m:
                    if m & 1:
                        out |= (<uint64_t>1) << tau[j]
                    m >>= 1
                    j += 1
                new[tau[i]] = out
            for j in range(k):
                ps[pe[j]] = tau[psi[j]]
            cmp = 0
            if have:
                for i in range(n):
                    if new[i] != best_b[i]:
                        cmp = -1 if new[i] < best_b[i] else 1
                        break
                if cmp == 0:
                    for j in range(k):
                        if ps[j] != best_ps[j]:
                            cmp = -1 if ps[j] < best_ps[j] else 1
                            break
            if not have or cmp < 0:
                best_b = new
                best_ps = ps
                have = True
    return (tuple([best_b[i] for i in range(n)]), tuple([best_ps[j] for j in range(k)]))
