"""Pure-Python bitmask kernels.

Every subset of an ``n``-point space is an ``int`` whose bit ``i`` marks
point ``i``. ``below[i]`` is the principal down-set of point ``i`` (bit ``i``
included); ``above[i]`` is the principal up-set. ``_kernels.pyx`` mirrors
this module function for function; :mod:`finitop.kernels` picks one.
"""


def down_closure(mask, below):
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= below[i]
        mask >>= 1
        i += 1
    return out


def enumerate_downsets(order, below, limit):
    """All down-sets, or ``None`` once more than ``limit`` are found.

    ``order`` must be a linear extension (every point after everything
    strictly below it).
    """
    strict = [below[i] & ~(1 << i) for i in range(len(below))]
    n = len(order)
    out = []
    stack = [(0, 0)]
    while stack:
        pos, cur = stack.pop()
        if pos == n:
            out.append(cur)
            if len(out) > limit:
                return None
            continue
        i = order[pos]
        stack.append((pos + 1, cur))
        if not strict[i] & ~cur:
            stack.append((pos + 1, cur | (1 << i)))
    return out


def family_witness(masks, full):
    """Indices of a subfamily of ``masks`` with empty intersection, else None.

    Tracks the set of all intersections reachable by subfamilies, so every
    finite subfamily is accounted for without listing each one.
    """
    reach = {full: ()}
    for idx, m in enumerate(masks):
        fresh = {}
        for r, fam in reach.items():
            s = r & m
            if s not in reach and s not in fresh:
                fresh[s] = fam + (idx,)
        if 0 in fresh:
            return fresh[0]
        reach.update(fresh)
    return None


def has_decomposition(f, closed):
    """A pair of closed sets, both different from ``f``, whose union is ``f``."""
    subs = [c for c in closed if not c & ~f and c != f]
    for a in range(len(subs)):
        ca = subs[a]
        for b in range(a, len(subs)):
            if ca | subs[b] == f:
                return ca, subs[b]
    return None


def common_upper_bounds(mask, above, full):
    out = full
    i = 0
    while mask:
        if mask & 1:
            out &= above[i]
        mask >>= 1
        i += 1
    return out


def limit_masks(n, above):
    """Nonempty subsets whose minimal neighbourhoods pass the family test."""
    full = (1 << n) - 1
    out = []
    for mask in range(1, full + 1):
        opens = [above[i] for i in range(n) if mask >> i & 1]
        if family_witness(opens, full) is None:
            out.append(mask)
    return out


def maximal_masks(masks):
    out = []
    for m in masks:
        for other in masks:
            if other != m and not m & ~other:
                break
        else:
            out.append(m)
    return out


def is_monotone(below_src, images, below_tgt):
    for i, b in enumerate(below_src):
        fi = below_tgt[images[i]]
        j = 0
        while b:
            if b & 1 and not fi >> images[j] & 1:
                return False
            b >>= 1
            j += 1
    return True


def preimage(mask, images):
    out = 0
    for i, t in enumerate(images):
        if mask >> t & 1:
            out |= 1 << i
    return out


def image(mask, images):
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << images[i]
        mask >>= 1
        i += 1
    return out


def extension_pairs(below, above, downsets, up_order):
    """Ways to add one point to a poset without changing the old order.

    Returns pairs ``(D, U)`` with ``D`` a down-set (the points below the new one),
    ``U`` an up-set disjoint from ``D`` with every point of ``D`` below every
    point of ``U``. ``up_order`` lists the points so that everything strictly
    above a point comes before it.
    """
    n = len(below)
    full = (1 << n) - 1
    strict_up = [above[i] & ~(1 << i) for i in range(n)]
    out = []
    for d in downsets:
        m = full & ~d
        x = d
        i = 0
        while x:
            if x & 1:
                m &= above[i]
            x >>= 1
            i += 1
        pts = [i for i in up_order if m >> i & 1 and not above[i] & ~m]
        stack = [(0, 0)]
        k = len(pts)
        while stack:
            pos, cur = stack.pop()
            if pos == k:
                out.append((d, cur))
                continue
            i = pts[pos]
            stack.append((pos + 1, cur))
            if not strict_up[i] & ~cur:
                stack.append((pos + 1, cur | (1 << i)))
    return out


def _linear(masks):
    return sorted(range(len(masks)), key=lambda i: bin(masks[i]).count("1"))


def scan_extensions(below, above, n_prod, prod_below, rects, mode):
    """Add one point to ``Y`` every way and test each resulting configuration.

    Points ``0..n_prod-1`` of ``Y`` are the product points (``phi`` is the
    inclusion); the others are extra. For every extension with the product
    dense, every continuous retraction ``psi`` is enumerated and the closure
    hypothesis tested on the rectangles ``rects``. ``mode`` is 1 to keep the
    failures, 0 to keep the passes, 2 to keep everything. Returns a list of
    ``(below, psi values on the extra points)``.
    """
    n = len(below)
    downsets = enumerate_downsets(_linear(below), below, 1 << 30)
    out = []
    full = (1 << (n + 1)) - 1
    prod_full = (1 << n_prod) - 1
    for d, u in extension_pairs(below, above, downsets, _linear(above)):
        e = 1 << n
        nb = list(below) + [d | e]
        for i in range(n):
            if u >> i & 1:
                nb[i] |= d | e
        if down_closure(prod_full, nb) != full:
            continue
        images = list(range(n_prod)) + [0] * (n + 1 - n_prod)
        _assign(nb, n_prod, n_prod, images, prod_below, rects, mode, out)
    return out


def _assign(nb, n_prod, pos, images, prod_below, rects, mode, out):
    total = len(nb)
    if pos == total:
        fails = False
        for r in rects:
            if preimage(r, images) != down_closure(r, nb):
                fails = True
                break
        if mode == 2 or fails == (mode == 1):
            out.append((tuple(nb), tuple(images[n_prod:])))
        return
    for v in range(n_prod):
        images[pos] = v
        ok = True
        for q in range(pos):
            if nb[pos] >> q & 1 and not prod_below[v] >> images[q] & 1:
                ok = False
                break
            if nb[q] >> pos & 1 and not prod_below[images[q]] >> v & 1:
                ok = False
                break
        if ok:
            _assign(nb, n_prod, pos + 1, images, prod_below, rects, mode, out)


def canonical_config_key(below, psi_vals, n_prod, prod_perms):
    """Smallest relabelling of ``(below, psi)`` over product symmetries and extra-point swaps."""
    import itertools

    n = len(below)
    k = n - n_prod
    best = None
    for pp in prod_perms:
        for pe in itertools.permutations(range(k)):
            tau = list(pp) + [n_prod + j for j in pe]
            new = [0] * n
            for i in range(n):
                new[tau[i]] = image(below[i], tau)
            ps = [0] * k
            for j in range(k):
                ps[pe[j]] = pp[psi_vals[j]]
            key = (tuple(new), tuple(ps))
            if best is None or key < best:
                best = key
    return best
