"""Shared test helpers: brute-force orbit counting over tiny finite fields."""

import itertools

import numpy as np

from binfty import quiver


def _gl_generators(d, q):
    """Transvections and one dilation generate GL_d(F_q)."""
    gens = []
    for i in range(d):
        for j in range(d):
            if i != j:
                m = np.eye(d, dtype=np.int64)
                m[i, j] = 1
                gens.append(m)
    if q > 2 and d > 0:
        m = np.eye(d, dtype=np.int64)
        m[0, 0] = 2  # 2 generates F_3^* and F_5^*
        gens.append(m)
    return gens


def _inv_mod(m, q):
    from binfty import modp

    return modp.inv(m, q) if m.shape[0] else m


def brute_force_orbit_count(graph, orientation, dims, q):
    """Number of GL(d)-orbits on the arrow representations over F_q.

    Exhaustive: enumerates every point of the representation space and
    closes each under base change, so only usable for sum(dims) <= 5 or so.
    """
    arrows = sorted(orientation.arrows)
    dim = {v: dims[k] for k, v in enumerate(graph.vertices)}
    shapes = [(dim[a[1]], dim[a[0]]) for a in arrows]
    sizes = [r * c for r, c in shapes]
    entries = sum(sizes)

    gens = []
    for v in graph.vertices:
        for g in _gl_generators(dim[v], q):
            gens.append((v, g % q, _inv_mod(g, q)))

    def unpack(state):
        mats = []
        pos = 0
        for (r, c), size in zip(shapes, sizes):
            mats.append(np.array(state[pos : pos + size], dtype=np.int64).reshape(r, c))
            pos += size
        return mats

    def pack(mats):
        return tuple(int(x) for m in mats for x in m.ravel())

    def act(state, v, g, ginv):
        mats = unpack(state)
        out = []
        for (o, t), m in zip(arrows, mats):
            if t == v:
                m = g @ m % q
            if o == v:
                m = m @ ginv % q
            out.append(m)
        return pack(out)

    seen = set()
    count = 0
    for state in itertools.product(range(q), repeat=entries):
        if state in seen:
            continue
        count += 1
        frontier = [state]
        seen.add(state)
        while frontier:
            cur = frontier.pop()
            for v, g, ginv in gens:
                nxt = act(cur, v, g, ginv)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    return count


def positive_dims_upto(total):
    """All (rank, dims) with positive entries summing to at most total."""
    out = []
    for r in range(1, total + 1):
        for dims in itertools.product(range(1, total + 1), repeat=r):
            if sum(dims) <= total:
                out.append(dims)
    return out
