"""B(infinity) as irreducible components of nilpotent quiver varieties.

Components of the variety {mu = 0, nilpotent} over F_p are handled through
their dense orbits: a component is identified by the canonical key of the
orbit whose conormal closure it is, always expressed under the equioriented
orientation of the path graph (arrows k+1 -> k), where the path-rank table
is a complete orbit invariant and is inverted by a double difference into a
multisegment.  Under other orientations the table is *not* complete (two
non-isomorphic representations of A_3 with orientation 1->2<-3 share one),
which is why every pipeline below re-identifies its output canonically.

Component-level quantities are generic values, computed by sampling random
conormal vectors at the orbit representative and stabilizing the extremal
statistic: ranks only ever undershoot at special points, so the running
entrywise maximum of rank tables (equivalently minimum of coranks) is
accepted once two consecutive batches of samples agree.  Failing that, the
prime is escalated, and finally a GenericityError is raised; silent
acceptance of an unstable value is never an option.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from . import modp, quiver
from .quiver import QuiverGraph, Orientation, Representation


class GenericityError(RuntimeError):
    """A generic value failed to stabilize over every configured prime."""


# ---------------------------------------------------------------------------
# multisegments and orbit keys


def intervals(r):
    return [(a, b) for a in range(1, r + 1) for b in range(a, r + 1)]


def segs_dims(segs, r):
    d = [0] * (r + 1)
    for a, b in segs:
        for v in range(a, b + 1):
            d[v] += 1
    return tuple(d[1:])


def enumerate_multisegments(dims):
    """All multisets of intervals [a,b] with the given dimension vector.

    Intervals starting at vertex a are the only ones that can account for
    whatever dimension remains at a once all intervals starting earlier are
    fixed, so the search distributes remaining[a] over b = a..r in turn.
    """
    r = len(dims)
    out = []
    segs = []

    def place(a, remaining):
        if a > r:
            out.append(tuple(segs))
            return
        need = remaining[a - 1]
        ends = list(range(a, r + 1))

        def distribute(idx, left):
            if idx == len(ends):
                if left == 0:
                    place(a + 1, remaining)
                return
            b = ends[idx]
            # at most `left`, and no more than any remaining dim along [a,b]
            cap = left
            for v in range(a, b + 1):
                cap = min(cap, remaining[v - 1])
                if cap == 0:
                    break
            for mult in range(cap, -1, -1):
                for v in range(a, b + 1):
                    remaining[v - 1] -= mult
                segs.extend([(a, b)] * mult)
                distribute(idx + 1, left - mult)
                del segs[len(segs) - mult :]
                for v in range(a, b + 1):
                    remaining[v - 1] += mult
            return

        distribute(0, need)

    place(1, list(dims))
    return [tuple(sorted(s)) for s in out]


def interval_rep(graph, orientation, segs, p=modp.DEFAULT_PRIME):
    """Direct sum of interval modules as an E-point of the orientation."""
    r = len(graph.vertices)
    dims = segs_dims(segs, r)
    # basis of V_v: one slot per interval containing v, in segs order
    slot = {}
    counts = [0] * (r + 1)
    for idx, (a, b) in enumerate(segs):
        for v in range(a, b + 1):
            slot[(idx, v)] = counts[v]
            counts[v] += 1
    arrows = {}
    for arrow in orientation.arrows:
        o, i = arrow
        m = np.zeros((dims[i - 1], dims[o - 1]), dtype=np.int64)
        for idx, (a, b) in enumerate(segs):
            if a <= min(o, i) and max(o, i) <= b:
                m[slot[(idx, i)], slot[(idx, o)]] = 1
        arrows[arrow] = m
    return Representation(graph, {v: dims[v - 1] for v in graph.vertices}, arrows, p)


def multisegment_of_table(table, r):
    """Invert an equioriented path-rank table into a multisegment.

    Multiplicity of [a,b] is the double difference
    r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1); returns None when any
    multiplicity is negative (the table is then not realizable).
    """

    def rk(a, b):
        if a < 1 or b > r or a > b:
            return 0
        return table[(a, b)]

    segs = []
    for a in range(1, r + 1):
        for b in range(a, r + 1):
            mult = rk(a, b) - rk(a - 1, b) - rk(a, b + 1) + rk(a - 1, b + 1)
            if mult < 0:
                return None
            segs.extend([(a, b)] * mult)
    return tuple(sorted(segs))


class OrbitKey:
    """Canonical identity of a nilpotent orbit (hence of a component).

    Keys compare by orientation, dimension vector and path-rank table; for
    the equioriented orientation the table is complete and the multisegment
    is carried along as the invariant that certifies realizability.
    """

    def __init__(self, graph, orientation, dims, table, segs=None):
        self.graph = graph
        self.orientation = orientation
        self.dims = tuple(int(d) for d in dims)
        self.table = dict(table)
        self.ranks = tuple(
            (a, b, int(rv)) for (a, b), rv in sorted(self.table.items())
        )
        self.segs = tuple(sorted(segs)) if segs is not None else None
        # keys serve as cache keys everywhere, so identity and hash are
        # computed once (the table is immutable after construction)
        self._ident = (self.orientation.bitmask(), self.dims, self.ranks)
        self._hash = hash(self._ident)

    def ident(self):
        return self._ident

    def weight(self):
        return {v: -d for v, d in zip(self.graph.vertices, self.dims) if d}

    def total(self):
        return sum(self.dims)

    def to_json(self):
        return json.dumps(
            {
                "orientation": sorted(list(a) for a in self.orientation.arrows),
                "dims": list(self.dims),
                "ranks": [list(t) for t in self.ranks],
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, graph, text):
        doc = json.loads(text)
        orientation = Orientation(graph, [tuple(a) for a in doc["orientation"]])
        table = {(a, b): rv for a, b, rv in doc["ranks"]}
        key = cls(graph, orientation, doc["dims"], table)
        if orientation == quiver.omega0(graph):
            key.segs = multisegment_of_table(table, len(graph.vertices))
        return key

    def __eq__(self, other):
        return isinstance(other, OrbitKey) and self.ident() == other.ident()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"OrbitKey(dims={self.dims}, segs={self.segs})"


class GenericPoint:
    """An X-point (all arrows of H) drawn from the conormal at an orbit rep."""

    def __init__(self, rep, key):
        self.rep = rep
        self.key = key


def canonical_key(graph, segs, p=modp.DEFAULT_PRIME):
    """The equioriented key of the orbit with the given multisegment."""
    om0 = quiver.omega0(graph)
    rep = interval_rep(graph, om0, segs, p)
    table = quiver.path_rank_table(rep, om0)
    return OrbitKey(graph, om0, segs_dims(segs, len(graph.vertices)), table, segs)


def enumerate_orbits(graph, orientation, dims, p=modp.DEFAULT_PRIME):
    """All orbit keys with the given dims under the given orientation."""
    keys = []
    for segs in enumerate_multisegments(tuple(dims)):
        rep = interval_rep(graph, orientation, segs, p)
        table = quiver.path_rank_table(rep, orientation)
        keys.append(OrbitKey(graph, orientation, dims, table, segs))
    return keys


# ---------------------------------------------------------------------------
# point-level statistics


def geo_eps(pt, i):
    """Corank at i of the stack of all arrows of H pointing into i."""
    rep = pt.rep if isinstance(pt, GenericPoint) else pt
    blocks = [rep.mat(arr) for arr in rep.graph.arrows_in(i)]
    stack = np.concatenate(blocks, axis=1) if blocks else np.zeros((rep.dims[i], 0), dtype=np.int64)
    return rep.dims[i] - modp.rank(stack, rep.p)


def geo_eps_star(pt, i):
    """Nullity at i of the stack of all arrows of H pointing out of i."""
    rep = pt.rep if isinstance(pt, GenericPoint) else pt
    blocks = [rep.mat(arr) for arr in rep.graph.arrows_out(i)]
    stack = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, rep.dims[i]), dtype=np.int64)
    return rep.dims[i] - modp.rank(stack, rep.p)


def transpose_point(rep):
    """The star involution on X-points: new B_tau = transpose of B_bar(tau)."""
    arrows = {
        arr: rep.mat(QuiverGraph.bar(arr)).T.copy() for arr in rep.graph.arrows
    }
    return Representation(rep.graph, rep.dims, arrows, rep.p)


# ---------------------------------------------------------------------------
# the sampling context


DEFAULT_SEED = 1729


class GeomContext:
    """Holds the graph, prime ladder, master seed, and all memo caches."""

    def __init__(self, graph, p=modp.DEFAULT_PRIME, seed=DEFAULT_SEED,
                 batch=3, max_batches=32, basis_cache_cap=512):
        self.graph = graph
        self.omega0 = quiver.omega0(graph)
        self.p = p
        self.primes = tuple([p] + [q for q in modp.PRIMES if q != p])
        self.seed = seed
        self.batch = batch
        self.max_batches = max_batches
        self.basis_cache_cap = basis_cache_cap
        self.caches = {}

    def cache(self, name):
        return self.caches.setdefault(name, {})

    def rng_for(self, *tokens):
        """Deterministic, scheduling-independent stream for one computation."""
        digest = hashlib.blake2b(repr(tokens).encode(), digest_size=16).digest()
        words = [int.from_bytes(digest[k : k + 4], "big") for k in range(0, 16, 4)]
        return np.random.default_rng(np.random.SeedSequence([self.seed] + words))


def _conormal_basis(ctx, rep, orientation):
    """Nullspace basis of the linearized moment-map system at an E-point.

    Unknowns are the reverse-arrow blocks; for fixed forward part the
    condition mu_i(R + C) = 0 for all i is linear in C because every
    summand eps(tau) B_bar(tau) B_tau pairs one forward with one reverse
    factor.  Returns (basis, layout, matvec) where layout maps each reverse
    arrow to its slice of the coefficient vector and matvec applies the
    basis to coefficient vectors with the float split precomputed.
    """
    g = rep.graph
    p = rep.p
    back = sorted(QuiverGraph.bar(a) for a in orientation.arrows)
    layout = {}
    pos = 0
    for arr in back:
        size = rep.dims[arr[1]] * rep.dims[arr[0]]
        layout[arr] = (pos, pos + size)
        pos += size
    rows = sum(d * d for d in rep.dims.values())
    big = np.zeros((rows, pos), dtype=np.int64)
    row0 = 0
    for i in g.vertices:
        d = rep.dims[i]
        for tau in g.arrows_out(i):
            sgn = orientation.eps(tau)
            if tau in layout:
                # unknown forward factor: eps * B_bar(tau) @ C_tau
                lo, hi = layout[tau]
                contrib = np.kron(rep.mat(QuiverGraph.bar(tau)), np.eye(rep.dims[tau[0]], dtype=np.int64))
            else:
                # unknown reverse factor: eps * C_bar(tau) @ B_tau
                lo, hi = layout[QuiverGraph.bar(tau)]
                contrib = np.kron(np.eye(d, dtype=np.int64), rep.mat(tau).T)
            big[row0 : row0 + d * d, lo:hi] = (
                big[row0 : row0 + d * d, lo:hi] + sgn * contrib
            ) % p
        row0 += d * d
    basis = modp.nullspace(big, p)
    return basis, layout, modp.PreparedMatmul(basis, p)


def conormal_point(ctx, rep, orientation, rng, basis_layout=None):
    """One random X-point of the conormal space at the E-point rep."""
    if basis_layout is None:
        basis_layout = _conormal_basis(ctx, rep, orientation)
    basis, layout, matvec = basis_layout
    coeff = rng.integers(0, rep.p, size=basis.shape[1], dtype=np.int64)
    vec = matvec(coeff) if basis.shape[1] else np.zeros(basis.shape[0], dtype=np.int64)
    arrows = dict(rep.arrows)
    for arr, (lo, hi) in layout.items():
        shape = (rep.dims[arr[1]], rep.dims[arr[0]])
        arrows[arr] = vec[lo:hi].reshape(shape)
    return Representation(rep.graph, rep.dims, arrows, rep.p)


def sample_conormal(ctx, key, rng=None, prime=None):
    """A GenericPoint for the component over the key's orbit."""
    if rng is None:
        rng = ctx.rng_for("sample", key.ident())
    if prime is None:
        prime = ctx.p
    cache = ctx.cache("conormal_basis")
    ck = (key.ident(), prime)
    if ck not in cache:
        if key.segs is None:
            raise ValueError("key has no multisegment; cannot rebuild representative")
        rep = interval_rep(ctx.graph, key.orientation, key.segs, prime)
        # basis entries are the only caches holding large arrays; evict the
        # oldest when long searches touch many distinct components
        while len(cache) >= ctx.basis_cache_cap:
            cache.pop(next(iter(cache)))
        cache[ck] = (rep, _conormal_basis(ctx, rep, key.orientation))
    rep, basis_layout = cache[ck]
    for _ in range(32):
        pt = conormal_point(ctx, rep, key.orientation, rng, basis_layout)
        if quiver.is_nilpotent(pt):
            return GenericPoint(pt, key)
    raise GenericityError(f"no nilpotent conormal point found at {key!r}")


def _stabilize(ctx, tokens, per_sample, merge, describe, calls_per_batch=None):
    """Accept an extremal statistic once two sample batches agree in a row.

    per_sample(rng) returns a value or None (rejected draw); merge folds a
    new value into the running extremum.  A callable may account for a whole
    batch itself (calls_per_batch=1) when sharing setup between the batch
    draws is worthwhile.  Exhausting max_batches moves to the next prime in
    the ladder; exhausting the ladder raises.
    """
    calls = ctx.batch if calls_per_batch is None else calls_per_batch
    for prime in ctx.primes:
        rng = ctx.rng_for(*tokens, prime)
        best = None
        prev = None
        for _ in range(ctx.max_batches):
            for _ in range(calls):
                val = per_sample(rng, prime)
                if val is not None:
                    best = val if best is None else merge(best, val)
            if best is not None and best == prev:
                return best
            prev = best
    raise GenericityError(f"{describe} failed to stabilize over primes {ctx.primes}")


def component_stats(ctx, key):
    """Stabilized vectors of all eps_i and eps*_i for one component.

    A single conormal sample yields every vertex statistic at once, so the
    whole vector is stabilized jointly: a pair of consecutive batches must
    agree on all entries simultaneously, which is at least as strict per
    entry as stabilizing each one separately.
    """
    cache = ctx.cache("stats")
    ck = key.ident()
    if ck not in cache:
        vs = ctx.graph.vertices

        def per_sample(rng, prime):
            pt = sample_conormal(ctx, key, rng, prime)
            return (tuple(geo_eps(pt, i) for i in vs),
                    tuple(geo_eps_star(pt, i) for i in vs))

        def merge(x, y):
            return (tuple(map(min, x[0], y[0])), tuple(map(min, x[1], y[1])))

        cache[ck] = _stabilize(ctx, ("stats", key.ident()), per_sample, merge,
                               f"stat vector of {key!r}")
    return cache[ck]


def component_eps(ctx, key, i):
    """Generic eps_i of the component: stabilized minimum over samples."""
    return component_stats(ctx, key)[0][ctx.graph.vertices.index(i)]


def component_eps_star(ctx, key, i):
    return component_stats(ctx, key)[1][ctx.graph.vertices.index(i)]


def component_phi(ctx, key, i):
    return component_eps(ctx, key, i) + crystal_pairing(ctx.graph, i, key.weight())


def crystal_pairing(graph, i, w):
    return sum(c * graph.cartan(i, j) for j, c in w.items())


def _table_merge(t1, t2):
    return {k: max(t1[k], t2[k]) for k in t1}


def _key_from_table(ctx, dims, table):
    r = len(ctx.graph.vertices)
    segs = multisegment_of_table(table, r)
    if segs is None:
        return None
    if segs_dims(segs, r) != tuple(dims):
        return None
    return OrbitKey(ctx.graph, ctx.omega0, dims, table, segs)


def _stabilized_key(ctx, tokens, per_sample_table, dims, describe,
                    calls_per_batch=None):
    """Run table-valued sampling to a stable, realizable canonical key."""

    def merge(t1, t2):
        return _table_merge(t1, t2)

    table = _stabilize(ctx, tokens, per_sample_table, merge, describe,
                       calls_per_batch=calls_per_batch)
    key = _key_from_table(ctx, dims, table)
    if key is None:
        raise GenericityError(f"{describe}: stabilized table is not realizable")
    return key


# ---------------------------------------------------------------------------
# component-level crystal operators


def _omega0_table(rep):
    return quiver.path_rank_table(
        rep.restrict(quiver.omega0(rep.graph).arrows), quiver.omega0(rep.graph)
    )


def geo_e_max(ctx, key, i):
    """e_i^max on components: restrict V_i to the image of the incoming maps.

    The resulting X-point keeps mu = 0 exactly (incoming arrows factor
    through the image, outgoing arrows restrict) and has eps_i = 0 by
    construction; its equioriented table identifies the target component.
    """
    c = component_eps(ctx, key, i)
    if c == 0:
        return key
    cache = ctx.cache("e_max")
    ck = (key.ident(), i)
    if ck in cache:
        return cache[ck]

    dims = list(key.dims)
    dims[i - 1] -= c
    dims = tuple(dims)

    def per_sample(rng, prime):
        pt = sample_conormal(ctx, key, rng, prime).rep
        if geo_eps(pt, i) != c:
            return None
        restricted = _restrict_to_image(pt, i)
        return _omega0_table(restricted)

    out = _stabilized_key(ctx, ("e_max", key.ident(), i), per_sample, dims,
                          f"e_{i}^max of {key!r}")
    cache[ck] = out
    return out


def _restrict_to_image(rep, i):
    """Replace V_i by the image of all incoming arrows (an X-point again)."""
    p = rep.p
    incoming = rep.graph.arrows_in(i)
    stack = np.concatenate([rep.mat(a) for a in incoming], axis=1)
    # column basis of the image
    red, pivots = modp.rref(stack.T, p)
    u = red[: len(pivots)].T.copy()  # d_i x w
    w = u.shape[1]
    arrows = {}
    for arr in rep.graph.arrows:
        if arr[1] == i:  # incoming: solve U C = B exactly
            c = modp.solve(u, rep.mat(arr), p)
            if c is None:
                raise GenericityError("incoming arrow does not factor through image")
            arrows[arr] = c if c.ndim == 2 else c[:, None]
        elif arr[0] == i:  # outgoing: restrict
            arrows[arr] = modp.matmul(rep.mat(arr), u, p)
        else:
            arrows[arr] = rep.mat(arr)
    dims = dict(rep.dims)
    dims[i] = w
    return Representation(rep.graph, dims, arrows, p)


def geo_transpose(ctx, key):
    """The star involution on components, via transposed generic points."""
    cache = ctx.cache("transpose")
    ck = key.ident()
    if ck in cache:
        return cache[ck]

    def per_sample(rng, prime):
        pt = sample_conormal(ctx, key, rng, prime).rep
        return _omega0_table(transpose_point(pt))

    out = _stabilized_key(ctx, ("transpose", key.ident()), per_sample, key.dims,
                          f"transpose of {key!r}")
    cache[ck] = out
    return out


def _f_star_point(rep, i, m, orientation, rng):
    """The generic-point construction for (f_i^*)^m at eps_i^*(rep) = 0.

    Extends V_i by m dimensions.  With A the stack of outgoing blocks
    (injective exactly when eps_i^* = 0), N = coker(A), psi: N -> V_i
    induced by the signed reverse blocks (well defined since D A = mu_i = 0),
    and phi a random lift of psi through the projection, the new arrows are
      out(tau) = i : old B_tau padded by zero columns,
      in(tau)  = i : -eps(tau) * phi . proj_N . (inclusion of the bar block),
    which keeps mu = 0 exactly at i and at every neighbor and makes the
    stack of outgoing blocks have nullity exactly m.
    """
    p = rep.p
    out_arrows = rep.graph.arrows_out(i)
    d_i = rep.dims[i]
    blocks = [rep.mat(a) for a in out_arrows]
    a_stack = np.concatenate(blocks, axis=0)
    m_tot = a_stack.shape[0]
    if modp.rank(a_stack, p) != d_i:
        return None  # non-generic draw: outgoing stack not injective
    e_cols = modp.complete_basis(a_stack, p)
    inv = modp.inv(np.concatenate([a_stack, e_cols], axis=1), p)
    proj = inv[d_i:, :]  # (m_tot - d_i) x m_tot, kills the image of A
    d_blocks = [
        (orientation.eps(a) % p) * rep.mat(QuiverGraph.bar(a)) % p for a in out_arrows
    ]
    d_row = np.concatenate(d_blocks, axis=1) % p
    psi = modp.matmul(d_row, e_cols, p)
    y = rng.integers(0, p, size=(m, m_tot - d_i), dtype=np.int64)
    phi = np.concatenate([psi, y], axis=0)

    row0 = {}
    pos = 0
    for a in out_arrows:
        row0[a] = (pos, pos + rep.dims[a[1]])
        pos += rep.dims[a[1]]

    arrows = {}
    for arr in rep.graph.arrows:
        if arr[0] == i:  # outgoing: pad m zero columns
            old = rep.mat(arr)
            arrows[arr] = np.concatenate(
                [old, np.zeros((old.shape[0], m), dtype=np.int64)], axis=1
            )
        elif arr[1] == i:  # incoming: the signed factor through N
            bar = QuiverGraph.bar(arr)
            lo, hi = row0[bar]
            block = modp.matmul(phi, proj[:, lo:hi], p)
            arrows[arr] = (-orientation.eps(arr) * block) % p
        else:
            arrows[arr] = rep.mat(arr)
    dims = dict(rep.dims)
    dims[i] = d_i + m
    return Representation(rep.graph, dims, arrows, p)


def geo_f_pow_star(ctx, key, i, m):
    """(f_i^*)^m on components with eps_i^* = 0, by the explicit construction."""
    if m == 0:
        return key
    if component_eps_star(ctx, key, i) != 0:
        raise ValueError("geo_f_pow_star requires eps_i^* = 0")
    cache = ctx.cache("f_pow_star")
    ck = (key.ident(), i, m)
    if ck in cache:
        return cache[ck]
    dims = list(key.dims)
    dims[i - 1] += m
    dims = tuple(dims)

    def per_sample(rng, prime):
        pt = sample_conormal(ctx, key, rng, prime).rep
        new = _f_star_point(pt, i, m, ctx.omega0, rng)
        if new is None or not quiver.is_nilpotent(new):
            return None
        return _omega0_table(new)

    out = _stabilized_key(ctx, ("f*^m", key.ident(), i, m), per_sample, dims,
                          f"(f*_{i})^{m} of {key!r}")
    cache[ck] = out
    return out


def geo_f_pow(ctx, key, i, m):
    """f_i^m on components with eps_i = 0: conjugate the star version by star."""
    if m == 0:
        return key
    if component_eps(ctx, key, i) != 0:
        raise ValueError("geo_f_pow requires eps_i = 0")
    star = geo_transpose(ctx, key)
    moved = geo_f_pow_star(ctx, star, i, m)
    return geo_transpose(ctx, moved)


def geo_e_star_max(ctx, key, i):
    """(e*_i)^max on components: conjugate e_i^max by the transpose."""
    if component_eps_star(ctx, key, i) == 0:
        return key
    star = geo_transpose(ctx, key)
    return geo_transpose(ctx, geo_e_max(ctx, star, i))


def geo_e(ctx, key, i):
    """e_i on components: None at eps_i = 0, else f^(c-1) after e^max."""
    c = component_eps(ctx, key, i)
    if c == 0:
        return None
    top = geo_e_max(ctx, key, i)
    return geo_f_pow(ctx, top, i, c - 1)


def geo_f(ctx, key, i):
    """f_i on components: f^(c+1) after e^max."""
    c = component_eps(ctx, key, i)
    top = geo_e_max(ctx, key, i) if c else key
    return geo_f_pow(ctx, top, i, c + 1)


def highest_key(ctx):
    return canonical_key(ctx.graph, (), ctx.p)


def apply_word(ctx, tokens):
    """Replay an f-word (rightmost letter first) on the highest component."""
    key = highest_key(ctx)
    for t in reversed(tuple(tokens)):
        key = geo_f(ctx, key, t)
    return key


# ---------------------------------------------------------------------------
# reflection at a sink and the geometric Saito operation


def xi_reflect(rep, orientation, i):
    """Reflection of an E-point at a sink i of the orientation.

    Requires the stack of incoming arrows to be surjective at i.  Replaces
    V_i by the kernel of that stack and each incoming arrow tau by the
    block of the kernel basis belonging to bar(tau); all other arrows are
    untouched.  Exact: generic orbit points map to generic orbit points.
    """
    if not orientation.is_sink(i):
        raise ValueError(f"vertex {i} is not a sink")
    p = rep.p
    incoming = [a for a in orientation.arrows if a[1] == i]
    incoming.sort()
    stack = np.concatenate([rep.mat(a) for a in incoming], axis=1)
    if modp.rank(stack, p) != rep.dims[i]:
        raise GenericityError("incoming stack not surjective at the sink")
    kern = modp.nullspace(stack, p)  # m_tot x k
    dims = dict(rep.dims)
    dims[i] = kern.shape[1]
    col0 = {}
    pos = 0
    for a in incoming:
        col0[a] = (pos, pos + rep.dims[a[0]])
        pos += rep.dims[a[0]]
    new_orient = orientation.reflect(i)
    arrows = {}
    for arr, mat in rep.arrows.items():
        if arr[1] != i:
            arrows[arr] = mat
    for a in incoming:
        lo, hi = col0[a]
        arrows[(i, a[0])] = kern[lo:hi, :]
    return Representation(rep.graph, dims, arrows, p), new_orient


def geo_saito(ctx, key, i):
    """Saito reflection S_i on canonical components with eps_i = 0.

    Pipeline per sample: draw a generic X-point, view its part under the
    orientation making i a sink (equioriented with the edge {i-1,i}
    flipped), reflect exactly at the sink, then draw a conormal point of
    the reflected orbit and identify its equioriented table.  The weight
    transforms by the simple reflection s_i.
    """
    if component_eps(ctx, key, i) != 0:
        raise ValueError("geo_saito requires eps_i = 0")
    cache = ctx.cache("saito")
    ck = (key.ident(), i)
    if ck in cache:
        return cache[ck]

    pair = crystal_pairing(ctx.graph, i, key.weight())
    dims = list(key.dims)
    dims[i - 1] += pair  # s_i(wt): new d_i = sum of neighbor dims minus d_i
    dims = tuple(dims)

    sink_orient = ctx.omega0.flip_edge((i - 1, i)) if i > 1 else ctx.omega0

    def per_batch(rng, prime):
        # one input draw and one reflected-space basis feed a whole batch
        pt = sample_conormal(ctx, key, rng, prime).rep
        if geo_eps(pt, i) != 0:
            return None
        view = pt.restrict(sink_orient.arrows)
        try:
            refl, new_orient = xi_reflect(view, sink_orient, i)
        except GenericityError:
            return None
        basis_layout = _conormal_basis(ctx, refl, new_orient)
        merged = None
        for _ in range(ctx.batch):
            sampled = conormal_point(ctx, refl, new_orient, rng, basis_layout)
            if not quiver.is_nilpotent(sampled):
                continue
            table = _omega0_table(sampled)
            merged = table if merged is None else _table_merge(merged, table)
        return merged

    out = _stabilized_key(ctx, ("saito", key.ident(), i), per_batch, dims,
                          f"saito_{i} of {key!r}", calls_per_batch=1)
    cache[ck] = out
    return out


# ---------------------------------------------------------------------------
# cross-model check


def model_isomorphism_check(ctx, seq, max_total, indices=None):
    """Breadth-first comparison of the string and component models.

    Grows both models along f-words up to total weight depth max_total and
    checks that the induced map string element -> component key is a
    weight-preserving bijection matching eps, eps^*, and the operators.
    Returns a report dict; "mismatches" is empty on success.
    """
    from . import strings as strmod

    graph = ctx.graph
    if indices is None:
        indices = graph.vertices
    report = {"mismatches": [], "elements": 0, "by_weight_ok": True}
    start = strmod.highest(seq)
    pair_map = {start: highest_key(ctx)}
    frontier = [start]
    seen_depth = {start: 0}
    while frontier:
        nxt = []
        for b in frontier:
            key = pair_map[b]
            depth = seen_depth[b]
            for i in indices:
                se, ge = b.eps(i), component_eps(ctx, key, i)
                if se != ge:
                    report["mismatches"].append(
                        f"eps_{i} differs at {b!r}: string {se}, geom {ge}"
                    )
                    continue
                sstar = strmod.star_eps(b, i)
                gstar = component_eps_star(ctx, key, i)
                if sstar != gstar:
                    report["mismatches"].append(
                        f"eps*_{i} differs at {b!r}: string {sstar}, geom {gstar}"
                    )
                if not crystal_weights_match(b.wt(), key):
                    report["mismatches"].append(f"wt differs at {b!r}")
                if depth < max_total:
                    nb = b.f(i)
                    nk = geo_f(ctx, key, i)
                    if nb in pair_map:
                        if pair_map[nb] != nk:
                            report["mismatches"].append(
                                f"f_{i} image differs at {b!r}"
                            )
                    else:
                        pair_map[nb] = nk
                        seen_depth[nb] = depth + 1
                        nxt.append(nb)
                # e-consistency where defined
                eb = b.e(i)
                ek = geo_e(ctx, key, i)
                if (eb is None) != (ek is None):
                    report["mismatches"].append(f"e_{i} nullity differs at {b!r}")
                elif eb is not None and eb in pair_map and pair_map[eb] != ek:
                    report["mismatches"].append(f"e_{i} image differs at {b!r}")
        frontier = nxt
    report["elements"] = len(pair_map)
    # per-weight counts must equal the multisegment count of that weight
    by_dims = {}
    for b, key in pair_map.items():
        by_dims.setdefault(key.dims, [set(), set()])
        by_dims[key.dims][0].add(b)
        by_dims[key.dims][1].add(key)
    for dims, (bs, ks) in sorted(by_dims.items()):
        if sum(dims) > max_total:
            continue
        expect = len(enumerate_multisegments(dims))
        if not (len(bs) == len(ks) == expect):
            report["by_weight_ok"] = False
            report["mismatches"].append(
                f"weight {dims}: {len(bs)} strings, {len(ks)} keys, "
                f"{expect} multisegments"
            )
    return report


def crystal_weights_match(wt, key):
    want = key.weight()
    return {k: v for k, v in wt.items() if v} == want
