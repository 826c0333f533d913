"""Abstract crystals: elementary crystals B_i, tensor products, axiom checks.

Elements are duck-typed: anything with wt() / eps(i) / phi(i) / e(i) / f(i)
participates.  The null element is Python None and every operator propagates
it.  Weights are sparse dicts {vertex: coefficient} in the simple-root basis;
minus infinity is the float sentinel MINUS_INF, which already obeys max-plus
arithmetic under Python's max() and +.
"""

from __future__ import annotations

MINUS_INF = float("-inf")


def alpha(i):
    return {i: 1}


def wt_add(w1, w2):
    out = dict(w1)
    for k, v in w2.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v != 0}


def wt_scale(c, w):
    return {k: c * v for k, v in w.items() if c * v != 0}


def wt_eq(w1, w2):
    return {k: v for k, v in w1.items() if v} == {k: v for k, v in w2.items() if v}


def pairing(graph, i, w):
    """<h_i, w> for w = sum_j w[j] alpha_j."""
    return sum(c * graph.cartan(i, j) for j, c in w.items())


class BiElement:
    """Element b_i(n) of the elementary crystal B_i."""

    def __init__(self, graph, i, n=0):
        self.graph = graph
        self.i = i
        self.n = n

    def wt(self):
        return {self.i: self.n} if self.n else {}

    def eps(self, j):
        return -self.n if j == self.i else MINUS_INF

    def phi(self, j):
        return self.n if j == self.i else MINUS_INF

    def e(self, j):
        if j != self.i:
            return None
        return BiElement(self.graph, self.i, self.n + 1)

    def f(self, j):
        if j != self.i:
            return None
        return BiElement(self.graph, self.i, self.n - 1)

    def __eq__(self, other):
        return (
            isinstance(other, BiElement)
            and (self.i, self.n) == (other.i, other.n)
        )

    def __hash__(self):
        return hash(("bi", self.i, self.n))

    def __repr__(self):
        return f"b_{self.i}({self.n})"


def bi_e(b, i):
    return b.e(i)


def bi_f(b, i):
    return b.f(i)


def tensor_wt(b1, b2):
    return wt_add(b1.wt(), b2.wt())


def tensor_eps(b1, b2, i):
    graph = b1.graph
    return max(b1.eps(i), b2.eps(i) - pairing(graph, i, b1.wt()))


def tensor_phi(b1, b2, i):
    graph = b1.graph
    return max(b1.phi(i) + pairing(graph, i, b2.wt()), b2.phi(i))


class TensorValue:
    """b1 (x) b2 with the signed-rule crystal structure."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.graph = left.graph

    def wt(self):
        return tensor_wt(self.left, self.right)

    def eps(self, i):
        return tensor_eps(self.left, self.right, i)

    def phi(self, i):
        return tensor_phi(self.left, self.right, i)

    def e(self, i):
        # e acts on the left factor iff phi_i(b1) >= eps_i(b2)
        if self.left.phi(i) >= self.right.eps(i):
            b = self.left.e(i)
            return None if b is None else TensorValue(b, self.right)
        b = self.right.e(i)
        return None if b is None else TensorValue(self.left, b)

    def f(self, i):
        # f acts on the left factor iff phi_i(b1) > eps_i(b2)
        if self.left.phi(i) > self.right.eps(i):
            b = self.left.f(i)
            return None if b is None else TensorValue(b, self.right)
        b = self.right.f(i)
        return None if b is None else TensorValue(self.left, b)

    def __eq__(self, other):
        return (
            isinstance(other, TensorValue)
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash(("tensor", self.left, self.right))

    def __repr__(self):
        return f"({self.left!r} (x) {self.right!r})"


def tensor_e(t, i):
    return t.e(i)


def tensor_f(t, i):
    return t.f(i)


def check_axioms(elements, graph, indices=None):
    """Check the crystal axioms on a finite sample of elements.

    Returns a list of human-readable violations (empty when all pass).
    The sample need not be operator-closed; conditions involving e(b) or
    f(b) are checked whenever those images exist.
    """
    if indices is None:
        indices = graph.vertices
    bad = []
    for b in elements:
        for i in indices:
            eps_v, phi_v = b.eps(i), b.phi(i)
            # phi_i = eps_i + <h_i, wt>; with -inf this is max-plus arithmetic
            if phi_v != eps_v + pairing(graph, i, b.wt()):
                bad.append(f"C1 fails at {b!r}, i={i}: phi={phi_v}, eps={eps_v}")
            if phi_v == MINUS_INF:
                if b.e(i) is not None or b.f(i) is not None:
                    bad.append(f"C4 fails at {b!r}, i={i}")
                continue
            up = b.e(i)
            if up is not None:
                if not wt_eq(up.wt(), wt_add(b.wt(), alpha(i))):
                    bad.append(f"C2 wt fails at {b!r}, i={i}")
                if up.eps(i) != eps_v - 1 or up.phi(i) != phi_v + 1:
                    bad.append(f"C2 eps/phi fails at {b!r}, i={i}")
                if up.f(i) != b:
                    bad.append(f"C3 (e then f) fails at {b!r}, i={i}")
            down = b.f(i)
            if down is not None:
                if not wt_eq(down.wt(), wt_add(b.wt(), wt_scale(-1, alpha(i)))):
                    bad.append(f"C2' wt fails at {b!r}, i={i}")
                if down.eps(i) != eps_v + 1 or down.phi(i) != phi_v - 1:
                    bad.append(f"C2' eps/phi fails at {b!r}, i={i}")
                if down.e(i) != b:
                    bad.append(f"C3 (f then e) fails at {b!r}, i={i}")
    return bad


def is_strict_morphism(psi, elements, graph, indices=None):
    """Check that psi commutes with every e_i and f_i on the sample.

    psi maps elements to elements or None; None propagates on both sides.
    Also verifies preservation of wt, eps, phi wherever psi is nonzero.
    """
    if indices is None:
        indices = graph.vertices

    def image(b):
        return None if b is None else psi(b)

    for b in elements:
        pb = psi(b)
        if pb is not None:
            if not wt_eq(pb.wt(), b.wt()):
                return False
            for i in indices:
                if pb.eps(i) != b.eps(i) or pb.phi(i) != b.phi(i):
                    return False
        for i in indices:
            for op in ("e", "f"):
                lhs = image(getattr(b, op)(i))
                rhs = None if pb is None else getattr(pb, op)(i)
                if lhs != rhs:
                    return False
    return True


def is_embedding(psi, elements, graph, indices=None):
    """Strict morphism + injectivity on the sample."""
    if not is_strict_morphism(psi, elements, graph, indices):
        return False
    seen = []
    for b in elements:
        pb = psi(b)
        if pb is None:
            return False
        if pb in seen:
            return False
        seen.append(pb)
    return True
