"""The string (sequence) model of B(infinity).

An element is a finitely supported sequence of nonnegative integers along a
cofinal word i_1, i_2, ... of vertices, realized as the left-infinite tensor
... (x) b_{i_2}(-a_2) (x) b_{i_1}(-a_1) of elementary-crystal factors.  All
operator computations happen on a finite truncation padded on the left with
fresh zero factors; one full extra cycle per vertex is enough for every
statistic and operator position to stabilize, and the tests pin that down by
comparing different padding depths.

Operator words are written the way compositions are: "2 1 3" denotes
f_2 f_1 f_3 applied to the highest-weight element, rightmost letter first.
"""

from __future__ import annotations

from . import crystal
from .crystal import BiElement, TensorValue, MINUS_INF


class CofinalSequence:
    """Cyclic repetition of a base word in which every vertex occurs."""

    def __init__(self, graph, base=None):
        self.graph = graph
        self.base = tuple(base) if base is not None else tuple(graph.vertices)
        if set(self.base) != set(graph.vertices):
            raise ValueError("base word must visit every vertex")

    def vertex_at(self, k):
        """Vertex at 1-based position k."""
        return self.base[(k - 1) % len(self.base)]

    def __eq__(self, other):
        return (
            isinstance(other, CofinalSequence)
            and self.graph == other.graph
            and self.base == other.base
        )

    def __hash__(self):
        return hash(self.base)


# extra zero cycles padded onto realizations; one suffices, two is cheap slack
_PAD_CYCLES = 2


class StringElement:
    """Element of B(infinity) in string coordinates along a cofinal sequence."""

    def __init__(self, seq, coeffs=()):
        self.seq = seq
        self.graph = seq.graph
        coeffs = tuple(int(c) for c in coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if any(c < 0 for c in coeffs):
            raise ValueError("string coefficients must be nonnegative")
        self.coeffs = coeffs

    # -- realization ------------------------------------------------------

    def _realize(self, pad_cycles=_PAD_CYCLES):
        n = len(self.coeffs) + pad_cycles * len(self.seq.base)
        t = BiElement(self.graph, self.seq.vertex_at(n), -self._coeff(n))
        for k in range(n - 1, 0, -1):
            t = TensorValue(t, BiElement(self.graph, self.seq.vertex_at(k), -self._coeff(k)))
        return t

    def _coeff(self, k):
        return self.coeffs[k - 1] if k <= len(self.coeffs) else 0

    @classmethod
    def _from_tensor(cls, seq, t):
        ns = []
        while isinstance(t, TensorValue):
            ns.append(-t.right.n)
            t = t.left
        ns.append(-t.n)
        return cls(seq, ns)

    # -- crystal interface -------------------------------------------------

    def wt(self):
        w = {}
        for k, a in enumerate(self.coeffs, start=1):
            if a:
                i = self.seq.vertex_at(k)
                w[i] = w.get(i, 0) - a
        return w

    def eps(self, i):
        return self._realize().eps(i)

    def phi(self, i):
        return self._realize().phi(i)

    def e(self, i):
        if self.eps(i) == 0:
            return None
        return StringElement._from_tensor(self.seq, self._realize().e(i))

    def f(self, i):
        return StringElement._from_tensor(self.seq, self._realize().f(i))

    def is_highest(self):
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, StringElement)
            and self.seq == other.seq
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(("string", self.seq.base, self.coeffs))

    def __repr__(self):
        return f"String{self.coeffs}"


def highest(seq):
    return StringElement(seq, ())


def string_wt(b):
    return b.wt()


def string_eps(b, i):
    return b.eps(i)


def string_phi(b, i):
    return b.phi(i)


def string_e(b, i):
    return b.e(i)


def string_f(b, i):
    return b.f(i)


# -- operator words ---------------------------------------------------------


def parse_word(text):
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def format_word(tokens):
    return " ".join(str(t) for t in tokens)


def element_of_word(seq, tokens):
    """Apply the f-word (rightmost letter first) to the highest element."""
    b = highest(seq)
    for t in reversed(tuple(tokens)):
        b = b.f(t)
    return b


def word_of(b):
    """A word with element_of_word(seq, word) == b, greedily lowest index."""
    letters = []
    cur = b
    while not cur.is_highest():
        for i in cur.graph.vertices:
            if cur.eps(i) > 0:
                letters.append(i)
                cur = cur.e(i)
                break
        else:
            raise RuntimeError("non-highest element with all eps zero")
    return tuple(letters)


# -- the embedding into B(infinity) (x) B_i and the star operators ----------


def psi_embed(b, i):
    """Image of b under the i-th Kashiwara embedding.

    Returns a TensorValue whose left factor is a StringElement and whose
    right factor is an element b_i(-n); it is computed by replaying an
    f-word of b on highest (x) b_i(0), which is where the embedding sends
    the highest-weight element.
    """
    t = TensorValue(highest(b.seq), BiElement(b.graph, i, 0))
    for letter in reversed(word_of(b)):
        t = t.f(letter)
        if t is None:
            raise RuntimeError("embedding image vanished under f")
    return t


def star_eps(b, i):
    return -psi_embed(b, i).right.n


def _preimage(seq, target):
    """Invert a Kashiwara embedding on its image by unfolding to the top."""
    letters = []
    t = target
    while True:
        for j in t.graph.vertices:
            if t.eps(j) > 0:
                letters.append(j)
                t = t.e(j)
                break
        else:
            break
    if not (isinstance(t.left, StringElement) and t.left.is_highest() and t.right.n == 0):
        raise ValueError("element is not in the image of the embedding")
    b = highest(seq)
    for letter in reversed(letters):
        b = b.f(letter)
    return b


def star_f(b, i):
    """f_i^* via the embedding: shift the B_i tail one step down."""
    t = psi_embed(b, i)
    return _preimage(b.seq, TensorValue(t.left, t.right.f(i)))


def star_e(b, i):
    """e_i^* via the embedding; None when eps_i^* is already zero."""
    t = psi_embed(b, i)
    if t.right.n == 0:
        return None
    return _preimage(b.seq, TensorValue(t.left, t.right.e(i)))


def star_eps_all(b):
    return {i: star_eps(b, i) for i in b.graph.vertices}


def saito_reflection(b, i):
    """S_i(b) = f_i^{phi_i^*(b)} (e_i^*)^max (b), defined when eps_i(b) = 0.

    The weight transforms by the simple reflection s_i.
    """
    if b.eps(i) != 0:
        raise ValueError("saito_reflection requires eps_i(b) = 0")
    phi_star = star_eps(b, i) + crystal.pairing(b.graph, i, b.wt())
    cur = b
    while star_eps(cur, i) > 0:
        cur = star_e(cur, i)
    for _ in range(phi_star):
        cur = cur.f(i)
    return cur
