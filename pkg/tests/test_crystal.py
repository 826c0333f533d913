"""Abstract crystal layer: elementary crystals, tensor rule, axiom checker."""

import pytest

from binfty import crystal, quiver
from binfty.crystal import MINUS_INF, BiElement, TensorValue


G2 = quiver.type_a(2)


def collect(roots, indices, depth):
    """All elements reachable from roots by e/f words of the given length."""
    seen = set(roots)
    frontier = list(roots)
    for _ in range(depth):
        nxt = []
        for b in frontier:
            for i in indices:
                for move in (b.e(i), b.f(i)):
                    if move is not None and move not in seen:
                        seen.add(move)
                        nxt.append(move)
        frontier = nxt
    return seen


def test_elementary_crystal_values():
    b = BiElement(G2, 1, -3)
    assert b.wt() == {1: -3}
    assert b.phi(1) == -3 and b.eps(1) == 3
    assert b.phi(2) == MINUS_INF and b.eps(2) == MINUS_INF
    assert b.e(1) == BiElement(G2, 1, -2)
    assert b.f(1) == BiElement(G2, 1, -4)
    # e_i never vanishes on B_i, f_j vanishes off the home index
    assert b.e(1) is not None and b.e(2) is None and b.f(2) is None


def test_tensor_eps_hand_oracle():
    # eps_1(b_1(-2) x b_1(0)) = max(2, 0 - <h_1, -2 a_1>) = max(2, 4) = 4
    t = TensorValue(BiElement(G2, 1, -2), BiElement(G2, 1, 0))
    assert t.eps(1) == 4
    assert t.phi(1) == max(-2 + 0, 0) == 0
    assert t.wt() == {1: -2}


def test_tensor_action_side_choice():
    # f acts on the left iff phi(left) > eps(right); ties go right
    t = TensorValue(BiElement(G2, 1, 0), BiElement(G2, 1, 0))
    ft = t.f(1)
    assert ft.left == BiElement(G2, 1, 0) and ft.right == BiElement(G2, 1, -1)
    # now phi(left)=0 > eps(right)=-1 is false ... eps(b_1(-1)) = 1 > 0, still right?
    # phi(left) = 0, eps(right) = 1: 0 > 1 false -> right again
    fft = ft.f(1)
    assert fft.right == BiElement(G2, 1, -2)
    # e acts on the left iff phi(left) >= eps(right)
    et = fft.e(1)
    assert et.right == BiElement(G2, 1, -1)


def test_axioms_hold_on_tensor_sample():
    roots = [TensorValue(BiElement(G2, 1, 0), BiElement(G2, 2, 0))]
    sample = collect(roots, (1, 2), 4)
    assert len(sample) > 20
    assert crystal.check_axioms(sample, G2) == []


def test_axioms_catch_corruption():
    class Broken(BiElement):
        def phi(self, j):  # C1 violated at the home index
            good = super().phi(j)
            return good + 1 if j == self.i else good

    bad = [Broken(G2, 1, -1)]
    violations = crystal.check_axioms(bad, G2)
    assert violations  # non-empty report
    assert any("C1" in v for v in violations)


def test_axiom_c3_catches_broken_inverse():
    class BadF(BiElement):
        def f(self, j):
            if j == self.i:
                return BiElement(self.graph, self.i, self.n - 2)  # skips a step
            return None

    violations = crystal.check_axioms([BadF(G2, 1, 0)], G2)
    assert any("C3" in v for v in violations)


def test_strict_morphism_checker():
    # identity is a strict embedding; a shift is not
    sample = collect([BiElement(G2, 1, 0)], (1, 2), 3)
    assert crystal.is_strict_morphism(lambda b: b, sample, G2)
    assert crystal.is_embedding(lambda b: b, sample, G2)

    def shift(b):
        return BiElement(b.graph, b.i, b.n - 1)

    assert not crystal.is_strict_morphism(shift, sample, G2)


def test_weight_helpers():
    w = crystal.wt_add({1: 1}, {1: -1, 2: 3})
    assert crystal.wt_eq(w, {2: 3})
    assert crystal.pairing(G2, 1, crystal.alpha(2)) == -1
    assert crystal.pairing(G2, 1, crystal.alpha(1)) == 2
    assert crystal.wt_eq(crystal.wt_scale(2, {1: 1}), {1: 2})
