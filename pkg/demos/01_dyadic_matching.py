"""Closest dyadic pmf to a target, with and without the merge shortcut.

A dyadic pmf (entries are powers of two, or zero) is exactly what a full
prefix-free code induces on its leaves when fed fair bits. ghc finds the
KL-closest one with a Huffman-style merge; brute force checks it on
small alphabets.
"""
import numpy as np

from dymatch import Pmf, brute_force_dyadic, ghc, kl_divergence


def show(label, target):
    t = Pmf(np.array(target, float))
    d = ghc(t.probs)
    kl = kl_divergence(Pmf(d.probs), t)
    print(f"{label:24s} target {np.round(t.probs, 4)}")
    print(f"{'':24s} lengths {d.lengths}  probs {d.probs}  "
          f"kl {kl:.6f} bits")
    ref = brute_force_dyadic(t.probs)
    assert d.lengths == ref.lengths or np.isclose(
        kl, kl_divergence(Pmf(ref.probs), t))
    print(f"{'':24s} exhaustive search agrees")
    print()


show("uniform over 3", [1 / 3, 1 / 3, 1 / 3])
show("already dyadic", [0.5, 0.25, 0.25])
show("mildly skewed", [0.4, 0.3, 0.2, 0.1])

# A sufficiently rare symbol is cheaper to drop than to give its own
# codeword: probability zero, length None.
show("rare symbol dropped", [0.79, 0.2, 0.01])
