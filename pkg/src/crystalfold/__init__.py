"""Folding affine crystal graphs under diagram automorphisms.

Builds Kirillov-Reshetikhin crystals for the twisted-symmetric cases, assembles
their omega-twisted tensor products, extracts the fixed-point subcrystal with
its induced folded-type structure, and machine-verifies every claimed property
(crystal axioms, simplicity, perfectness, branching rules) instead of trusting
the construction.
"""

__version__ = "0.1.0"
