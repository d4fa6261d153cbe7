"""hilbertkit: finite-dimensional Hilbert-space operator toolkit.

Kronecker/vec/dyad calculus, Schatten and p-summing norms, Schmidt
decompositions, density operators, Gleason reconstruction and the explicit
three-qubit teleportation circuit, plus a JSON command-line front end.
"""

__version__ = "0.1.0"
