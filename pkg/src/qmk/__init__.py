"""qmk: exact symbolic kernel for quantized coordinate rings of matrices.

The package implements PBW normal forms for the q-commutation relations,
quantum minors and their Laplace expansions, the bialgebra structure, the
four bitableau bases, degree-bounded graded ideal arithmetic, and the
step-algebra stratification used to assemble the complete torus-invariant
prime atlas for matrix sizes n <= 3.
"""

__version__ = "0.1.0"
