"""Two finite amalgamations that are Prufer but not Gaussian.

Run with ``python demos/prufer_not_gaussian.py``.
"""

from amalgam.ideals import element_times_ideal
from amalgam.predicates import gaussian_witness, is_gaussian, is_prufer, is_total_quotient_ring
from amalgam.verifier import Builder, to_text, verify

b = Builder()

# F2[X]/(X^8) -> F2[X]/(X^4), J = (X^2); ring elements are encoded by base-2 digits
inst = b.instance(("amalgam", ("canon", ("polyx", 2, 8), (16,)), (4,)))
A, S, J = inst.A, inst.S, inst.J
print(inst.label, "|A| =", A.size)
print("  total quotient ring:", is_total_quotient_ring(A))
print("  Prufer:", is_prufer(A))
print("  Gaussian:", is_gaussian(A))
m, w = gaussian_witness(A)
print("  witness:", w.describe())
X = S.generator
print("  |XJ| =", element_times_ideal(X, J).size, " |X^2 J| =",
      element_times_ideal(S.mul(X, X), J).size)
print(to_text(verify("T-gauss-fwd", inst)))

inst = b.instance(("amalgam", ("canon", ("zmod", 48), (24,)), (6,)))
print()
print(inst.label, "|A| =", inst.A.size)
print("  Prufer:", is_prufer(inst.A), " Gaussian:", is_gaussian(inst.A))
print(to_text(verify("C-gauss-loc", inst)))
