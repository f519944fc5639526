"""Tour of the extremal operators on small symmetric matrices.

Walks through the eigenvalue split the operators are built on, the
plus/minus duality, monotonicity in the matrix argument, and the
reconstruction of a full boundary Hessian from scalar boundary data.
"""

import numpy as np

from pucci_lab import (PucciParams, SymMatrix, Variant, boundary_hessian,
                       eigen_sym, f_operator, pucci)

plus = PucciParams(a=0.5, A=2.0)
minus = PucciParams(a=0.5, A=2.0, variant=Variant.MINUS)

x = SymMatrix.from_full(np.array([[1.0, 0.8, 0.0],
                                  [0.8, -2.0, 0.3],
                                  [0.0, 0.3, 0.5]]))
dec = eigen_sym(x)
print("eigenvalues of the probe matrix:", np.round(dec.eigenvalues, 6))
print("M+ weights the positive ones by A and the negative ones by a:")
lam = dec.eigenvalues
print("  by hand :", 2.0 * lam[lam > 0].sum() + 0.5 * lam[lam < 0].sum())
print("  pucci   :", pucci(plus, x))
print("  minus   :", pucci(minus, x), "(roles of a and A swapped)")

print("\nduality: M+(X) = -M-(-X) for every X")
neg = SymMatrix.from_full(-x.full())
print("  M+(X)   =", pucci(plus, x))
print("  -M-(-X) =", -pucci(minus, neg))

print("\nmonotonicity: adding a positive semidefinite matrix never lowers M+")
rng = np.random.default_rng(7)
for _ in range(3):
    c = rng.standard_normal((3, 3))
    bump = SymMatrix.from_full(x.full() + c @ c.T)
    print(f"  {pucci(plus, x):+.6f} -> {pucci(plus, bump):+.6f}")

print("\ngradient weight: |p|^alpha scales the whole operator")
weighted = PucciParams(0.5, 2.0, alpha=1.0)
for p in ([1.0, 0.0, 0.0], [2.0, 2.0, 1.0]):
    print(f"  |p|={np.linalg.norm(p):.1f}: F = {f_operator(weighted, p, x):+.6f}")

print("\nboundary Hessian from scalar data (unit disk, unit source):")
print("the tangential part is the Neumann datum times the curvature and")
print("the normal part balances the equation")
for a, A in ((1.0, 1.0), (1.0, 1.5)):
    params = PucciParams(a, A)
    c = -0.5 / a
    hess = boundary_hessian(params, c, 1.0, SymMatrix(1, np.array([1.0])))
    full = hess.full()
    residual = pucci(params, hess) + 1.0
    print(f"  (a,A)=({a},{A}):  u_TT={full[0, 0]:+.4f}  u_NN={full[1, 1]:+.4f}"
          f"  equation residual {residual:+.1e}")
