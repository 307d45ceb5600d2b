"""
Exponential sums from rank and determinant
==========================================

The correlation at shift tau is tied to the quadratic form
q(x) = Tr(-x^(p^m+1) + c x^(p^(m+e)+1)) with c = alpha^tau.  Its sum over the
field is pinned down by two numbers: the rank r of the form and the quadratic
character of its determinant.  This script compares that prediction with the
brute-force sum for a handful of shifts.
"""

from corrspec.qform import analyze, exp_sum, gram_matrix, kernel_roots
from corrspec.seqgen import field_for, validate_params

params = validate_params(5, 3, 1)
field = field_for(params)
minus_one = -field.one

for tau in (0, 1, 2, 3, 124):
    c = field.alpha_pow(tau)
    res = analyze(minus_one, c, params)
    brute = exp_sum(minus_one, c, params, "direct")
    print(f"tau={tau:4d} kernel={res.kernel_size:3d} rank={res.rank} sign={res.det_class:+d} "
          f"predicted={res.sum_value}  summed={brute}")

# the radical of the form at tau = 0 is a vector space over GF(5)
roots = kernel_roots(minus_one, field.one, params)
print(len(roots), "radical elements at tau = 0")
print(gram_matrix(minus_one, field.one, params))
