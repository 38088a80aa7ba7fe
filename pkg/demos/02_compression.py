"""Low-rank compression of the evaluation tensor.

Compares the two-way SVD (cells 1-4 against 5-9) with a truncated HOSVD
(three groups of three cells) by element count and relative error.
"""

import numpy as np

from tttsvd import build_exact, compress_hosvd, compress_svd, hosvd_factors, reconstruct_hosvd, reconstruct_svd
from tttsvd.compression import svd_factorization
from tttsvd.metrics import compression_ratio, match_ranks, relative_error

exact = build_exact()
svd_f = svd_factorization(exact)
hosvd_f = hosvd_factors(exact)

print("leading singular values, 81 x 243 unfolding:", np.round(svd_f.s[:6], 3))
print("leading mode spectra:", [np.round(s[:3], 3) for s in hosvd_f.spectra])

print(f"\n{'Cr':>6} {'r_svd':>6} {'err_svd':>8} {'r_hosvd':>8} {'err_hosvd':>10}")
for target in (0.049, 0.13, 0.20, 0.31, 0.43, 0.80, 1.0):
    rs, rh = match_ranks(target)
    es = relative_error(exact, reconstruct_svd(compress_svd(exact, rs, svd_f)))
    eh = relative_error(exact, reconstruct_hosvd(compress_hosvd(exact, rh, hosvd_f)))
    print(f"{target:6.3f} {rs:6d} {es:8.4f} {rh:8d} {eh:10.4f}")

print(f"\nsvd(18) keeps {compression_ratio('svd', 18):.3f} of the elements")
