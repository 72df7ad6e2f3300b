"""t-product tensor Tikhonov regularization with incremental sample updates.

Tensors are numpy arrays of shape (n1, n2, n3); frontal slice k is ``a[:, :, k]``.
"""

from ._tirls import (
    TirlsError,
    direct_trls,
    gen_example1,
    gen_example2,
    identity,
    irls_update,
    min_norm_augmented_ls,
    read_tensor,
    tgkt_solve,
    tprod,
    tqr,
    transpose,
    tsvd,
    verify,
    write_tensor,
)

__all__ = [
    "TirlsError",
    "direct_trls",
    "gen_example1",
    "gen_example2",
    "identity",
    "irls_update",
    "min_norm_augmented_ls",
    "read_tensor",
    "tgkt_solve",
    "tprod",
    "tqr",
    "transpose",
    "tsvd",
    "verify",
    "write_tensor",
]
