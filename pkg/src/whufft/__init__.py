"""Operation-counted Walsh-Hadamard and FFT kernels.

Every transform runs against an instrumented arithmetic layer, so the exact
number of real additions, multiplications, halvings and power-of-two
scalings can be read off any call::

    >>> import numpy as np
    >>> from whufft import with_tally, wht_h8
    >>> y, tally = with_tally(wht_h8, np.arange(8.0))
    >>> tally.total()
    30
"""

from .counting import (
    ComplexPair,
    ConstKind,
    CountedScalar,
    OpClass,
    OpTally,
    charge,
    classify_constant,
    counted_array,
    tally_scope,
    values_of,
    with_tally,
)
from .fft import (
    ScaledVariant,
    conj_combine,
    conj_combine_outputs,
    dft_naive,
    fft_sr,
    msr,
    s_scale,
    scale_divisors,
    t_twiddle,
    whufft,
    whufft_tw,
)
from .hprime import (
    PartitionSpec,
    apply_hprime,
    butterfly_permutation,
    f_count,
    hprime_matrix,
    lemma_checks,
    partition,
)
from .wht import wht_folklore, wht_h4, wht_h8, wht_naive

__version__ = "0.1.0"

__all__ = [
    "ComplexPair", "ConstKind", "CountedScalar", "OpClass", "OpTally", "charge",
    "classify_constant", "counted_array", "tally_scope", "values_of", "with_tally",
    "ScaledVariant", "conj_combine", "conj_combine_outputs", "dft_naive", "fft_sr",
    "msr", "s_scale", "scale_divisors", "t_twiddle", "whufft", "whufft_tw",
    "PartitionSpec", "apply_hprime", "butterfly_permutation", "f_count",
    "hprime_matrix", "lemma_checks", "partition",
    "wht_folklore", "wht_h4", "wht_h8", "wht_naive",
]
