"""Diagonal complex linear recurrences and their memorization capacity.

The package provides:

* ``numerics``       dense complex linear algebra (one-sided Jacobi SVD,
                     condition numbers, truncated-SVD pseudoinverse, least squares)
* ``recurrence``     the diagonal linear RNN, sequential and parallel scans,
                     eigenvalue initializers, time channel, block-diagonal lift
* ``reconstruction`` Vandermonde construction, full and sparse input recovery
                     from hidden states, Haar bases, conditioning sweeps
* ``network``        trainable encoder -> diagonal recurrence -> MLP/linear head
                     with manual backpropagation and Adam
* ``datagen``        controlled-ODE trajectory generation (RK4), smooth and
                     sparse signal samplers, IDX image ingestion
* ``cli``            the ``lrnn`` experiment harness

Hot kernels are numba-jitted by default; set ``LRNN_BACKEND=numpy`` to force
the pure-numpy fallback (see ``lrnn_memory._backend``).
"""

__version__ = "0.1.0"
