"""Symbolic-numeric toolkit for the Kolmogorov equation ``u_t + x u_y = u_xx``.

Submodules: ``sympoly`` (exact Laurent polynomials and jet spaces), ``liealg``
(vector fields, brackets, determining equations, subalgebras), ``jetcalc``
(second-order forward jets and residual oracles), ``specfun`` (special
functions), ``group`` (the point-symmetry group), ``catalog`` (exact solution
families), ``reduce`` (Lie reductions), ``heatisq`` (heat equation with an
inverse-square potential), ``kramers`` (equivalent Kramers equations) and
``cli``.
"""

__version__ = "0.1.0"
