"""Higher-order Beverton-Holt recurrence toolkit.

The extension module exposes one submodule per numeric backend:

- ``bevholt.rational``: exact arithmetic; values cross the boundary as
  :class:`fractions.Fraction` (ints, floats and ``"p/q"`` strings load too).
- ``bevholt.real``: 64-bit floats.
- ``bevholt.cplx``: complex doubles (needed for the zeta3 family with
  nonzero mode p).

Each backend offers the same surface: ``model`` / ``ecological_model``
constructors, ``step``, ``iterate``, the ``closed_form_*`` solutions,
``compare_methods``, the symmetry families with ``symmetry_residual`` and
``canonical_coordinate``, ``linearized_trajectory``, ``equilibria`` /
``classify``, ``detect_period`` and ``periodic_initial_conditions``.
"""

from bevholt._core import (  # noqa: F401
    CompareReport,
    ConfigError,
    DomainError,
    Error,
    FamilyKind,
    MethodComparison,
    PeriodCertificate,
    PeriodReport,
    PreconditionError,
    SingularityError,
    Stability,
    __version__,
    build_lambda,
    cplx,
    rational,
    real,
    sufficient_stability,
)

__all__ = [
    "CompareReport",
    "ConfigError",
    "DomainError",
    "Error",
    "FamilyKind",
    "MethodComparison",
    "PeriodCertificate",
    "PeriodReport",
    "PreconditionError",
    "SingularityError",
    "Stability",
    "__version__",
    "build_lambda",
    "cplx",
    "rational",
    "real",
    "sufficient_stability",
]
