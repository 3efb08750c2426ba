"""Exception types shared across the package.

Plain ValueError is used for precondition violations (bad arguments,
modulus mismatches, composite moduli where a prime is required).  The two
classes below mark conditions the command-line tool maps to dedicated
exit codes.
"""


class ScaleCapError(RuntimeError):
    """An enumeration or size cap was exceeded; the input is too large for
    the exact desk-scale algorithms.  CLI exit code 4."""


class MathAssertionError(RuntimeError):
    """A relation that is a theorem failed numerically.  This always
    indicates an implementation bug, never bad input.  CLI exit code 3."""
