"""The exact rational type used throughout (gmpy2's ``mpq`` when available)."""
try:  # pragma: no cover - depends on the environment
    from gmpy2 import mpq as Q

    QTYPE = type(Q(0))
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

    QTYPE = Q

__all__ = ["Q", "QTYPE"]
