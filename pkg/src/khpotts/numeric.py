"""Complex-number helpers shared by the numeric modules."""
import math

DEFAULT_REL_TOL = 1e-9


def close(a: complex, b: complex, rel_tol: float = DEFAULT_REL_TOL) -> bool:
    """|a - b| <= rel_tol * max(|a|, |b|, 1)."""
    return abs(a - b) <= rel_tol * max(abs(a), abs(b), 1.0)


def fsum_complex(values) -> complex:
    """Compensated sum of complex numbers, real and imaginary parts separately."""
    values = [complex(z) for z in values]
    return complex(math.fsum(z.real for z in values), math.fsum(z.imag for z in values))


def complex_to_json(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(data) -> complex:
    if isinstance(data, (int, float, complex)):
        return complex(data)
    re, im = data
    return complex(float(re), float(im))
