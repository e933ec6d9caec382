"""Exact multivariate Laurent polynomials with integer coefficients.

Values are immutable. Operands with different variable lists are aligned
by extending each with zero exponents, so ``q + rho`` just works.

Half-integer powers of ``Q`` are carried by a formal variable ``S`` and
collapsed with :func:`substitute` in square mode (``S**2 -> Q``).
"""
from __future__ import annotations

import cmath
import math
import re
from typing import Iterable, Mapping

from .errors import MalformedParity, PoleAtZero

Exponents = tuple


class Laurent:
    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, int] | None = None, variables: Iterable[str] = ()):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not match variables {self.variables}")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: int, variables: Iterable[str] = ()) -> "Laurent":
        variables = tuple(variables)
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def var(cls, name: str) -> "Laurent":
        return cls({(1,): 1}, (name,))

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: int = 1) -> "Laurent":
        names = tuple(exps)
        return cls({tuple(exps[v] for v in names): coeff}, names)

    @classmethod
    def _raw(cls, terms: dict, variables: tuple) -> "Laurent":
        # trusted path: terms already clean
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self._terms.items(), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def used_variables(self) -> tuple:
        used = set()
        for exps in self._terms:
            used.update(i for i, e in enumerate(exps) if e)
        return tuple(v for i, v in enumerate(self.variables) if i in used)

    def exponents_of(self, var: str) -> set:
        if var not in self.variables:
            return {0} if self._terms else set()
        i = self.variables.index(var)
        return {exps[i] for exps in self._terms}

    def coefficient(self, **exps: int) -> int:
        """Coefficient of the monomial with the given exponents (others zero)."""
        for name in exps:
            if name not in self.variables and exps[name]:
                return 0
        key = tuple(exps.get(v, 0) for v in self.variables)
        return self._terms.get(key, 0)

    def _key(self):
        return frozenset(
            (tuple(sorted((v, e) for v, e in zip(self.variables, exps) if e)), c)
            for exps, c in self._terms.items()
        )

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    # -- alignment ----------------------------------------------------
    def with_variables(self, variables: Iterable[str]) -> "Laurent":
        """Re-express over ``variables`` (a superset of the used variables)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        for v in self.used_variables():
            if v not in index:
                raise ValueError(f"variable {v!r} missing from {variables}")
        pos = [index.get(v) for v in self.variables]
        terms = {}
        for exps, c in self._terms.items():
            new = [0] * len(variables)
            for p, e in zip(pos, exps):
                if p is not None:
                    new[p] = e
            terms[tuple(new)] = c
        return Laurent._raw(terms, variables)

    @staticmethod
    def _align(a: "Laurent", b: "Laurent"):
        if a.variables == b.variables:
            return a, b, a.variables
        variables = a.variables + tuple(v for v in b.variables if v not in a.variables)
        return a.with_variables(variables), b.with_variables(variables), variables

    @staticmethod
    def _coerce(x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        if isinstance(x, int):
            return Laurent.const(x)
        raise TypeError(f"cannot combine Laurent with {type(x).__name__}")

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b, variables = self._align(self, other)
        terms = dict(a._terms)
        for exps, c in b._terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return Laurent._raw(terms, variables)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw({e: -c for e, c in self._terms.items()}, self.variables)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b, variables = self._align(self, other)
        terms: dict = {}
        for ea, ca in a._terms.items():
            for eb, cb in b._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = terms.get(e, 0) + ca * cb
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Laurent._raw(terms, variables)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit Laurent polynomial")
            (exps, c), = self._terms.items()
            return Laurent._raw({tuple(-e * (-k) for e in exps): c ** (-k)}, self.variables)
        result = Laurent.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- rendering ----------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Laurent({render(self)!r}, variables={self.variables!r})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [[list(e), c] for e, c in self.items()],
            "text": render(self),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Laurent":
        return cls({tuple(e): c for e, c in data["terms"]}, data["variables"])


MultivariateLaurent = Laurent


def render(p: Laurent) -> str:
    if p.is_zero():
        return "0"
    out = []
    for exps, c in p.items():
        factors = []
        for v, e in zip(p.variables, exps):
            if e == 1:
                factors.append(v)
            elif e:
                factors.append(f"{v}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?")
_FACTOR = re.compile(r"\s*\*?\s*([A-Za-z_][A-Za-z_0-9]*)(?:\s*\^\s*(-?\d+))?")


def parse(text: str, variables: Iterable[str] | None = None) -> Laurent:
    """Parse the text produced by :func:`render`.

    ``variables`` fixes the variable order; otherwise order of first appearance.
    """
    order = list(variables) if variables is not None else []
    raw: list = []
    pos = 0
    text = text.strip()
    if text == "0":
        return Laurent({}, order)
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, digits = m.group(1), m.group(2)
        if not first and sign is None:
            raise ValueError(f"expected '+' or '-' at position {pos} in {text!r}")
        pos = m.end()
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        exps: dict = {}
        while True:
            fm = _FACTOR.match(text, pos)
            if not fm:
                break
            name, e = fm.group(1), int(fm.group(2)) if fm.group(2) is not None else 1
            exps[name] = exps.get(name, 0) + e
            if name not in order:
                order.append(name)
            pos = fm.end()
        if not digits and not exps:
            raise ValueError(f"empty term at position {pos} in {text!r}")
        raw.append((exps, coeff))
        while pos < len(text) and text[pos] == " ":
            pos += 1
        first = False
    terms: dict = {}
    for exps, c in raw:
        key = tuple(exps.get(v, 0) for v in order)
        terms[key] = terms.get(key, 0) + c
    return Laurent(terms, order)


def substitute(p: Laurent, var: str, replacement, square: bool = False) -> Laurent:
    """Replace ``var`` (or ``var**2`` when ``square``) by ``replacement``.

    Negative powers of the replacement are only possible when it is a unit
    (a signed monomial). Square mode demands every exponent of ``var`` be even.
    """
    replacement = Laurent._coerce(replacement)
    if var not in p.variables:
        return p
    i = p.variables.index(var)
    rest = p.variables[:i] + p.variables[i + 1:]
    powers: dict = {}
    result = Laurent({}, rest)
    for exps, c in p.items():
        e = exps[i]
        if square:
            if e % 2:
                raise MalformedParity(f"odd exponent {e} of {var} in square substitution")
            e //= 2
        if e not in powers:
            powers[e] = replacement ** e
        base = Laurent._raw({exps[:i] + exps[i + 1:]: c}, rest)
        result = result + base * powers[e]
    return result


def evaluate(p: Laurent, assignment: Mapping[str, complex]) -> complex:
    """Numeric value of ``p``; terms are summed in canonical order."""
    values = []
    for v in p.used_variables():
        if v not in assignment:
            raise KeyError(f"no value assigned to {v!r}")
    for v in p.variables:
        values.append(complex(assignment[v]) if v in assignment else None)
    re_parts, im_parts = [], []
    for exps, c in p.items():
        term = complex(c)
        for x, e in zip(values, exps):
            if not e:
                continue
            if x == 0 and e < 0:
                raise PoleAtZero("zero assigned to a variable with negative exponent")
            term *= x ** e
        re_parts.append(term.real)
        im_parts.append(term.imag)
    value = complex(math.fsum(re_parts), math.fsum(im_parts))
    if not (cmath.isfinite(value)):
        raise OverflowError("non-finite polynomial value")
    return value


def laurent_from_histogram(counts: Mapping[int, int], var: str) -> Laurent:
    """Univariate Laurent polynomial sum(c * var**k)."""
    return Laurent({(k,): c for k, c in counts.items()}, (var,))
