"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is an immutable, hashable sum ``w^e1*c1 + w^e2*c2 + ...``
with strictly decreasing exponents (themselves ordinals) and positive integer
coefficients.  Plain ``int`` values are accepted wherever an ordinal is
expected and are coerced on the fly.

Text grammar (ASCII, ``w`` stands for omega)::

    expr     := term ('+' term)*
    term     := 'w' ('^' exponent)? ('*' nat)? | nat
    exponent := nat | 'w' ('^' exponent)? | '(' expr ')'
"""
from __future__ import annotations

import random
from typing import Iterable, Sequence, Tuple, Union

__all__ = [
    "Ordinal",
    "OrdinalError",
    "OrdinalParseError",
    "OrdinalCapacityError",
    "OrdinalDomainError",
    "ZERO",
    "ONE",
    "OMEGA",
    "ordinal",
    "compare",
    "add",
    "successor",
    "is_limit",
    "split_successor",
    "parse",
    "format_ordinal",
    "omega_power",
    "random_below",
    "random_between",
]

# Nesting depth of exponents; anything deeper is refused rather than
# silently accepted.  Every ordinal below epsilon_0 has finite depth, so this
# is the representation capacity of the type.
MAX_DEPTH = 32

OrdinalLike = Union["Ordinal", int]


class OrdinalError(ValueError):
    pass


class OrdinalParseError(OrdinalError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class OrdinalCapacityError(OrdinalError):
    pass


class OrdinalDomainError(OrdinalError):
    pass


def _cmp_terms(a: tuple, b: tuple) -> int:
    for (ea, ca), (eb, cb) in zip(a, b):
        if ea is not eb:
            c = _cmp_terms(ea._terms, eb._terms)
            if c:
                return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a) == len(b):
        return 0
    return -1 if len(a) < len(b) else 1


class Ordinal:
    """Ordinal number below epsilon_0, stored in Cantor normal form."""

    __slots__ = ("_terms", "_hash", "_depth")

    def __init__(self, terms: Iterable[Tuple[OrdinalLike, int]] = ()):
        built = []
        for exponent, coefficient in terms:
            exponent = ordinal(exponent)
            if not isinstance(coefficient, int) or isinstance(coefficient, bool) or coefficient < 1:
                raise OrdinalError(f"coefficient must be a positive integer, got {coefficient!r}")
            if built and _cmp_terms(built[-1][0]._terms, exponent._terms) <= 0:
                raise OrdinalError("exponents must strictly decrease")
            built.append((exponent, coefficient))
        self._terms = tuple(built)
        self._depth = 1 + max((e._depth for e, _ in built), default=-1)
        if self._depth > MAX_DEPTH:
            raise OrdinalCapacityError(f"exponent nesting deeper than {MAX_DEPTH}")
        self._hash = hash(self._terms)

    @classmethod
    def _raw(cls, terms: tuple) -> "Ordinal":
        # trusted constructor: terms already canonical
        obj = object.__new__(cls)
        obj._terms = terms
        obj._depth = 1 + max((e._depth for e, _ in terms), default=-1)
        if obj._depth > MAX_DEPTH:
            raise OrdinalCapacityError(f"exponent nesting deeper than {MAX_DEPTH}")
        obj._hash = hash(terms)
        return obj

    @property
    def terms(self) -> Tuple[Tuple["Ordinal", int], ...]:
        return self._terms

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    def is_finite(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not self._terms[0][0]._terms)

    def is_limit(self) -> bool:
        return bool(self._terms) and bool(self._terms[-1][0]._terms)

    def is_successor(self) -> bool:
        return bool(self._terms) and not self._terms[-1][0]._terms

    @property
    def finite_part(self) -> int:
        if self._terms and not self._terms[-1][0]._terms:
            return self._terms[-1][1]
        return 0

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self._terms:
            raise OrdinalDomainError("zero has no leading term")
        return self._terms[0][0]

    def __int__(self) -> int:
        if not self.is_finite():
            raise OrdinalDomainError(f"{self} is infinite")
        return self.finite_part

    def __index__(self) -> int:
        return int(self)

    # -- ordering -------------------------------------------------------
    def _cmp(self, other) -> int:
        if self is other:
            return 0
        return _cmp_terms(self._terms, other._terms)

    def __eq__(self, other):
        if isinstance(other, Ordinal):
            return self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self.is_finite() and self.finite_part == other
        return NotImplemented

    def __hash__(self):
        if self.is_finite():
            return hash(self.finite_part)
        return self._hash

    def __lt__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else self._cmp(other) < 0

    def __le__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else self._cmp(other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else self._cmp(other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else self._cmp(other) >= 0

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        lead, lead_c = other._terms[0]
        kept = []
        for e, c in self._terms:
            d = _cmp_terms(e._terms, lead._terms)
            if d > 0:
                kept.append((e, c))
            elif d == 0:
                kept.append((e, c + lead_c))
                return Ordinal._raw(tuple(kept) + other._terms[1:])
            else:
                break
        return Ordinal._raw(tuple(kept) + other._terms)

    def __radd__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + self

    def successor(self) -> "Ordinal":
        return self + 1

    def split_successor(self) -> Tuple["Ordinal", int]:
        """Return ``(limit_part, n)`` with ``self == limit_part + n``."""
        if self.is_finite():
            raise OrdinalDomainError(f"{self} is below w; no infinite limit part")
        n = self.finite_part
        if n:
            return Ordinal._raw(self._terms[:-1]), n
        return self, 0

    # -- text -----------------------------------------------------------
    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"

    def to_json(self) -> list:
        return [[e.to_json(), c] for e, c in self._terms]

    @classmethod
    def from_json(cls, data: Sequence) -> "Ordinal":
        return cls((cls.from_json(e), int(c)) for e, c in data)

    def __reduce__(self):
        return (Ordinal.from_json, (self.to_json(),))


_INT_CACHE: dict = {}


def _from_int(n: int) -> Ordinal:
    cached = _INT_CACHE.get(n)
    if cached is not None:
        return cached
    if n < 0:
        raise OrdinalDomainError(f"negative integer {n} is not an ordinal")
    value = Ordinal._raw(()) if n == 0 else Ordinal._raw(((ZERO, n),))
    if n < 4096:
        _INT_CACHE[n] = value
    return value


def _coerce(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return _from_int(x)
    return None


def ordinal(x: Union[OrdinalLike, str]) -> Ordinal:
    """Coerce an int, text or Ordinal to an Ordinal."""
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, str):
        return parse(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return _from_int(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


ZERO = Ordinal._raw(())
_INT_CACHE[0] = ZERO
ONE = _from_int(1)
OMEGA = Ordinal._raw(((ONE, 1),))


def omega_power(exponent: OrdinalLike, coefficient: int = 1) -> Ordinal:
    """``w^exponent * coefficient``."""
    return Ordinal(((ordinal(exponent), coefficient),))


def compare(a: OrdinalLike, b: OrdinalLike) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return ordinal(a)._cmp(ordinal(b))


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    return ordinal(a) + ordinal(b)


def successor(a: OrdinalLike) -> Ordinal:
    return ordinal(a) + 1


def is_limit(a: OrdinalLike) -> bool:
    return ordinal(a).is_limit()


def split_successor(a: OrdinalLike) -> Tuple[Ordinal, int]:
    return ordinal(a).split_successor()


# -- formatting -------------------------------------------------------------

def _format_exponent(e: Ordinal) -> str:
    if e.is_finite():
        return str(e.finite_part)
    if len(e._terms) == 1 and e._terms[0][1] == 1:
        return format_ordinal(e)
    return f"({format_ordinal(e)})"


def format_ordinal(a: OrdinalLike) -> str:
    a = ordinal(a)
    if not a._terms:
        return "0"
    parts = []
    for e, c in a._terms:
        if not e._terms:
            parts.append(str(c))
            continue
        head = "w" if e == 1 else f"w^{_format_exponent(e)}"
        parts.append(head if c == 1 else f"{head}*{c}")
    return "+".join(parts)


# -- parsing ----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise OrdinalParseError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def expr(self) -> Ordinal:
        total = self.term()
        while self.eat("+"):
            total = total + self.term()
        return total

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return _from_int(self.nat())
        if ch == "w":
            self.pos += 1
            exponent = self.exponent() if self.eat("^") else ONE
            coefficient = self.nat() if self.eat("*") else 1
            if coefficient == 0:
                return ZERO
            return Ordinal._raw(((exponent, coefficient),)) if exponent else _from_int(coefficient)
        self.error("expected 'w' or a natural number")

    def exponent(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return _from_int(self.nat())
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if not self.eat(")"):
                self.error("expected ')'")
            return inner
        if ch == "w":
            self.pos += 1
            exponent = self.exponent() if self.eat("^") else ONE
            return Ordinal._raw(((exponent, 1),))
        self.error("expected an exponent")


def parse(text: str) -> Ordinal:
    """Parse the ``w``-grammar, e.g. ``"w^2*3+w+4"``."""
    p = _Parser(text)
    value = p.expr()
    if p.peek():
        p.error(f"unexpected {p.peek()!r}")
    return value


# -- sampling ---------------------------------------------------------------

def random_below(bound: OrdinalLike, rng: random.Random, max_coefficient: int = 9,
                 max_terms: int = 3) -> Ordinal:
    """A random ordinal strictly below ``bound`` (which must be positive).

    Small CNF shapes only: at most ``max_terms`` terms and coefficients up to
    ``max_coefficient``.  Not uniform in any sense; used for test sampling.
    """
    bound = ordinal(bound)
    if not bound:
        raise OrdinalDomainError("nothing lies below 0")
    if bound.is_finite():
        return _from_int(rng.randrange(bound.finite_part))
    for _ in range(64):
        candidate = _random_shape(bound, rng, max_coefficient, max_terms)
        if candidate < bound:
            return candidate
    return _from_int(rng.randrange(max_coefficient + 1))


def _random_shape(bound: Ordinal, rng: random.Random, max_c: int, max_terms: int) -> Ordinal:
    top, top_c = bound._terms[0]
    if rng.random() < 0.2:
        return _from_int(rng.randrange(max_c + 1))
    if rng.random() < 0.6:
        lead = top
        coefficient = rng.randint(1, top_c)
    else:
        lead = random_below(top, rng, max_c, max_terms) if top else ZERO
        coefficient = rng.randint(1, max_c)
    terms = [(lead, coefficient)]
    while lead and len(terms) < max_terms and rng.random() < 0.6:
        lead = random_below(lead, rng, max_c, max_terms)
        terms.append((lead, rng.randint(1, max_c)))
    return Ordinal(terms)


def random_between(low: OrdinalLike, high: OrdinalLike, rng: random.Random, max_coefficient: int = 9) -> Ordinal:
    """A random ordinal ``x`` with ``low < x < high``; ``high`` must exceed ``low + 1``."""
    low, high = ordinal(low), ordinal(high)
    first = low + 1
    if not first < high:
        raise OrdinalDomainError(f"no ordinal strictly between {low} and {high}")
    pick = rng.random()
    if pick < 0.3:
        candidate = first
    elif pick < 0.55:
        candidate = low + rng.randint(1, max_coefficient)
    else:
        candidate = low + 1 + random_below(high, rng, max_coefficient)
    return candidate if candidate < high else first
