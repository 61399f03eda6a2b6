"""Signatures of planar crystallographic groups, with exact rational arithmetic.

A signature ``(h; sign; [m_1, ..., m_r]; {(n_11, ...), ..., (n_k1, ...)})``
records the quotient-orbifold data of a cocompact group of hyperbolic
isometries: underlying genus ``h``, orientability sign, proper (cone) periods
``m_i``, and one tuple of link periods per boundary component.  All derived
quantities (area, index, dimension) are computed as exact ``Fraction`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputFormatError


class _Infinity:
    """Singleton marker for an infinite (parabolic) period."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INF = _Infinity()

SIGN_PLUS = "+"
SIGN_MINUS = "-"


def is_period(value) -> bool:
    """True for a legal period entry: an integer >= 2 or the marker ``INF``."""
    if value is INF:
        return True
    return isinstance(value, int) and not isinstance(value, bool) and value >= 2


def _period_key(value):
    return (1, 0) if value is INF else (0, value)


def _period_text(value) -> str:
    return "inf" if value is INF else str(value)


@dataclass(frozen=True)
class Signature:
    """Immutable signature; proper periods are kept sorted ascending.

    Period cycles keep the order they were given in, since reflections in a
    cycle are only identified up to cyclic rotation and reversal and callers
    track that themselves where it matters.
    """

    genus: int
    sign: str
    proper_periods: tuple = ()
    period_cycles: tuple = ()

    def __post_init__(self):
        if not isinstance(self.genus, int) or isinstance(self.genus, bool) or self.genus < 0:
            raise ValueError(f"genus must be a non-negative integer, got {self.genus!r}")
        if self.sign not in (SIGN_PLUS, SIGN_MINUS):
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")
        periods = tuple(sorted(self.proper_periods, key=_period_key))
        for m in periods:
            if not is_period(m):
                raise ValueError(f"proper period {m!r} is not an integer >= 2 or inf")
        cycles = tuple(tuple(cycle) for cycle in self.period_cycles)
        for cycle in cycles:
            for n in cycle:
                if n is INF or not is_period(n):
                    raise ValueError(f"link period {n!r} is not an integer >= 2")
        object.__setattr__(self, "proper_periods", periods)
        object.__setattr__(self, "period_cycles", cycles)

    @property
    def epsilon(self) -> int:
        """2 for an orientable quotient, 1 otherwise."""
        return 2 if self.sign == SIGN_PLUS else 1

    @property
    def num_cycles(self) -> int:
        return len(self.period_cycles)

    @property
    def is_fuchsian(self) -> bool:
        """True when the signature has no reflection data (sign +, no cycles)."""
        return self.sign == SIGN_PLUS and not self.period_cycles

    @property
    def has_infinite_period(self) -> bool:
        return any(m is INF for m in self.proper_periods)

    def render(self) -> str:
        """Canonical text form, e.g. ``(0;+;[2,2,2,4];{-})``."""
        if self.proper_periods:
            periods = "[" + ",".join(_period_text(m) for m in self.proper_periods) + "]"
        else:
            periods = "[-]"
        if self.period_cycles:
            cycles = "{" + ",".join(
                "(" + ",".join(str(n) for n in cycle) + ")" for cycle in self.period_cycles
            ) + "}"
        else:
            cycles = "{-}"
        return f"({self.genus};{self.sign};{periods};{cycles})"

    def __str__(self) -> str:
        return self.render()


class SignatureSyntaxError(InputFormatError):
    """Raised on malformed signature text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Cursor:
    __slots__ = ("text", "pos")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise SignatureSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise SignatureSyntaxError("expected an integer", start)
        return int(self.text[start:self.pos])

    def period(self):
        self.skip_ws()
        if self.text.startswith("inf", self.pos):
            self.pos += 3
            return INF
        start = self.pos
        value = self.integer()
        if value < 2:
            raise SignatureSyntaxError(f"period {value} is less than 2", start)
        return value


def parse_signature(text: str) -> Signature:
    """Parse ``(h;sign;[m1,...];{(n11,...),...})``; ``[-]``/``{-}`` mean empty."""
    cur = _Cursor(text)
    cur.expect("(")
    genus = cur.integer()
    cur.expect(";")
    cur.skip_ws()
    if cur.peek() not in (SIGN_PLUS, SIGN_MINUS):
        raise SignatureSyntaxError("expected '+' or '-'", cur.pos)
    sign = cur.text[cur.pos]
    cur.pos += 1
    cur.expect(";")
    cur.expect("[")
    periods = []
    if cur.peek() == "-":
        cur.pos += 1
    else:
        periods.append(cur.period())
        while cur.peek() == ",":
            cur.pos += 1
            periods.append(cur.period())
    cur.expect("]")
    cur.expect(";")
    cur.expect("{")
    cycles = []
    if cur.peek() == "-":
        cur.pos += 1
    else:
        while True:
            cur.expect("(")
            cycle = []
            if cur.peek() != ")":
                cycle.append(cur.period())
                while cur.peek() == ",":
                    cur.pos += 1
                    cycle.append(cur.period())
            cur.expect(")")
            cycles.append(tuple(cycle))
            if cur.peek() != ",":
                break
            cur.pos += 1
    cur.expect("}")
    cur.expect(")")
    cur.skip_ws()
    if cur.pos != len(cur.text):
        raise SignatureSyntaxError("trailing characters", cur.pos)
    return Signature(genus, sign, tuple(periods), tuple(cycles))


def normalized_area(sig: Signature) -> Fraction:
    """Hyperbolic area of a fundamental region divided by 2*pi, exactly.

        area = eps*h - 2 + k + sum(1 - 1/m_i) + (1/2) * sum(1 - 1/n_ij)

    Infinite periods are rejected; callers doing parabolic bookkeeping use
    their own Euler-characteristic computation.
    """
    if sig.has_infinite_period:
        raise ValueError("normalized_area is undefined for signatures with an inf period")
    total = Fraction(sig.epsilon * sig.genus - 2 + sig.num_cycles)
    for m in sig.proper_periods:
        total += 1 - Fraction(1, m)
    for cycle in sig.period_cycles:
        for n in cycle:
            total += Fraction(1, 2) * (1 - Fraction(1, n))
    return total


def rh_index(sub: Signature, sup: Signature) -> Fraction:
    """Ratio of normalized areas; the index of a finite-index containment."""
    area_sub = normalized_area(sub)
    area_sup = normalized_area(sup)
    if area_sub <= 0 or area_sup <= 0:
        raise ValueError("rh_index needs signatures of positive area")
    return area_sub / area_sup


def dim_teichmuller(sig: Signature) -> int:
    """Real dimension of the deformation space of groups with this signature."""
    if sig.has_infinite_period:
        raise ValueError("dim_teichmuller is undefined for signatures with an inf period")
    r = len(sig.proper_periods)
    links = sum(len(cycle) for cycle in sig.period_cycles)
    return 3 * (sig.epsilon * sig.genus - 1 + sig.num_cycles) - 3 + (2 * r + links)


def surface_signature(g: int) -> Signature:
    """Signature of a genus-g surface group: ``(g;+;[-];{-})``."""
    return Signature(g, SIGN_PLUS)


def quotient_signature(g: int) -> Signature:
    """The quadrilateral quotient signature ``(0;+;[2,2,2,2g];{-})``."""
    return Signature(0, SIGN_PLUS, (2, 2, 2, 2 * g))


def chain_signature(g: int) -> Signature:
    """The reflection-chain signature ``(0;+;[-];{(2,2,2,2g)})``."""
    return Signature(0, SIGN_PLUS, (), ((2, 2, 2, 2 * g),))


def mixed_signature(g: int) -> Signature:
    """The one-cone-point reflection signature ``(0;+;[2];{(2,2g)})``."""
    return Signature(0, SIGN_PLUS, (2,), ((2, 2 * g),))


def wiman_quotient_signature(g: int) -> Signature:
    """Extended quotient signature of the order-8g mirror-maximal surface."""
    if g == 2:
        return Signature(0, SIGN_PLUS, (), ((2, 3, 8),))
    return Signature(0, SIGN_PLUS, (), ((2, 4, 4 * g),))


# ---------------------------------------------------------------------------
# Enumeration of genus-0 quotient signatures compatible with 4g automorphisms.

TAG_FAMILY1 = "family-1"
TAG_FAMILY2 = "family-2"
TAG_FAMILY3 = "family-3"
TAG_FAMILY4 = "family-4"
TAG_QUADRUPLE = "quadruple-exceptional"
TAG_SPORADIC = "sporadic"


@dataclass(frozen=True)
class TaggedSignature:
    signature: Signature
    tag: str

    @property
    def periods(self) -> tuple:
        return self.signature.proper_periods


def divisors(n: int) -> list:
    """Sorted list of positive divisors of n."""
    if n <= 0:
        raise ValueError("n must be positive")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _classify_periods(g: int, periods: tuple) -> str:
    if len(periods) == 3:
        if periods == (2, 4 * g, 4 * g):
            return TAG_FAMILY1
        if periods == tuple(sorted((3, 6, 2 * g))):
            return TAG_FAMILY2
        if periods == tuple(sorted((4, 4, 2 * g))):
            return TAG_FAMILY3
        return TAG_SPORADIC
    if periods == (2, 2, 2, 2 * g):
        return TAG_FAMILY4
    return TAG_QUADRUPLE


def enumerate_4g_signatures(g: int) -> list:
    """All genus-0 signatures a group of order 4g acting on genus g can have.

    A group of order N = 4g acting on a genus-g surface has a genus-0 quotient
    with cone periods dividing N and total area (2g-2)/N; that pins the period
    sums exactly.  Each term 1 - 1/m lies in [1/2, 1), and the required total
    is 5/2 - 1/(2g), strictly between 2 and 5/2, so only r = 3 or r = 4 cone
    points are possible and the search below is exhaustive.  Positive genus
    quotients are impossible for the same reason (the total would drop by at
    least 2).
    """
    if g < 2:
        raise ValueError("g must be at least 2")
    target = Fraction(5, 2) - Fraction(1, 2 * g)
    usable = [d for d in divisors(4 * g) if d >= 2]
    found = []

    def extend(start: int, chosen: list, total: Fraction):
        if total == target:
            if len(chosen) >= 3:
                found.append(tuple(chosen))
            return
        if len(chosen) == 4:
            return
        for pos in range(start, len(usable)):
            m = usable[pos]
            term = 1 - Fraction(1, m)
            if total + term > target:
                break  # terms only grow from here
            chosen.append(m)
            extend(pos, chosen, total + term)
            chosen.pop()

    extend(0, [], Fraction(0))
    found.sort(key=lambda periods: (len(periods), periods))
    return [
        TaggedSignature(Signature(0, SIGN_PLUS, periods), _classify_periods(g, periods))
        for periods in found
    ]


@lru_cache(maxsize=8)
def _sporadic_genera_cached(limit: int) -> tuple:
    hits = []
    for g in range(2, limit + 1):
        if any(ts.tag == TAG_SPORADIC for ts in enumerate_4g_signatures(g)):
            hits.append(g)
    return tuple(hits)


def sporadic_genera(limit: int) -> list:
    """Genera up to ``limit`` admitting a sporadic (non-family) triangle signature.

    These are arithmetic candidates only: a genus may appear here even when no
    group of order 4g realizes the signature, so callers must cross-check
    against an action search before drawing conclusions.
    """
    if limit < 2:
        return []
    return list(_sporadic_genera_cached(limit))


# ---------------------------------------------------------------------------
# Words in the canonical generators of a signature presentation.


def canonical_generator_names(sig: Signature) -> tuple:
    """Generator names for the canonical presentation of a group with ``sig``.

    Cone generators ``x1..xr``, one connecting generator ``e_i`` per cycle,
    reflections ``c0..cs`` (single cycle) or ``c{i}_{j}`` (several cycles),
    then handle generators ``a_i, b_i`` (sign +) or ``d_i`` (sign -).
    """
    names = [f"x{i + 1}" for i in range(len(sig.proper_periods))]
    names.extend(f"e{i + 1}" for i in range(sig.num_cycles))
    if sig.num_cycles == 1:
        names.extend(f"c{j}" for j in range(len(sig.period_cycles[0]) + 1))
    else:
        for i, cycle in enumerate(sig.period_cycles):
            names.extend(f"c{i + 1}_{j}" for j in range(len(cycle) + 1))
    if sig.sign == SIGN_PLUS:
        for i in range(sig.genus):
            names.append(f"a{i + 1}")
            names.append(f"b{i + 1}")
    else:
        names.extend(f"d{i + 1}" for i in range(sig.genus))
    return tuple(names)


@dataclass(frozen=True)
class Word:
    """A word in named generators: a sequence of (symbol, exponent) pairs."""

    letters: tuple

    def __post_init__(self):
        cleaned = []
        for letter in self.letters:
            symbol, exponent = letter
            if not isinstance(symbol, str) or not symbol:
                raise ValueError(f"bad generator symbol {symbol!r}")
            if not isinstance(exponent, int) or exponent == 0:
                raise ValueError(f"exponent for {symbol} must be a non-zero integer")
            cleaned.append((symbol, exponent))
        object.__setattr__(self, "letters", tuple(cleaned))

    @classmethod
    def of(cls, *parts) -> "Word":
        """Build a word from symbols and optional (symbol, exponent) pairs."""
        letters = []
        for part in parts:
            if isinstance(part, str):
                letters.append((part, 1))
            else:
                letters.append(tuple(part))
        return cls(tuple(letters))

    def symbols(self) -> set:
        return {symbol for symbol, _ in self.letters}

    def evaluate(self, images: dict):
        """Product of the images under a symbol -> group element assignment."""
        result = None
        for symbol, exponent in self.letters:
            if symbol not in images:
                raise KeyError(f"no image assigned for generator {symbol!r}")
            factor = images[symbol] ** exponent
            result = factor if result is None else result * factor
        if result is None:
            raise ValueError("cannot evaluate an empty word")
        return result

    def __str__(self) -> str:
        return "*".join(
            symbol if exponent == 1 else f"{symbol}^{exponent}"
            for symbol, exponent in self.letters
        )
