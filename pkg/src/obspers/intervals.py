"""Decorated intervals of the real line.

An interval is stored by its two endpoints, each either infinite or a
rational value tagged open/closed.  Internally intervals are compared
through *cuts*: the decorated positions r- < r < r+ that a closed or open
endpoint occupies.  The interval [p,q) is exactly the set of points t with
cut(p-) < t < cut(q-), and so on; everything about containment, overlap
and canonical ordering reduces to tuple comparisons of cuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Cut = tuple  # (0,) = -infinity, (1, value, side) with side in {-1,0,+1}, (2,) = +infinity

NEG_CUT: Cut = (0,)
POS_CUT: Cut = (2,)


def point_cut(t: Fraction) -> Cut:
    return (1, t, 0)


@dataclass(frozen=True)
class DecoratedInterval:
    """A nonempty interval with open/closed/infinite endpoint decorations."""

    left: Fraction | None  # None encodes -infinity
    left_closed: bool
    right: Fraction | None  # None encodes +infinity
    right_closed: bool

    def __post_init__(self):
        if self.left is None and self.left_closed:
            raise ValueError("interval cannot be closed at -infinity")
        if self.right is None and self.right_closed:
            raise ValueError("interval cannot be closed at +infinity")
        if self.left is not None and self.right is not None:
            if self.left > self.right:
                raise ValueError("interval endpoints out of order")
            if self.left == self.right and not (self.left_closed and self.right_closed):
                raise ValueError("empty interval")

    @property
    def left_cut(self) -> Cut:
        if self.left is None:
            return NEG_CUT
        return (1, self.left, -1 if self.left_closed else 1)

    @property
    def right_cut(self) -> Cut:
        if self.right is None:
            return POS_CUT
        return (1, self.right, 1 if self.right_closed else -1)

    def sort_key(self) -> tuple[Cut, Cut]:
        return (self.left_cut, self.right_cut)

    def is_singleton(self) -> bool:
        return self.left is not None and self.left == self.right

    def contains(self, t: Fraction) -> bool:
        return self.left_cut < point_cut(t) < self.right_cut

    def interior(self) -> DecoratedInterval | None:
        """The open interval with the same endpoints; None for singletons."""
        if self.is_singleton():
            return None
        return DecoratedInterval(self.left, False, self.right, False)

    def __str__(self) -> str:
        lb = "[" if self.left_closed else "("
        rb = "]" if self.right_closed else ")"
        lv = "-inf" if self.left is None else format_exact(self.left)
        rv = "+inf" if self.right is None else format_exact(self.right)
        return f"{lb}{lv}, {rv}{rb}"


def interval(text: str) -> DecoratedInterval:
    """Parse '[1, 2)', '(-inf, +inf)', '[1/3, 1/3]' etc."""
    text = text.strip()
    if not text or text[0] not in "[(" or text[-1] not in ")]":
        raise ValueError(f"malformed interval: {text!r}")
    left_closed = text[0] == "["
    right_closed = text[-1] == "]"
    body = text[1:-1].split(",")
    if len(body) != 2:
        raise ValueError(f"malformed interval: {text!r}")
    lv, rv = body[0].strip(), body[1].strip()
    left = None if lv in ("-inf", "-oo") else parse_exact(lv)
    right = None if rv in ("+inf", "inf", "+oo") else parse_exact(rv)
    return DecoratedInterval(left, left_closed, right, right_closed)


def parse_exact(text: str) -> Fraction:
    """Exact rational from a decimal or p/q string."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def format_exact(x: Fraction) -> str:
    """Render a rational exactly: decimal when the denominator is 2^a 5^b."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    shift = max(twos, fives)
    scaled = x.numerator * 10 ** shift // x.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(shift + 1, "0")
    return f"{sign}{digits[:-shift]}.{digits[-shift:]}"
