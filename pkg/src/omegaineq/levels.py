"""Levels of the Straubing-Therien hierarchy: 0, 1/2, 1, 3/2, ..."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class Level:
    """A level stored as twice its value, so half levels stay integral."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or self.twice < 0:
            raise ValueError(f"invalid level: {self.twice!r}/2")

    @classmethod
    def parse(cls, text) -> "Level":
        """Accept "3/2", "1.5", "1", a Fraction, an int or a Level."""
        if isinstance(text, Level):
            return text
        if isinstance(text, int):
            return cls(2 * text)
        try:
            value = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse level {text!r}") from None
        doubled = value * 2
        if doubled.denominator != 1 or doubled < 0:
            raise ValueError(f"level must be a non-negative multiple of 1/2, got {text!r}")
        return cls(int(doubled))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_half(self) -> bool:
        return self.twice % 2 == 1

    def below(self) -> "Level":
        """The level one half step down."""
        if self.twice == 0:
            raise ValueError("level 0 has no predecessor")
        return Level(self.twice - 1)

    def above(self) -> "Level":
        return Level(self.twice + 1)

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"Level({self})"


ZERO = Level(0)
HALF = Level(1)
ONE = Level(2)
THREE_HALVES = Level(3)
TWO = Level(4)
FIVE_HALVES = Level(5)
