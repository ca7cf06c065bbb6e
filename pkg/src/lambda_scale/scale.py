"""Scales: elements of a free abelian group over named generators.

A scale is stored in canonical form as a sorted tuple of
``(generator, exponent)`` pairs with every exponent nonzero.  The empty
tuple is the neutral element, printed as ``1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

_GEN_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_FACTOR_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\^\s*([+-]?\d+))?\s*\Z")


class BadScaleLiteral(ValueError):
    pass


def _check_generator(name: str) -> str:
    if not isinstance(name, str) or not _GEN_RE.match(name):
        raise ValueError(f"invalid scale generator: {name!r}")
    return name


@dataclass(frozen=True)
class Scale:
    exps: tuple[tuple[str, int], ...] = ()
    _text: str | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        acc: dict[str, int] = {}
        for gen, e in self.exps:
            _check_generator(gen)
            acc[gen] = acc.get(gen, 0) + int(e)
        canon = tuple(sorted((g, e) for g, e in acc.items() if e != 0))
        object.__setattr__(self, "exps", canon)

    @classmethod
    def one(cls) -> Scale:
        return _ONE

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> Scale:
        return cls(((name, exp),))

    @classmethod
    def from_map(cls, exps: Mapping[str, int] | Iterable[tuple[str, int]]) -> Scale:
        items = exps.items() if isinstance(exps, Mapping) else exps
        return cls(tuple(items))

    def as_dict(self) -> dict[str, int]:
        return dict(self.exps)

    @property
    def is_one(self) -> bool:
        return not self.exps

    def __mul__(self, other: Scale) -> Scale:
        if not isinstance(other, Scale):
            return NotImplemented
        if not other.exps:
            return self
        if not self.exps:
            return other
        return Scale(self.exps + other.exps)

    def inverse(self) -> Scale:
        return Scale(tuple((g, -e) for g, e in self.exps))

    def __pow__(self, n: int) -> Scale:
        return Scale(tuple((g, e * n) for g, e in self.exps))

    def __str__(self) -> str:
        if self._text is None:
            if not self.exps:
                text = "1"
            else:
                text = "*".join(g if e == 1 else f"{g}^{e}" for g, e in self.exps)
            object.__setattr__(self, "_text", text)
        return self._text

    def __repr__(self) -> str:
        return f"Scale({str(self)!r})"


_ONE = Scale()


def scale_mul(a: Scale, b: Scale) -> Scale:
    return a * b


def scale_inv(a: Scale) -> Scale:
    return a.inverse()


def scale_is_one(a: Scale) -> bool:
    return a.is_one


def parse_scale(text: str) -> Scale:
    """Parse ``1`` or a ``*``-separated product of ``gen`` / ``gen^k`` factors.

    Factors may come in any order and may repeat or carry zero exponents;
    the result is canonical.
    """
    src = text.strip()
    if src == "1":
        return _ONE
    if not src:
        raise BadScaleLiteral(f"empty scale literal: {text!r}")
    pairs = []
    for part in src.split("*"):
        if part.strip() == "1":
            continue
        m = _FACTOR_RE.match(part)
        if m is None:
            raise BadScaleLiteral(f"bad scale factor {part.strip()!r} in {text!r}")
        pairs.append((m.group(1), int(m.group(2)) if m.group(2) is not None else 1))
    return Scale(tuple(pairs))
