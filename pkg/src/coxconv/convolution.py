"""
Convolution sets ``x1 * x2``, the Demazure product, and extremal elements.

``x1 * x2`` is built one generator at a time along a reduced word of ``x2``:
a step by ``s`` sends ``u`` to ``{us}`` when ``us > u`` and to ``{u, us}``
when ``us < u``.  The group product ``x1 x2`` should be the unique
Bruhat-minimal member and the Demazure product ``x1 ⋆ x2`` the unique
maximal one; ``min_of``/``max_of`` check uniqueness instead of assuming it.

>>> from coxconv.coxeter import CoxeterSystem
>>> W = CoxeterSystem.from_type("A", 2)
>>> convolve(W.element("1 2"), W.element("2 1")).words()
['', '1', '1 2 1']
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .bruhat import _leq, bruhat_interval
from .coxeter import Element, ElementSet, WordLike, format_word, is_reflection, parse_word
from .errors import NoUniqueMax, NoUniqueMin, NotReduced, PreconditionFailed, SystemMismatch

__all__ = [
    "convolve_step", "convolve", "convolve_via_word", "demazure",
    "min_of", "max_of", "ConvolutionReport", "exhaustion_report",
    "arrow", "check_lifting", "check_lemma3", "check_cor1",
]


def _same(a: Element, b: Element) -> None:
    if a.system is not b.system and a.system != b.system:
        raise SystemMismatch("elements belong to different Coxeter systems")


def _step_states(W, states: Iterable, s: int) -> set:
    out = set()
    for u in states:
        out.add(W._rmul(u, s))
        if W._rdes(u, s):
            out.add(u)
    return out


def convolve_step(u: Element, s: int) -> ElementSet:
    W = u.system
    W._check_letter(s)
    return ElementSet(W._wrap(x) for x in _step_states(W, (u._state,), s))


def _convolve_states(W, x1_state, letters) -> set:
    states = {x1_state}
    for s in letters:
        states = _step_states(W, states, s)
    return states


def convolve(x1: Element, x2: Element) -> ElementSet:
    """The set ``x1 * x2``, recursing along the normal form of ``x2``."""
    _same(x1, x2)
    W = x1.system
    return ElementSet(W._wrap(x) for x in _convolve_states(W, x1._state, x2.word))


def convolve_via_word(x1: Element, word: WordLike) -> ElementSet:
    """Iterated ``convolve_step`` along an explicit reduced word."""
    W = x1.system
    letters = parse_word(word)
    for a in letters:
        W._check_letter(a)
    if W.normal_form(letters).length != len(letters):
        raise NotReduced(f"{format_word(letters, 'e')} is not reduced")
    return ElementSet(W._wrap(x) for x in _convolve_states(W, x1._state, letters))


def _demazure_state(W, state, letters):
    for s in letters:
        if not W._rdes(state, s):
            state = W._rmul(state, s)
    return state


def demazure(x1: Element, x2: Element) -> Element:
    """0-Hecke product: ``x ⋆ s = xs`` if ``xs > x`` else ``x``."""
    _same(x1, x2)
    W = x1.system
    return W._wrap(_demazure_state(W, x1._state, x2.word))


def _extremum(members: ElementSet, lowest: bool) -> Element:
    if not len(members):
        raise ValueError("empty set has no extremal element")
    items = list(members)
    W = items[0].system
    # a unique minimum is the unique element of least length (dually for max)
    target = items[0].length if lowest else items[-1].length
    candidates = [e for e in items if e.length == target]
    error = NoUniqueMin if lowest else NoUniqueMax
    if len(candidates) > 1:
        raise error(f"{len(candidates)} incomparable extremal candidates of length {target}")
    m = candidates[0]
    for y in items:
        ok = _leq(W, m._state, y._state) if lowest else _leq(W, y._state, m._state)
        if not ok:
            raise error(f"{m} is not comparable with {y}")
    return m


def min_of(members: ElementSet) -> Element:
    """The element below every other member; ``NoUniqueMin`` if none."""
    return _extremum(members, lowest=True)


def max_of(members: ElementSet) -> Element:
    """The element above every other member; ``NoUniqueMax`` if none."""
    return _extremum(members, lowest=False)


@dataclass(frozen=True)
class ConvolutionReport:
    x1: Element
    x2: Element
    set: ElementSet
    min: Element
    max: Element
    interval: ElementSet
    missing: ElementSet

    def to_dict(self) -> dict:
        return {
            "x1": format_word(self.x1.word),
            "x2": format_word(self.x2.word),
            "set": self.set.words(),
            "min": format_word(self.min.word),
            "max": format_word(self.max.word),
            "interval": self.interval.words(),
            "missing": self.missing.words(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def exhaustion_report(x1: Element, x2: Element) -> ConvolutionReport:
    """Compare ``x1 * x2`` with the Bruhat interval between its extremes."""
    members = convolve(x1, x2)
    lo, hi = min_of(members), max_of(members)
    interval = bruhat_interval(lo, hi)
    return ConvolutionReport(x1, x2, members, lo, hi, interval, interval - members)


def arrow(u: Element, w: Element) -> bool:
    """``u -> w``: ``u^{-1} w`` is a reflection and ``u`` is shorter."""
    _same(u, w)
    return u.length < w.length and is_reflection(u.inverse() * w)


def check_lifting(wp: Element, w: Element, s: int) -> bool:
    """For ``wp <= w``: ``wp s <= w`` or ``wp s <= w s``."""
    _same(wp, w)
    W = w.system
    if not _leq(W, wp._state, w._state):
        raise PreconditionFailed(f"{wp} is not below {w}")
    ws_ = wp.right_mul(s)._state
    return _leq(W, ws_, w._state) or _leq(W, ws_, W._rmul(w._state, s))


def check_lemma3(wp: Element, w: Element, s: int) -> bool:
    """For ``wp -> w`` with ``wp s != w``: is ``wp s -> w s``?"""
    if not arrow(wp, w):
        raise PreconditionFailed(f"no arrow {wp} -> {w}")
    wps = wp.right_mul(s)
    if wps == w:
        raise PreconditionFailed(f"{wp} s{s} equals {w}")
    return arrow(wps, w.right_mul(s))


def check_cor1(u: Element, s: int, x: Element) -> bool:
    """For ``us < u`` and ``sx > x``: is ``usx -> ux``?"""
    _same(u, x)
    if not u.has_right_descent(s):
        raise PreconditionFailed(f"s{s} is not a right descent of {u}")
    if x.has_left_descent(s):
        raise PreconditionFailed(f"s{s} is a left descent of {x}")
    return arrow(u.right_mul(s) * x, u * x)
