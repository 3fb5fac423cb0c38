"""
Bruhat order: a fast recursive test and an independent reflection-chain oracle.

The fast test uses the lifting property: if ``s`` is a right descent of ``w``
then ``u <= w`` iff ``min(u, us) <= ws``.  The oracle instead builds the
upward closure of ``u`` under arrows ``x -> xt`` (``t`` a reflection,
length increasing), which is the definition of the order.
"""

from __future__ import annotations

from collections import deque

from .coxeter import CoxeterSystem, Element, ElementSet
from .errors import CapExceeded, SystemMismatch

__all__ = [
    "bruhat_leq", "bruhat_leq_oracle", "bruhat_interval", "lower_ideal",
    "ORACLE_CAP",
]

ORACLE_CAP = 10_000


def _check(u: Element, w: Element) -> CoxeterSystem:
    if u.system is not w.system and u.system != w.system:
        raise SystemMismatch("elements belong to different Coxeter systems")
    return w.system


def _leq(W: CoxeterSystem, u, w) -> bool:
    memo = W._cache("bruhat")
    key = (u, w)
    hit = memo.get(key)
    if hit is not None:
        return hit
    lu, lw = W._length_of(u), W._length_of(w)
    while True:
        if lu > lw:
            result = False
            break
        if lu == lw:
            result = u == w
            break
        if lu == 0:
            result = True
            break
        # smallest right descent of w, for determinism
        s = W._first_rdes(w)
        if W._rdes(u, s):
            u = W._rmul(u, s)
            lu -= 1
        w = W._rmul(w, s)
        lw -= 1
    if len(memo) < 2_000_000:
        memo[key] = result
    return result


def bruhat_leq(u: Element, w: Element) -> bool:
    """``u <= w`` in Bruhat order.  Works in infinite groups."""
    W = _check(u, w)
    return _leq(W, u._state, w._state)


def _upper_closure(W: CoxeterSystem, u, cap: int) -> frozenset:
    memo = W._cache("oracle-upper")
    hit = memo.get(u)
    if hit is not None:
        return hit
    order = W.order
    if order is None or order > cap:
        raise CapExceeded(f"oracle limited to groups of order <= {cap}")
    refl = [r.element._state for r in W.reflections()]
    compose = W._backend.compose
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        lx = W._length_of(x)
        for t in refl:
            y = compose(x, t)
            if y not in seen and W._length_of(y) > lx:
                seen.add(y)
                queue.append(y)
    result = frozenset(seen)
    memo[u] = result
    return result


def bruhat_leq_oracle(u: Element, w: Element, cap: int = ORACLE_CAP) -> bool:
    """``u <= w`` by searching for a chain ``u -> w_1 -> ... -> w``."""
    W = _check(u, w)
    return w._state in _upper_closure(W, u._state, cap)


def _ideal_states(W: CoxeterSystem, w) -> frozenset:
    memo = W._cache("ideal")
    hit = memo.get(w)
    if hit is not None:
        return hit
    # grow along the normal form: [e, vs] = [e, v] u [e, v]s when vs > v
    state = W._backend.identity
    ideal = memo.get(state) or frozenset([state])
    memo[state] = ideal
    for a in W._word_of(w):
        state = W._rmul(state, a)
        nxt = memo.get(state)
        if nxt is None:
            nxt = ideal | frozenset(W._rmul(x, a) for x in ideal)
            memo[state] = nxt
        ideal = nxt
    return ideal


def lower_ideal(w: Element) -> ElementSet:
    """All ``x <= w``."""
    W = w.system
    return ElementSet(W._wrap(x) for x in _ideal_states(W, w._state))


def bruhat_interval(u: Element, w: Element) -> ElementSet:
    """``{x : u <= x <= w}``; empty when ``u`` is not below ``w``."""
    W = _check(u, w)
    W._require_finite("bruhat_interval")
    if not _leq(W, u._state, w._state):
        return ElementSet()
    return ElementSet(
        W._wrap(x) for x in _ideal_states(W, w._state) if _leq(W, u._state, x)
    )
