"""
The 0-Hecke (Demazure) monoid acting on a finite Weyl group.

The monoid basis U_w multiplies by U_s U_w = U_{sw} if sw > w, else U_w.
Four derived actions on W are provided, each obtained by folding a reduced
word through a one-step operation:

- up_left(w, x)    = U_w up-arrow x      (left monoid action, raising)
- down_left(w, x)  = U_w down-arrow x    (left monoid action, lowering)
- up_right(x, w)   = x up-arrow U_w      (right monoid action, raising)
- down_right(x, w) = x down-arrow U_w    (right monoid action, lowering)

For a left action the last letter of w acts first; for a right action the
first letter acts first. The result is independent of the chosen reduced
word because the one-step maps satisfy the braid and idempotent relations.

The Demazure product is u o v = U_u up-arrow v, and the mixed meet of u and
w (the unique Bruhat-greatest element m with m <=_R u and m <= w) is
m = u * (u^{-1} down-arrow U_w). Its companion v_min(u, w) = U_{w^{-1}}
down-arrow u = m^{-1} u.
"""

from __future__ import annotations

from .coxeter import CoxeterGroup, Element

__all__ = [
    "DemazureContext",
    "circ",
    "up_left",
    "down_left",
    "up_right",
    "down_right",
    "mixed_meet",
    "v_min",
]


# -- index-level folds (hot paths used by the enumeration engines) ----------

def up_left_idx(g: CoxeterGroup, w: int, x: int) -> int:
    for i in reversed(g.words[w]):
        sx = g.lmult[x][i]
        if g.lengths[sx] > g.lengths[x]:
            x = sx
    return x


def down_left_idx(g: CoxeterGroup, w: int, x: int) -> int:
    for i in reversed(g.words[w]):
        sx = g.lmult[x][i]
        if g.lengths[sx] < g.lengths[x]:
            x = sx
    return x


def up_right_idx(g: CoxeterGroup, x: int, w: int) -> int:
    for i in g.words[w]:
        xs = g.rmult[x][i]
        if g.lengths[xs] > g.lengths[x]:
            x = xs
    return x


def down_right_idx(g: CoxeterGroup, x: int, w: int) -> int:
    for i in g.words[w]:
        xs = g.rmult[x][i]
        if g.lengths[xs] < g.lengths[x]:
            x = xs
    return x


def circ_idx(g: CoxeterGroup, u: int, v: int) -> int:
    return up_left_idx(g, u, v)


def mixed_meet_idx(g: CoxeterGroup, u: int, w: int) -> int:
    return g.mul_idx(u, down_right_idx(g, g.inv_table[u], w))


def v_min_idx(g: CoxeterGroup, u: int, w: int) -> int:
    return down_left_idx(g, g.inv_table[w], u)


def fold_word_idx(g: CoxeterGroup, letters, x: int, step: str) -> int:
    """Fold an explicit word (1-based letters) through a one-step action.

    ``step`` is one of "up_left", "down_left", "up_right", "down_right";
    left actions fold the word right-to-left, right actions left-to-right.
    """
    if step in ("up_left", "down_left"):
        seq = reversed(letters)
    else:
        seq = iter(letters)
    raising = step.startswith("up")
    left = step.endswith("left")
    for letter in seq:
        i = letter - 1
        y = g.lmult[x][i] if left else g.rmult[x][i]
        if (g.lengths[y] > g.lengths[x]) == raising:
            x = y
    return x


# -- Element-level API -------------------------------------------------------

def _pair(u: Element, v: Element) -> CoxeterGroup:
    u.group.check_same(v.group)
    return u.group


def circ(u: Element, v: Element) -> Element:
    """The Demazure product u o v."""
    g = _pair(u, v)
    return Element(g, circ_idx(g, u.index, v.index))


def up_left(w: Element, x: Element) -> Element:
    g = _pair(w, x)
    return Element(g, up_left_idx(g, w.index, x.index))


def down_left(w: Element, x: Element) -> Element:
    g = _pair(w, x)
    return Element(g, down_left_idx(g, w.index, x.index))


def up_right(x: Element, w: Element) -> Element:
    g = _pair(x, w)
    return Element(g, up_right_idx(g, x.index, w.index))


def down_right(x: Element, w: Element) -> Element:
    g = _pair(x, w)
    return Element(g, down_right_idx(g, x.index, w.index))


def mixed_meet(u: Element, w: Element) -> Element:
    """The unique Bruhat-maximal m with m <=_R u and m <= w."""
    g = _pair(u, w)
    return Element(g, mixed_meet_idx(g, u.index, w.index))


def v_min(u: Element, w: Element) -> Element:
    """U_{w^{-1}} down-arrow u, the least v with nonvanishing pairing."""
    g = _pair(u, w)
    return Element(g, v_min_idx(g, u.index, w.index))


class DemazureContext:
    """Demazure operations over one group, with a lazily filled product table.

    Folding words costs O(len) per product, which is fine for scattered
    queries; bulk enumeration can call ``circ_table`` once and index it.
    """

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self._circ_table = None

    def circ_table(self) -> list:
        if self._circ_table is None:
            g = self.group
            self._circ_table = [
                [circ_idx(g, u, v) for v in range(g.order)]
                for u in range(g.order)
            ]
        return self._circ_table

    def circ(self, u: Element, v: Element) -> Element:
        g = self.group
        g.check_same(u.group)
        g.check_same(v.group)
        if self._circ_table is not None:
            return Element(g, self._circ_table[u.index][v.index])
        return Element(g, circ_idx(g, u.index, v.index))
