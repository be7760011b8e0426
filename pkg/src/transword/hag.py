"""The archipelago quotient: finite subwords die, so only the tail classes
of the infinite streams survive.

A germ is a stream schema with its cursor erased (tail class) plus an
orientation sign; a HagClass is a cancelled sequence of germs and is the
normal form for quotient equality on the fragment.  Every rewrite used by
`hag_normal` either deletes a finite subword or cancels a word against
its inverse, so equal verdicts are sound; distinct normal forms are a
fragment-level verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .schema import Schema, tail_alignment
from .words import FiniteBlock, SchematicWord, Stream, canonicalize, reduce


@dataclass(frozen=True)
class Germ:
    schema: Schema
    sign: int  # +1 forward, -1 backward

    def __str__(self) -> str:
        from .dsl import render_entry

        body = " ".join(render_entry(e) for e in self.schema.entries)
        return f"{{{body}}}{'+' if self.sign > 0 else '-'}"


def germ_equal(g1: Germ, g2: Germ) -> bool:
    return g1.sign == g2.sign and tail_alignment(g1.schema, g2.schema) is not None


def germs_cancel(g1: Germ, g2: Germ) -> bool:
    return g1.sign == -g2.sign and tail_alignment(g1.schema, g2.schema) is not None


@dataclass(frozen=True)
class HagClass:
    germs: tuple[Germ, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.germs)

    def __str__(self) -> str:
        return render_class(self)


def render_class(h: HagClass, names=None) -> str:
    from .dsl import render_entry

    parts = []
    for g in h.germs:
        body = " ".join(render_entry(e, names) for e in g.schema.entries)
        parts.append(f"{{{body}}}{'+' if g.sign > 0 else '-'}")
    return "germ-seq: [" + ", ".join(parts) + "]"


EMPTY_CLASS = HagClass(())


def _cancelled(germs) -> HagClass:
    stack: list[Germ] = []
    for g in germs:
        if stack and germs_cancel(stack[-1], g):
            stack.pop()
        else:
            stack.append(g)
    return HagClass(tuple(stack))


def hag_normal(w: SchematicWord) -> HagClass:
    """Reduce, delete finite blocks, erase stream cursors, cancel adjacent
    inverse germ pairs."""
    germs = [
        Germ(seg.schema, 1 if seg.forward else -1)
        for seg in reduce(w).segments
        if isinstance(seg, Stream)
    ]
    return _cancelled(germs)


def pi(w: SchematicWord) -> HagClass:
    """The quotient map."""
    return hag_normal(w)


def classes_equal(h1: HagClass, h2: HagClass) -> bool:
    return len(h1.germs) == len(h2.germs) and all(
        germ_equal(a, b) for a, b in zip(h1.germs, h2.germs)
    )


def hag_equal(w1: SchematicWord, w2: SchematicWord) -> bool:
    """Quotient equality on the fragment: germwise-equal normal forms."""
    return classes_equal(hag_normal(w1), hag_normal(w2))


def hag_product(h1: HagClass, h2: HagClass) -> HagClass:
    return _cancelled(h1.germs + h2.germs)


def hag_inverse(h: HagClass) -> HagClass:
    return HagClass(tuple(Germ(g.schema, -g.sign) for g in reversed(h.germs)))


def class_word(h: HagClass, min_rank: int = 0) -> SchematicWord:
    """A word representative of h whose letters all have rank >= min_rank
    (a witness that the quotient is onto from every tail subgroup)."""
    segs = []
    for g in h.germs:
        m = g.schema.width
        k = 0
        while min(g.schema.letter_at(p).rank for p in range(k * m, (k + 1) * m)) < min_rank:
            k += 1
        segs.append(Stream(g.sign > 0, k * m, g.schema))
    return canonicalize(SchematicWord(tuple(segs)))


def min_rank_of(w: SchematicWord) -> int | None:
    """Smallest letter rank occurring in w, None for the empty word."""
    ranks = []
    for seg in w.segments:
        if isinstance(seg, FiniteBlock):
            ranks.extend(l.rank for l in seg.word)
        else:
            m = seg.schema.width
            ranks.extend(
                seg.schema.letter_at(p).rank for p in range(seg.pos, seg.pos + m)
            )
    return min(ranks) if ranks else None
