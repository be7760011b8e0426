"""Independent reference implementations used to cross-check the library.

These deliberately use the naive algorithm in each case (repeated-scan
cancellation, brute-force letter enumeration over a horizon) so that the
production code paths are checked against something computed differently.
"""

from transword.freegroup import FreeWord, Letter
from transword.words import FiniteBlock, SchematicWord, Stream


def scan_reduce(w: FreeWord) -> FreeWord:
    """Repeated-scan cancellation: delete the first adjacent inverse pair,
    restart from the beginning, until none remain."""
    out = list(w)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i + 1] == out[i].inverse:
                del out[i : i + 2]
                changed = True
                break
    return FreeWord(tuple(out))


def stream_display_prefix(seg: Stream, count: int) -> list[Letter]:
    """First `count` displayed letters of a forward stream."""
    assert seg.forward
    return [seg.schema.letter_at(p) for p in range(seg.pos, seg.pos + count)]


def stream_display_suffix(seg: Stream, count: int) -> list[Letter]:
    """Last `count` displayed letters of a backward stream."""
    assert not seg.forward
    return [
        seg.schema.letter_at(p).inverse
        for p in range(seg.pos + count - 1, seg.pos - 1, -1)
    ]


def _stream_kept(seg: Stream, keep) -> list[Letter]:
    m = seg.schema.width
    kept = []
    k = seg.pos // m + 1
    horizon = max(keep_rank(keep), 0)
    while True:
        start = max(seg.pos, (k - 1) * m)
        for p in range(start, k * m):
            l = seg.schema.letter_at(p)
            if (l.fam, l.index) in keep:
                kept.append(l if seg.forward else l.inverse)
        if all(e.idx.value(k) * 3 > horizon for e in seg.schema.entries):
            break
        k += 1
    return kept if seg.forward else list(reversed(kept))


def keep_rank(keep) -> int:
    return max((3 * i + 2 for _, i in keep), default=0)


def project_oracle(w: SchematicWord, keep) -> FreeWord:
    """Brute-force projection: enumerate letters over a sufficient horizon,
    filter, repeatedly-scan reduce."""
    keep = frozenset(keep)
    letters: list[Letter] = []
    for seg in w.segments:
        if isinstance(seg, FiniteBlock):
            letters.extend(l for l in seg.word if (l.fam, l.index) in keep)
        else:
            letters.extend(_stream_kept(seg, keep))
    return scan_reduce(FreeWord(tuple(letters)))


def display_prefixes_equal(w1: SchematicWord, w2: SchematicWord, depth: int) -> bool:
    """Letterwise comparison of leading display letters of all-forward words."""
    def prefix(w):
        out = []
        for seg in w.segments:
            if isinstance(seg, FiniteBlock):
                out.extend(seg.word)
            else:
                out.extend(stream_display_prefix(seg, depth))
                break
        return out[:depth]

    return prefix(w1) == prefix(w2)
