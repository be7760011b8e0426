"""Schematic words: finite blocks and omega/omega*-ordered letter streams.

A SchematicWord is a finite segment sequence denoting an infinitary word
in which every concrete letter occurs finitely often.  Two presentations
are order-isomorphic ("the same word") exactly when `canonicalize` sends
them to the same value; `reduce` rewrites to the unique reduced word in
the same projection class, and `heg_equal` decides equality in the group
by comparing reduced canonical forms.

The rewrite engine alternates canonical moves (block merging, absorption
of letters into matching stream heads, schema folding) with cancellation
moves: free reduction inside blocks, pattern reduction inside streams
(dropping entry pairs that cancel at every step, which is how telescoping
products collapse), letter-against-stream-head cancellation, and deletion
or partial cancellation of adjacent stream pairs via tail alignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .freegroup import EMPTY, FreeWord, Letter, rank_letter_set, reduce_free
from .schema import (
    COFINITE,
    FINITE,
    Entry,
    IndexFn,
    Schema,
    fold,
    pair_cancellation,
    schema_valid,
    tail_alignment,
)
from .setspec import SetSpec, shifted

_REDUCE_CAP = 100_000


@dataclass(frozen=True)
class FiniteBlock:
    word: FreeWord


@dataclass(frozen=True)
class Stream:
    forward: bool
    pos: int
    schema: Schema

    def __post_init__(self):
        if self.pos < 0:
            raise ValueError("stream position must be a natural number")
        if not schema_valid(self.schema):
            raise ValueError(
                "stream pattern cancels on a step set that is infinite and "
                "co-infinite; the word has no schematic reduced form"
            )

    @property
    def step(self) -> int:
        return self.pos // self.schema.width

    def letter(self, p: int) -> Letter:
        """Forward-sequence letter at linear position p >= pos."""
        return self.schema.letter_at(p)


Segment = FiniteBlock | Stream


@dataclass(frozen=True)
class SchematicWord:
    segments: tuple[Segment, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.segments)

    def __str__(self) -> str:
        from .dsl import render_word

        return render_word(self)

    def __repr__(self) -> str:
        return f"SchematicWord<{self}>"


EMPTY_WORD = SchematicWord(())


def block(*letters: Letter) -> SchematicWord:
    return SchematicWord((FiniteBlock(FreeWord(tuple(letters))),)) if letters else EMPTY_WORD


def from_free(w: FreeWord) -> SchematicWord:
    return SchematicWord((FiniteBlock(w),)) if w else EMPTY_WORD


def make_stream(forward: bool, k0: int, entries) -> Stream:
    sch = Schema(tuple(entries))
    return Stream(forward, k0 * sch.width, sch)


def stream_word(forward: bool, k0: int, entries) -> SchematicWord:
    return SchematicWord((make_stream(forward, k0, entries),))


# ---------------------------------------------------------------------------
# letter extraction

def _stream_hits(seg: Stream, letters: frozenset[tuple[str, int]]):
    """(position, displayed letter) pairs for the given concrete letters,
    in display order."""
    found = []
    m = seg.schema.width
    for fam, index in letters:
        for j, e in enumerate(seg.schema.entries):
            k = e.idx.solve(index)
            if k is None:
                continue
            p = k * m + j
            if p < seg.pos or e.family_at(k) != fam:
                continue
            found.append((p, Letter(fam, index, e.sign)))
    found.sort()
    if seg.forward:
        return found
    return [(p, l.inverse) for p, l in reversed(found)]


def occurrences(w: SchematicWord, letter: tuple[str, int]):
    """All positions carrying the concrete letter (either sign), in domain
    order, as (segment index, locator) pairs; block locators are letter
    offsets, stream locators linear positions."""
    fam, index = letter
    out = []
    for i, seg in enumerate(w.segments):
        if isinstance(seg, FiniteBlock):
            out.extend(
                (i, off)
                for off, l in enumerate(seg.word)
                if (l.fam, l.index) == (fam, index)
            )
        else:
            out.extend((i, p) for p, _ in _stream_hits(seg, frozenset([letter])))
    return out


def kept_letters(w: SchematicWord, letters) -> list[Letter]:
    letters = frozenset(letters)
    out: list[Letter] = []
    for seg in w.segments:
        if isinstance(seg, FiniteBlock):
            out.extend(l for l in seg.word if (l.fam, l.index) in letters)
        else:
            out.extend(l for _, l in _stream_hits(seg, letters))
    return out


def project_finite(w: SchematicWord, letters) -> FreeWord:
    """Occurrences of the given letters in domain order, freely reduced."""
    return reduce_free(FreeWord(tuple(kept_letters(w, letters))))


def proj_rank(w: SchematicWord, n: int) -> FreeWord:
    """The projection keeping letters of rank < n."""
    return project_finite(w, rank_letter_set(n))


def equal_up_to(w1: SchematicWord, w2: SchematicWord, N: int) -> bool:
    """Projections to all letters of rank < N agree as reduced free words."""
    return proj_rank(w1, N) == proj_rank(w2, N)


# ---------------------------------------------------------------------------
# canonical form

def _pop_to_boundary(st: Stream):
    m = st.schema.width
    r = st.pos % m
    if r == 0:
        return None
    n = m - r
    letters = [st.letter(p) for p in range(st.pos, st.pos + n)]
    new = Stream(st.forward, st.pos + n, st.schema)
    if st.forward:
        return FiniteBlock(FreeWord(tuple(letters))), new, "before"
    inv = FreeWord(tuple(l.inverse for l in reversed(letters)))
    return FiniteBlock(inv), new, "after"


def _step_hits(schema: Schema, s: int) -> bool:
    """Whether some adjacent pattern pair cancels at step s.  Absorbing a
    step with a hit into a stream would hide a cancellation from the
    rewrite engine (and undo its head splits), so canonical moves skip
    such steps; reduced words never have them."""
    if s < 0:
        return True
    for _, e1, e2, shift in schema.adjacent_pairs():
        if e1.letter_at(s) == e2.letter_at(s + shift).inverse:
            return True
    return False


def _shift_schema(schema: Schema, d: int) -> Schema | None:
    """The schema emitting at step k what this one emits at step k+d."""
    entries = []
    for e in schema.entries:
        fam = e.fam
        if isinstance(fam, SetSpec):
            fam = shifted(fam, d)
            if fam is None:
                return None
        try:
            idx = e.idx.shift(d)
        except ValueError:
            return None
        entries.append(Entry(fam, idx, e.sign))
    return Schema(tuple(entries))


def _normalize_cursor(st: Stream) -> Stream:
    """Fold a boundary cursor into the schema when every entry shifts;
    prefix-code selectors keep their cursor."""
    m = st.schema.width
    if st.pos == 0 or st.pos % m:
        return st
    sch = _shift_schema(st.schema, st.pos // m)
    if sch is None:
        return st
    try:
        return Stream(st.forward, 0, sch)
    except ValueError:
        return st


def _prepend_bit(spec: SetSpec, bit: int) -> SetSpec | None:
    """The set T with T(0) = bit and T(k) = spec(k-1)."""
    from .setspec import EvPeriodic, Finite

    if isinstance(spec, Finite):
        return Finite(([0] if bit else []) + [e + 1 for e in spec.elems])
    if isinstance(spec, EvPeriodic):
        return EvPeriodic((bit,) + spec.prefix, spec.period)
    return None  # prefix-code sets do not extend


def _absorb_letters(st: Stream, letters) -> Stream | None:
    """The stream extended by one earlier step whose forward-sequence
    letters are exactly `letters` (length = width), or None.  Selector
    entries choose the membership bit of the new step to match."""
    m = st.schema.width
    if len(letters) != m:
        return None
    if st.pos >= m:
        if list(letters) != [st.letter(p) for p in range(st.pos - m, st.pos)]:
            return None
        if _step_hits(st.schema, st.pos // m - 1):
            return None
        return Stream(st.forward, st.pos - m, st.schema)
    if st.pos != 0:
        return None
    entries = []
    for e, l in zip(st.schema.entries, letters):
        if l.sign != e.sign:
            return None
        num = e.idx.a2 - e.idx.a1 + e.idx.a0  # numerator of the value at -1
        if num < 0 or num % e.idx.div or num // e.idx.div != l.index:
            return None
        try:
            idx = e.idx.shift(-1)
        except ValueError:
            return None
        fam = e.fam
        if isinstance(fam, SetSpec):
            if l.fam not in ("b", "c"):
                return None
            fam = _prepend_bit(fam, 1 if l.fam == "b" else 0)
            if fam is None:
                return None
        elif fam != l.fam:
            return None
        entries.append(Entry(fam, idx, e.sign))
    try:
        ext = Stream(st.forward, 0, Schema(tuple(entries)))
    except ValueError:
        return None
    if _step_hits(ext.schema, 0):
        return None
    return ext


def _absorb_forward(bw: FreeWord, st: Stream):
    m = st.schema.width
    if len(bw) < m:
        return None
    ext = _absorb_letters(st, list(bw.letters[-m:]))
    if ext is None:
        return None
    return FreeWord(bw.letters[:-m]), ext


def _absorb_backward(st: Stream, bw: FreeWord):
    m = st.schema.width
    if len(bw) < m:
        return None
    # the block head holds the displayed (inverted, descending) letters
    letters = [l.inverse for l in reversed(bw.letters[:m])]
    ext = _absorb_letters(st, letters)
    if ext is None:
        return None
    return ext, FreeWord(bw.letters[m:])


def _cross_move(left: Stream, right: Stream):
    mu = left.schema.width
    g = lcm(mu, right.schema.width)
    if _pattern_site(left) is not None or _pattern_site(right) is not None:
        return None
    if _tails_equal(left, right):
        return None  # a deletion site; leave it to the rewrite engine
    cur = left
    for t in range(g // mu):
        # display order runs opposite to forward-sequence order, so the
        # step adjacent to the junction pairs with the earliest moved
        # letters of the right stream, reversed within the step
        base = right.pos + (t + 1) * mu - 1
        letters = [right.letter(base - i).inverse for i in range(mu)]
        cur = _absorb_letters(cur, letters)
        if cur is None:
            return None
    return cur, Stream(True, right.pos + g, right.schema)


def canonicalize(w: SchematicWord) -> SchematicWord:
    segs = list(w.segments)
    for _ in range(_REDUCE_CAP):
        changed = False
        out: list[Segment] = []
        for seg in segs:
            if isinstance(seg, FiniteBlock):
                if len(seg.word):
                    out.append(seg)
                else:
                    changed = True
                continue
            folded = fold(seg.schema)
            if folded != seg.schema:
                seg = Stream(seg.forward, seg.pos, folded)
                changed = True
            popped = _pop_to_boundary(seg)
            if popped is None:
                normal = _normalize_cursor(seg)
                if normal != seg:
                    changed = True
                out.append(normal)
            else:
                blk, st, where = popped
                out.extend([blk, st] if where == "before" else [st, blk])
                changed = True
        merged: list[Segment] = []
        for seg in out:
            if (
                merged
                and isinstance(seg, FiniteBlock)
                and isinstance(merged[-1], FiniteBlock)
            ):
                merged[-1] = FiniteBlock(
                    FreeWord(merged[-1].word.letters + seg.word.letters)
                )
                changed = True
            else:
                merged.append(seg)
        segs = merged
        for i in range(len(segs) - 1):
            a, b = segs[i], segs[i + 1]
            if isinstance(a, Stream) and not a.forward and isinstance(b, FiniteBlock):
                r = _absorb_backward(a, b.word)
                if r:
                    segs[i], segs[i + 1] = r[0], FiniteBlock(r[1])
                    changed = True
                    break
            if isinstance(a, FiniteBlock) and isinstance(b, Stream) and b.forward:
                r = _absorb_forward(a.word, b)
                if r:
                    segs[i], segs[i + 1] = FiniteBlock(r[0]), r[1]
                    changed = True
                    break
            if (
                isinstance(a, Stream)
                and not a.forward
                and isinstance(b, Stream)
                and b.forward
            ):
                r = _cross_move(a, b)
                if r:
                    segs[i], segs[i + 1] = r
                    changed = True
                    break
        if not changed:
            return SchematicWord(tuple(segs))
    raise RuntimeError("canonicalization did not stabilize")


def concat(*words: SchematicWord) -> SchematicWord:
    segs: tuple[Segment, ...] = ()
    for w in words:
        segs += w.segments
    return canonicalize(SchematicWord(segs))


def invert(w: SchematicWord) -> SchematicWord:
    out: list[Segment] = []
    for seg in reversed(w.segments):
        if isinstance(seg, FiniteBlock):
            out.append(FiniteBlock(seg.word.inverse))
        else:
            out.append(Stream(not seg.forward, seg.pos, seg.schema))
    return SchematicWord(tuple(out))


# ---------------------------------------------------------------------------
# reduction

def _split_head(st: Stream, upto_pos: int):
    """Detach positions [pos, upto_pos) as a finite chunk."""
    letters = [st.letter(p) for p in range(st.pos, upto_pos)]
    rest = Stream(st.forward, upto_pos, st.schema)
    if st.forward:
        return FiniteBlock(FreeWord(tuple(letters))), rest, "before"
    inv = FreeWord(tuple(l.inverse for l in reversed(letters)))
    return FiniteBlock(inv), rest, "after"


def _pattern_site(st: Stream):
    """First rewritable pattern pair, as (pair_index, kind, data)."""
    k0 = st.step
    for j, e1, e2, shift in st.schema.adjacent_pairs():
        kind, data = pair_cancellation(e1, e2, shift)
        if kind == COFINITE:
            return j, kind, data
        if kind == FINITE and data and any(h >= k0 for h in data):
            return j, kind, data
    return None


def _apply_pattern(st: Stream) -> list[Segment]:
    site = _pattern_site(st)
    assert site is not None
    j, kind, data = site
    m = st.schema.width
    k0 = st.step
    if kind == FINITE:
        H = max(h for h in data if h >= k0)
        blk, rest, where = _split_head(st, (H + 1) * m)
        return [blk, rest] if where == "before" else [rest, blk]
    K = max(k0, data)
    pieces: list[Segment] = []
    head: Segment | None = None
    if K > k0:
        blk, st, where = _split_head(st, K * m)
        head = blk
    entries = st.schema.entries
    if j < m - 1:
        kept = entries[:j] + entries[j + 2 :]
        tail: list[Segment] = (
            [Stream(st.forward, K * (m - 2), Schema(kept))] if kept else []
        )
    else:
        # wrap pair: entry 0 at step K survives once, inner entries stream on
        first = FreeWord((entries[0].letter_at(K),))
        kept = entries[1 : m - 1]
        rest: list[Segment] = (
            [Stream(st.forward, K * (m - 2), Schema(kept))] if kept else []
        )
        if st.forward:
            tail = [FiniteBlock(first)] + rest
        else:
            tail = rest + [FiniteBlock(first.inverse)]
    if head is not None:
        tail = [head] + tail if st.forward else tail + [head]
    return tail


def _tails_equal(u: Stream, v: Stream) -> bool:
    """Whether u's forward sequence from its pos equals v's from its pos."""
    al = tail_alignment(u.schema, v.schema)
    if al is None:
        return False
    delta, K = al
    if delta != v.pos - u.pos:
        return False
    return all(
        u.letter(p) == v.letter(p + delta) for p in range(u.pos, max(K, u.pos))
    )


def _junction_run(u: Stream, v: Stream) -> int:
    """Length of the cancelling run at a (backward, forward) junction."""
    t = 0
    while t < _REDUCE_CAP and u.letter(u.pos + t) == v.letter(v.pos + t):
        t += 1
    if t >= _REDUCE_CAP:
        raise RuntimeError("unbounded junction cancellation scan")
    return t


def _infinite_tail_cancel(u: Stream, v: Stream) -> FiniteBlock | None:
    """For a (forward, backward) pair: cancel the common tails, returning
    the finite leftover, or None when the tails never match."""
    al = tail_alignment(u.schema, v.schema)
    if al is None:
        return None
    delta, K = al
    k = max(u.pos, v.pos - delta, K)
    while k - 1 >= max(u.pos, v.pos - delta) and u.letter(k - 1) == v.letter(
        k - 1 + delta
    ):
        k -= 1
    left = [u.letter(p) for p in range(u.pos, k)]
    right = [v.letter(p).inverse for p in range(k + delta - 1, v.pos - 1, -1)]
    return FiniteBlock(FreeWord(tuple(left + right)))


def _cancellation_sites(w: SchematicWord):
    sites = []
    segs = w.segments
    for i, seg in enumerate(segs):
        if isinstance(seg, FiniteBlock):
            if any(
                seg.word[t + 1] == seg.word[t].inverse
                for t in range(len(seg.word) - 1)
            ):
                sites.append(("block", i))
        else:
            if _pattern_site(seg) is not None:
                sites.append(("pattern", i))
    for i in range(len(segs) - 1):
        a, b = segs[i], segs[i + 1]
        if isinstance(a, FiniteBlock) and isinstance(b, Stream) and b.forward:
            if a.word and a.word[-1] == b.letter(b.pos).inverse:
                sites.append(("eat-right", i))
        if isinstance(a, Stream) and not a.forward and isinstance(b, FiniteBlock):
            if b.word and b.word[0] == a.letter(a.pos):
                sites.append(("eat-left", i))
        if isinstance(a, Stream) and isinstance(b, Stream):
            if not a.forward and b.forward:
                if _tails_equal(a, b) or a.letter(a.pos) == b.letter(b.pos):
                    sites.append(("pair-junction", i))
            if a.forward and not b.forward:
                if _infinite_tail_cancel(a, b) is not None:
                    sites.append(("pair-tail", i))
    return sites


def _apply_site(w: SchematicWord, site) -> SchematicWord:
    kind, i = site
    segs = list(w.segments)
    if kind == "block":
        segs[i] = FiniteBlock(reduce_free(segs[i].word))
    elif kind == "pattern":
        segs[i : i + 1] = _apply_pattern(segs[i])
    elif kind == "eat-right":
        bw, st = segs[i].word, segs[i + 1]
        letters = list(bw.letters)
        pos = st.pos
        while letters and letters[-1] == st.letter(pos).inverse:
            letters.pop()
            pos += 1
        segs[i] = FiniteBlock(FreeWord(tuple(letters)))
        segs[i + 1] = Stream(True, pos, st.schema)
    elif kind == "eat-left":
        st, bw = segs[i], segs[i + 1].word
        letters = list(bw.letters)
        pos = st.pos
        while letters and letters[0] == st.letter(pos):
            letters.pop(0)
            pos += 1
        segs[i] = Stream(False, pos, st.schema)
        segs[i + 1] = FiniteBlock(FreeWord(tuple(letters)))
    elif kind == "pair-junction":
        a, b = segs[i], segs[i + 1]
        if _tails_equal(a, b):
            segs[i : i + 2] = []
        else:
            t = _junction_run(a, b)
            segs[i] = Stream(False, a.pos + t, a.schema)
            segs[i + 1] = Stream(True, b.pos + t, b.schema)
    elif kind == "pair-tail":
        leftover = _infinite_tail_cancel(segs[i], segs[i + 1])
        assert leftover is not None
        segs[i : i + 2] = [leftover]
    else:  # pragma: no cover
        raise AssertionError(kind)
    return SchematicWord(tuple(segs))


def reduce(w: SchematicWord, rng=None) -> SchematicWord:
    """Reduced canonical word projection-equal to w.  With `rng`, rewrite
    sites are picked at random (used by the confluence tests)."""
    for _ in range(_REDUCE_CAP):
        w = canonicalize(w)
        sites = _cancellation_sites(w)
        if not sites:
            return w
        site = sites[0] if rng is None else sites[rng.randrange(len(sites))]
        w = _apply_site(w, site)
    raise RuntimeError("reduction did not terminate")


def is_reduced(w: SchematicWord) -> bool:
    return not _cancellation_sites(canonicalize(w))


def heg_equal(w1: SchematicWord, w2: SchematicWord) -> bool:
    """Group equality on the fragment: reduce both, compare canonical forms."""
    return reduce(w1) == reduce(w2)


# ---------------------------------------------------------------------------
# recoding and retraction

_FAM_BY_RESIDUE = ("a", "b", "c")


def _encode_letter(l: Letter) -> Letter:
    if l.fam != "a":
        raise ValueError("encode expects a word over the a-letters only")
    return Letter(_FAM_BY_RESIDUE[l.index % 3], l.index // 3, l.sign)


def _decode_letter(l: Letter) -> Letter:
    return Letter("a", 3 * l.index + _FAM_BY_RESIDUE.index(l.fam), l.sign)


def gamma_recode(w: SchematicWord, direction: str) -> SchematicWord:
    """Bijective recoding a_{3m} <-> a_m, a_{3m+1} <-> b_m, a_{3m+2} <-> c_m.

    `encode` maps a pure-a word onto the tripled alphabet; `decode` is its
    inverse and rejects words outside the schematic image (selector
    streams have no pure-a schematic preimage presentation).
    """
    if direction not in ("encode", "decode"):
        raise ValueError("direction must be 'encode' or 'decode'")
    from math import lcm as _lcm

    out: list[Segment] = []
    for seg in canonicalize(w).segments:
        if isinstance(seg, FiniteBlock):
            f = _encode_letter if direction == "encode" else _decode_letter
            out.append(FiniteBlock(FreeWord(tuple(f(l) for l in seg.word))))
            continue
        if direction == "encode":
            if any(e.fam != "a" for e in seg.schema.entries):
                raise ValueError("encode expects a word over the a-letters only")
            from .schema import unroll

            m = seg.schema.width
            step0 = seg.pos // m
            T = 3 * _lcm(*(e.idx.div for e in seg.schema.entries))
            # unroll so letter residues mod 3 are constant per entry, with
            # the phase chosen to keep the cursor on a period boundary
            big = unroll(seg.schema, T, phase=step0 % T)
            assert big is not None
            entries = []
            for e in big.entries:
                r = e.idx.value(0) % 3
                assert e.idx.value(1) % 3 == r and e.idx.value(2) % 3 == r
                idx = IndexFn(e.idx.a2, e.idx.a1, e.idx.a0 - r * e.idx.div, 3 * e.idx.div)
                entries.append(Entry(_FAM_BY_RESIDUE[r], idx, e.sign))
            out.append(
                Stream(seg.forward, (step0 // T) * T * m, Schema(tuple(entries)))
            )
        else:
            entries = []
            for e in seg.schema.entries:
                if isinstance(e.fam, SetSpec):
                    raise ValueError(
                        "decode: selector streams are outside the schematic image"
                    )
                r = _FAM_BY_RESIDUE.index(e.fam)
                idx = IndexFn(
                    3 * e.idx.a2, 3 * e.idx.a1, 3 * e.idx.a0 + r * e.idx.div, e.idx.div
                )
                entries.append(Entry("a", idx, e.sign))
            out.append(Stream(seg.forward, seg.pos, Schema(tuple(entries))))
    return canonicalize(SchematicWord(tuple(out)))


def ra_retract(w: SchematicWord) -> SchematicWord:
    """Delete every b- and c-letter (selector streams vanish entirely)."""
    out: list[Segment] = []
    for seg in canonicalize(w).segments:
        if isinstance(seg, FiniteBlock):
            kept = tuple(l for l in seg.word if l.fam == "a")
            out.append(FiniteBlock(FreeWord(kept)))
            continue
        m = seg.schema.width
        kept_entries = tuple(e for e in seg.schema.entries if e.fam == "a")
        if not kept_entries:
            continue
        if len(kept_entries) == m:
            out.append(seg)
            continue
        # same steps, fewer entries per step; pos sits on a period boundary
        new_pos = (seg.pos // m) * len(kept_entries)
        out.append(Stream(seg.forward, new_pos, Schema(kept_entries)))
    return canonicalize(SchematicWord(tuple(out)))


# ---------------------------------------------------------------------------
# cutting (used by the homomorphism tests and the archipelago machinery)

def cut_points(w: SchematicWord, stream_depth: int = 4):
    """Boundary descriptors where w may be split in two, including spots
    inside streams up to `stream_depth` positions past each cursor."""
    pts = [(len(w.segments), 0)]
    for i, seg in enumerate(w.segments):
        if isinstance(seg, FiniteBlock):
            pts.extend((i, off) for off in range(len(seg.word)))
        else:
            pts.extend((i, off) for off in range(stream_depth))
    return pts


def split_word(w: SchematicWord, cut) -> tuple[SchematicWord, SchematicWord]:
    i, off = cut
    if i >= len(w.segments):
        return w, EMPTY_WORD
    before = w.segments[:i]
    after = w.segments[i + 1 :]
    seg = w.segments[i]
    if isinstance(seg, FiniteBlock):
        head: tuple[Segment, ...] = (
            (FiniteBlock(FreeWord(seg.word.letters[:off])),) if off else ()
        )
        tail: tuple[Segment, ...] = (FiniteBlock(FreeWord(seg.word.letters[off:])),)
        return (
            SchematicWord(before + head),
            SchematicWord(tail + after),
        )
    q = seg.pos + off
    if seg.forward:
        head_letters = FreeWord(tuple(seg.letter(p) for p in range(seg.pos, q)))
        head = (FiniteBlock(head_letters),) if off else ()
        return (
            SchematicWord(before + head),
            SchematicWord((Stream(True, q, seg.schema),) + after),
        )
    tail_letters = FreeWord(
        tuple(seg.letter(p).inverse for p in range(q - 1, seg.pos - 1, -1))
    )
    tail = (FiniteBlock(tail_letters),) if off else ()
    return (
        SchematicWord(before + (Stream(False, q, seg.schema),)),
        SchematicWord(tail + after),
    )
