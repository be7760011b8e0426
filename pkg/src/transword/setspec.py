"""Decidable subsets of the naturals: finite sets, eventually periodic
sets, and prefix-code sets (the code images of an infinite binary branch).

code(s) = int("1"+s, 2) - 1 is a bijection from finite bit strings to the
naturals; a PrefixCode spec denotes {code(branch restricted to k) : k >= 0}
for an eventually periodic branch.  Distinct branches give almost disjoint
infinite sets, which is what the separation machinery runs on.

The classification helpers at the bottom decide, for any two specs and an
integer shift, whether the agreement set {k : (k in S1) == (k+d in S2)} is
finite, cofinite, or neither ("mixed").  Stream cancellation, germ
equality and pattern validity all reduce to this.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

Bits = tuple[int, ...]


def _parse_bits(s) -> Bits:
    if isinstance(s, str):
        if not all(ch in "01" for ch in s):
            raise ValueError(f"bit string expected, got {s!r}")
        return tuple(int(ch) for ch in s)
    return tuple(int(b) for b in s)


def _canonical_evp(prefix: Bits, period: Bits) -> tuple[Bits, Bits]:
    """Minimal period, then minimal prefix, for an eventually periodic
    bit sequence.  Unique per sequence."""
    if not period:
        raise ValueError("period must be nonempty")
    # primitive period
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            period = period[:d]
            break
    # pull trailing prefix bits into the period when they match its tail
    prefix = tuple(prefix)
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = (period[-1],) + period[:-1]
    return prefix, period


def code(bits) -> int:
    """Bijection from finite bit strings to naturals: int('1'+s, 2) - 1."""
    bits = _parse_bits(bits)
    v = 1
    for b in bits:
        v = 2 * v + b
    return v - 1


def decode(n: int) -> Bits:
    """Inverse of `code`."""
    if n < 0:
        raise ValueError("decode expects a natural number")
    s = bin(n + 1)[3:]  # strip '0b1'
    return tuple(int(ch) for ch in s)


class SetSpec:
    """Base marker; concrete variants below.  All immutable and hashable.

    Library code builds periodic sets through `make_evp`, which demotes an
    all-zero period to the Finite variant so that equal sets stay
    syntactically equal."""

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def is_infinite(self) -> bool:
        raise NotImplementedError

    def members_below(self, bound: int) -> list[int]:
        return [n for n in range(bound) if self.contains(n)]


@dataclass(frozen=True)
class Finite(SetSpec):
    elems: tuple[int, ...]

    def __init__(self, elems):
        object.__setattr__(self, "elems", tuple(sorted(set(int(e) for e in elems))))
        if self.elems and self.elems[0] < 0:
            raise ValueError("finite set must consist of naturals")

    def contains(self, n: int) -> bool:
        return n in self.elems

    def is_infinite(self) -> bool:
        return False

    def __str__(self) -> str:
        return "fin{" + ",".join(str(e) for e in self.elems) + "}"


@dataclass(frozen=True)
class EvPeriodic(SetSpec):
    prefix: Bits
    period: Bits

    def __init__(self, prefix, period):
        pre, per = _canonical_evp(_parse_bits(prefix), _parse_bits(period))
        object.__setattr__(self, "prefix", pre)
        object.__setattr__(self, "period", per)

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n < len(self.prefix):
            return self.prefix[n] == 1
        return self.period[(n - len(self.prefix)) % len(self.period)] == 1

    def is_infinite(self) -> bool:
        return any(self.period)

    def __str__(self) -> str:
        pre = "".join(map(str, self.prefix))
        per = "".join(map(str, self.period))
        return f'eper("{pre}","{per}")'


@dataclass(frozen=True)
class PrefixCode(SetSpec):
    branch_prefix: Bits
    branch_period: Bits

    def __init__(self, branch_prefix, branch_period):
        pre, per = _canonical_evp(_parse_bits(branch_prefix), _parse_bits(branch_period))
        object.__setattr__(self, "branch_prefix", pre)
        object.__setattr__(self, "branch_period", per)

    def branch_bit(self, i: int) -> int:
        if i < len(self.branch_prefix):
            return self.branch_prefix[i]
        return self.branch_period[(i - len(self.branch_prefix)) % len(self.branch_period)]

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        bits = decode(n)
        return all(b == self.branch_bit(i) for i, b in enumerate(bits))

    def is_infinite(self) -> bool:
        return True

    def member(self, depth: int) -> int:
        return code(tuple(self.branch_bit(i) for i in range(depth)))

    def __str__(self) -> str:
        pre = "".join(map(str, self.branch_prefix))
        per = "".join(map(str, self.branch_period))
        return f'pcode("{pre}","{per}")'


def make_evp(prefix, period) -> SetSpec:
    """EvPeriodic, demoted to Finite when the period is all zeros."""
    prefix = _parse_bits(prefix)
    period = _parse_bits(period)
    if not any(period):
        return Finite(n for n, b in enumerate(prefix) if b)
    return EvPeriodic(prefix, period)


# ---------------------------------------------------------------------------
# agreement classification
#
# Results are ('finite', K)  -- the set in question is contained in [0, K)
#         or ('cofinite', K) -- the set contains [K, infinity)
#         or ('mixed', None) -- both it and its complement are infinite.

FINITE = "finite"
COFINITE = "cofinite"
MIXED = "mixed"


def _evp_bits(spec: SetSpec) -> tuple[Bits, Bits] | None:
    """(prefix, period) bit representation, or None for prefix-code sets."""
    if isinstance(spec, Finite):
        top = spec.elems[-1] + 1 if spec.elems else 0
        return tuple(1 if spec.contains(n) else 0 for n in range(top)), (0,)
    if isinstance(spec, EvPeriodic):
        return spec.prefix, spec.period
    return None


def _shift_bits(bits: tuple[Bits, Bits], d: int) -> tuple[Bits, Bits]:
    """Bit sequence of {k : k+d in S} given S's bits; d may be negative."""
    prefix, period = bits
    if d < 0:
        return (0,) * (-d) + prefix, period
    if d <= len(prefix):
        return prefix[d:], period
    r = (d - len(prefix)) % len(period)
    return (), period[r:] + period[:r]


def _classify_bitstream(prefix: Bits, period: Bits):
    if all(period):
        zeros = [i for i, b in enumerate(prefix) if b == 0]
        return (COFINITE, (zeros[-1] + 1) if zeros else 0)
    if not any(period):
        ones = [i for i, b in enumerate(prefix) if b == 1]
        return (FINITE, (ones[-1] + 1) if ones else 0)
    return (MIXED, None)


def indicator_classification(spec: SetSpec, shift: int = 0):
    """Classify {k >= 0 : k+shift in spec}."""
    bits = _evp_bits(spec)
    if bits is None:
        return (MIXED, None)  # prefix-code sets are infinite and co-infinite
    return _classify_bitstream(*_shift_bits(bits, shift))


def pair_agreement(s1: SetSpec, s2: SetSpec, shift: int = 0):
    """Classify {k >= 0 : (k in s1) == (k+shift in s2)}."""
    b1, b2 = _evp_bits(s1), _evp_bits(s2)
    if b1 is None and b2 is None:
        if s1 == s2 and shift == 0:
            return (COFINITE, 0)
        return (MIXED, None)
    if b1 is None or b2 is None:
        # a prefix-code set never eventually agrees with a periodic one:
        # infinite periodic sets are syndetic, prefix-code sets are not,
        # and finite sets differ from any infinite set infinitely often.
        return (MIXED, None)
    p1, q1 = b1
    p2, q2 = _shift_bits(b2, shift)
    start = max(len(p1), len(p2))
    step = lcm(len(q1), len(q2))

    def bit(bits, n):
        prefix, period = bits
        if n < len(prefix):
            return prefix[n]
        return period[(n - len(prefix)) % len(period)]

    agree_prefix = tuple(
        1 if bit((p1, q1), n) == bit((p2, q2), n) else 0 for n in range(start)
    )
    agree_period = tuple(
        1 if bit((p1, q1), n) == bit((p2, q2), n) else 0
        for n in range(start, start + step)
    )
    return _classify_bitstream(agree_prefix, agree_period)


def sets_equal(s1: SetSpec, s2: SetSpec) -> bool:
    """Exact extensional equality."""
    kind, K = pair_agreement(s1, s2, 0)
    if kind != COFINITE or K is None:
        return False
    return all(s1.contains(n) == s2.contains(n) for n in range(K))


def eventually_equal(s1: SetSpec, s2: SetSpec) -> bool:
    """Finite symmetric difference."""
    return pair_agreement(s1, s2, 0)[0] == COFINITE


def shifted(spec: SetSpec, d: int) -> SetSpec | None:
    """The spec denoting {k : k+d in spec}, or None when it leaves the
    representation class (prefix-code sets shift only by 0)."""
    if isinstance(spec, Finite):
        return Finite(e - d for e in spec.elems if e - d >= 0)
    if isinstance(spec, EvPeriodic):
        pre, per = _shift_bits((spec.prefix, spec.period), d)
        return make_evp(pre, per)
    if isinstance(spec, PrefixCode):
        return spec if d == 0 else None
    raise TypeError(spec)


def intersection_bound(s1: SetSpec, s2: SetSpec) -> int | None:
    """Least B with s1 & s2 contained in [0, B), or None if the
    intersection is infinite."""
    b1, b2 = _evp_bits(s1), _evp_bits(s2)
    if b1 is not None and b2 is not None:
        p1, q1 = b1
        p2, q2 = b2
        start = max(len(p1), len(p2))
        step = lcm(len(q1), len(q2))
        if any(s1.contains(n) and s2.contains(n) for n in range(start, start + step)):
            return None
        hits = [n for n in range(start) if s1.contains(n) and s2.contains(n)]
        return (hits[-1] + 1) if hits else 0
    if b1 is None and b2 is None:
        # two branches share exactly their common prefixes
        assert isinstance(s1, PrefixCode) and isinstance(s2, PrefixCode)
        if s1 == s2:
            return None
        depth = 0
        while s1.branch_bit(depth) == s2.branch_bit(depth):
            depth += 1
        return s1.member(depth) + 1
    # periodic set against a prefix-code set: walk the code sequence of the
    # branch through the periodic set's residue automaton; the intersection
    # is infinite exactly when a member state lies on the automaton's cycle
    pc = s1 if b1 is None else s2
    ev = s2 if b1 is None else s1
    assert isinstance(pc, PrefixCode)
    ebits = _evp_bits(ev)
    assert ebits is not None
    eprefix, eperiod = ebits
    plen, L = len(eprefix), len(eperiod)
    bper = len(pc.branch_period)
    cval, j = 0, 0  # cval = code(branch restricted to j)
    hits: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    trail: list[bool] = []
    while True:
        member = ev.contains(cval)
        if member:
            hits.append(cval)
        if cval >= plen and j >= len(pc.branch_prefix):
            state = ((cval - plen) % L, (j - len(pc.branch_prefix)) % bper)
            if state in seen:
                if any(trail[seen[state]:]):
                    return None
                return (hits[-1] + 1) if hits else 0
            seen[state] = len(trail)
            trail.append(member)
        cval = 2 * cval + 1 + pc.branch_bit(j)
        j += 1
