"""
The one-parameter Temperley-Lieb diagram category.

A TLDiagram of shape (bottom, top) is a non-crossing perfect matching on the
boundary points of a rectangle.  Points are indexed counterclockwise starting
at the bottom-left corner: slots 0..bottom-1 run left-to-right along the
bottom, slots bottom..bottom+top-1 run right-to-left along the top.  In this
linear order, non-crossing is exactly the balanced-bracket condition.

A TLElement is a formal linear combination of diagrams over RatFunc2.  Closed
loops formed under composition each contribute the element's loop scalar
(by default the quantum integer [2] in the element's variable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .scalars import ONE, RatFunc2, qint, ratfunc_sum


def is_noncrossing_matching(pairing: tuple[int, ...]) -> bool:
    n = len(pairing)
    for i, j in enumerate(pairing):
        if not (0 <= j < n) or j == i or pairing[j] != i:
            return False
    stack: list[int] = []
    for i, j in enumerate(pairing):
        if j > i:
            stack.append(j)
        elif not stack or stack.pop() != i:
            return False
    return True


@lru_cache(maxsize=None)
def _noncrossing_pairings(n: int) -> tuple[tuple[int, ...], ...]:
    """All non-crossing perfect matchings on n linearly ordered points."""
    if n % 2:
        return ()
    if n == 0:
        return ((),)
    results: list[tuple[int, ...]] = []
    slots = [-1] * n

    def fill(free: list[int]):
        # pair free[0] inside the segment; inside and outside fill independently
        if not free:
            yield
            return
        first = free[0]
        for idx in range(1, len(free), 2):
            mate = free[idx]
            slots[first], slots[mate] = mate, first
            for _ in fill(free[1:idx]):
                yield from fill(free[idx + 1:])

    for _ in fill(list(range(n))):
        results.append(tuple(slots))
    return tuple(results)


@dataclass(frozen=True)
class TLDiagram:
    bottom: int
    top: int
    pairing: tuple[int, ...]

    def __post_init__(self):
        assert self.bottom >= 0 and self.top >= 0
        assert len(self.pairing) == self.bottom + self.top
        assert is_noncrossing_matching(self.pairing)

    @classmethod
    def identity(cls, k: int) -> TLDiagram:
        n = 2 * k
        return cls(k, k, tuple(n - 1 - s for s in range(n)))

    @classmethod
    def cup_cap(cls, i: int, k: int) -> TLDiagram:
        """The diagram e_i on k strands: cup joining bottom i, i+1 and matching cap."""
        assert 0 <= i < k - 1
        n = 2 * k
        pairing = [n - 1 - s for s in range(n)]
        pairing[i], pairing[i + 1] = i + 1, i
        # top points i, i+1 (left-to-right) sit at slots n-1-i and n-2-i
        pairing[n - 1 - i], pairing[n - 2 - i] = n - 2 - i, n - 1 - i
        return cls(k, k, tuple(pairing))

    @classmethod
    def cups(cls, k: int) -> TLDiagram:
        """Nested cups 0 -> 2k (pairs slot j with 2k-1-j)."""
        n = 2 * k
        return cls(0, n, tuple(n - 1 - s for s in range(n)))

    @classmethod
    def caps(cls, k: int) -> TLDiagram:
        """Nested caps 2k -> 0."""
        n = 2 * k
        return cls(n, 0, tuple(n - 1 - s for s in range(n)))

    def brackets(self) -> str:
        """Bracket-sequence rendering, with '|' separating bottom from top."""
        out = []
        for s, j in enumerate(self.pairing):
            if s == self.bottom:
                out.append("|")
            out.append("(" if j > s else ")")
        return "".join(out)

    def __repr__(self):
        return f"TLDiagram({self.bottom}->{self.top} {self.brackets()})"


def compose_pairings(
    upper: TLDiagram, lower: TLDiagram
) -> tuple[TLDiagram, int]:
    """Stack upper on top of lower; return the glued diagram and the loop count."""
    assert lower.top == upper.bottom
    mid = lower.top
    bot, top = lower.bottom, upper.top
    # Middle point i (left-to-right): lower slot bot + (mid-1-i), upper slot i.
    lower_mid = [bot + (mid - 1 - i) for i in range(mid)]

    result = [-1] * (bot + top)
    seen_mid = [False] * mid

    def external_id(diagram_tag: str, slot: int) -> int | None:
        if diagram_tag == "L" and slot < bot:
            return slot
        if diagram_tag == "U" and slot >= mid:
            return bot + (slot - mid)
        return None

    for start in range(bot + top):
        if result[start] != -1:
            continue
        tag, slot = ("L", start) if start < bot else ("U", start - bot + mid)
        while True:
            slot = (lower if tag == "L" else upper).pairing[slot]
            ext = external_id(tag, slot)
            if ext is not None:
                result[start], result[ext] = ext, start
                break
            if tag == "L":
                i = (bot + mid - 1) - slot  # middle index
                seen_mid[i] = True
                tag, slot = "U", i
            else:
                i = slot
                seen_mid[i] = True
                tag, slot = "L", lower_mid[i]

    loops = 0
    for i in range(mid):
        if seen_mid[i]:
            continue
        loops += 1
        tag, slot = "U", i
        while True:
            slot = (lower if tag == "L" else upper).pairing[slot]
            if tag == "U":
                i2 = slot
                if seen_mid[i2]:
                    break
                seen_mid[i2] = True
                tag, slot = "L", lower_mid[i2]
            else:
                i2 = (bot + mid - 1) - slot
                if seen_mid[i2]:
                    break
                seen_mid[i2] = True
                tag, slot = "U", i2

    return TLDiagram(bot, top, tuple(result)), loops


def tensor_pairings(f: TLDiagram, g: TLDiagram) -> TLDiagram:
    """Place g to the right of f."""
    fb, ft, gb, gt = f.bottom, f.top, g.bottom, g.top
    bot, top = fb + gb, ft + gt
    n = bot + top

    def to_new(tag: str, slot: int) -> int:
        if tag == "f":
            return slot if slot < fb else bot + gt + (slot - fb)
        return fb + slot if slot < gb else bot + (slot - gb)

    result = [-1] * n
    for tag, diagram in (("f", f), ("g", g)):
        for s, j in enumerate(diagram.pairing):
            result[to_new(tag, s)] = to_new(tag, j)
    return TLDiagram(bot, top, tuple(result))


def rotate_pairing(d: TLDiagram) -> TLDiagram:
    """One counterclockwise click: the first bottom point moves to the last top slot."""
    n = d.bottom + d.top
    new = [-1] * n
    for s in range(n):
        new[s] = (d.pairing[(s + 1) % n] - 1) % n
    return TLDiagram(d.bottom, d.top, tuple(new))


def flip_pairing(d: TLDiagram) -> TLDiagram:
    """Vertical mirror (transpose): swap source and target."""
    b, t = d.bottom, d.top
    n = b + t

    def to_new(s: int) -> int:
        # old bottom i -> new top i (slot t + (b-1-i)); old top j -> new bottom j
        return t + (b - 1 - s) if s < b else n - 1 - s

    new = [-1] * n
    for s, j in enumerate(d.pairing):
        new[to_new(s)] = to_new(j)
    return TLDiagram(t, b, tuple(new))


def closure_loops(d: TLDiagram) -> int:
    """Loop count of the spherical trace closure (bottom i joined to top i)."""
    assert d.bottom == d.top
    n = d.bottom + d.top
    seen = [False] * n
    loops = 0
    for start in range(n):
        if seen[start]:
            continue
        loops += 1
        s = start
        while not seen[s]:
            seen[s] = True
            s = d.pairing[s]
            seen[s] = True
            s = n - 1 - s  # the closure arc
    return loops


def tl_basis(k: int, which: int = 1) -> list[TLDiagram]:
    """All diagrams with k bottom and k top points, in a deterministic order."""
    assert k >= 0
    return [TLDiagram(k, k, p) for p in _noncrossing_pairings(2 * k)]


def hom_basis(bottom: int, top: int) -> list[TLDiagram]:
    assert (bottom + top) % 2 == 0
    return [TLDiagram(bottom, top, p) for p in _noncrossing_pairings(bottom + top)]


@dataclass
class TLElement:
    """Linear combination of TL diagrams sharing a shape, with a loop scalar."""

    which: int
    source: int
    target: int
    combo: dict[TLDiagram, RatFunc2]
    delta: RatFunc2 = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        if self.delta is None:
            self.delta = qint(2, self.which)
        clean = {}
        for d, c in self.combo.items():
            assert d.bottom == self.source and d.top == self.target
            if not c.is_zero():
                clean[d] = c
        self.combo = clean

    @classmethod
    def from_diagram(cls, d: TLDiagram, which: int = 1, delta: RatFunc2 | None = None) -> TLElement:
        return cls(which, d.bottom, d.top, {d: ONE}, delta)

    @classmethod
    def identity(cls, k: int, which: int = 1, delta: RatFunc2 | None = None) -> TLElement:
        return cls.from_diagram(TLDiagram.identity(k), which, delta)

    @classmethod
    def cup_cap(cls, i: int, k: int, which: int = 1, delta: RatFunc2 | None = None) -> TLElement:
        return cls.from_diagram(TLDiagram.cup_cap(i, k), which, delta)

    def _like(self, source: int, target: int, combo: dict) -> TLElement:
        return TLElement(self.which, source, target, combo, self.delta)

    def is_zero(self) -> bool:
        return not self.combo

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        if (self.source, self.target) != (other.source, other.target):
            return False
        keys = set(self.combo) | set(other.combo)
        zero = RatFunc2.const(0)
        return all(self.combo.get(k, zero) == other.combo.get(k, zero) for k in keys)

    def __add__(self, other: TLElement) -> TLElement:
        assert (self.source, self.target) == (other.source, other.target)
        combo = dict(self.combo)
        for d, c in other.combo.items():
            combo[d] = combo[d] + c if d in combo else c
        return self._like(self.source, self.target, combo)

    def __neg__(self) -> TLElement:
        return self._like(self.source, self.target, {d: -c for d, c in self.combo.items()})

    def __sub__(self, other: TLElement) -> TLElement:
        return self + (-other)

    def scaled(self, factor: RatFunc2) -> TLElement:
        return self._like(self.source, self.target, {d: c * factor for d, c in self.combo.items()})

    def __mul__(self, other: TLElement) -> TLElement:
        """Composition self o other (self stacked on top of other)."""
        assert isinstance(other, TLElement)
        assert self.source == other.target, "shape mismatch in composition"
        delta_pow = {0: None}
        terms: dict[TLDiagram, list[RatFunc2]] = {}
        for du, cu in self.combo.items():
            for dl, cl in other.combo.items():
                d, loops = compose_pairings(du, dl)
                term = cu * cl
                if loops:
                    if loops not in delta_pow:
                        delta_pow[loops] = self.delta**loops
                    term = term * delta_pow[loops]
                terms.setdefault(d, []).append(term)
        combo = {d: ratfunc_sum(parts) for d, parts in terms.items()}
        return self._like(other.source, self.target, combo)

    def __matmul__(self, other: TLElement) -> TLElement:
        terms: dict[TLDiagram, list[RatFunc2]] = {}
        for df, cf in self.combo.items():
            for dg, cg in other.combo.items():
                d = tensor_pairings(df, dg)
                terms.setdefault(d, []).append(cf * cg)
        combo = {d: ratfunc_sum(parts) for d, parts in terms.items()}
        return self._like(self.source + other.source, self.target + other.target, combo)

    def rotated(self) -> TLElement:
        return self._like(self.source, self.target, {rotate_pairing(d): c for d, c in self.combo.items()})

    def flipped(self) -> TLElement:
        return self._like(self.target, self.source, {flip_pairing(d): c for d, c in self.combo.items()})

    def trace(self) -> RatFunc2:
        assert self.source == self.target, "trace needs an endomorphism"
        total = RatFunc2.const(0)
        for d, c in self.combo.items():
            total = total + c * self.delta ** closure_loops(d)
        return total


def tl_compose(f: TLElement, g: TLElement) -> TLElement:
    """Compose f o g (g first); closed loops contribute the loop scalar each."""
    assert f.which == g.which
    return f * g


def tl_tensor(f: TLElement, g: TLElement) -> TLElement:
    assert f.which == g.which
    return f @ g


def tl_trace(f: TLElement) -> RatFunc2:
    return f.trace()


def tl_rotate(f: TLElement) -> TLElement:
    return f.rotated()


_jw_cache: dict[tuple[int, int, int], TLElement] = {}


def jw(n: int, which: int = 1, delta: RatFunc2 | None = None) -> TLElement:
    """Jones-Wenzl projection on n strands, by the Wenzl recursion."""
    if n < 1:
        raise ValueError("Jones-Wenzl projections need n >= 1")
    key = (n, which, id(delta))
    cached = _jw_cache.get(key)
    if cached is not None:
        return cached

    if n == 1:
        result = TLElement.identity(1, which, delta)
    else:
        prev = jw(n - 1, which, delta)
        d = prev.delta
        # quantum integers from the loop scalar: [k+1] = delta*[k] - [k-1]
        qn = [RatFunc2.const(0), RatFunc2.const(1)]
        while len(qn) <= n:
            qn.append(d * qn[-1] - qn[-2])
        wide = prev @ TLElement.identity(1, which, delta)
        e = TLElement.cup_cap(n - 2, n, which, delta)
        result = wide - (wide * e * wide).scaled(qn[n - 1] / qn[n])
    _jw_cache[key] = result
    return result
