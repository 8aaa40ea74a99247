"""Normal forms in G = F_2n * Z_m1 * ... * Z_mk and the finite-index free subgroup F.

Elements are stored as reduced syllable sequences.  Exponents of the torsion
generators e_i live in 1..m_i-1, exponents of the free generators h_j are
nonzero integers, and adjacent syllables never share a generator.  The
identity is the empty sequence, so word equality is the word problem.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

MAX_SYLLABLES = 10**6


class Gen(NamedTuple):
    kind: str  # "e" (torsion) or "h" (free)
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


def E(i: int) -> Gen:
    return Gen("e", i)


def H(j: int) -> Gen:
    return Gen("h", j)


@dataclass(frozen=True)
class GroupSpec:
    n: int
    k: int
    m: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if len(self.m) != self.k:
            raise ValueError(f"expected {self.k} orders, got {len(self.m)}")
        if any(x < 2 for x in self.m):
            raise ValueError("every cyclic order must be at least 2")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``n,k,m1,..,mk``."""
        try:
            parts = [int(p) for p in text.replace(" ", "").split(",") if p]
        except ValueError as exc:
            raise ValueError(f"bad spec {text!r}") from exc
        if len(parts) < 2:
            raise ValueError(f"bad spec {text!r}")
        return cls(parts[0], parts[1], tuple(parts[2:]))

    @property
    def excluded(self) -> bool:
        return (self.n, self.k) == (0, 1) or (self.n, self.k, self.m) == (0, 2, (2, 2))

    @property
    def order_product(self) -> int:
        out = 1
        for x in self.m:
            out *= x
        return out

    @property
    def euler_characteristic(self) -> Fraction:
        return 1 - 2 * self.n - self.k + sum(Fraction(1, x) for x in self.m)

    def generators(self) -> list[Gen]:
        return [E(i) for i in range(1, self.k + 1)] + [H(j) for j in range(1, 2 * self.n + 1)]

    def check(self, g: Gen) -> None:
        if g.kind == "e":
            ok = 1 <= g.index <= self.k
        elif g.kind == "h":
            ok = 1 <= g.index <= 2 * self.n
        else:
            ok = False
        if not ok:
            raise ValueError(f"generator {g} out of range for {self}")

    def order_of(self, g: Gen) -> int:
        """Cyclic order of a torsion generator, 0 for free generators."""
        return self.m[g.index - 1] if g.kind == "e" else 0

    def __str__(self) -> str:
        return ",".join(str(x) for x in (self.n, self.k) + self.m)


Syllable = tuple[Gen, int]


def _canon_exp(spec: GroupSpec, g: Gen, p: int) -> int:
    if g.kind == "e":
        return p % spec.m[g.index - 1]
    return p


def _push(spec: GroupSpec, stack: list[Syllable], g: Gen, p: int) -> None:
    p = _canon_exp(spec, g, p)
    if p == 0:
        return
    if stack and stack[-1][0] == g:
        q = _canon_exp(spec, g, stack[-1][1] + p)
        if q == 0:
            stack.pop()
        else:
            stack[-1] = (g, q)
    else:
        stack.append((g, p))
    if len(stack) > MAX_SYLLABLES:
        raise OverflowError("word exceeds the syllable cap")


@dataclass(frozen=True)
class Word:
    spec: GroupSpec
    syllables: tuple[Syllable, ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((self.spec, self.syllables)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._hash == other._hash and self.syllables == other.syllables and self.spec == other.spec

    def __len__(self) -> int:
        return len(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def letter_length(self) -> int:
        return sum(abs(p) for _, p in self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, p: int) -> "Word":
        return power(self, p)

    def inverse(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(str(g) if p == 1 else f"{g}^{p}" for g, p in self.syllables)

    def __repr__(self) -> str:
        return f"Word({self})"


def identity(spec: GroupSpec) -> Word:
    return Word(spec, ())


def reduce(spec: GroupSpec, raw: Iterable[tuple[Gen, int]]) -> Word:
    stack: list[Syllable] = []
    for g, p in raw:
        spec.check(g)
        _push(spec, stack, g, int(p))
    return Word(spec, tuple(stack))


def gen_word(spec: GroupSpec, g: Gen, p: int = 1) -> Word:
    return reduce(spec, [(g, p)])


def _same_spec(a: Word, b: Word) -> GroupSpec:
    if a.spec is not b.spec and a.spec != b.spec:
        raise ValueError(f"mixed specs {a.spec} and {b.spec}")
    return a.spec


def multiply(a: Word, b: Word) -> Word:
    spec = _same_spec(a, b)
    if not a.syllables:
        return b
    if not b.syllables:
        return a
    stack = list(a.syllables)
    rest = b.syllables
    # only the junction can cancel
    idx = 0
    while idx < len(rest):
        g, p = rest[idx]
        before = len(stack)
        top_same = bool(stack) and stack[-1][0] == g
        _push(spec, stack, g, p)
        idx += 1
        if not top_same or len(stack) == before:
            break
    stack.extend(rest[idx:])
    if len(stack) > MAX_SYLLABLES:
        raise OverflowError("word exceeds the syllable cap")
    return Word(spec, tuple(stack))


def multiply_all(spec: GroupSpec, words: Iterable[Word]) -> Word:
    out = identity(spec)
    for w in words:
        out = multiply(out, w)
    return out


def invert(a: Word) -> Word:
    spec = a.spec
    return Word(spec, tuple((g, _canon_exp(spec, g, -p)) for g, p in reversed(a.syllables)))


def power(a: Word, p: int) -> Word:
    base = a if p >= 0 else invert(a)
    out = identity(a.spec)
    for _ in range(abs(p)):
        out = multiply(out, base)
    return out


def conjugate(g: Word, h: Word) -> Word:
    """g h g^-1."""
    return multiply(multiply(g, h), invert(g))


def commutator(g: Word, h: Word) -> Word:
    """[g, h] = g h g^-1 h^-1."""
    return multiply(multiply(g, h), multiply(invert(g), invert(h)))


def abelianize(g: Word) -> tuple[tuple[int, ...], tuple[int, ...]]:
    spec = g.spec
    free = [0] * (2 * spec.n)
    tors = [0] * spec.k
    for gen, p in g.syllables:
        if gen.kind == "h":
            free[gen.index - 1] += p
        else:
            i = gen.index - 1
            tors[i] = (tors[i] + p) % spec.m[i]
    return tuple(free), tuple(tors)


def alpha(spec: GroupSpec) -> Word:
    raw: list[tuple[Gen, int]] = [(E(i), 1) for i in range(1, spec.k + 1)]
    for b in range(spec.n):
        a, c = H(2 * b + 1), H(2 * b + 2)
        raw += [(a, 1), (c, 1), (a, -1), (c, -1)]
    return reduce(spec, raw)


def sorted_rep(spec: GroupSpec, coset: Sequence[int]) -> Word:
    """e_k^{i_k} ... e_1^{i_1} for a tuple (i_1, ..., i_k)."""
    return reduce(spec, [(E(t), coset[t - 1]) for t in range(spec.k, 0, -1)])


def coset_tuples(spec: GroupSpec) -> list[tuple[int, ...]]:
    """All tuples in [m_1] x ... x [m_k], lexicographic."""
    return list(itertools.product(*[range(1, x + 1) for x in spec.m]))


# --- the free basis S of F -------------------------------------------------


@dataclass(frozen=True)
class SGenerator:
    """One free generator of F.

    kind "S1": conjugate of [e_t^{u_t}, e_{t-1}^{u_{t-1}} ... e_1^{u_1}] by
    e_k^{u_k} ... e_{t+1}^{u_{t+1}}; ``lam`` holds (u_1..u_t) and ``xi``
    holds (u_{t+1}..u_k).
    kind "S2": conjugate of h_l by e_k^{i_k} ... e_1^{i_1}; ``tup`` holds
    (i_1..i_k).
    """

    kind: str
    word: Word
    index: int
    t: int = 0
    lam: tuple[int, ...] = ()
    xi: tuple[int, ...] = ()
    l: int = 0
    tup: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind == "S1":
            return f"f[t={self.t},lam={self.lam},xi={self.xi}]"
        return f"h[l={self.l},i={self.tup}]"


def f_lambda(spec: GroupSpec, t: int, lam: Sequence[int]) -> Word:
    w = reduce(spec, [(E(s), lam[s - 1]) for s in range(t - 1, 0, -1)])
    return commutator(gen_word(spec, E(t), lam[t - 1]), w)


def g_xi(spec: GroupSpec, t: int, xi: Sequence[int]) -> Word:
    return reduce(spec, [(E(s), xi[s - t - 1]) for s in range(spec.k, t, -1)])


def lambda_set(spec: GroupSpec, t: int) -> list[tuple[int, ...]]:
    head = [x for x in itertools.product(*[range(1, spec.m[s] + 1) for s in range(t - 1)])
            if x != tuple(spec.m[: t - 1])]
    return [x + (u,) for x in head for u in range(1, spec.m[t - 1])]


def xi_set(spec: GroupSpec, t: int) -> list[tuple[int, ...]]:
    return list(itertools.product(*[range(1, spec.m[s] + 1) for s in range(t, spec.k)]))


class SBasis:
    """Enumeration of S = S1 u S2 with lookup tables for the rewriting step."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        gens: list[SGenerator] = []
        self._s1: dict[tuple[int, tuple[int, ...], tuple[int, ...]], int] = {}
        self._s2: dict[tuple[int, tuple[int, ...]], int] = {}
        for t in range(2, spec.k + 1):
            for lam in lambda_set(spec, t):
                f = f_lambda(spec, t, lam)
                for xi in xi_set(spec, t):
                    w = conjugate(g_xi(spec, t, xi), f)
                    self._s1[(t, lam, xi)] = len(gens)
                    gens.append(SGenerator("S1", w, len(gens), t=t, lam=lam, xi=xi))
        for l in range(1, 2 * spec.n + 1):
            hl = gen_word(spec, H(l))
            for tup in coset_tuples(spec):
                w = conjugate(sorted_rep(spec, tup), hl)
                self._s2[(l, tup)] = len(gens)
                gens.append(SGenerator("S2", w, len(gens), l=l, tup=tup))
        self.gens: tuple[SGenerator, ...] = tuple(gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __getitem__(self, i: int) -> SGenerator:
        return self.gens[i]

    def s1_index(self, t: int, lam: tuple[int, ...], xi: tuple[int, ...]) -> int:
        return self._s1[(t, lam, xi)]

    def s2_index(self, l: int, tup: tuple[int, ...]) -> int:
        return self._s2[(l, tup)]

    def expand(self, f: Sequence[tuple[int, int]]) -> Word:
        """Evaluate an S-word, given as (generator index, +-1) letters, in G."""
        out = identity(self.spec)
        for idx, sign in f:
            w = self.gens[idx].word
            out = multiply(out, w if sign > 0 else invert(w))
        return out

    def letter_word(self, idx: int, sign: int) -> Word:
        w = self.gens[idx].word
        return w if sign > 0 else invert(w)


_BASES: dict[GroupSpec, SBasis] = {}


def s_basis(spec: GroupSpec) -> SBasis:
    basis = _BASES.get(spec)
    if basis is None:
        basis = _BASES[spec] = SBasis(spec)
    return basis


def enumerate_S(spec: GroupSpec) -> list[SGenerator]:
    return list(s_basis(spec).gens)


def free_reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for idx, sign in letters:
        if out and out[-1][0] == idx and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((idx, sign))
    return tuple(out)


def sort_to_coset(g: Word) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
    """Return (f, i) with expand(f) * g = e_k^{i_k} ... e_1^{i_1}.

    ``f`` is a freely reduced word over S, as (generator index, +-1) letters.
    The word is consumed one letter at a time from the left while the state
    tuple tracks the sorted representative reached so far.
    """
    spec = g.spec
    basis = s_basis(spec)
    m = spec.m
    state = list(m)  # m_l stands for exponent 0
    rev: list[tuple[int, int]] = []  # f reversed, so prepending is append
    for gen, p in g.syllables:
        if gen.kind == "h":
            tup = tuple(state)
            idx = basis.s2_index(gen.index, tup)
            sign = -1 if p > 0 else 1
            for _ in range(abs(p)):
                rev.append((idx, sign))
            continue
        t = gen.index
        for _ in range(p):
            if t > 1 and any(state[s] != m[s] for s in range(t - 1)):
                head = tuple(state[: t - 1])
                xi = tuple(state[t:])
                cur = state[t - 1]
                nxt = cur % m[t - 1] + 1
                # factors prepended in the order: first, second; f reversed
                if cur != m[t - 1]:
                    rev.append((basis.s1_index(t, head + (cur,), xi), -1))
                if nxt != m[t - 1]:
                    rev.append((basis.s1_index(t, head + (nxt,), xi), 1))
            state[t - 1] = state[t - 1] % m[t - 1] + 1
    f = free_reduce(reversed(rev))
    return f, tuple(state)
