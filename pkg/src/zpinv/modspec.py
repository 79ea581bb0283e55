"""Module specs: the prime p and the Jordan block sizes of the representation.

A spec ``W = V_{d_1} + ... + V_{d_k}`` determines the polynomial ring
``F_p[W]``.  Each summand ``i`` contributes a chain of variables indexed
by depth ``t = 0 .. d_i - 1``; depth 0 is the module generator of the
dual summand and applying the difference operator bumps the depth by
one.  Variables are totally ordered with later summands larger and,
inside a summand, smaller depth larger (the depth-0 generator is the
largest variable of its chain).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import groupby

from .errors import BlockTooLargeError, ModuleSpecSyntaxError
from .field import check_prime

# Depth-0 variable of each chain prints as z; deeper variables walk
# backwards through the alphabet (z, y, x, w, ...).
_DEPTH_LETTERS = "zyxwvut"


@dataclass(frozen=True)
class VariableId:
    """One polynomial variable: summand index (1-based) and chain depth."""

    summand: int
    depth: int

    @property
    def name(self) -> str:
        if self.depth < len(_DEPTH_LETTERS):
            return f"{_DEPTH_LETTERS[self.depth]}{self.summand}"
        return f"z{self.summand}d{self.depth}"

    def sort_key(self):
        # later summands are larger; within a summand smaller depth is larger
        return (self.summand, -self.depth)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        return self.sort_key() >= other.sort_key()

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class ModuleSpec:
    """A representation of Z/p given by the multiset of Jordan block sizes."""

    p: int
    blocks: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "blocks", tuple(int(d) for d in self.blocks))
        for d in self.blocks:
            if d < 1:
                raise ValueError(f"block sizes must be >= 1, got {d}")
            if d > self.p:
                raise BlockTooLargeError(d, self.p)

    # -- shape -------------------------------------------------------------

    @property
    def k(self) -> int:
        """Number of indecomposable summands = dim of the fixed subspace."""
        return len(self.blocks)

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    @property
    def reduced_blocks(self) -> tuple[int, ...]:
        return tuple(d for d in self.blocks if d >= 2)

    @property
    def is_trivial(self) -> bool:
        return all(d == 1 for d in self.blocks)

    def reduced(self) -> "ModuleSpec":
        """The spec with trivial summands stripped (may be empty)."""
        return ModuleSpec(self.p, self.reduced_blocks)

    # -- variables ---------------------------------------------------------

    @cached_property
    def variables(self) -> tuple[VariableId, ...]:
        """All variables in ascending order (smallest first)."""
        out = []
        for i, d in enumerate(self.blocks, start=1):
            for t in range(d - 1, -1, -1):
                out.append(VariableId(i, t))
        return tuple(out)

    @cached_property
    def _var_index(self) -> dict[VariableId, int]:
        return {v: j for j, v in enumerate(self.variables)}

    def variable(self, summand: int, depth: int) -> VariableId:
        if not 1 <= summand <= self.k:
            raise ValueError(f"summand {summand} out of range 1..{self.k}")
        if not 0 <= depth < self.blocks[summand - 1]:
            raise ValueError(
                f"depth {depth} out of range for V{self.blocks[summand - 1]}"
            )
        return VariableId(summand, depth)

    def var_index(self, var: VariableId) -> int:
        """Position of a variable in the ascending variable list."""
        try:
            return self._var_index[var]
        except KeyError:
            raise ValueError(f"{var!r} is not a variable of {self}") from None

    def summand_slice(self, summand: int) -> slice:
        """Columns of a given summand inside the ascending variable list."""
        start = sum(self.blocks[: summand - 1])
        return slice(start, start + self.blocks[summand - 1])

    # -- convenience constructors (implemented in sibling modules) ---------

    def monomial(self, exps=()):
        from .monomial import Monomial

        return Monomial.from_pairs(self, exps)

    def var_poly(self, summand: int, depth: int):
        from .polynomial import Polynomial

        return Polynomial.variable(self, self.variable(summand, depth))

    def one(self):
        from .polynomial import Polynomial

        return Polynomial.one(self)

    def zero(self):
        from .polynomial import Polynomial

        return Polynomial.zero(self)

    # -- text form ----------------------------------------------------------

    def to_text(self) -> str:
        parts = []
        for d, run in groupby(self.blocks):
            n = len(list(run))
            parts.append(f"V{d}" if n == 1 else f"{n}V{d}")
        return "+".join(parts) if parts else "0"

    def __str__(self):
        return f"{self.to_text()} (p={self.p})"


_TERM_RE = re.compile(r"(?:([0-9]+))?[vV]([0-9]+)\Z")


def parse_module_spec(text: str, p: int) -> ModuleSpec:
    """Parse ``term ("+" term)*`` with ``term := [multiplier] "V" n``.

    Whitespace is ignored and the letter V is case-insensitive.  Block
    sizes are checked against p (V_n exists only for n <= p).
    """
    check_prime(p)
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ModuleSpecSyntaxError("empty module spec")
    blocks: list[int] = []
    for term in compact.split("+"):
        m = _TERM_RE.match(term)
        if m is None:
            raise ModuleSpecSyntaxError(
                f"bad term {term!r} in module spec {text!r} "
                "(expected e.g. 'V2' or '3V2')"
            )
        mult = int(m.group(1)) if m.group(1) is not None else 1
        n = int(m.group(2))
        if mult < 1:
            raise ModuleSpecSyntaxError(f"multiplier must be >= 1 in {term!r}")
        if n < 1:
            raise ModuleSpecSyntaxError(f"block size must be >= 1 in {term!r}")
        blocks.extend([n] * mult)
    return ModuleSpec(p, tuple(blocks))
