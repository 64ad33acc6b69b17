"""Exhaustive verification of the sign-reversing-involution proofs.

Three weighted word models over the alphabet {a, b, c}, each with
weight (-1)^(number of a's):

* ``thm1``: words with 2#a + #b + #c = 2n+1, paired by the scan map
  (first ``a`` becomes ``bc``, first adjacent ``bc`` becomes ``a``);
  the fixed words are exactly c^i b^j.
* ``thm2``: the same scan map on words of cost 2n+2.
* ``thm3``: words of length n+1+k for some k in 0..n-1 whose non-a
  count is at least 2k+2, paired by the run-adjusting map sigma (the
  a-run between the first and second non-a letters grows or shrinks by
  one according to the parities of the two runs); sigma is undefined on
  words with fewer than three non-a letters.

The checker treats violations as data, not assertion failures: sigma
demonstrably maps some boundary words out of the model's set (inserting
an ``a`` can push the length past n+k, removing one can drop it below
n+1), and for n >= 6 some in-set orbits are not 2-cycles at all.  The
point of the module is to surface exactly where the printed pairing
argument closes and where it does not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .exactnum import binomial

ALPHABET = ("a", "b", "c")

#: words are plain strings over the three-letter alphabet
Word = str


class SizeLimitError(ValueError):
    """Model parameter beyond the supported exhaustive-enumeration size."""


#: caps keep full enumeration comfortably in memory/time; the largest
#: supported instances are a few million short strings
MAX_COST = 18          # thm1/thm2: 2#a + #b + #c
MAX_THM3_N = 7


def weight(w: str) -> int:
    """Wt(w) = (-1)^(number of a's)."""
    return -1 if w.count("a") % 2 else 1


def word_cost(w: str) -> int:
    return 2 * w.count("a") + w.count("b") + w.count("c")


@dataclass(frozen=True)
class WordModel:
    """One of the three word sets, fixed parameter n."""

    model_id: str  # thm1 | thm2 | thm3
    n: int

    def __post_init__(self):
        if self.model_id not in ("thm1", "thm2", "thm3"):
            raise ValueError(f"unknown model {self.model_id!r}")

    @property
    def cost(self) -> int:
        """Target 2#a + #b + #c for the scan models."""
        if self.model_id == "thm1":
            return 2 * self.n + 1
        if self.model_id == "thm2":
            return 2 * self.n + 2
        raise ValueError("thm3 words are stratified by length, not cost")

    def check_size(self) -> None:
        if self.model_id in ("thm1", "thm2"):
            if self.cost < 0 or self.cost > MAX_COST:
                raise SizeLimitError(
                    f"{self.model_id} cost {self.cost} outside [0, {MAX_COST}]")
        elif not 1 <= self.n <= MAX_THM3_N:
            raise SizeLimitError(f"thm3 n={self.n} outside [1, {MAX_THM3_N}]")

    # -- membership -------------------------------------------------------

    def contains(self, w: str) -> bool:
        if any(ch not in ALPHABET for ch in w):
            return False
        if self.model_id in ("thm1", "thm2"):
            return word_cost(w) == self.cost
        k = len(w) - (self.n + 1)
        if not 0 <= k <= self.n - 1:
            return False
        return (len(w) - w.count("a")) >= 2 * k + 2

    # -- stratified enumeration ---------------------------------------------

    def strata(self) -> list[int]:
        """Stratum indices k, mirroring the summation variable."""
        if self.model_id == "thm1":
            return list(range(0, self.n + 1))
        if self.model_id == "thm2":
            return list(range(0, self.n + 2))
        return list(range(0, self.n))

    def stratum_words(self, k: int) -> Iterator[str]:
        """Stream the words of stratum k in a deterministic order."""
        if self.model_id == "thm1":
            yield from _words_with_counts(self.n - k, 2 * k + 1)
        elif self.model_id == "thm2":
            yield from _words_with_counts(self.n + 1 - k, 2 * k)
        else:
            length = self.n + 1 + k
            for non_a in range(2 * k + 2, length + 1):
                yield from _words_with_counts(length - non_a, non_a)

    def expected_stratum_count(self, k: int) -> int:
        """The binomial-formula size of stratum k (scan models only)."""
        n = self.n
        if self.model_id == "thm1":
            return binomial(n + k + 1, 2 * k + 1) * 2 ** (2 * k + 1)
        if self.model_id == "thm2":
            return binomial(n + k + 1, 2 * k) * 2 ** (2 * k)
        raise ValueError("thm3 strata mix several non-a counts")


def _words_with_counts(n_a: int, n_other: int) -> Iterator[str]:
    """All words with exactly ``n_a`` a's and ``n_other`` letters from {b, c}."""
    if n_a < 0 or n_other < 0:
        return
    length = n_a + n_other
    for positions in itertools.combinations(range(length), n_a):
        pos = set(positions)
        slots = [i for i in range(length) if i not in pos]
        for fill in itertools.product("bc", repeat=n_other):
            chars = ["a"] * length
            for i, ch in zip(slots, fill):
                chars[i] = ch
            yield "".join(chars)


def enum_words(model: WordModel) -> Iterator[str]:
    """Stream the model's full set S exactly once, stratified."""
    model.check_size()
    for k in model.strata():
        yield from model.stratum_words(k)


# ---------------------------------------------------------------------------
# the maps


def scan_involution(w: str) -> str | None:
    """Swap the first ``a`` <-> first adjacent ``bc``; None when fixed.

    Scanning left to right, whichever of the two patterns appears first
    is swapped: an ``a`` becomes ``bc`` and a ``bc`` becomes ``a``.
    Fixed words are those with no ``a`` and no adjacent ``bc``, i.e.
    exactly c^i b^j.
    """
    ia = w.find("a")
    ibc = w.find("bc")
    if ia < 0 and ibc < 0:
        return None
    if ibc < 0 or (0 <= ia < ibc):
        return w[:ia] + "bc" + w[ia + 1:]
    return w[:ibc] + "a" + w[ibc + 2:]


def sigma(w: str) -> str | None:
    """The run-adjusting map of the thm3 model; None when undefined.

    With w = a^l x a^p y a^q z ... (x, y, z the first three non-a
    letters), the middle run a^p grows by one when p, q have the same
    parity and p != 1, or when they differ and p = 0; it shrinks by one
    in the remaining cases.  Undefined (fixed) when w has fewer than
    three non-a letters.
    """
    idx = [i for i, ch in enumerate(w) if ch != "a"]
    if len(idx) < 3:
        return None
    p = idx[1] - idx[0] - 1
    q = idx[2] - idx[1] - 1
    if (p % 2) == (q % 2):
        grow = p != 1
    else:
        grow = p == 0
    cut = idx[0] + 1
    if grow:
        return w[:cut] + "a" + w[cut:]
    return w[:cut] + w[cut + 1:]


# ---------------------------------------------------------------------------
# the checker


@dataclass
class InvolutionReport:
    model_id: str
    n: int
    stratum_counts: dict[int, int] = field(default_factory=dict)
    total_words: int = 0
    fixed_count: int = 0
    fixed_signed_sum: int = 0
    paired_count: int = 0
    total_signed_sum: int = 0
    closure_violations: list[tuple[str, str]] = field(default_factory=list)
    involutivity_violations: list[tuple[str, str, str]] = field(default_factory=list)
    sign_violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def violations_involved(self) -> int:
        bad = {w for w, _ in self.closure_violations}
        bad.update(w for w, _, _ in self.involutivity_violations)
        bad.update(w for w, _ in self.sign_violations)
        return len(bad)

    @property
    def clean(self) -> bool:
        return not (self.closure_violations or self.involutivity_violations
                    or self.sign_violations)


def check_involution(model: WordModel) -> InvolutionReport:
    """Apply the model's map to every word of S and account for everything.

    Checks, per word: closure (image in S), involutivity (map twice
    returns the word, whenever both applications are defined and their
    images stay in S), sign reversal, and fixed-set membership.  All
    violations are reported verbatim.
    """
    model.check_size()
    mapper = scan_involution if model.model_id in ("thm1", "thm2") else sigma
    rep = InvolutionReport(model_id=model.model_id, n=model.n)
    for k in model.strata():
        count = 0
        for w in model.stratum_words(k):
            count += 1
            wt = weight(w)
            rep.total_signed_sum += wt
            img = mapper(w)
            if img is None:
                rep.fixed_count += 1
                rep.fixed_signed_sum += wt
                continue
            ok = True
            if not model.contains(img):
                rep.closure_violations.append((w, img))
                ok = False
            else:
                if weight(img) != -wt:
                    rep.sign_violations.append((w, img))
                    ok = False
                back = mapper(img)
                if back is not None and model.contains(back) and back != w:
                    rep.involutivity_violations.append((w, img, back))
                    ok = False
            if ok:
                rep.paired_count += 1
        rep.stratum_counts[k] = count
        rep.total_words += count
    return rep
