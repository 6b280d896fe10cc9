"""Brute-force cross-checks that share no code with the colored machinery.

The equalizer enumeration walks the tree of reduced words depth-first,
maintaining the reduced form of g(w)^-1 h(w) in a deque with an undo
journal, so the membership test per node is an emptiness check.  Letters
are encoded as signed integers +-(index + 1) throughout this module.
"""

from __future__ import annotations

import io
import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from .graphs import SubgroupHandle, graph_from_generators
from .words import Alphabet, Homomorphism, Word

DEFAULT_WORD_BUDGET = 10**7
DEFAULT_PRODUCT_BUDGET = 10**6


class BudgetExceededError(RuntimeError):
    """An enumeration would visit more words than the configured budget."""


class CompressionViolationError(RuntimeError):
    """A rank probe came out below the base rank.  Color injectivity
    makes that impossible, so a violation falsifies either the folding
    implementation or the certified subgroup; abort loudly."""


def predicted_word_count(num_generators: int, maxlen: int) -> int:
    """Reduced words of length exactly maxlen over num_generators
    generators: (2k)(2k-1)^(maxlen-1)."""
    if maxlen <= 0:
        return 0
    doubled = 2 * num_generators
    return doubled * (doubled - 1) ** (maxlen - 1)


def iter_reduced_words(alphabet: Alphabet, maxlen: int) -> Iterator[Word]:
    """All reduced words of length <= maxlen, the identity included,
    in depth-first prefix order."""
    codes = [c for idx in range(len(alphabet)) for c in (idx + 1, -(idx + 1))]
    prefix: list[int] = []

    def rec(last: int) -> Iterator[Word]:
        if len(prefix) >= maxlen:
            return
        for code in codes:
            if code == -last:
                continue
            prefix.append(code)
            yield Word._from_reduced(
                alphabet,
                tuple((abs(c) - 1, 1 if c > 0 else -1) for c in prefix),
            )
            yield from rec(code)
            prefix.pop()

    yield Word(alphabet)
    yield from rec(0)


def _encode(word: Word) -> list[int]:
    return [idx + 1 if sign > 0 else -(idx + 1) for idx, sign in word.letters]


def shortlex_key(word: Word):
    return (len(word.letters), tuple((idx, 0 if sign > 0 else 1) for idx, sign in word.letters))


@dataclass
class EnumerationResult:
    """Sample of the equalizer up to a length bound."""

    g: Homomorphism
    h: Homomorphism
    maxlen: int
    found: list[Word] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.found)


def enumerate_equalizer(g: Homomorphism, h: Homomorphism, maxlen: int,
                        budget: int = DEFAULT_WORD_BUDGET) -> EnumerationResult:
    """All nonempty reduced words w with |w| <= maxlen and g(w) = h(w),
    sorted shortlex (generator order, positives before inverses).

    The identity is omitted: it lies in every equalizer.  Raises
    BudgetExceededError before starting if the word tree is too large."""
    if g.domain != h.domain or g.codomain != h.codomain:
        raise ValueError("g and h must share domain and codomain")
    k = len(g.domain)
    estimate = predicted_word_count(k, maxlen)
    if estimate > budget:
        raise BudgetExceededError(
            f"enumeration to maxlen {maxlen} would visit about {estimate} words "
            f"(budget {budget})")

    codes = [c for idx in range(k) for c in (idx + 1, -(idx + 1))]
    image = {}
    for idx in range(k):
        image[idx + 1] = (_encode(g.images[idx]), _encode(h.images[idx]))
        image[-(idx + 1)] = (_encode(~g.images[idx]), _encode(~h.images[idx]))
    # difference word D(w) = g(w)^-1 h(w); appending letter x maps
    # D -> g(x)^-1 D h(x), i.e. prepend the negated g-image in order and
    # append the h-image in order, cancelling at both ends.
    front_seq = {code: [-c for c in gi] for code, (gi, _) in image.items()}
    back_seq = {code: hi for code, (_, hi) in image.items()}

    diff: deque[int] = deque()
    found_codes: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def push(code: int):
        front_popped: list[int] = []
        front_pushed = 0
        for c in front_seq[code]:
            if diff and diff[0] == -c and front_pushed == 0:
                front_popped.append(diff.popleft())
            else:
                diff.appendleft(c)
                front_pushed += 1
        back_popped: list[int] = []
        back_pushed = 0
        for c in back_seq[code]:
            if diff and diff[-1] == -c and back_pushed == 0:
                back_popped.append(diff.pop())
            else:
                diff.append(c)
                back_pushed += 1
        return front_popped, front_pushed, back_popped, back_pushed

    def undo(journal):
        front_popped, front_pushed, back_popped, back_pushed = journal
        for _ in range(back_pushed):
            diff.pop()
        for c in reversed(back_popped):
            diff.append(c)
        for _ in range(front_pushed):
            diff.popleft()
        for c in reversed(front_popped):
            diff.appendleft(c)

    def rec(last: int):
        for code in codes:
            if code == -last:
                continue
            journal = push(code)
            prefix.append(code)
            if not diff:
                found_codes.append(tuple(prefix))
            if len(prefix) < maxlen:
                rec(code)
            prefix.pop()
            undo(journal)

    if maxlen > 0:
        rec(0)

    domain = g.domain
    words = [
        Word._from_reduced(domain, tuple((abs(c) - 1, 1 if c > 0 else -1) for c in cs))
        for cs in found_codes
    ]
    words.sort(key=shortlex_key)
    return EnumerationResult(g=g, h=h, maxlen=maxlen, found=words)


@lru_cache(maxsize=128)
def _product_closure_cached(generators: tuple[Word, ...], depth: int) -> frozenset[Word]:
    identity = Word(generators[0].alphabet)
    factors = list(generators) + [~w for w in generators]
    seen = {identity}
    frontier = [identity]
    for _ in range(depth):
        nxt = []
        for u in frontier:
            for f in factors:
                w = u * f
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(seen)


def product_closure(generators, depth: int) -> frozenset[Word]:
    """All reduced products of at most depth factors drawn from the
    generators and their inverses (the identity included)."""
    generators = tuple(generators)
    if not generators:
        return frozenset()
    return _product_closure_cached(generators, depth)


def brute_membership(generators, word: Word, depth: int = 4,
                     budget: int = DEFAULT_PRODUCT_BUDGET) -> bool:
    """Naive membership: does the word equal some product of <= depth
    generators-or-inverses?  One-sided: False only means "not found
    within depth"."""
    generators = tuple(generators)
    for gen in generators:
        if gen.alphabet != word.alphabet:
            raise ValueError("generators and word must share an alphabet")
    if not generators:
        return word.is_identity()
    if (2 * len(generators)) ** depth > budget:
        raise BudgetExceededError(
            f"depth {depth} over {len(generators)} generators exceeds budget {budget}")
    return word in _product_closure_cached(generators, depth)


def rank_growth_probe(base: SubgroupHandle, extra, g: Homomorphism,
                      h: Homomorphism) -> int:
    """Rank of <basis(base) + extra> after folding.

    Every extra word must be equalized by (g, h), which is re-verified
    here by direct application.  Compression predicts the result is at
    least rank(base); anything smaller aborts loudly."""
    extra = list(extra)
    for word in extra:
        if g(word) != h(word):
            raise ValueError(f"extra word {word} is not in the equalizer")
    handle = graph_from_generators(base.graph.alphabet, base.basis() + extra)
    if handle.rank < base.rank:
        raise CompressionViolationError(
            f"COMPRESSION VIOLATED: base rank {base.rank} but enlarged subgroup "
            f"folded to rank {handle.rank}; this contradicts color injectivity "
            f"and must be investigated")
    return handle.rank


def write_sample(stream_or_path, result: EnumerationResult, n: Optional[int] = None) -> None:
    """Sample file: header '# eq-sample n=<n> maxlen=<L>', then one word
    per line in shortlex order."""
    own = isinstance(stream_or_path, (str, bytes, os.PathLike))
    stream = open(stream_or_path, "w") if own else stream_or_path
    try:
        tag = "?" if n is None else str(n)
        stream.write(f"# eq-sample n={tag} maxlen={result.maxlen}\n")
        for word in result.found:
            stream.write(f"{word}\n")
    finally:
        if own:
            stream.close()


def read_sample(stream_or_path, alphabet: Alphabet) -> tuple[str, int, list[Word]]:
    """Inverse of write_sample; returns (n tag, maxlen, words)."""
    own = isinstance(stream_or_path, (str, bytes, os.PathLike))
    stream = open(stream_or_path) if own else stream_or_path
    try:
        header = stream.readline().strip()
        parts = dict(tok.split("=", 1) for tok in header.split() if "=" in tok)
        if "maxlen" not in parts or not header.startswith("# eq-sample"):
            raise ValueError(f"not an eq-sample header: {header!r}")
        words = [alphabet.word(line.strip()) for line in stream if line.strip()]
        return parts.get("n", "?"), int(parts["maxlen"]), words
    finally:
        if own:
            stream.close()


def sample_to_string(result: EnumerationResult, n: Optional[int] = None) -> str:
    buf = io.StringIO()
    write_sample(buf, result, n=n)
    return buf.getvalue()
