"""Reduced-word algebra over finite free-group alphabets.

Words are kept freely reduced at all times, so equality of group elements
is plain equality of letter sequences.  Alphabets, words and homomorphisms
are immutable and safe to share between threads.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Iterable, Union


class Alphabet:
    """Ordered tuple of distinct generator names.

    The order is fixed at creation and drives every deterministic
    tie-break downstream (spanning trees, enumeration order, exports).
    Names must be printable, contain no whitespace or "^", and may not
    be the literal "1" (reserved for the empty word).
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        index: dict[str, int] = {}
        for pos, name in enumerate(names):
            if not name or name == "1" or "^" in name:
                raise ValueError(f"invalid generator name {name!r}")
            if any(ch.isspace() or not ch.isprintable() for ch in name):
                raise ValueError(f"invalid generator name {name!r}")
            if name in index:
                raise ValueError(f"duplicate generator name {name!r}")
            index[name] = pos
        self.names = names
        self._index = index

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Alphabet) and self.names == other.names)

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({', '.join(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def gen(self, gen: Union[int, str], sign: int = 1) -> "Word":
        """Single-letter word."""
        idx = self.index(gen) if isinstance(gen, str) else gen
        return Word(self, ((idx, sign),))

    def word(self, text: str) -> "Word":
        """Parse a word in the standard text format (see parse_word)."""
        return parse_word(text, self)


class Word:
    """Freely reduced word over an Alphabet.

    letters is a tuple of (generator index, sign) pairs with sign in
    {+1, -1}.  The constructor reduces its input with a single stack
    pass, so adjacent inverse pairs never survive; the empty word is the
    group identity.  Multiplication, inversion and powers stay reduced.
    """

    __slots__ = ("alphabet", "letters", "_hash")

    def __init__(self, alphabet: Alphabet, letters: Iterable[tuple[int, int]] = ()):
        k = len(alphabet)
        stack: list[tuple[int, int]] = []
        for idx, sign in letters:
            if not 0 <= idx < k:
                raise ValueError(f"generator index {idx} out of range for {alphabet!r}")
            if sign != 1 and sign != -1:
                raise ValueError(f"letter sign must be +1 or -1, got {sign!r}")
            if stack and stack[-1][0] == idx and stack[-1][1] == -sign:
                stack.pop()
            else:
                stack.append((idx, sign))
        self.alphabet = alphabet
        self.letters = tuple(stack)
        self._hash = None

    @classmethod
    def _from_reduced(cls, alphabet: Alphabet, letters: tuple) -> "Word":
        # fast path for sequences already known to be reduced
        word = object.__new__(cls)
        word.alphabet = alphabet
        word.letters = letters
        word._hash = None
        return word

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if self.alphabet != other.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        a, b = self.letters, other.letters
        i, j = len(a), 0
        # cancellation happens only at the seam of two reduced words
        while i > 0 and j < len(b):
            x, y = a[i - 1], b[j]
            if x[0] == y[0] and x[1] == -y[1]:
                i -= 1
                j += 1
            else:
                break
        return Word._from_reduced(self.alphabet, a[:i] + b[j:])

    def __invert__(self) -> "Word":
        return Word._from_reduced(
            self.alphabet, tuple((idx, -sign) for idx, sign in reversed(self.letters))
        )

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** (-n)
        out = Word._from_reduced(self.alphabet, ())
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alphabet.names, self.letters))
        return self._hash

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def exponent_sum(self, gen: Union[int, str]) -> int:
        """Signed count of occurrences of one generator."""
        idx = self.alphabet.index(gen) if isinstance(gen, str) else gen
        if not 0 <= idx < len(self.alphabet):
            raise ValueError(f"generator index {idx} out of range")
        return sum(sign for i, sign in self.letters if i == idx)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse the word text format: whitespace-separated tokens, each a
    generator name optionally suffixed "^-1"; the literal "1" is the
    empty word.  The result is reduced."""
    stripped = text.strip()
    if stripped == "1":
        return Word(alphabet)
    letters = []
    for token in stripped.split():
        if token.endswith("^-1"):
            name, sign = token[:-3], -1
        elif "^" in token:
            raise ValueError(f"malformed exponent in token {token!r} (only ^-1 is accepted)")
        else:
            name, sign = token, 1
        letters.append((alphabet.index(name), sign))
    return Word(alphabet, letters)


def format_word(word: Word) -> str:
    """Inverse of parse_word; emits "1" for the identity."""
    if not word.letters:
        return "1"
    names = word.alphabet.names
    return " ".join(names[idx] + ("" if sign > 0 else "^-1") for idx, sign in word.letters)


def swap_generators(word: Word) -> Word:
    """Image of a word under the automorphism exchanging the two
    generators of a rank-2 alphabet; an involution."""
    if len(word.alphabet) != 2:
        raise ValueError("swap_generators is defined on two-generator alphabets only")
    return Word._from_reduced(
        word.alphabet, tuple((1 - idx, sign) for idx, sign in word.letters)
    )


class Homomorphism:
    """Free-group map given by one codomain word per domain generator,
    extended to arbitrary words by substitution and reduction."""

    __slots__ = ("domain", "codomain", "images", "_inverse_images")

    def __init__(self, domain: Alphabet, codomain: Alphabet, images):
        if isinstance(images, Mapping):
            missing = [n for n in domain.names if n not in images]
            extra = [n for n in images if n not in domain._index]
            if missing or extra:
                raise ValueError(f"images must cover the domain exactly "
                                 f"(missing {missing}, extra {extra})")
            seq = [images[n] for n in domain.names]
        else:
            seq = list(images)
            if len(seq) != len(domain):
                raise ValueError(f"expected {len(domain)} images, got {len(seq)}")
        resolved = []
        for img in seq:
            if isinstance(img, str):
                img = parse_word(img, codomain)
            elif not isinstance(img, Word) or img.alphabet != codomain:
                raise ValueError(f"image {img!r} is not a word over the codomain")
            resolved.append(img)
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(resolved)
        self._inverse_images = tuple(~img for img in resolved)

    def __call__(self, word: Word) -> Word:
        if word.alphabet != self.domain:
            raise ValueError("word is not over the domain alphabet")
        out: list = []
        for idx, sign in word.letters:
            image = self.images[idx] if sign > 0 else self._inverse_images[idx]
            for letter in image.letters:
                if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                    out.pop()
                else:
                    out.append(letter)
        return Word._from_reduced(self.codomain, tuple(out))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Homomorphism)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.images))

    def as_dict(self) -> dict[str, str]:
        """Generator name -> image in word text format."""
        return {name: format_word(img) for name, img in zip(self.domain.names, self.images)}

    def __repr__(self) -> str:
        pairs = ", ".join(f"{n} -> {format_word(w)}" for n, w in zip(self.domain.names, self.images))
        return f"Homomorphism({pairs})"


def inclusion(domain: Alphabet, codomain: Alphabet) -> Homomorphism:
    """Embedding sending each generator to the same-named generator."""
    return Homomorphism(domain, codomain, [codomain.gen(name) for name in domain.names])
