import hypothesis.strategies as st

from stallings.words import Alphabet, Word

AB = Alphabet(("a", "b"))


def raw_letters(alphabet, max_len=12):
    k = len(alphabet)
    return st.lists(
        st.tuples(st.integers(0, k - 1), st.sampled_from((1, -1))),
        max_size=max_len,
    )


def words_over(alphabet, max_len=12):
    return raw_letters(alphabet, max_len).map(lambda ls: Word(alphabet, ls))


def random_word(rng, alphabet, length):
    """Seeded reduced word of exactly the requested length."""
    k = len(alphabet)
    letters = []
    while len(letters) < length:
        idx, sign = rng.randrange(k), rng.choice((1, -1))
        if letters and letters[-1] == (idx, -sign):
            continue
        letters.append((idx, sign))
    return Word(alphabet, letters)
