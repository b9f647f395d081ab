from hypothesis import strategies as st

from twistlog.words import GroupRingElement, LoopSum, cyclic_canonical, reduce


def letters(rank):
    return st.integers(1, rank).flatmap(lambda i: st.sampled_from((i, -i)))


def raw_words(rank, max_len=8):
    return st.lists(letters(rank), max_size=max_len).map(tuple)


def words(rank, max_len=8):
    return raw_words(rank, max_len).map(reduce)


def cyclic_words(rank, max_len=5):
    return raw_words(rank, max_len).map(cyclic_canonical).filter(bool)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def elements(rank, max_len=4, max_terms=3):
    return st.lists(st.tuples(words(rank, max_len), coeffs), max_size=max_terms).map(
        lambda ts: GroupRingElement(ts, rank=rank))


def loop_sums(rank, max_len=4, max_terms=2):
    return st.lists(st.tuples(cyclic_words(rank, max_len), coeffs), min_size=1, max_size=max_terms).map(
        lambda ts: LoopSum(ts, rank=rank))
