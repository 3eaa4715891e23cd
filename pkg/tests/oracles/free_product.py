"""Brute-force conjugacy in ``Z/n_1 * ... * Z/n_r``.

Words are lists of ``(generator, exponent)``.  Two words are conjugate iff
some reduced conjugator ``g`` of bounded length makes ``g u g^-1`` freely
equal to ``v``.  This uses plain (non-cyclic) reduction only.
"""

from __future__ import annotations

from itertools import product


def reduce_word(word, orders):
    st = []
    for g, e in word:
        e %= orders[g - 1]
        if e == 0:
            continue
        if st and st[-1][0] == g:
            e2 = (st.pop()[1] + e) % orders[g - 1]
            if e2:
                st.append((g, e2))
        else:
            st.append((g, e))
    return tuple(st)


def inverse(word, orders):
    return [(g, -e % orders[g - 1]) for g, e in reversed(word)]


def reduced_words(orders, max_len):
    r = len(orders)
    letters = [(g, e) for g in range(1, r + 1) for e in range(1, orders[g - 1])]
    yield ()
    for n in range(1, max_len + 1):
        for w in product(letters, repeat=n):
            if all(w[k][0] != w[k + 1][0] for k in range(n - 1)):
                yield w


def brute_conjugate(u, v, orders, max_len=None):
    ru, rv = reduce_word(u, orders), reduce_word(v, orders)
    bound = max_len if max_len is not None else len(ru) + len(rv) + 1
    for g in reduced_words(orders, bound):
        if reduce_word(list(g) + list(ru) + inverse(g, orders), orders) == rv:
            return True
    return False
