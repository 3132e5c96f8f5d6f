from functools import lru_cache

from django.conf import settings

from ggdouble.dsl import load_document, load_presentation
from ggdouble.freeggd import free_truncation

PAIRS = {
    'z2_z3': ('omega_z2_2omega_z3.dcat', 'omega_z2_2omega_z3_internal.dcat'),
    'z3_z2': ('omega_z3_2omega_z2.dcat', 'omega_z3_2omega_z2_internal.dcat'),
    'arrow_squares': ('arrow_squares_base.dcat', 'arrow_squares.dcat'),
    'arrow_z2': ('arrow_z2.dcat', 'arrow_z2_quintets.dcat'),
    'labelled': ('labelled_arrow.dcat', 'labelled_arrow_internal.dcat'),
    'trivial': ('trivial.dcat', 'trivial_internal.dcat'),
}


def corpus_path(name):
    return settings.GGD_CORPUS_DIR / name


@lru_cache(maxsize=None)
def load(name):
    return load_presentation(corpus_path(name))


@lru_cache(maxsize=None)
def document(name):
    return load_document(corpus_path(name))


def pair(key):
    base, target = PAIRS[key]
    return load(base), load(target)


@lru_cache(maxsize=None)
def truncation(key, depth=2, word_bound=4):
    return free_truncation(pair(key)[0], depth, word_bound)


def reduced_words(g_letters, a_letters, bound):
    """Alternating words over two alphabets of non-unit elements."""
    letters = {'G': list(g_letters), 'A': list(a_letters)}
    words = [()]
    frontier = [()]
    for _ in range(bound):
        fresh = []
        for word in frontier:
            for kind in ('G', 'A'):
                if word and word[-1][0] == kind:
                    continue
                fresh.extend(word + ((kind, x),) for x in letters[kind])
        words.extend(fresh)
        frontier = fresh
    return words
