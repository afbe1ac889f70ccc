"""Independent brute-force implementations used to cross-check the ranker.

Kept deliberately naive and separate from the library code paths: dense
vocabulary vectors, explicit loops, no sparse shortcuts.
"""

import math


def brute_tf(count):
    return 0.0 if count == 0 else 1.0 + math.log(count, 10)


def brute_idf(n_docs, df):
    return math.log(n_docs / df, 10)


def brute_df(term, docs):
    return sum(1 for doc in docs if term in doc)


def brute_tfidf_score(query_terms, doc_terms, corpus_docs):
    """Sum over shared terms of tf(doc) * idf, df falling back to 1."""
    n = len(corpus_docs)
    total = 0.0
    for term in sorted(set(query_terms)):
        count = doc_terms.count(term)
        if count == 0:
            continue
        df = brute_df(term, [set(d) for d in corpus_docs]) or 1
        total += brute_tf(count) * brute_idf(n, df)
    return total


def brute_weight_vector(doc_terms, corpus_docs, vocabulary):
    n = len(corpus_docs)
    sets = [set(d) for d in corpus_docs]
    vec = []
    for term in vocabulary:
        df = brute_df(term, sets) or 1
        vec.append(brute_tf(doc_terms.count(term)) * brute_idf(n, df))
    return vec


def brute_cosine(u, v):
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def brute_matching(q, d):
    return float(len([x for x in q if x in d]))


def brute_dice(q, d):
    if not q and not d:
        return 0.0
    return 2.0 * len(q & d) / (len(q) + len(d))


def brute_overlap(q, d):
    return len(q & d) / min(len(q), len(d))


def brute_jaccard(q, d):
    if not q and not d:
        return 0.0
    return len(q & d) / len(q | d)
