"""Independent brute-force reference implementations used as test oracles.

Deliberately written with different techniques than the package (bitmask
subset iteration, token-set matching, explicit nested loops) so agreement
is meaningful.
"""

from itertools import product


def brute_force_assignments(sizes, kmin, kmax):
    """Yield every prompt of a space as a tuple of (category_pos, index0)
    pairs, by iterating subsets as bitmasks and assignments via product."""
    n = len(sizes)
    for mask in range(1 << n):
        picked = [i for i in range(n) if mask >> i & 1]
        if not kmin <= len(picked) <= kmax:
            continue
        for combo in product(*(range(sizes[i]) for i in picked)):
            yield tuple(zip(picked, combo))


def brute_force_count(sizes, kmin, kmax):
    return sum(1 for _ in brute_force_assignments(sizes, kmin, kmax))


def naive_rule_matches(slots, tokens):
    """slots: list of sets of cell tokens; tokens: set of prompt tokens.
    A rule matches when every slot shares at least one token."""
    for slot in slots:
        if not (slot & tokens):
            return False
    return True


def naive_admissible(rule_slot_sets, tokens):
    for slots in rule_slot_sets:
        if naive_rule_matches(slots, tokens):
            return False
    return True


def naive_count_admissible(matrix_tokens, kmin, kmax, rule_slot_sets):
    """matrix_tokens: list per category of cell-token lists."""
    sizes = [len(c) for c in matrix_tokens]
    kept = 0
    for assignment in brute_force_assignments(sizes, kmin, kmax):
        tokens = {matrix_tokens[pos][idx] for pos, idx in assignment}
        if naive_admissible(rule_slot_sets, tokens):
            kept += 1
    return kept


def all_cross_pairs(matrix_tokens):
    """Every unordered pair of cell tokens drawn from two different
    categories, enumerated explicitly."""
    pairs = set()
    for i, cat_a in enumerate(matrix_tokens):
        for cat_b in matrix_tokens[i + 1:]:
            for a in cat_a:
                for b in cat_b:
                    pairs.add(frozenset((a, b)))
    return pairs
