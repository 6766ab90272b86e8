"""Cross-validation of the group kernel against sympy's permutation groups."""

import pytest

fuselab = pytest.importorskip("fuselab")
sympy_comb = pytest.importorskip("sympy.combinatorics")

from sympy.combinatorics import Permutation, PermutationGroup  # noqa: E402

CASES = {
    "S4": (4, [[[1, 2, 3, 4]], [[1, 2]]]),
    "S5": (5, [[[1, 2, 3, 4, 5]], [[1, 2]]]),
    "A5": (5, [[[1, 2, 3]], [[1, 2, 3, 4, 5]]]),
    "A6": (6, [[[1, 2, 3]], [[2, 3, 4, 5, 6]]]),
    "D8": (4, [[[1, 2, 3, 4]], [[2, 4]]]),
    "D12": (6, [[[1, 2, 3, 4, 5, 6]], [[2, 6], [3, 5]]]),
    "C12": (12, [[[i + 1 for i in range(12)]]]),
}


def both_groups(degree, generators):
    doc = {"format": "perm", "name": "x", "degree": degree, "generators": generators}
    ours = fuselab.load_group(doc)
    theirs = PermutationGroup(
        [Permutation(_cycles_to_perm(cycles, degree)) for cycles in generators])
    return doc, ours, theirs


def _cycles_to_perm(cycles, degree):
    perm = list(range(degree))
    for cyc in reversed(cycles):
        step = list(range(degree))
        for k, v in enumerate(cyc):
            step[v - 1] = cyc[(k + 1) % len(cyc)] - 1
        perm = [step[p] for p in perm]
    return perm


@pytest.mark.parametrize("name", sorted(CASES))
def test_orders_and_sylow_agree(name):
    degree, gens = CASES[name]
    doc, ours, theirs = both_groups(degree, gens)
    assert ours.order == theirs.order()

    order = theirs.order()
    for p in (2, 3, 5, 7):
        if order % p:
            continue
        sylow = fuselab.sylow_subgroup(doc, p)
        assert sylow.order == theirs.sylow_subgroup(p).order()


@pytest.mark.parametrize("name", sorted(CASES))
def test_center_and_solvability_agree(name):
    degree, gens = CASES[name]
    doc, ours, theirs = both_groups(degree, gens)
    assert fuselab.center_order(doc) == theirs.center().order()

    # solvable <=> p-solvable for every p dividing the order
    primes = [p for p in (2, 3, 5, 7) if theirs.order() % p == 0]
    ours_solvable = all(fuselab.is_p_solvable(doc, p) for p in primes)
    assert ours_solvable == theirs.is_solvable
