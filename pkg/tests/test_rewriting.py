import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kazhdan.presentations import free_group_spec, parse_presentation, presentation
from kazhdan.rewriting import RewriteBudget, bounded_completion

from oracles import perm_eval, perm_mul

Z3 = presentation(["a"], ["a^3"], name="Z/3")
A2 = presentation(["s", "t"], ["(s*t)^3"], involutions=["s", "t"], name="A2")


def test_cyclic_group_completes():
    rws = bounded_completion(Z3)
    assert rws.complete
    forms = {rws.normal_form(w) for w in itertools.product(range(2), repeat=4)}
    # normal forms are exactly e, a, A
    assert forms <= {(), (0,), (1,)}
    assert rws.normal_form((0, 0)) == (1,)      # a*a = a^-1
    assert rws.normal_form((0, 0, 0)) == ()


def test_coxeter_a2_completes_to_s3():
    rws = bounded_completion(A2)
    assert rws.complete
    # enumerate all normal forms of words up to length 6: must be |S3| = 6
    forms = set()
    for k in range(7):
        for w in itertools.product(range(2), repeat=k):
            forms.add(rws.normal_form(w))
    assert len(forms) == 6
    # brute-force S3 oracle: s = (01), t = (12); words with equal normal
    # form must evaluate to equal permutations, and conversely
    images = {0: (1, 0, 2), 1: (0, 2, 1)}
    by_perm = {}
    for w in forms:
        by_perm.setdefault(perm_eval(w, images), set()).add(w)
    assert all(len(v) == 1 for v in by_perm.values())
    assert len(by_perm) == 6


def test_free_group_reduces_freely_only():
    rws = bounded_completion(free_group_spec(3))
    assert rws.complete
    assert len(rws.rules) == 6      # one cancellation rule per symbol
    # a A b B b freely reduces to b
    assert rws.normal_form((0, 1, 2, 3, 2)) == (2,)


def test_budget_exhaustion_is_flagged_not_fatal():
    # Steinberg-flavoured presentation will not finish in a tiny budget
    spec = parse_presentation(
        "gens: x y z\n"
        "rel: x*y*x'*y'*z'\n"
        "rel: y*z*y'*z'*x'\n"
        "rel: z*x*z'*x'*y'\n")
    rws = bounded_completion(spec, RewriteBudget(max_rules=12, max_rule_len=40))
    assert not rws.complete
    # partial rules still rewrite soundly
    assert rws.normal_form((0, spec.alphabet.inv[0])) == ()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=1), max_size=10),
       st.lists(st.integers(min_value=0, max_value=1), max_size=10))
def test_identification_soundness_on_a2(w1, w2):
    """Equal normal forms imply equal elements in the S3 ground truth."""
    rws = bounded_completion(A2)
    images = {0: (1, 0, 2), 1: (0, 2, 1)}
    if rws.normal_form(tuple(w1)) == rws.normal_form(tuple(w2)):
        assert perm_eval(tuple(w1), images) == perm_eval(tuple(w2), images)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=1), max_size=12))
def test_normal_form_idempotent_and_invariant(word):
    rws = bounded_completion(A2)
    w = tuple(word)
    nf = rws.normal_form(w)
    assert rws.normal_form(nf) == nf
    images = {0: (1, 0, 2), 1: (0, 2, 1)}
    assert perm_eval(nf, images) == perm_eval(w, images)


def test_coarse_budget_never_merges_unequal():
    """Weaker budgets only split classes, never merge distinct elements."""
    spec = presentation(["s", "t"], ["(s*t)^3"], involutions=["s", "t"])
    fine = bounded_completion(spec)
    coarse = bounded_completion(spec, RewriteBudget(max_rules=3, max_rule_len=3))
    images = {0: (1, 0, 2), 1: (0, 2, 1)}
    words = [tuple(w) for k in range(5) for w in itertools.product(range(2), repeat=k)]
    for w1 in words:
        for w2 in words:
            if coarse.normal_form(w1) == coarse.normal_form(w2):
                assert perm_eval(w1, images) == perm_eval(w2, images)
    # and the coarse system induces a refinement of the fine partition
    for w1 in words:
        for w2 in words:
            if coarse.normal_form(w1) == coarse.normal_form(w2):
                assert fine.normal_form(w1) == fine.normal_form(w2)
