from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_words, dfa_accepts, language, matches, syntactic_order, table_of
from powrec.errors import AlphabetMismatchError, RegexSyntaxError
from powrec.language import (
    Dfa,
    FreeHom,
    Nfa,
    RecognizingHom,
    boolean_op,
    complement,
    counterexample,
    determinize,
    difference,
    empty_language,
    equivalent,
    forward_image_lp,
    free_inverse_on_words,
    from_words,
    intersection,
    inverse_image_hom,
    is_empty,
    join_word,
    lp_check,
    minimize,
    parse_regex,
    power_recognizer,
    preimage_is_multiplicative,
    quotient,
    recognize,
    recognizes,
    regex,
    shortest_word,
    split_word,
    syntactic_semigroup,
    transition_semigroup,
    union,
    universal,
)
from powrec.semigroup import brandt_b2, cyclic_group, find_isomorphism, is_aperiodic, trivial

AB = ("a", "b")


@st.composite
def dfas(draw, alphabet=AB, max_states=3):
    n = draw(st.integers(1, max_states))
    delta = [[draw(st.integers(0, n - 1)) for _ in alphabet] for _ in range(n)]
    accepting = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(alphabet, delta, 0, accepting)


def regexes():
    leaves = st.sampled_from(["a", "b"])
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.tuples(inner, inner).map(lambda p: f"({p[0]}|{p[1]})"),
            st.tuples(inner, inner).map(lambda p: p[0] + p[1]),
            st.tuples(inner, st.sampled_from("*+?")).map(lambda p: f"({p[0]}){p[1]}"),
        ),
        max_leaves=6,
    )


def minimal_size(D):
    """Distinct residual classes, with the start folded when it has a twin."""
    n = D.size

    def run(q, w):
        for sym in w:
            q = D.delta[q][D.alphabet.index(sym)]
        return q

    suffixes = [()] + list(all_words(D.alphabet, n + 1))
    sig = {q: tuple(run(q, s) in D.accepting for s in suffixes) for q in range(n)}
    entered = set()
    todo = list(D.delta[D.initial])
    while todo:
        q = todo.pop()
        if q not in entered:
            entered.add(q)
            todo.extend(D.delta[q])
    classes = {sig[q] for q in entered}
    start = sig[D.initial]
    if D.initial in entered or any(c[1:] == start[1:] for c in classes):
        return len(classes)
    return len(classes) + 1


class TestWords:
    def test_split(self):
        assert split_word("abba", AB) == ("a", "b", "b", "a")
        assert split_word("a|1 b|0", ("a|0", "a|1", "b|0", "b|1")) == ("a|1", "b|0")
        assert split_word("eps", AB) == ()
        with pytest.raises(ValueError):
            split_word("abc", AB)

    def test_join(self):
        assert join_word(("a", "b")) == "ab"
        assert join_word(("a|1", "b|0")) == "a|1.b|0"


class TestRegex:
    @pytest.mark.parametrize("pattern, alphabet, members, non_members", [
        ("a", ("a",), ["a"], ["aa"]),
        ("(ab)+", AB, ["ab", "abab"], ["a", "aba", "ba"]),
        ("(aa)+", ("a",), ["aa", "aaaa"], ["a", "aaa"]),
    ])
    def test_examples(self, pattern, alphabet, members, non_members):
        D = regex(pattern, alphabet)
        assert all(D.accepts(tuple(w)) for w in members)
        assert not any(D.accepts(tuple(w)) for w in non_members)

    @settings(max_examples=150, deadline=None)
    @given(regexes())
    def test_agrees_with_re(self, pattern):
        D = regex(pattern, AB)
        N = parse_regex(pattern, AB)
        for w in all_words(AB, 6):
            expected = matches(pattern, w)
            assert D.accepts(w) == expected
            assert N.accepts(w) == expected

    def test_multi_character_symbols(self):
        D = regex("'x1' 'x2'+", ("x1", "x2"))
        assert D.accepts(("x1", "x2", "x2")) and not D.accepts(("x1",))

    @pytest.mark.parametrize("pattern", ["", "(a", "a)", "c", "a||", "*a"])
    def test_syntax_errors(self, pattern):
        with pytest.raises(RegexSyntaxError):
            regex(pattern, AB)

    def test_epsilon_is_never_accepted(self):
        assert not regex("a*", AB).accepts(())
        assert equivalent(regex("a*", AB), regex("a+", AB))


class TestAutomata:
    def test_determinize_dfa(self):
        D = regex("(ab)+", AB)
        assert equivalent(determinize(Nfa.from_dfa(D)), D)

    def test_minimize_even_a(self):
        loose = Dfa(("a",), ((1,), (2,), (3,), (2,)), 0, {2})
        assert language(loose, 10) == language(regex("(aa)+", ("a",)), 10)
        M = minimize(loose)
        assert M.size == 2
        assert equivalent(M, loose)

    @settings(max_examples=300, deadline=None)
    @given(dfas(max_states=4))
    def test_minimize_matches_residual_oracle(self, D):
        M = minimize(D)
        assert language(M, 7) == language(D, 7)
        assert M.size == minimal_size(D)
        assert minimize(M) == M

    @settings(max_examples=200, deadline=None)
    @given(dfas(), dfas())
    def test_boolean_ops(self, D1, D2):
        L1, L2 = language(D1, 7), language(D2, 7)
        assert language(intersection(D1, D2), 7) == L1 & L2
        assert language(union(D1, D2), 7) == L1 | L2
        assert language(difference(D1, D2), 7) == L1 - L2
        assert language(boolean_op(D1, D2, "xor"), 7) == L1 ^ L2
        assert language(complement(D1), 7) == set(all_words(AB, 7)) - L1

    @settings(max_examples=200, deadline=None)
    @given(dfas(), dfas())
    def test_equivalence_and_counterexample(self, D1, D2):
        L1, L2 = language(D1, 9), language(D2, 9)
        w = counterexample(D1, D2)
        assert equivalent(D1, D2) == (L1 == L2)
        if w is None:
            assert L1 == L2
        else:
            assert dfa_accepts(D1, w) != dfa_accepts(D2, w)
            assert len(w) == min(len(x) for x in L1 ^ L2)

    def test_double_complement(self):
        D = regex("(ab)+", AB)
        assert equivalent(D, complement(complement(D)))

    def test_alphabet_order_is_irrelevant(self):
        assert equivalent(regex("ab", ("a", "b")), regex("ab", ("b", "a")))
        with pytest.raises(AlphabetMismatchError):
            equivalent(regex("a", ("a",)), regex("a", AB))

    def test_universal_and_empty(self):
        assert language(universal(AB), 4) == set(all_words(AB, 4))
        assert is_empty(empty_language(AB))
        assert shortest_word(regex("ba(a|b)", AB)) == ("b", "a", "a")

    @settings(max_examples=100, deadline=None)
    @given(st.sets(st.text("ab", min_size=1, max_size=5), max_size=6))
    def test_from_words(self, members):
        D = from_words(AB, [tuple(w) for w in members])
        assert language(D, 6) == {tuple(w) for w in members}


class TestQuotient:
    def test_identity(self):
        D = regex("(ab)+", AB)
        assert equivalent(quotient(D, (), ()), D)

    def test_left_by_a(self):
        Q = quotient(regex("(ab)+", AB), ("a",), ())
        assert language(Q, 8) == language(regex("b(ab)*", AB), 8)

    def test_both_sides(self):
        Q = quotient(regex("(aa)+", ("a",)), ("a",), ("a",))
        assert equivalent(Q, regex("(aa)+", ("a",)))

    @settings(max_examples=200, deadline=None)
    @given(dfas(), st.text("ab", max_size=3), st.text("ab", max_size=3))
    def test_oracle(self, D, u, v):
        Q = quotient(D, tuple(u), tuple(v))
        for w in all_words(AB, 6):
            assert Q.accepts(w) == dfa_accepts(D, tuple(u) + w + tuple(v))


class TestSyntactic:
    def test_universal(self):
        S, eta = syntactic_semigroup(universal(("a",)))
        assert S.order == 1

    def test_even_a(self):
        S, eta = syntactic_semigroup(regex("(aa)+", ("a",)))
        assert find_isomorphism(S, cyclic_group(2)) is not None
        assert eta.accepting == {eta.image(("a", "a"))}

    def test_xy_plus_is_b2(self):
        S, eta = syntactic_semigroup(regex("(xy)+", ("x", "y")))
        assert S.order == 5
        assert is_aperiodic(S)
        assert find_isomorphism(S, brandt_b2()) is not None
        assert eta.accepting == {eta.image(("x", "y"))}
        t = table_of(S)
        assert all(t[t[s][s]][s] == t[s][s] for s in range(5))

    @settings(max_examples=150, deadline=None)
    @given(dfas(max_states=3))
    def test_order_matches_congruence_oracle(self, D):
        S, eta = syntactic_semigroup(D)
        assert S.order == syntactic_order(D)
        for w in all_words(AB, 5):
            assert eta.accepts(w) == dfa_accepts(D, w)

    @settings(max_examples=100, deadline=None)
    @given(dfas(max_states=3))
    def test_transition_semigroup_table(self, D):
        S, eta = transition_semigroup(D)
        for u, v in itertools.product(all_words(AB, 2), repeat=2):
            assert S.mul(eta.image(u), eta.image(v)) == eta.image(u + v)


class TestRecognize:
    def test_trivial(self):
        eta = RecognizingHom(AB, trivial(), (0, 0), {0})
        assert equivalent(recognize(eta), universal(AB))

    def test_even_a(self):
        eta = RecognizingHom(("a",), cyclic_group(2), (1,), {0})
        assert equivalent(recognize(eta), regex("(aa)+", ("a",)))
        assert recognizes(eta, regex("(aa)+", ("a",)))
        assert not recognizes(eta, regex("(aaa)+", ("a",)))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 4), st.integers(0, 4), st.sets(st.integers(0, 4)))
    def test_cayley_matches_products(self, x, y, accepting):
        S = brandt_b2()
        eta = RecognizingHom(AB, S, (x, y), accepting)
        D = recognize(eta)
        t = table_of(S)
        for w in all_words(AB, 6):
            value = (x, y)[AB.index(w[0])]
            for sym in w[1:]:
                value = t[value][(x, y)[AB.index(sym)]]
            assert D.accepts(w) == (value in accepting)


def free_homs(source=("x", "y"), target=AB, max_length=2):
    images = [w for w in all_words(target, max_length)]
    for choice in itertools.product(images, repeat=len(source)):
        yield FreeHom(source, target, choice)


class TestFreeHoms:
    def test_lp(self):
        assert lp_check(FreeHom(("x", "y"), ("a",), (("a",), ("a",))))
        assert not lp_check(FreeHom(("x",), AB, (("a", "b"),)))
        with pytest.raises(ValueError):
            FreeHom(("x",), AB, ((),))

    @pytest.mark.parametrize("f", list(free_homs()))
    def test_inverse_on_words_matches_enumeration(self, f):
        for w in all_words(AB, 4):
            brute = {u for u in all_words(f.source, len(w)) if f.apply(u) == w}
            assert free_inverse_on_words(f, w) == brute

    def test_non_lp_preimage_not_multiplicative(self):
        f = FreeHom(("x", "y"), ("a",), (("a",), ("a", "a")))
        assert not preimage_is_multiplicative(f, ("a",), ("a",))
        g = FreeHom(("x", "y"), ("a",), (("a",), ("a",)))
        assert preimage_is_multiplicative(g, ("a",), ("a", "a"))


class TestImages:
    def test_forward_identity(self):
        L = regex("(ab)+", AB)
        assert equivalent(forward_image_lp(FreeHom(AB, AB, (("a",), ("b",))), L), L)

    def test_forward_collapse(self):
        f = FreeHom(("x", "y"), ("a",), (("a",), ("a",)))
        image = forward_image_lp(f, regex("(xy)+", ("x", "y")))
        assert equivalent(image, regex("(aa)+", ("a",)))

    def test_forward_relabel(self):
        f = FreeHom(("x", "y"), AB, (("a",), ("b",)))
        assert equivalent(forward_image_lp(f, regex("(xy)+", ("x", "y"))), regex("(ab)+", AB))

    def test_forward_needs_lp(self):
        with pytest.raises(ValueError):
            forward_image_lp(FreeHom(("x",), AB, (("a", "b"),)), regex("x", ("x",)))

    @settings(max_examples=100, deadline=None)
    @given(dfas(alphabet=("x", "y")), st.sampled_from([f for f in free_homs(max_length=1)]))
    def test_forward_oracle(self, L, f):
        image = forward_image_lp(f, L)
        for w in all_words(AB, 6):
            expected = any(dfa_accepts(L, u) for u in free_inverse_on_words(f, w))
            assert image.accepts(w) == expected

    @pytest.mark.parametrize("image, pattern", [(("a", "b"), "(ab)+"), (("a", "a"), "(aa)+")])
    def test_inverse_examples(self, image, pattern):
        h = FreeHom(("c",), AB, (image,))
        assert equivalent(inverse_image_hom(h, regex(pattern, AB)), regex("c+", ("c",)))

    def test_inverse_identity(self):
        L = regex("(ab)+", AB)
        assert equivalent(inverse_image_hom(FreeHom(AB, AB, (("a",), ("b",))), L), L)

    @settings(max_examples=100, deadline=None)
    @given(dfas(), st.sampled_from(list(free_homs())))
    def test_inverse_oracle(self, L, h):
        pre = inverse_image_hom(h, L)
        for u in all_words(h.source, 5):
            assert pre.accepts(u) == dfa_accepts(L, h.apply(u))


class TestPowerRecognizer:
    def test_identity_gives_singletons(self):
        L = regex("(xy)+", ("x", "y"))
        S, g = syntactic_semigroup(L)
        f = FreeHom(("x", "y"), ("x", "y"), (("x",), ("y",)))
        h = power_recognizer(f, g)
        P = h.target
        assert [P.mask(v) for v in h.letter_map] == [1 << v for v in g.letter_map]
        assert equivalent(recognize(h), L)

    def test_collapse_to_even_a(self):
        S, g = syntactic_semigroup(regex("(xy)+", ("x", "y")))
        f = FreeHom(("x", "y"), ("a",), (("a",), ("a",)))
        h = power_recognizer(f, g)
        assert h.target.mask(h.letter_map[0]) == (1 << g.letter_map[0]) | (1 << g.letter_map[1])
        assert equivalent(recognize(h), regex("(aa)+", ("a",)))

    def test_empty_accepting(self):
        S, g = syntactic_semigroup(regex("(xy)+", ("x", "y")))
        f = FreeHom(("x", "y"), ("a",), (("a",), ("a",)))
        assert is_empty(recognize(power_recognizer(f, g.with_accepting(()))))

    @settings(max_examples=100, deadline=None)
    @given(dfas(alphabet=("x", "y")), st.sampled_from(list(free_homs(max_length=1))))
    def test_recognizes_forward_image(self, L, f):
        _, g = syntactic_semigroup(L)
        h = power_recognizer(f, g)
        assert equivalent(recognize(h), forward_image_lp(f, L))
