#include <doctest.h>

#include <random>

#include "cohen/group.hpp"

using namespace cohen;

namespace {

const Context K2(2, 4);
const Context K3(3, 4);

Element term(const Context& ctx, std::initializer_list<uint8_t> letters, uint32_t c) {
    return Element::from_terms(ctx, {{Monomial::from_letters(letters), c}});
}

// Random group word with roughly max_len letter occurrences: generators with
// small exponents, sprinkled with short commutators.
Word random_word(const Context& ctx, std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> gen_dist(1, ctx.letters);
    std::uniform_int_distribution<int> exp_dist(-2, 3);
    std::vector<Word> factors;
    int len = 0;
    while (len < max_len) {
        int roll = static_cast<int>(rng() % 10);
        if (roll < 7 || ctx.letters < 2) {
            int e = exp_dist(rng);
            if (e == 0)
                e = 1;
            factors.push_back(Word::power(Word::generator(gen_dist(rng)), e));
            len += std::abs(e);
        } else if (roll < 9) {
            Word c = Word::commutator(Word::generator(gen_dist(rng)),
                                      Word::generator(gen_dist(rng)));
            factors.push_back(std::move(c));
            len += 4;
        } else {
            Word inner = Word::commutator(
                Word::commutator(Word::generator(gen_dist(rng)),
                                 Word::generator(gen_dist(rng))),
                Word::generator(gen_dist(rng)));
            factors.push_back(std::move(inner));
            len += 10;
        }
    }
    return Word::product(std::move(factors));
}

}  // namespace

TEST_CASE("word parsing") {
    Word w = parse_word("x1 x2 x3", K3);
    CHECK(w == Word::product({Word::generator(1), Word::generator(2), Word::generator(3)}));

    Word c = parse_word("[[x1,x3],x2]^2", K3);
    CHECK(c == Word::power(Word::commutator(Word::commutator(Word::generator(1),
                                                             Word::generator(3)),
                                            Word::generator(2)),
                           2));

    CHECK(parse_word("x1^-1", K3) == Word::power(Word::generator(1), -1));
    CHECK(parse_word("1", K3) == Word::identity());
    CHECK(parse_word("( x1 x2 )^3", K3) ==
          Word::power(Word::product({Word::generator(1), Word::generator(2)}), 3));
    // separators used by factorization output parse back
    CHECK(equal(parse_word("[x1,x2]^2\xC2\xB7[x1,x3]^2", K3),
                parse_word("[x1,x2]^2*[x1,x3]^2", K3), K3));
}

TEST_CASE("word parse errors carry positions") {
    CHECK_THROWS_AS(parse_word("x4", K3), ParseError);
    CHECK_THROWS_AS(parse_word("x0", K3), ParseError);
    CHECK_THROWS_AS(parse_word("(x1", K3), ParseError);
    CHECK_THROWS_AS(parse_word("[x1 x2]", K3), ParseError);
    CHECK_THROWS_AS(parse_word("x1^", K3), ParseError);
    CHECK_THROWS_AS(parse_word("z3", K3), ParseError);
    CHECK_THROWS_AS(parse_word("", K3), ParseError);
    try {
        parse_word("x1 x9", K3);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 3);
    }
}

TEST_CASE("magnus images") {
    CHECK(magnus_image(Word::generator(1), K3) == Element::unit(K3) + term(K3, {1}, 1));

    Element lie = bracket(bracket(Element::generator(K3, 1), Element::generator(K3, 3)),
                          Element::generator(K3, 2));
    CHECK(magnus_image(parse_word("[[x1,x3],x2]", K3), K3) == Element::unit(K3) + lie);

    CHECK(magnus_image(parse_word("x1^4", K3), K3) == Element::unit(K3));
    CHECK(magnus_image(parse_word("x1 x1^-1", K3), K3) == Element::unit(K3));
}

TEST_CASE("relations hold exhaustively for small ranks") {
    for (int n = 1; n <= 5; ++n) {
        Context ctx(n, 4);
        for (int i = 1; i <= n; ++i)
            CHECK(magnus_image(Word::power(Word::generator(i), 4), ctx) ==
                  Element::unit(ctx));
        // every iterated commutator with a repeated letter dies
        for (int t = 2; t <= 4; ++t) {
            std::vector<int> idx(t, 1);
            for (;;) {
                bool repeat = false;
                for (int p = 0; p < t && !repeat; ++p)
                    for (int r = p + 1; r < t; ++r)
                        if (idx[p] == idx[r]) {
                            repeat = true;
                            break;
                        }
                if (repeat) {
                    Word w = Word::generator(idx[0]);
                    for (int k = 1; k < t; ++k)
                        w = Word::commutator(std::move(w), Word::generator(idx[k]));
                    CHECK(magnus_image(w, ctx) == Element::unit(ctx));
                }
                int pos = t - 1;
                while (pos >= 0 && idx[pos] == n)
                    idx[pos--] = 1;
                if (pos < 0)
                    break;
                ++idx[pos];
            }
        }
    }
}

TEST_CASE("group elements carry image and witness") {
    GroupElement g = magnus(parse_word("[x1,x2] x3", K3), K3);
    CHECK(g.image.constant_term() == 1);
    CHECK(magnus_image(g.witness, g.ctx) == g.image);
}

TEST_CASE("equality through the representation") {
    CHECK(equal(parse_word("x1^4", K3), Word::identity(), K3));
    CHECK(!equal(Word::generator(1), Word::generator(2), K3));

    // alpha_2^4 = [x1,x2]^2, frozen from the direct expansion in A_2
    Element expanded = magnus_image(Word::power(alpha(2), 4), K2);
    CHECK(expanded == Element::unit(K2) + term(K2, {1, 2}, 2) + term(K2, {2, 1}, 2));
    CHECK(equal(Word::power(alpha(2), 4), parse_word("[x1,x2]^2", K2), K2));
}

TEST_CASE("alpha words") {
    CHECK(alpha(1) == Word::generator(1));
    CHECK(alpha(3) == Word::product({Word::generator(1), Word::generator(2),
                                     Word::generator(3)}));
    Element img = magnus_image(alpha(3), K3);
    Element expected = Element::unit(K3) + Element::generator(K3, 1) +
                       Element::generator(K3, 2) + Element::generator(K3, 3) +
                       term(K3, {1, 2}, 1) + term(K3, {1, 3}, 1) + term(K3, {2, 3}, 1) +
                       term(K3, {1, 2, 3}, 1);
    CHECK(img == expected);
}

TEST_CASE("face maps on words") {
    CHECK(equal(face_group(2, alpha(3)), alpha(2), K2));
    CHECK(face_group(1, Word::generator(1)) == Word::identity());

    std::mt19937 rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        Context ctx(4, 4);
        Context target(3, 4);
        Word w = random_word(ctx, rng, 8);
        int i = 1 + static_cast<int>(rng() % 4);
        CHECK(magnus_image(face_group(i, w), target) ==
              face_algebra(i, magnus_image(w, ctx)));
    }
}

TEST_CASE("H_n membership") {
    for (int n = 1; n <= 6; ++n) {
        Context ctx(n, 4);
        CHECK(in_Hn(alpha(n), ctx));
    }
    CHECK(!in_Hn(Word::generator(1), K2));
    CHECK(in_Hn(Word::power(alpha(3), 4), K3));

    // sampled closure under products and inverses
    Word a4 = Word::power(alpha(4), 1);
    Context ctx4(4, 4);
    std::vector<Word> members = {a4, Word::power(alpha(4), 2), Word::inverse(alpha(4)),
                                 Word::power(alpha(4), 4)};
    for (const Word& w1 : members)
        for (const Word& w2 : members) {
            CHECK(in_Hn(Word::product({w1, w2}), ctx4));
            CHECK(in_Hn(Word::inverse(w1), ctx4));
        }
}

TEST_CASE("basic commutator images are exactly 1 + lie monomial") {
    BasicCommutator b({1, 3, 2});
    Element lie = bracket(bracket(Element::generator(K3, 1), Element::generator(K3, 3)),
                          Element::generator(K3, 2));
    CHECK(commutator_image(b, K3) == Element::unit(K3) + lie);

    BasicCommutator b2({1, 2});
    CHECK(commutator_image(b2, K3) ==
          Element::unit(K3) + term(K3, {1, 2}, 1) + term(K3, {2, 1}, 3));

    CHECK_THROWS_AS(BasicCommutator({2, 1}), UsageError);   // wrong anchor
    CHECK_THROWS_AS(BasicCommutator({1, 1}), UsageError);   // repeated letter
    CHECK_THROWS_AS(BasicCommutator({1}), UsageError);      // weight too small

    // agrees with the full magnus evaluation for every arrangement of
    // weight <= 4 over n <= 5
    for (int n = 2; n <= 5; ++n) {
        Context ctx(n, 4);
        for (int t = 2; t <= std::min(n, 4); ++t) {
            std::vector<uint8_t> all(n);
            for (int i = 0; i < n; ++i)
                all[i] = static_cast<uint8_t>(i + 1);
            std::vector<bool> pick(n, false);
            std::fill(pick.begin(), pick.begin() + t, true);
            std::sort(pick.begin(), pick.end());
            do {
                std::vector<uint8_t> support;
                for (int i = 0; i < n; ++i)
                    if (pick[i])
                        support.push_back(all[i]);
                std::vector<uint8_t> rest(support.begin() + 1, support.end());
                do {
                    std::vector<uint8_t> arrangement = {support[0]};
                    arrangement.insert(arrangement.end(), rest.begin(), rest.end());
                    BasicCommutator bc(arrangement);
                    CHECK(commutator_image(bc, ctx) == magnus_image(to_word(bc), ctx));
                } while (std::next_permutation(rest.begin(), rest.end()));
            } while (std::next_permutation(pick.begin(), pick.end()));
        }
    }
}

TEST_CASE("collection reproduces the fourth-power factorization") {
    Factorization f = collect(Word::power(alpha(3), 4), K3);
    Factorization expected;
    expected.factors = {{Factor{{1, 2}}, 2},
                        {Factor{{1, 3}}, 2},
                        {Factor{{2, 3}}, 2},
                        {Factor{{1, 3, 2}}, 2}};
    CHECK(f == expected);
    CHECK(to_string(f) ==
          "[x1,x2]^2\xC2\xB7[x1,x3]^2\xC2\xB7[x2,x3]^2\xC2\xB7[[x1,x3],x2]^2");

    CHECK(power_formula(3, 4) == expected);

    Factorization f2 = power_formula(2, 4);
    CHECK(f2.factors.size() == 1);
    CHECK(f2.factors[0] == std::pair<Factor, int64_t>{Factor{{1, 2}}, 2});

    CHECK(power_formula(1, 4).empty());
    CHECK(collect(parse_word("x1 x1^-1", K3), K3).empty());
    CHECK(to_string(Factorization{}) == "1");
}

TEST_CASE("collection round-trips on random words") {
    std::mt19937 rng(271828);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);  // up to K_5
        Context ctx(n, 4);
        Word w = random_word(ctx, rng, 12);
        Factorization f = collect(w, ctx);
        CHECK(equal(f.word(), w, ctx));
        CHECK((f.empty() == equal(w, Word::identity(), ctx)));
        // canonical order of factors
        for (size_t i = 1; i < f.factors.size(); ++i)
            CHECK(canonical_less(f.factors[i - 1].first, f.factors[i].first));
    }
}

TEST_CASE("verify named identities") {
    CHECK(verify_identity("eq24"));
    CHECK(verify_identity("shuffle"));
    CHECK_THROWS_AS(verify_identity("nonsense"), UsageError);

    // a mutated right-hand side no longer matches
    Word mutated = parse_word("[x1,x2][x1,x3]^2[x2,x3]^2[[x1,x3],x2]^2", K3);
    CHECK(!equal(Word::power(alpha(3), 4), mutated, K3));
}

TEST_CASE("element orders") {
    CHECK(element_order(Word::generator(1), K3) == 4);
    CHECK(element_order(Word::identity(), K3) == 1);
    CHECK(element_order(parse_word("[x1,x2]", K2), K2) == 4);
    // the fourth power of alpha_2 is the commutator square, so alpha_2 has
    // order 8
    CHECK(element_order(alpha(2), K2) == 8);
}
