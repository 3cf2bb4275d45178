#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohen/algebra.hpp"

namespace cohen {

/// Expression tree over the group generators x_1..x_n.
struct Word {
    enum class Kind { Identity, Generator, Product, Inverse, Power, Commutator };

    Kind kind = Kind::Identity;
    int gen = 0;               // Generator
    int64_t exponent = 1;      // Power
    std::vector<Word> children;

    static Word identity() { return {}; }
    static Word generator(int i);
    static Word product(std::vector<Word> factors);
    static Word inverse(Word w);
    static Word power(Word w, int64_t e);
    static Word commutator(Word a, Word b);

    friend bool operator==(const Word&, const Word&) = default;
};

/// Parses the word grammar
///   word := factor { factor } ; factor := atom [ '^' int ] ;
///   atom := '1' | generator | '(' word ')' | '[' word ',' word ']' ;
///   generator := 'x' nat ; int := ['-'] nat.
/// Whitespace is ignored, as are the factor separators `·` and `*` used by
/// factorization output.  Generator indices are checked against the context.
Word parse_word(std::string_view text, const Context& ctx);

std::string to_string(const Word& w);

/// Homomorphic evaluation x_i -> 1 + y_i; commutators via a^{-1}b^{-1}ab.
Element magnus_image(const Word& w, const Context& ctx);

/// A group element: the Magnus image together with the word that produced it.
/// Equality of group elements is equality of images (the representation is
/// faithful).
struct GroupElement {
    Context ctx;
    Element image;
    Word witness;
};

GroupElement magnus(const Word& w, const Context& ctx);

bool equal(const Word& w1, const Word& w2, const Context& ctx);

/// alpha_n = x_1 x_2 ... x_n.
Word alpha(int n);

/// Group face map d_i: x_i -> 1, x_j -> x_{j-1} for j > i.
Word face_group(int i, const Word& w);

/// Membership in the equalizer subgroup H_n of the face maps.
bool in_Hn(const Word& w, const Context& ctx);

/// Left-normed basic commutator [[x_{i_1}, x_{i_2}], x_{i_3}, ...] on >= 2
/// distinct letters, with i_1 the minimum of the support.
struct BasicCommutator {
    std::vector<uint8_t> arrangement;

    explicit BasicCommutator(std::vector<uint8_t> arr);
    int weight() const { return static_cast<int>(arrangement.size()); }
    std::vector<uint8_t> support() const;  // sorted

    friend bool operator==(const BasicCommutator&, const BasicCommutator&) = default;
};

/// Magnus image 1 + [[y_{i_1}, y_{i_2}], ...]; exact in this algebra because
/// every higher product repeats a letter.
Element commutator_image(const BasicCommutator& b, const Context& ctx);

Word to_word(const BasicCommutator& b);

/// One collected factor: a generator (single letter) or a basic commutator.
struct Factor {
    std::vector<uint8_t> letters;  // size 1 = generator, else left-normed arrangement

    int weight() const { return static_cast<int>(letters.size()); }
    std::vector<uint8_t> support() const;
    Word word() const;

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// Canonical order: weight ascending, then support lex, then arrangement lex.
bool canonical_less(const Factor& a, const Factor& b);

struct Factorization {
    std::vector<std::pair<Factor, int64_t>> factors;  // exponents nonzero

    bool empty() const { return factors.empty(); }
    Word word() const;  // the ordered product

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

std::string to_string(const Factor& f);
std::string to_string(const Factorization& f);

using ProgressFn = std::function<void(const std::string&)>;

/// Weight-by-weight Magnus peeling: repeatedly reads the lowest-weight part
/// of the residual off in the left-normed Lie basis and divides it out.
/// Throws ResidueNotInLieSpan when a component is outside the basis span and
/// NonTermination if the residual survives past the maximal weight.
Factorization collect(const Word& w, const Context& ctx, const ProgressFn& progress = {});

/// collect(alpha(n)^k).
Factorization power_formula(int n, int64_t k, uint32_t modulus = 4);

/// Named identity checks: "eq24" and "shuffle".
bool verify_identity(std::string_view name);

/// Least m >= 1 with magnus(w)^m = 1; guarded by q^n iterations.
uint64_t element_order(const Word& w, const Context& ctx);

}  // namespace cohen
