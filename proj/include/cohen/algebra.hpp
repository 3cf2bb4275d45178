#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohen/error.hpp"

namespace cohen {

/// Ambient data of the noncommutative exterior algebra A_n^{Z/q}: the number
/// of generators y_1..y_n and the coefficient modulus q.  Letter count 0 is
/// allowed (the scalar algebra); face maps from one letter land there.
struct Context {
    int letters = 0;        // 0..kMaxLetters
    uint32_t modulus = 4;   // q >= 2

    static constexpr int kMaxLetters = 15;

    Context() = default;
    Context(int n, uint32_t q);

    friend bool operator==(const Context&, const Context&) = default;
};

/// A basis monomial: an ordered sequence of pairwise-distinct letters in
/// 1..n, packed into one 64-bit word.  Layout: top nibble = length, then the
/// letters from most- to least-significant nibble, unused nibbles zero.  With
/// that layout the raw integer order is exactly the canonical term order
/// (length ascending, then lexicographic on the letter sequence).
class Monomial {
public:
    Monomial() = default;  // the unit monomial

    static Monomial from_letters(std::span<const uint8_t> letters);
    static Monomial from_letters(std::initializer_list<uint8_t> letters);
    static Monomial single(uint8_t letter);

    int length() const { return static_cast<int>(bits_ >> 60); }
    uint8_t letter(int pos) const {
        return static_cast<uint8_t>((bits_ >> (56 - 4 * pos)) & 0xF);
    }
    std::vector<uint8_t> letters() const;

    /// Bitset of the letters used (bit i set iff letter i occurs).
    uint16_t mask() const;

    /// Concatenation; empty when a letter repeats (relation forcing the
    /// product of overlapping monomials to vanish).
    std::optional<Monomial> concat(const Monomial& rhs) const;

    bool contains(uint8_t letter) const { return mask() & (uint16_t{1} << letter); }

    uint64_t key() const { return bits_; }
    static Monomial from_key(uint64_t key) { return Monomial(key); }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        return a.bits_ <=> b.bits_;
    }

private:
    explicit Monomial(uint64_t bits) : bits_(bits) {}
    uint64_t bits_ = 0;
};

struct Term {
    Monomial mono;
    uint32_t coeff = 0;  // 1..q-1 inside a normalized element

    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse element of A_n^{Z/q}.  Terms are kept in canonical order with
/// coefficients reduced to nonzero least residues; values are immutable
/// after construction, so sharing across threads is safe.
class Element {
public:
    explicit Element(Context ctx) : ctx_(ctx) {}  // zero element

    static Element zero(Context ctx) { return Element(ctx); }
    static Element constant(Context ctx, int64_t c);
    static Element unit(Context ctx) { return constant(ctx, 1); }
    /// The generator y_i, 1-based.
    static Element generator(Context ctx, int i);
    /// Normalizes: reduces coefficients mod q, merges duplicates, sorts.
    static Element from_terms(Context ctx, std::vector<Term> terms);

    const Context& context() const { return ctx_; }
    std::span<const Term> terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_unit_element() const {
        return terms_.size() == 1 && terms_[0].mono == Monomial() && terms_[0].coeff == 1;
    }

    /// Coefficient of a monomial, 0 when absent.
    uint32_t coeff(const Monomial& m) const;
    uint32_t constant_term() const;

    /// Sub-sum of the terms whose monomial length equals t.
    Element weight_part(int t) const;

    friend bool operator==(const Element&, const Element&) = default;

    /// Trusted constructor for callers that already produce canonical data.
    static Element from_sorted(Context ctx, std::vector<Term> terms);

private:
    Context ctx_;
    std::vector<Term> terms_;
};

/// c1*a + c2*b.
Element combine(int64_t c1, const Element& a, int64_t c2, const Element& b);
Element mul(const Element& a, const Element& b);
/// [a, b] = ab - ba.
Element bracket(const Element& a, const Element& b);
Element power(const Element& a, uint64_t k);
/// Two-sided inverse; requires the constant term to be a unit mod q.
Element invert(const Element& a);
/// Least monomial length among the non-constant terms; nullopt for constants.
std::optional<int> min_weight(const Element& a);
/// Algebra face map: kills monomials containing letter i, relabels j > i
/// down by one.  Lands in the algebra on n-1 letters.
Element face_algebra(int i, const Element& a);

inline Element operator+(const Element& a, const Element& b) { return combine(1, a, 1, b); }
inline Element operator-(const Element& a, const Element& b) { return combine(1, a, -1, b); }
inline Element operator*(const Element& a, const Element& b) { return mul(a, b); }
inline Element operator*(int64_t c, const Element& a) {
    return combine(c, a, 0, Element::zero(a.context()));
}

/// Text form `c*y1.y2 + ...`; the unit monomial renders as its coefficient,
/// the zero element as `0`.
std::string to_string(const Element& e);
std::string to_string(const Monomial& m);

namespace detail {

/// Reference single-threaded product kernel.
Element mul_serial(const Element& a, const Element& b);
/// OpenMP product kernel; identical output (accumulation mod q is
/// order-independent and terms are sorted at the end).
Element mul_parallel(const Element& a, const Element& b);

}  // namespace detail

}  // namespace cohen
