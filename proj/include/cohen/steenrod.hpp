#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace cohen::steenrod {

/// C(m, i) mod 2 by the digit condition: odd iff every binary digit of i is
/// dominated by the corresponding digit of m.
inline int binom_mod2(uint64_t m, uint64_t i) {
    return (m & i) == i ? 1 : 0;
}

/// A power u^j in projective-space (co)homology; `bottom` marks the cutoff
/// of a stunted space (the class exists iff j >= bottom).
struct ProjectiveClass {
    uint64_t exp = 1;
    std::optional<uint64_t> bottom;

    friend bool operator==(const ProjectiveClass&, const ProjectiveClass&) = default;
};

/// Sq^i(u^j) = C(j, i) u^{j+i}; nullopt when the coefficient is even.
std::optional<ProjectiveClass> sq_on_power(uint64_t i, const ProjectiveClass& c);

/// Sq^2 on the top stunted class u^{4n-1}; suspension and dualization leave
/// the binomial coefficient unchanged.
bool verify_sq2_iso(uint64_t n);

/// gamma_i(u) in the divided power algebra.
struct DividedClass {
    uint64_t index = 0;

    friend bool operator==(const DividedClass&, const DividedClass&) = default;
};

/// gamma_i * gamma_j = C(i+j, i) gamma_{i+j}; nullopt when the coefficient
/// is even.
std::optional<DividedClass> gamma_mult(uint64_t i, uint64_t j);

std::string to_string(const std::optional<ProjectiveClass>& c);
std::string to_string(const std::optional<DividedClass>& c);

}  // namespace cohen::steenrod
