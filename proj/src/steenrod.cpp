#include "cohen/steenrod.hpp"

#include "cohen/error.hpp"

namespace cohen::steenrod {

std::optional<ProjectiveClass> sq_on_power(uint64_t i, const ProjectiveClass& c) {
    if (c.exp < 1)
        throw UsageError("projective class exponent must be >= 1");
    if (c.bottom && c.exp < *c.bottom)
        throw UsageError("class u^" + std::to_string(c.exp) +
                         " does not exist below the cutoff " + std::to_string(*c.bottom));
    if (!binom_mod2(c.exp, i))
        return std::nullopt;
    return ProjectiveClass{c.exp + i, c.bottom};
}

bool verify_sq2_iso(uint64_t n) {
    if (n < 1)
        throw UsageError("verify_sq2_iso requires n >= 1");
    ProjectiveClass top{4 * n - 1, 4 * n - 1};
    return sq_on_power(2, top).has_value();
}

std::optional<DividedClass> gamma_mult(uint64_t i, uint64_t j) {
    if (!binom_mod2(i + j, i))
        return std::nullopt;
    return DividedClass{i + j};
}

std::string to_string(const std::optional<ProjectiveClass>& c) {
    if (!c)
        return "0";
    return "u^" + std::to_string(c->exp);
}

std::string to_string(const std::optional<DividedClass>& c) {
    if (!c)
        return "0";
    return "g_" + std::to_string(c->index);
}

}  // namespace cohen::steenrod
