#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohen/error.hpp"

namespace cohen {

struct ModuleGenerator {
    std::string name;
    int degree = 0;

    friend bool operator==(const ModuleGenerator&, const ModuleGenerator&) = default;
};

struct BocksteinEntry {
    int src = 0;
    int dst = 0;
    int order = 2;  // attaching torsion order: 2, 4 or 8

    friend bool operator==(const BocksteinEntry&, const BocksteinEntry&) = default;
};

/// Finite graded Z/2 module with degree-lowering operators sq1 (by 1) and
/// sq2 (by 2), stored as generator-indexed bit rows.  bockstein entries are
/// metadata recording attaching-torsion orders for some generator pairs.
class SteenrodModule {
public:
    static constexpr int kMaxGenerators = 64;

    SteenrodModule() = default;

    int add_generator(std::string name, int degree);
    void set_sq1(int src, int dst);
    void set_sq2(int src, int dst);
    void add_bockstein(int src, int dst, int order);

    int size() const { return static_cast<int>(gens_.size()); }
    const std::vector<ModuleGenerator>& generators() const { return gens_; }
    const ModuleGenerator& generator(int i) const { return gens_.at(i); }
    int index_of(std::string_view name) const;  // -1 when absent

    uint64_t sq1_row(int src) const { return sq1_.at(src); }
    uint64_t sq2_row(int src) const { return sq2_.at(src); }
    const std::vector<BocksteinEntry>& bockstein() const { return bockstein_; }

    /// Sorted (src, dst) pairs, the sparse form used by the file format.
    std::vector<std::pair<int, int>> sq1_entries() const;
    std::vector<std::pair<int, int>> sq2_entries() const;

    /// Applies an operator table to a Z/2 vector of generators.
    static uint64_t apply(const std::vector<uint64_t>& rows, uint64_t vec);
    uint64_t apply_sq1(uint64_t vec) const { return apply(sq1_, vec); }
    uint64_t apply_sq2(uint64_t vec) const { return apply(sq2_, vec); }

    friend bool operator==(const SteenrodModule&, const SteenrodModule&) = default;

private:
    std::vector<ModuleGenerator> gens_;
    std::vector<uint64_t> sq1_, sq2_;  // row per source, bit per target
    std::vector<BocksteinEntry> bockstein_;
};

struct CheckReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Validates degree compatibility, sq1 o sq1 = 0, the homology-side Adem
/// relation sq2 o sq2 = sq1 o sq2 o sq1, and consistency of recorded
/// bockstein orders with sq1 (order 2 pairs must be sq1 arrows, higher
/// orders must not be).
CheckReport check_module(const SteenrodModule& m);

/// Catalog builder.  Names: point, moore (param = m), cp2, d2, c, cbar,
/// eta, h1, h2, smash-target (param = n).
SteenrodModule build_module(std::string_view name, int param = 0);

/// Smash product with Cartan-formula operations.
SteenrodModule smash(const SteenrodModule& a, const SteenrodModule& b);

/// Degree shift by s; operations unchanged.  Underflow below degree 0 is an
/// error.
SteenrodModule suspend(const SteenrodModule& m, int s);

/// True iff some degree-preserving invertible Z/2 map intertwines sq1 and
/// sq2 (and matches bockstein labels when both sides carry them).  Brute
/// force; guarded for more than 12 generators.
bool iso_test(const SteenrodModule& a, const SteenrodModule& b);

/// Which of eta/h1/h2 matches the suspended smash product of cp2 with the
/// two-cell mod 2 module.  Exactly one must match.
std::string classify_lemma_3_4(int n);

/// Degree-preserving Z/2 map commuting with sq1 and sq2.
struct ModuleMap {
    SteenrodModule source;
    SteenrodModule target;
    std::vector<uint64_t> rows;  // row per source generator, bit per target

    std::vector<std::pair<int, int>> entries() const;
};

struct MapViolation {
    std::string generator;
    std::string detail;
};

/// First equivariance or degree violation, if any; names the generator.
std::optional<MapViolation> check_map(const ModuleMap& map);

/// The reduced evaluation map on the configuration module: top/middle/bottom
/// twisted squares map to their untwisted images, everything else to zero.
/// Source carries the one suspension that aligns the gradings.
ModuleMap sigma_bar(int n);

}  // namespace cohen
