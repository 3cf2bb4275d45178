#include "cohen/modules.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace cohen {

int SteenrodModule::add_generator(std::string name, int degree) {
    if (size() >= kMaxGenerators)
        throw GuardExceeded("module exceeds " + std::to_string(kMaxGenerators) +
                            " generators");
    if (degree < 0)
        throw UsageError("generator degree must be nonnegative");
    gens_.push_back({std::move(name), degree});
    sq1_.push_back(0);
    sq2_.push_back(0);
    return size() - 1;
}

namespace {

void check_index(int i, int n, const char* what) {
    if (i < 0 || i >= n)
        throw UsageError(std::string(what) + " index out of range: " + std::to_string(i));
}

}  // namespace

void SteenrodModule::set_sq1(int src, int dst) {
    check_index(src, size(), "sq1 source");
    check_index(dst, size(), "sq1 target");
    sq1_[src] |= uint64_t{1} << dst;
}

void SteenrodModule::set_sq2(int src, int dst) {
    check_index(src, size(), "sq2 source");
    check_index(dst, size(), "sq2 target");
    sq2_[src] |= uint64_t{1} << dst;
}

void SteenrodModule::add_bockstein(int src, int dst, int order) {
    check_index(src, size(), "bockstein source");
    check_index(dst, size(), "bockstein target");
    if (order != 2 && order != 4 && order != 8)
        throw UsageError("bockstein order must be 2, 4 or 8");
    bockstein_.push_back({src, dst, order});
}

int SteenrodModule::index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
        if (gens_[i].name == name)
            return i;
    return -1;
}

namespace {

std::vector<std::pair<int, int>> entries_of(const std::vector<uint64_t>& rows) {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < static_cast<int>(rows.size()); ++s)
        for (int d = 0; d < 64; ++d)
            if (rows[s] & (uint64_t{1} << d))
                out.push_back({s, d});
    return out;
}

}  // namespace

std::vector<std::pair<int, int>> SteenrodModule::sq1_entries() const {
    return entries_of(sq1_);
}

std::vector<std::pair<int, int>> SteenrodModule::sq2_entries() const {
    return entries_of(sq2_);
}

uint64_t SteenrodModule::apply(const std::vector<uint64_t>& rows, uint64_t vec) {
    uint64_t out = 0;
    while (vec) {
        int i = std::countr_zero(vec);
        vec &= vec - 1;
        out ^= rows[i];
    }
    return out;
}

CheckReport check_module(const SteenrodModule& m) {
    CheckReport report;
    auto violate = [&](std::string msg) {
        report.ok = false;
        report.violations.push_back(std::move(msg));
    };

    for (auto [s, d] : m.sq1_entries())
        if (m.generator(d).degree != m.generator(s).degree - 1)
            violate("sq1 does not drop degree by 1 on " + m.generator(s).name + " -> " +
                    m.generator(d).name);
    for (auto [s, d] : m.sq2_entries())
        if (m.generator(d).degree != m.generator(s).degree - 2)
            violate("sq2 does not drop degree by 2 on " + m.generator(s).name + " -> " +
                    m.generator(d).name);

    for (int s = 0; s < m.size(); ++s) {
        uint64_t x = uint64_t{1} << s;
        if (m.apply_sq1(m.apply_sq1(x)) != 0)
            violate("sq1 o sq1 != 0 at " + m.generator(s).name);
        uint64_t lhs = m.apply_sq2(m.apply_sq2(x));
        uint64_t rhs = m.apply_sq1(m.apply_sq2(m.apply_sq1(x)));
        if (lhs != rhs)
            violate("sq2 o sq2 != sq1 o sq2 o sq1 at " + m.generator(s).name);
    }

    for (const BocksteinEntry& b : m.bockstein()) {
        if (m.generator(b.dst).degree != m.generator(b.src).degree - 1)
            violate("bockstein pair does not drop degree by 1 on " + m.generator(b.src).name +
                    " -> " + m.generator(b.dst).name);
        bool sq1_arrow = (m.sq1_row(b.src) >> b.dst) & 1;
        if (b.order == 2 && !sq1_arrow)
            violate("order-2 bockstein pair without sq1 arrow: " + m.generator(b.src).name +
                    " -> " + m.generator(b.dst).name);
        if (b.order > 2 && sq1_arrow)
            violate("order-" + std::to_string(b.order) + " bockstein pair on an sq1 arrow: " +
                    m.generator(b.src).name + " -> " + m.generator(b.dst).name);
    }
    return report;
}

namespace {

SteenrodModule checked(SteenrodModule m, std::string_view name) {
    CheckReport report = check_module(m);
    if (!report.ok)
        throw InternalError("catalog module " + std::string(name) +
                            " fails validation: " + report.violations.front());
    return m;
}

SteenrodModule build_moore(int m) {
    if (m < 2)
        throw UsageError("moore requires m >= 2");
    SteenrodModule mod;
    int v = mod.add_generator("v", m);
    int u = mod.add_generator("u", m - 1);
    mod.set_sq1(v, u);
    return mod;
}

SteenrodModule build_cp2() {
    SteenrodModule mod;
    int top = mod.add_generator("c4", 4);
    int bot = mod.add_generator("c2", 2);
    mod.set_sq2(top, bot);
    return mod;
}

SteenrodModule build_d2(int n) {
    if (n < 3)
        throw UsageError("d2 requires n >= 3");
    SteenrodModule mod;
    int tv2 = mod.add_generator("t(v^2)", 2 * n - 1);
    mod.add_generator("t(v)^2", 2 * n - 2);
    int tuv = mod.add_generator("t([u,v])", 2 * n - 2);
    int tutv = mod.add_generator("t(u)t(v)", 2 * n - 3);
    int tu2 = mod.add_generator("t(u^2)", 2 * n - 3);
    int tu_sq = mod.add_generator("t(u)^2", 2 * n - 4);
    mod.set_sq1(tv2, tuv);
    mod.set_sq1(tutv, tu_sq);
    mod.set_sq2(tv2, tu2);
    mod.set_sq2(tuv, tu_sq);
    return mod;
}

SteenrodModule build_c(int n) {
    if (n < 2)
        throw UsageError("c requires n >= 2");
    SteenrodModule mod;
    int d = mod.add_generator("d", 2 * n - 1);
    int b = mod.add_generator("b", 2 * n - 2);
    int c = mod.add_generator("c", 2 * n - 2);
    int a = mod.add_generator("a", 2 * n - 3);
    mod.set_sq1(d, c);
    mod.set_sq2(d, a);
    mod.add_bockstein(b, a, 4);
    return mod;
}

// The four-cell pattern shared by cbar and the first cofibre candidate:
// sq1 pairs (top, top-1) and (top-2, top-3); sq2 pairs (top, top-2) and
// (top-1, top-3).
SteenrodModule build_four_cell(int n, std::string_view prefix, bool sq2_top,
                               bool sq2_second) {
    if (n < 3)
        throw UsageError("four-cell candidates require n >= 3");
    SteenrodModule mod;
    auto name = [&](int deg) { return std::string(prefix) + std::to_string(deg); };
    int g1 = mod.add_generator(name(2 * n - 1), 2 * n - 1);
    int g2 = mod.add_generator(name(2 * n - 2), 2 * n - 2);
    int g3 = mod.add_generator(name(2 * n - 3), 2 * n - 3);
    int g4 = mod.add_generator(name(2 * n - 4), 2 * n - 4);
    mod.set_sq1(g1, g2);
    mod.set_sq1(g3, g4);
    if (sq2_top)
        mod.set_sq2(g1, g3);
    if (sq2_second)
        mod.set_sq2(g2, g4);
    return mod;
}

SteenrodModule build_smash_target(int n) {
    if (n < 2)
        throw UsageError("smash-target requires n >= 2");
    SteenrodModule mod;
    int v2 = mod.add_generator("v^2", 2 * n);
    int comm = mod.add_generator("[u,v]", 2 * n - 1);
    int uv = mod.add_generator("uv", 2 * n - 1);
    int u2 = mod.add_generator("u^2", 2 * n - 2);
    mod.set_sq1(v2, comm);
    mod.set_sq1(uv, u2);
    mod.set_sq2(v2, u2);
    return mod;
}

}  // namespace

SteenrodModule build_module(std::string_view name, int param) {
    if (name == "point") {
        SteenrodModule mod;
        mod.add_generator("pt", 0);
        return checked(mod, name);
    }
    if (name == "moore")
        return checked(build_moore(param), name);
    if (name == "cp2")
        return checked(build_cp2(), name);
    if (name == "d2")
        return checked(build_d2(param), name);
    if (name == "c")
        return checked(build_c(param), name);
    if (name == "cbar")
        return checked(build_four_cell(param, "x", true, true), name);
    if (name == "eta")
        return checked(build_four_cell(param, "e", true, true), name);
    if (name == "h1")
        return checked(build_four_cell(param, "y", true, false), name);
    if (name == "h2")
        return checked(build_four_cell(param, "z", false, true), name);
    if (name == "smash-target")
        return checked(build_smash_target(param), name);
    throw UsageError("unknown module name: " + std::string(name));
}

SteenrodModule smash(const SteenrodModule& a, const SteenrodModule& b) {
    if (a.size() * b.size() > SteenrodModule::kMaxGenerators)
        throw GuardExceeded("smash product exceeds the generator limit");
    SteenrodModule out;
    auto index = [&](int i, int j) { return i * b.size() + j; };
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            out.add_generator(a.generator(i).name + "*" + b.generator(j).name,
                              a.generator(i).degree + b.generator(j).degree);

    auto each_bit = [](uint64_t row, auto&& f) {
        while (row) {
            int d = std::countr_zero(row);
            row &= row - 1;
            f(d);
        }
    };
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < b.size(); ++j) {
            int src = index(i, j);
            // sq1(x (x) y) = sq1 x (x) y + x (x) sq1 y
            each_bit(a.sq1_row(i), [&](int i2) { out.set_sq1(src, index(i2, j)); });
            each_bit(b.sq1_row(j), [&](int j2) { out.set_sq1(src, index(i, j2)); });
            // sq2(x (x) y) = sq2 x (x) y + sq1 x (x) sq1 y + x (x) sq2 y
            each_bit(a.sq2_row(i), [&](int i2) { out.set_sq2(src, index(i2, j)); });
            each_bit(b.sq2_row(j), [&](int j2) { out.set_sq2(src, index(i, j2)); });
            each_bit(a.sq1_row(i), [&](int i2) {
                each_bit(b.sq1_row(j), [&](int j2) { out.set_sq2(src, index(i2, j2)); });
            });
        }
    }
    return out;
}

SteenrodModule suspend(const SteenrodModule& m, int s) {
    for (const ModuleGenerator& g : m.generators())
        if (g.degree + s < 0)
            throw UsageError("degree underflow suspending " + g.name + " by " +
                             std::to_string(s));
    SteenrodModule shifted;
    for (const ModuleGenerator& g : m.generators())
        shifted.add_generator(g.name, g.degree + s);
    for (auto [src, dst] : m.sq1_entries())
        shifted.set_sq1(src, dst);
    for (auto [src, dst] : m.sq2_entries())
        shifted.set_sq2(src, dst);
    for (const BocksteinEntry& b : m.bockstein())
        shifted.add_bockstein(b.src, b.dst, b.order);
    return shifted;
}

namespace {

// All invertible k x k matrices over Z/2, rows as k-bit masks.
std::vector<std::vector<uint32_t>> invertible_matrices(int k) {
    auto invertible = [k](const std::vector<uint32_t>& rows) {
        std::vector<uint32_t> r = rows;
        for (int col = 0; col < k; ++col) {
            int pivot = -1;
            for (int i = col; i < k; ++i)
                if (r[i] & (1u << col)) {
                    pivot = i;
                    break;
                }
            if (pivot < 0)
                return false;
            std::swap(r[col], r[pivot]);
            for (int i = 0; i < k; ++i)
                if (i != col && (r[i] & (1u << col)))
                    r[i] ^= r[col];
        }
        return true;
    };

    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> rows(k);
    uint64_t total = uint64_t{1} << (k * k);
    for (uint64_t code = 0; code < total; ++code) {
        uint64_t c = code;
        for (int i = 0; i < k; ++i) {
            rows[i] = static_cast<uint32_t>(c & ((1u << k) - 1));
            c >>= k;
        }
        if (invertible(rows))
            out.push_back(rows);
    }
    return out;
}

struct DegreeBlock {
    std::vector<int> a_indices;
    std::vector<int> b_indices;
    std::vector<std::vector<uint32_t>> choices;
};

bool bockstein_compatible(const SteenrodModule& a, const SteenrodModule& b,
                          const std::vector<uint64_t>& phi) {
    if (a.bockstein().empty() || b.bockstein().empty())
        return true;  // labels only constrain when present on both sides
    if (a.bockstein().size() != b.bockstein().size())
        return false;
    for (const BocksteinEntry& ea : a.bockstein()) {
        bool matched = false;
        for (const BocksteinEntry& eb : b.bockstein()) {
            if (ea.order == eb.order && phi[ea.src] == (uint64_t{1} << eb.src) &&
                phi[ea.dst] == (uint64_t{1} << eb.dst)) {
                matched = true;
                break;
            }
        }
        if (!matched)
            return false;
    }
    return true;
}

}  // namespace

bool iso_test(const SteenrodModule& a, const SteenrodModule& b) {
    if (a.size() != b.size())
        return false;
    if (a.size() > 12)
        throw GuardExceeded("iso_test guard: more than 12 generators");
    if (!a.bockstein().empty() && !b.bockstein().empty() &&
        a.bockstein().size() != b.bockstein().size())
        return false;

    std::map<int, DegreeBlock> blocks;
    for (int i = 0; i < a.size(); ++i)
        blocks[a.generator(i).degree].a_indices.push_back(i);
    for (int i = 0; i < b.size(); ++i) {
        auto it = blocks.find(b.generator(i).degree);
        if (it == blocks.end())
            return false;
        it->second.b_indices.push_back(i);
    }
    for (auto& [deg, block] : blocks) {
        if (block.a_indices.size() != block.b_indices.size())
            return false;
        int k = static_cast<int>(block.a_indices.size());
        if (k > 4)
            throw GuardExceeded("iso_test guard: more than 4 generators in one degree");
        block.choices = invertible_matrices(k);
    }

    std::vector<uint64_t> phi(a.size(), 0);
    std::vector<const DegreeBlock*> order;
    for (const auto& [deg, block] : blocks)
        order.push_back(&block);

    auto intertwines = [&]() {
        for (int s = 0; s < a.size(); ++s) {
            uint64_t x = uint64_t{1} << s;
            if (SteenrodModule::apply(phi, a.apply_sq1(x)) != b.apply_sq1(phi[s]))
                return false;
            if (SteenrodModule::apply(phi, a.apply_sq2(x)) != b.apply_sq2(phi[s]))
                return false;
        }
        return bockstein_compatible(a, b, phi);
    };

    // Depth-first over per-degree invertible blocks.
    auto search = [&](auto&& self, size_t level) -> bool {
        if (level == order.size())
            return intertwines();
        const DegreeBlock& block = *order[level];
        int k = static_cast<int>(block.a_indices.size());
        for (const auto& rows : block.choices) {
            for (int i = 0; i < k; ++i) {
                uint64_t image = 0;
                for (int j = 0; j < k; ++j)
                    if (rows[i] & (1u << j))
                        image |= uint64_t{1} << block.b_indices[j];
                phi[block.a_indices[i]] = image;
            }
            if (self(self, level + 1))
                return true;
        }
        return false;
    };
    return search(search, 0);
}

std::string classify_lemma_3_4(int n) {
    if (n < 4)
        throw UsageError("classify_lemma_3_4 requires n >= 4");
    SteenrodModule target =
        suspend(smash(build_module("cp2"), build_module("moore", 2)), 2 * n - 7);

    std::vector<std::string> matches;
    for (const char* candidate : {"eta", "h1", "h2"})
        if (iso_test(build_module(candidate, n), target))
            matches.push_back(candidate);
    if (matches.size() != 1)
        throw AmbiguousClassification("expected exactly one matching candidate, found " +
                                      std::to_string(matches.size()));
    return matches.front();
}

std::vector<std::pair<int, int>> ModuleMap::entries() const {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < static_cast<int>(rows.size()); ++s)
        for (int d = 0; d < 64; ++d)
            if (rows[s] & (uint64_t{1} << d))
                out.push_back({s, d});
    return out;
}

std::optional<MapViolation> check_map(const ModuleMap& map) {
    for (auto [s, d] : map.entries())
        if (map.source.generator(s).degree != map.target.generator(d).degree)
            return MapViolation{map.source.generator(s).name,
                                "degree mismatch towards " + map.target.generator(d).name};
    for (int s = 0; s < map.source.size(); ++s) {
        uint64_t x = uint64_t{1} << s;
        uint64_t lhs = SteenrodModule::apply(map.rows, map.source.apply_sq1(x));
        uint64_t rhs = map.target.apply_sq1(map.rows[s]);
        if (lhs != rhs)
            return MapViolation{map.source.generator(s).name, "sq1 equivariance fails"};
        lhs = SteenrodModule::apply(map.rows, map.source.apply_sq2(x));
        rhs = map.target.apply_sq2(map.rows[s]);
        if (lhs != rhs)
            return MapViolation{map.source.generator(s).name, "sq2 equivariance fails"};
    }
    return std::nullopt;
}

ModuleMap sigma_bar(int n) {
    if (n < 3)
        throw UsageError("sigma_bar requires n >= 3");
    // One suspension aligns the configuration grading with the smash square.
    SteenrodModule source = suspend(build_module("d2", n), 1);
    SteenrodModule target = build_module("smash-target", n);

    ModuleMap map{source, target, std::vector<uint64_t>(source.size(), 0)};
    auto send = [&](const char* from, const char* to) {
        int s = source.index_of(from);
        int d = target.index_of(to);
        map.rows[s] = uint64_t{1} << d;
    };
    send("t(v^2)", "v^2");
    send("t([u,v])", "[u,v]");
    send("t(u^2)", "u^2");
    // remaining three generators go to zero

    if (auto violation = check_map(map))
        throw EquivarianceFailure(violation->generator, violation->detail);
    return map;
}

}  // namespace cohen
