#include "cohen/io.hpp"

namespace cohen {

Json element_to_json(const Element& e) {
    Json terms = Json::array();
    for (const Term& t : e.terms()) {
        Json mono = Json::array();
        for (uint8_t l : t.mono.letters())
            mono.push_back(int(l));
        terms.push_back({{"mono", std::move(mono)}, {"coeff", t.coeff}});
    }
    return Json{{"modulus", e.context().modulus},
                {"n", e.context().letters},
                {"terms", std::move(terms)}};
}

Element element_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("modulus") || !j.contains("n") || !j.contains("terms"))
        throw UsageError("element record needs modulus, n and terms");
    Context ctx(j.at("n").get<int>(), j.at("modulus").get<uint32_t>());
    std::vector<Term> terms;
    for (const Json& t : j.at("terms")) {
        std::vector<uint8_t> letters;
        for (const Json& l : t.at("mono"))
            letters.push_back(l.get<uint8_t>());
        terms.push_back({Monomial::from_letters(letters), t.at("coeff").get<uint32_t>()});
    }
    return Element::from_terms(ctx, std::move(terms));
}

Json factorization_to_json(const Factorization& f) {
    Json factors = Json::array();
    for (const auto& [factor, exponent] : f.factors) {
        Json letters = Json::array();
        for (uint8_t l : factor.letters)
            letters.push_back(int(l));
        factors.push_back({{"factor", to_string(factor)},
                           {"letters", std::move(letters)},
                           {"exponent", exponent}});
    }
    return Json{{"factors", std::move(factors)}};
}

Json module_to_json(const SteenrodModule& m) {
    Json gens = Json::array();
    for (const ModuleGenerator& g : m.generators())
        gens.push_back({{"name", g.name}, {"degree", g.degree}});
    Json sq1 = Json::array(), sq2 = Json::array(), bockstein = Json::array();
    for (auto [s, d] : m.sq1_entries())
        sq1.push_back({s, d});
    for (auto [s, d] : m.sq2_entries())
        sq2.push_back({s, d});
    for (const BocksteinEntry& b : m.bockstein())
        bockstein.push_back({b.src, b.dst, b.order});
    return Json{{"generators", std::move(gens)},
                {"sq1", std::move(sq1)},
                {"sq2", std::move(sq2)},
                {"bockstein", std::move(bockstein)}};
}

SteenrodModule module_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("generators"))
        throw UsageError("module record needs a generators list");
    SteenrodModule m;
    for (const Json& g : j.at("generators"))
        m.add_generator(g.at("name").get<std::string>(), g.at("degree").get<int>());
    auto pairs = [&](const char* key, auto&& set) {
        if (!j.contains(key))
            return;
        for (const Json& e : j.at(key)) {
            if (!e.is_array() || e.size() != 2)
                throw UsageError(std::string(key) + " entries must be [src, dst] pairs");
            set(e[0].get<int>(), e[1].get<int>());
        }
    };
    pairs("sq1", [&](int s, int d) { m.set_sq1(s, d); });
    pairs("sq2", [&](int s, int d) { m.set_sq2(s, d); });
    if (j.contains("bockstein")) {
        for (const Json& e : j.at("bockstein")) {
            if (!e.is_array() || e.size() != 3)
                throw UsageError("bockstein entries must be [src, dst, order]");
            m.add_bockstein(e[0].get<int>(), e[1].get<int>(), e[2].get<int>());
        }
    }
    return m;
}

Json module_map_to_json(const ModuleMap& m) {
    Json entries = Json::array();
    for (auto [s, d] : m.entries())
        entries.push_back({s, d});
    return Json{{"source", module_to_json(m.source)},
                {"target", module_to_json(m.target)},
                {"entries", std::move(entries)}};
}

}  // namespace cohen
