// Command-line front end: exact computation in the mod-q Cohen group and its
// exterior-algebra representation, binomial Steenrod operations, and the
// finite module catalog.
//
// Exit codes: 0 success/true, 1 false result, 2 usage error, 3 internal
// inconsistency.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cohen/algebra.hpp"
#include "cohen/group.hpp"
#include "cohen/io.hpp"
#include "cohen/modules.hpp"
#include "cohen/steenrod.hpp"

namespace {

using namespace cohen;

int max_n_guard() {
    if (const char* env = std::getenv("COHEN_MAX_N")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw UsageError("COHEN_MAX_N is not a number");
        }
    }
    return 10;
}

Context word_context(int n, uint32_t mod) {
    if (n < 1)
        throw UsageError("--n must be at least 1");
    int cap = std::min(max_n_guard(), Context::kMaxLetters);
    if (n > cap)
        throw UsageError("--n " + std::to_string(n) + " exceeds the guard " +
                         std::to_string(cap) + " (raise COHEN_MAX_N to override, hard cap " +
                         std::to_string(Context::kMaxLetters) + ")");
    return Context(n, mod);
}

bool looks_like_file(const std::string& spec) {
    return spec.find('/') != std::string::npos || spec.ends_with(".json") ||
           std::filesystem::exists(spec);
}

SteenrodModule load_module_arg(const std::string& spec) {
    if (looks_like_file(spec)) {
        std::ifstream in(spec);
        if (!in)
            throw UsageError("cannot open module file: " + spec);
        Json j;
        try {
            in >> j;
        } catch (const Json::exception& e) {
            throw UsageError("bad module file " + spec + ": " + e.what());
        }
        return module_from_json(j);
    }
    size_t colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    int param = 0;
    if (colon != std::string::npos) {
        try {
            param = std::stoi(spec.substr(colon + 1));
        } catch (...) {
            throw UsageError("bad module parameter in '" + spec + "'");
        }
    }
    return build_module(name, param);
}

void print_module(const SteenrodModule& m) {
    std::cout << module_to_json(m).dump(2) << "\n";
}

int bool_result(bool value, bool as_json) {
    if (as_json)
        std::cout << Json{{"result", value}}.dump() << "\n";
    else
        std::cout << (value ? "true" : "false") << "\n";
    return value ? 0 : 1;
}

void print_factorization(const Factorization& f, bool as_json) {
    if (as_json)
        std::cout << factorization_to_json(f).dump() << "\n";
    else
        std::cout << to_string(f) << "\n";
}

ProgressFn stderr_progress(int n) {
    if (n < 8)
        return {};
    return [](const std::string& msg) { std::cerr << msg << "\n"; };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Cohen-group, exterior-algebra and Steenrod-module calculator"};
    app.require_subcommand(1);

    bool as_json = false;
    int n = 3;
    uint32_t mod = 4;
    int64_t k = 4;
    std::string word1, word2, check_name, module_name;
    uint64_t sq_i = 0, sq_exp = 1, gamma_i = 0, gamma_j = 0;
    int64_t bottom = -1;
    int shift = 0;
    bool run_check = false;
    std::string module_a, module_b;

    auto add_common = [&](CLI::App* sub, bool with_mod = true) {
        sub->add_flag("--json", as_json, "emit JSON records");
        if (with_mod)
            sub->add_option("--mod", mod, "coefficient modulus q")->default_val(4);
    };

    int exit_code = 0;

    auto* magnus_cmd = app.add_subcommand("magnus", "Magnus image of a word");
    magnus_cmd->add_option("--n", n, "number of letters")->required();
    magnus_cmd->add_option("word", word1, "group word")->required();
    add_common(magnus_cmd);
    magnus_cmd->callback([&] {
        Context ctx = word_context(n, mod);
        Element e = magnus_image(parse_word(word1, ctx), ctx);
        if (as_json)
            std::cout << element_to_json(e).dump() << "\n";
        else
            std::cout << to_string(e) << "\n";
    });

    auto* equal_cmd = app.add_subcommand("equal", "compare two words in the group");
    equal_cmd->add_option("--n", n, "number of letters")->required();
    equal_cmd->add_option("word1", word1)->required();
    equal_cmd->add_option("word2", word2)->required();
    add_common(equal_cmd);
    equal_cmd->callback([&] {
        Context ctx = word_context(n, mod);
        exit_code = bool_result(equal(parse_word(word1, ctx), parse_word(word2, ctx), ctx),
                                as_json);
    });

    auto* collect_cmd =
        app.add_subcommand("collect", "factor a word into basic commutators");
    collect_cmd->add_option("--n", n, "number of letters")->required();
    collect_cmd->add_option("word", word1)->required();
    add_common(collect_cmd);
    collect_cmd->callback([&] {
        Context ctx = word_context(n, mod);
        print_factorization(collect(parse_word(word1, ctx), ctx, stderr_progress(n)),
                            as_json);
    });

    auto* alpha_cmd =
        app.add_subcommand("alpha-power", "collect the k-th power of alpha_n");
    alpha_cmd->add_option("--n", n, "number of letters")->required();
    alpha_cmd->add_option("--k", k, "exponent")->required();
    add_common(alpha_cmd);
    alpha_cmd->callback([&] {
        Context ctx = word_context(n, mod);
        if (k < 0)
            throw UsageError("--k must be nonnegative");
        Factorization f =
            collect(Word::power(alpha(n), k), ctx, stderr_progress(n));
        print_factorization(f, as_json);
    });

    auto* verify_cmd = app.add_subcommand("verify", "check a named identity");
    verify_cmd->add_option("--check", check_name, "eq24, shuffle or hn")->required();
    verify_cmd->add_option("--n", n, "letters for the hn check")->default_val(3);
    add_common(verify_cmd);
    verify_cmd->callback([&] {
        bool ok;
        if (check_name == "hn") {
            Context ctx = word_context(n, mod);
            ok = in_Hn(alpha(n), ctx);
        } else {
            ok = verify_identity(check_name);
        }
        exit_code = bool_result(ok, as_json);
    });

    auto* order_cmd = app.add_subcommand("order", "order of a word in the group");
    order_cmd->add_option("--n", n, "number of letters")->required();
    order_cmd->add_option("word", word1)->required();
    add_common(order_cmd);
    order_cmd->callback([&] {
        Context ctx = word_context(n, mod);
        uint64_t m = element_order(parse_word(word1, ctx), ctx);
        if (as_json)
            std::cout << Json{{"order", m}}.dump() << "\n";
        else
            std::cout << m << "\n";
    });

    auto* sq_cmd = app.add_subcommand("sq", "Steenrod square on a projective power");
    sq_cmd->add_option("--i", sq_i, "operation degree")->required();
    sq_cmd->add_option("--exp", sq_exp, "class exponent j in u^j")->required();
    sq_cmd->add_option("--bottom", bottom, "stunted-space cutoff");
    add_common(sq_cmd, /*with_mod=*/false);
    sq_cmd->callback([&] {
        steenrod::ProjectiveClass c{sq_exp, std::nullopt};
        if (bottom >= 0)
            c.bottom = static_cast<uint64_t>(bottom);
        auto r = steenrod::sq_on_power(sq_i, c);
        if (as_json) {
            Json j = r ? Json{{"exp", r->exp},
                              {"bottom", r->bottom ? Json(*r->bottom) : Json(nullptr)}}
                       : Json{{"zero", true}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << steenrod::to_string(r) << "\n";
        }
    });

    auto* gamma_cmd = app.add_subcommand("gamma", "divided power product");
    gamma_cmd->add_option("--i", gamma_i)->required();
    gamma_cmd->add_option("--j", gamma_j)->required();
    add_common(gamma_cmd, /*with_mod=*/false);
    gamma_cmd->callback([&] {
        auto r = steenrod::gamma_mult(gamma_i, gamma_j);
        if (as_json) {
            Json j = r ? Json{{"index", r->index}} : Json{{"zero", true}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << steenrod::to_string(r) << "\n";
        }
    });

    auto* module_cmd = app.add_subcommand("module", "emit a catalog module file");
    module_cmd->add_option("--name", module_name,
                           "moore:m, cp2, d2, c, cbar, eta, h1, h2, smash-target, point")
        ->required();
    module_cmd->add_option("--n", n, "degree parameter")->default_val(4);
    module_cmd->add_flag("--check", run_check, "validate and report violations");
    add_common(module_cmd, /*with_mod=*/false);
    module_cmd->callback([&] {
        SteenrodModule m = module_name.find(':') != std::string::npos
                               ? load_module_arg(module_name)
                               : build_module(module_name, n);
        print_module(m);
        if (run_check) {
            CheckReport report = check_module(m);
            for (const std::string& v : report.violations)
                std::cerr << "violation: " << v << "\n";
            if (!report.ok)
                throw InternalError("module failed validation");
        }
    });

    auto* smash_cmd = app.add_subcommand("smash", "smash product of two modules");
    smash_cmd->add_option("a", module_a, "module file or builtin spec like d2:5")
        ->required();
    smash_cmd->add_option("b", module_b)->required();
    add_common(smash_cmd, /*with_mod=*/false);
    smash_cmd->callback(
        [&] { print_module(smash(load_module_arg(module_a), load_module_arg(module_b))); });

    auto* suspend_cmd = app.add_subcommand("suspend", "shift a module's degrees");
    suspend_cmd->add_option("module", module_a)->required();
    suspend_cmd->add_option("--s", shift, "suspension amount")->required();
    add_common(suspend_cmd, /*with_mod=*/false);
    suspend_cmd->callback([&] { print_module(suspend(load_module_arg(module_a), shift)); });

    auto* iso_cmd = app.add_subcommand("iso", "test module isomorphism");
    iso_cmd->add_option("a", module_a)->required();
    iso_cmd->add_option("b", module_b)->required();
    add_common(iso_cmd, /*with_mod=*/false);
    iso_cmd->callback([&] {
        exit_code =
            bool_result(iso_test(load_module_arg(module_a), load_module_arg(module_b)),
                        as_json);
    });

    auto* classify_cmd =
        app.add_subcommand("classify34", "identify the four-cell cofibre candidate");
    classify_cmd->add_option("--n", n)->required();
    add_common(classify_cmd, /*with_mod=*/false);
    classify_cmd->callback([&] {
        std::string name = classify_lemma_3_4(n);
        if (as_json)
            std::cout << Json{{"name", name}}.dump() << "\n";
        else
            std::cout << name << "\n";
    });

    auto* sigma_cmd = app.add_subcommand("sigmabar", "the reduced evaluation module map");
    sigma_cmd->add_option("--n", n)->required();
    add_common(sigma_cmd, /*with_mod=*/false);
    sigma_cmd->callback([&] {
        ModuleMap map = sigma_bar(n);
        if (as_json) {
            std::cout << module_map_to_json(map).dump(2) << "\n";
            return;
        }
        for (int s = 0; s < map.source.size(); ++s) {
            std::cout << map.source.generator(s).name << " -> ";
            if (map.rows[s] == 0) {
                std::cout << "0\n";
                continue;
            }
            bool first = true;
            for (int d = 0; d < map.target.size(); ++d)
                if (map.rows[s] & (uint64_t{1} << d)) {
                    std::cout << (first ? "" : " + ") << map.target.generator(d).name;
                    first = false;
                }
            std::cout << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
