// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any fail.  The first argument is the path to the CLI binary.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "cohen/algebra.hpp"
#include "cohen/group.hpp"
#include "cohen/modules.hpp"
#include "cohen/steenrod.hpp"

using namespace cohen;

namespace {

std::string g_cli;

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    CliResult result;
    std::string cmd = "\"" + g_cli + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return result;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
        result.out.append(buf, got);
    int status = pclose(pipe);
    if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    return result;
}

Element term(const Context& ctx, std::initializer_list<uint8_t> letters, uint32_t c) {
    return Element::from_terms(ctx, {{Monomial::from_letters(letters), c}});
}

Element random_element(const Context& ctx, std::mt19937& rng, int max_terms,
                       bool zero_constant) {
    std::uniform_int_distribution<int> len_dist(zero_constant ? 1 : 0, ctx.letters);
    std::uniform_int_distribution<uint32_t> coeff_dist(1, ctx.modulus - 1);
    std::vector<Term> terms;
    int count = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < count; ++t) {
        std::vector<uint8_t> pool(ctx.letters);
        for (int i = 0; i < ctx.letters; ++i)
            pool[i] = static_cast<uint8_t>(i + 1);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(len_dist(rng));
        terms.push_back({Monomial::from_letters(pool), coeff_dist(rng)});
    }
    return Element::from_terms(ctx, std::move(terms));
}

Word random_word(const Context& ctx, std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> gen_dist(1, ctx.letters);
    std::uniform_int_distribution<int> exp_dist(-2, 3);
    std::vector<Word> factors;
    int len = 0;
    while (len < max_len) {
        int roll = static_cast<int>(rng() % 10);
        if (roll < 7) {
            int e = exp_dist(rng);
            if (e == 0)
                e = 1;
            factors.push_back(Word::power(Word::generator(gen_dist(rng)), e));
            len += std::abs(e);
        } else if (roll < 9) {
            factors.push_back(Word::commutator(Word::generator(gen_dist(rng)),
                                               Word::generator(gen_dist(rng))));
            len += 4;
        } else {
            factors.push_back(Word::commutator(
                Word::commutator(Word::generator(gen_dist(rng)),
                                 Word::generator(gen_dist(rng))),
                Word::generator(gen_dist(rng))));
            len += 10;
        }
    }
    return Word::product(std::move(factors));
}

bool g_all_ok = true;

void criterion(int id, const std::string& label, double budget_s,
               const std::function<bool(std::string&)>& body) {
    std::string note;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
        ok = body(note);
    } catch (const std::exception& e) {
        note = e.what();
    }
    double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (dt >= budget_s) {
        ok = false;
        note += (note.empty() ? "" : "; ") + std::string("over the ") +
                std::to_string(budget_s) + "s budget";
    }
    std::printf("%s  criterion %d: %s  [%.2fs]%s%s\n", ok ? "PASS" : "FAIL", id,
                label.c_str(), dt, note.empty() ? "" : " -- ", note.c_str());
    g_all_ok = g_all_ok && ok;
}

const char* kEq24Text = "[x1,x2]^2\xC2\xB7[x1,x3]^2\xC2\xB7[x2,x3]^2\xC2\xB7[[x1,x3],x2]^2";

}  // namespace

int main(int argc, char** argv) {
    g_cli = argc > 1 ? argv[1] : "./tools/cohen";

    criterion(1, "fourth-power factorization of alpha_3", 1.0, [](std::string& note) {
        CliResult fact = run_cli("alpha-power --n 3 --k 4");
        if (fact.exit_code != 0 || fact.out != std::string(kEq24Text) + "\n") {
            note = "alpha-power output mismatch: " + fact.out;
            return false;
        }
        CliResult verify = run_cli("verify --check eq24");
        if (verify.exit_code != 0 || verify.out != "true\n") {
            note = "verify --check eq24 failed";
            return false;
        }
        Context ctx(3, 4);
        Element s1 = Element::generator(ctx, 1) + Element::generator(ctx, 2) +
                     Element::generator(ctx, 3);
        Element s2 = term(ctx, {1, 2}, 1) + term(ctx, {1, 3}, 1) + term(ctx, {2, 3}, 1);
        Element expected = Element::unit(ctx) +
                           2 * (mul(s1, s1) + mul(s1, s2) + mul(s2, s1));
        if (magnus_image(Word::power(alpha(3), 4), ctx) != expected) {
            note = "magnus image differs from 1 + 2(s1^2 + s1s2 + s2s1)";
            return false;
        }
        return true;
    });

    criterion(2, "nilpotence and 4-torsion on randomized elements", 10.0,
              [](std::string& note) {
                  std::mt19937 rng(1105);
                  for (int trial = 0; trial < 1200; ++trial) {
                      int n = 2 + static_cast<int>(rng() % 5);  // up to 6 letters
                      Context ctx(n, 4);
                      Element prod = Element::unit(ctx);
                      for (int i = 0; i <= n; ++i)
                          prod = mul(prod, random_element(ctx, rng, 5, true));
                      if (!prod.is_zero()) {
                          note = "augmentation product of length n+1 is nonzero";
                          return false;
                      }
                      Element a = random_element(ctx, rng, 8, false);
                      if (!combine(4, a, 0, Element::zero(ctx)).is_zero()) {
                          note = "4*a is nonzero";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(3, "relation well-definedness under the representation", 30.0,
              [](std::string& note) {
                  for (int n = 1; n <= 5; ++n) {
                      Context ctx(n, 4);
                      for (int i = 1; i <= n; ++i)
                          if (magnus_image(Word::power(Word::generator(i), 4), ctx) !=
                              Element::unit(ctx)) {
                              note = "x_i^4 != 1";
                              return false;
                          }
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
                                  for (int m = 1; m < t; ++m)
                                      w = Word::commutator(std::move(w),
                                                           Word::generator(idx[m]));
                                  if (magnus_image(w, ctx) != Element::unit(ctx)) {
                                      note = "repeated-letter commutator survives";
                                      return false;
                                  }
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
                  return true;
              });

    criterion(4, "collection round-trip on random words", 60.0, [](std::string& note) {
        std::mt19937 rng(20160914);
        int lie_failures = 0;
        auto batch = [&](int n, int count) {
            Context ctx(n, 4);
            for (int trial = 0; trial < count; ++trial) {
                Word w = random_word(ctx, rng, 12);
                Factorization f;
                try {
                    f = collect(w, ctx);
                } catch (const ResidueNotInLieSpan&) {
                    ++lie_failures;
                    continue;
                }
                if (!equal(f.word(), w, ctx))
                    return false;
            }
            return true;
        };
        if (!batch(4, 200) || !batch(5, 100)) {
            note = "factorization image differs from the input";
            return false;
        }
        if (lie_failures != 0) {
            note = std::to_string(lie_failures) + " ResidueNotInLieSpan occurrences";
            return false;
        }
        Context k2(2, 4);
        Factorization f = power_formula(2, 4);
        Factorization expected;
        expected.factors = {{Factor{{1, 2}}, 2}};
        if (f != expected) {
            note = "alpha_2^4 did not collect to [x1,x2]^2";
            return false;
        }
        Element direct = magnus_image(Word::power(alpha(2), 4), k2);
        if (direct != Element::unit(k2) + term(k2, {1, 2}, 2) + term(k2, {2, 1}, 2)) {
            note = "direct expansion oracle mismatch in A_2";
            return false;
        }
        return true;
    });

    criterion(5, "shuffle identity", 5.0, [](std::string& note) {
        CliResult r = run_cli("verify --check shuffle");
        if (r.exit_code != 0 || r.out != "true\n") {
            note = "verify --check shuffle failed";
            return false;
        }
        return true;
    });

    criterion(6, "H_n membership of alpha_n", 30.0, [](std::string& note) {
        for (int n = 2; n <= 6; ++n)
            if (!in_Hn(alpha(n), Context(n, 4))) {
                note = "alpha_" + std::to_string(n) + " not in H_n";
                return false;
            }
        if (in_Hn(Word::generator(1), Context(2, 4))) {
            note = "x1 wrongly in H_2";
            return false;
        }
        return true;
    });

    criterion(7, "binomial Steenrod suite", 5.0, [](std::string& note) {
        for (uint64_t k = 1; k <= 64; ++k) {
            auto r = steenrod::sq_on_power(2, {4 * k - 1, std::nullopt});
            if (!r || r->exp != 4 * k + 1) {
                note = "Sq^2(u^{4k-1}) != u^{4k+1}";
                return false;
            }
        }
        // pascal oracle
        std::vector<std::vector<uint8_t>> pascal(513, std::vector<uint8_t>(513, 0));
        pascal[0][0] = 1;
        for (size_t m = 1; m <= 512; ++m) {
            pascal[m][0] = 1;
            for (size_t i = 1; i <= m; ++i)
                pascal[m][i] = (pascal[m - 1][i - 1] + pascal[m - 1][i]) % 2;
        }
        for (size_t m = 0; m <= 512; ++m)
            for (size_t i = 0; i <= 512; ++i)
                if (steenrod::binom_mod2(m, i) != (i > m ? 0 : pascal[m][i])) {
                    note = "Lucas disagrees with Pascal";
                    return false;
                }
        for (uint64_t j = 0; j <= 128; ++j)
            for (uint64_t i = 0; i <= 8; ++i)
                for (uint64_t a = 0; a <= j; ++a) {
                    int sum = 0;
                    for (uint64_t ip = 0; ip <= i; ++ip)
                        sum ^= steenrod::binom_mod2(a, ip) &
                               steenrod::binom_mod2(j - a, i - ip);
                    if (steenrod::binom_mod2(j, i) != sum) {
                        note = "Vandermonde identity fails";
                        return false;
                    }
                }
        for (uint64_t n = 1; n <= 64; ++n)
            if (steenrod::gamma_mult(2 * n, 1) != steenrod::DividedClass{2 * n + 1}) {
                note = "gamma_{2n} gamma_1 != gamma_{2n+1}";
                return false;
            }
        return true;
    });

    criterion(8, "module catalog, evaluation map, classification", 5.0,
              [](std::string& note) {
                  if (!check_module(build_module("point")).ok ||
                      !check_module(build_module("cp2")).ok) {
                      note = "point/cp2 fails validation";
                      return false;
                  }
                  for (int m = 2; m <= 8; ++m)
                      if (!check_module(build_module("moore", m)).ok) {
                          note = "moore fails validation";
                          return false;
                      }
                  for (int n = 3; n <= 12; ++n)
                      for (const char* name : {"d2", "eta", "h1", "h2", "smash-target"})
                          if (!check_module(build_module(name, n)).ok) {
                              note = std::string(name) + " fails validation";
                              return false;
                          }
                  for (int n = 2; n <= 12; ++n)
                      if (!check_module(build_module("c", n)).ok ||
                          (n >= 3 && !check_module(build_module("cbar", n)).ok)) {
                          note = "c/cbar fails validation";
                          return false;
                      }
                  for (int n = 3; n <= 12; ++n) {
                      ModuleMap map = sigma_bar(n);
                      if (check_map(map)) {
                          note = "sigma_bar not equivariant at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  for (int n = 4; n <= 12; ++n)
                      if (classify_lemma_3_4(n) != "eta") {
                          note = "classification is not eta at n=" + std::to_string(n);
                          return false;
                      }
                  return true;
              });

    criterion(9, "scaling smoke test: alpha_5^4 round-trip", 300.0,
              [](std::string& note) {
                  CliResult r = run_cli("alpha-power --n 5 --k 4");
                  if (r.exit_code != 0 || r.out.empty()) {
                      note = "CLI alpha-power --n 5 --k 4 failed";
                      return false;
                  }
                  CliResult again = run_cli("alpha-power --n 5 --k 4");
                  if (again.out != r.out) {
                      note = "output is not byte-deterministic across runs";
                      return false;
                  }
                  Context ctx(5, 4);
                  std::string text = r.out;
                  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
                      text.pop_back();
                  Word parsed = parse_word(text, ctx);
                  if (!equal(parsed, Word::power(alpha(5), 4), ctx)) {
                      note = "CLI factorization image differs from alpha_5^4";
                      return false;
                  }
                  Factorization f = power_formula(5, 4);
                  if (!equal(f.word(), Word::power(alpha(5), 4), ctx)) {
                      note = "in-process factorization image differs";
                      return false;
                  }
                  return true;
              });

    return g_all_ok ? 0 : 1;
}
