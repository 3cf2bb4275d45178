#include "cohen/algebra.hpp"

#include <algorithm>

namespace cohen {

namespace {

constexpr uint64_t kLettersMask = 0x0FFF'FFFF'FFFF'FFFFull;

uint32_t reduce(int64_t c, uint32_t q) {
    int64_t r = c % static_cast<int64_t>(q);
    if (r < 0)
        r += q;
    return static_cast<uint32_t>(r);
}

// Inverse of u mod q via extended Euclid; nullopt when gcd(u, q) != 1.
std::optional<uint32_t> unit_inverse(uint32_t u, uint32_t q) {
    int64_t r0 = q, r1 = u % q, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t quot = r0 / r1;
        std::tie(r0, r1) = std::pair(r1, r0 - quot * r1);
        std::tie(s0, s1) = std::pair(s1, s0 - quot * s1);
    }
    if (r0 != 1)
        return std::nullopt;
    return reduce(s0, q);
}

}  // namespace

Context::Context(int n, uint32_t q) : letters(n), modulus(q) {
    if (n < 0 || n > kMaxLetters)
        throw UsageError("letter count must be in 0.." + std::to_string(kMaxLetters) +
                         ", got " + std::to_string(n));
    if (q < 2)
        throw UsageError("modulus must be at least 2");
}

Monomial Monomial::from_letters(std::span<const uint8_t> letters) {
    if (letters.size() > static_cast<size_t>(Context::kMaxLetters))
        throw UsageError("monomial longer than the letter limit");
    uint64_t bits = static_cast<uint64_t>(letters.size()) << 60;
    uint16_t seen = 0;
    int shift = 56;
    for (uint8_t l : letters) {
        if (l < 1 || l > Context::kMaxLetters)
            throw UsageError("letter index out of range: " + std::to_string(int(l)));
        if (seen & (uint16_t{1} << l))
            throw UsageError("repeated letter in monomial: y" + std::to_string(int(l)));
        seen |= uint16_t{1} << l;
        bits |= static_cast<uint64_t>(l) << shift;
        shift -= 4;
    }
    return Monomial(bits);
}

Monomial Monomial::from_letters(std::initializer_list<uint8_t> letters) {
    return from_letters(std::span<const uint8_t>(letters.begin(), letters.size()));
}

Monomial Monomial::single(uint8_t letter) {
    return from_letters({letter});
}

std::vector<uint8_t> Monomial::letters() const {
    std::vector<uint8_t> out(length());
    for (int i = 0; i < length(); ++i)
        out[i] = letter(i);
    return out;
}

uint16_t Monomial::mask() const {
    uint16_t m = 0;
    for (int i = 0; i < length(); ++i)
        m |= uint16_t{1} << letter(i);
    return m;
}

std::optional<Monomial> Monomial::concat(const Monomial& rhs) const {
    if (mask() & rhs.mask())
        return std::nullopt;
    int la = length();
    uint64_t lets = (bits_ & kLettersMask) | ((rhs.bits_ & kLettersMask) >> (4 * la));
    return Monomial((static_cast<uint64_t>(la + rhs.length()) << 60) | lets);
}

Element Element::constant(Context ctx, int64_t c) {
    uint32_t r = reduce(c, ctx.modulus);
    Element e(ctx);
    if (r != 0)
        e.terms_.push_back({Monomial(), r});
    return e;
}

Element Element::generator(Context ctx, int i) {
    if (i < 1 || i > ctx.letters)
        throw UsageError("generator index out of range: y" + std::to_string(i));
    Element e(ctx);
    e.terms_.push_back({Monomial::single(static_cast<uint8_t>(i)), 1});
    return e;
}

Element Element::from_terms(Context ctx, std::vector<Term> terms) {
    for (const Term& t : terms)
        for (uint8_t l : t.mono.letters())
            if (l > ctx.letters)
                throw UsageError("monomial letter y" + std::to_string(int(l)) +
                                 " exceeds context with " + std::to_string(ctx.letters) +
                                 " letters");
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.mono.key() < b.mono.key(); });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const Term& t : terms) {
        uint32_t c = t.coeff % ctx.modulus;
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff = (out.back().coeff + c) % ctx.modulus;
        } else {
            out.push_back({t.mono, c});
        }
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
    Element e(ctx);
    e.terms_ = std::move(out);
    return e;
}

Element Element::from_sorted(Context ctx, std::vector<Term> terms) {
    Element e(ctx);
    e.terms_ = std::move(terms);
    return e;
}

uint32_t Element::coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m.key(),
                               [](const Term& t, uint64_t k) { return t.mono.key() < k; });
    if (it != terms_.end() && it->mono == m)
        return it->coeff;
    return 0;
}

uint32_t Element::constant_term() const {
    return coeff(Monomial());
}

Element Element::weight_part(int t) const {
    Element out(ctx_);
    for (const Term& term : terms_)
        if (term.mono.length() == t)
            out.terms_.push_back(term);
    return out;
}

Element combine(int64_t c1, const Element& a, int64_t c2, const Element& b) {
    if (a.context() != b.context())
        throw ContextMismatch();
    const uint32_t q = a.context().modulus;
    const uint64_t r1 = reduce(c1, q), r2 = reduce(c2, q);
    std::vector<Term> out;
    out.reserve(a.term_count() + b.term_count());
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    auto push = [&](Monomial m, uint64_t c) {
        uint32_t r = static_cast<uint32_t>(c % q);
        if (r != 0)
            out.push_back({m, r});
    };
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->mono.key() < ib->mono.key())) {
            push(ia->mono, r1 * ia->coeff);
            ++ia;
        } else if (ia == ea || ib->mono.key() < ia->mono.key()) {
            push(ib->mono, r2 * ib->coeff);
            ++ib;
        } else {
            push(ia->mono, r1 * ia->coeff + r2 * ib->coeff);
            ++ia;
            ++ib;
        }
    }
    return Element::from_sorted(a.context(), std::move(out));
}

namespace detail {

namespace {

// Open-addressing accumulator keyed by packed monomials.  The all-ones key
// cannot occur (its letters would repeat), so it marks empty slots.
class TermTable {
public:
    explicit TermTable(size_t expected = 64) {
        size_t cap = 64;
        while (cap < expected * 2)
            cap <<= 1;
        keys_.assign(cap, kEmpty);
        vals_.assign(cap, 0);
    }

    void add(uint64_t key, uint32_t c, uint32_t q) {
        if (count_ * 10 >= keys_.size() * 7)
            grow(q);
        size_t i = slot(key);
        if (keys_[i] == kEmpty) {
            keys_[i] = key;
            vals_[i] = c;
            ++count_;
        } else {
            vals_[i] = (vals_[i] + c) % q;
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < keys_.size(); ++i)
            if (keys_[i] != kEmpty && vals_[i] != 0)
                f(keys_[i], vals_[i]);
    }

private:
    static constexpr uint64_t kEmpty = ~0ull;

    static uint64_t mix(uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    size_t slot(uint64_t key) const {
        size_t m = keys_.size() - 1;
        size_t i = mix(key) & m;
        while (keys_[i] != kEmpty && keys_[i] != key)
            i = (i + 1) & m;
        return i;
    }

    void grow(uint32_t q) {
        TermTable bigger(keys_.size());
        for_each([&](uint64_t k, uint32_t v) { bigger.add(k, v, q); });
        keys_ = std::move(bigger.keys_);
        vals_ = std::move(bigger.vals_);
        count_ = bigger.count_;
    }

    std::vector<uint64_t> keys_;
    std::vector<uint32_t> vals_;
    size_t count_ = 0;
};

Element table_to_element(const Context& ctx, const TermTable& table) {
    std::vector<Term> out;
    table.for_each([&](uint64_t k, uint32_t v) { out.push_back({Monomial::from_key(k), v}); });
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return a.mono.key() < b.mono.key(); });
    return Element::from_sorted(ctx, std::move(out));
}

void accumulate_products(std::span<const Term> as, std::span<const Term> bs,
                         std::span<const uint16_t> bmasks, uint32_t q, TermTable& table) {
    for (const Term& ta : as) {
        const uint16_t ma = ta.mono.mask();
        for (size_t j = 0; j < bs.size(); ++j) {
            if (ma & bmasks[j])
                continue;
            uint32_t c = static_cast<uint32_t>(
                (static_cast<uint64_t>(ta.coeff) * bs[j].coeff) % q);
            if (c == 0)
                continue;  // zero divisors, e.g. 2*2 mod 4
            table.add(ta.mono.concat(bs[j].mono)->key(), c, q);
        }
    }
}

std::vector<uint16_t> masks_of(std::span<const Term> ts) {
    std::vector<uint16_t> m(ts.size());
    for (size_t i = 0; i < ts.size(); ++i)
        m[i] = ts[i].mono.mask();
    return m;
}

}  // namespace

Element mul_serial(const Element& a, const Element& b) {
    if (a.context() != b.context())
        throw ContextMismatch();
    const uint32_t q = a.context().modulus;
    TermTable table(std::min(a.term_count() * b.term_count(), size_t{1} << 20));
    accumulate_products(a.terms(), b.terms(), masks_of(b.terms()), q, table);
    return table_to_element(a.context(), table);
}

// Products inherit the first letter of the left factor, so bucketing the
// pair space by that letter partitions the output keys: the per-bucket
// accumulators never collide and no merge step is needed.  Bucket 0 holds
// the constant-times-constant product.
Element mul_parallel(const Element& a, const Element& b) {
    if (a.context() != b.context())
        throw ContextMismatch();
    const Context ctx = a.context();
    const uint32_t q = ctx.modulus;
    const int n = ctx.letters;

    std::vector<std::vector<Term>> a_groups(n + 1), b_groups(n + 1);
    for (const Term& t : a.terms())
        a_groups[t.mono.length() == 0 ? 0 : t.mono.letter(0)].push_back(t);
    for (const Term& t : b.terms())
        b_groups[t.mono.length() == 0 ? 0 : t.mono.letter(0)].push_back(t);
    const uint32_t a_const = a_groups[0].empty() ? 0 : a_groups[0][0].coeff;
    const auto bmasks = masks_of(b.terms());

    std::vector<std::vector<Term>> runs(n + 1);
    uint32_t const_coeff = 0;
    if (a_const && !b_groups[0].empty())
        const_coeff = static_cast<uint32_t>(
            (static_cast<uint64_t>(a_const) * b_groups[0][0].coeff) % q);

    #pragma omp parallel for schedule(dynamic, 1)
    for (int p = 1; p <= n; ++p) {
        size_t pairs = a_groups[p].size() * b.term_count() + b_groups[p].size();
        if (pairs == 0)
            continue;
        TermTable table(std::min(pairs, size_t{1} << 20));
        accumulate_products(a_groups[p], b.terms(), bmasks, q, table);
        if (a_const)
            for (const Term& tb : b_groups[p]) {
                uint32_t c = static_cast<uint32_t>(
                    (static_cast<uint64_t>(a_const) * tb.coeff) % q);
                if (c != 0)
                    table.add(tb.mono.key(), c, q);
            }
        std::vector<Term>& run = runs[p];
        table.for_each([&](uint64_t k, uint32_t v) { run.push_back({Monomial::from_key(k), v}); });
        std::sort(run.begin(), run.end(),
                  [](const Term& x, const Term& y) { return x.mono.key() < y.mono.key(); });
    }

    // lengths interleave across buckets, so k-way merge the sorted runs
    size_t total = const_coeff ? 1 : 0;
    for (const auto& run : runs)
        total += run.size();
    std::vector<Term> out;
    out.reserve(total);
    if (const_coeff)
        out.push_back({Monomial(), const_coeff});
    std::vector<size_t> cursor(n + 1, 0);
    for (;;) {
        int best = -1;
        uint64_t best_key = ~0ull;
        for (int p = 1; p <= n; ++p)
            if (cursor[p] < runs[p].size() && runs[p][cursor[p]].mono.key() < best_key) {
                best = p;
                best_key = runs[p][cursor[p]].mono.key();
            }
        if (best < 0)
            break;
        out.push_back(runs[best][cursor[best]++]);
    }
    return Element::from_sorted(ctx, std::move(out));
}

}  // namespace detail

Element mul(const Element& a, const Element& b) {
    // Parallelism only pays off once the pair count is large; results are
    // identical either way.
    constexpr size_t kParallelThreshold = 1u << 17;
    if (a.term_count() * b.term_count() >= kParallelThreshold)
        return detail::mul_parallel(a, b);
    return detail::mul_serial(a, b);
}

Element bracket(const Element& a, const Element& b) {
    return combine(1, mul(a, b), -1, mul(b, a));
}

Element power(const Element& a, uint64_t k) {
    Element result = Element::unit(a.context());
    Element base = a;
    while (k > 0) {
        if (k & 1)
            result = mul(result, base);
        k >>= 1;
        if (k)
            base = mul(base, base);
    }
    return result;
}

Element invert(const Element& a) {
    const Context& ctx = a.context();
    const uint32_t q = ctx.modulus;
    auto uinv = unit_inverse(a.constant_term(), q);
    if (!uinv)
        throw UsageError("element is not invertible: constant term " +
                         std::to_string(a.constant_term()) + " is not a unit mod " +
                         std::to_string(q));
    // a = u(1 + z) with z nilpotent, so a^{-1} = (sum (-z)^k) u^{-1}.
    Element z = combine(*uinv, a, -1, Element::unit(ctx));
    Element acc = Element::unit(ctx);
    Element pow = Element::unit(ctx);
    for (int k = 1; k <= ctx.letters; ++k) {
        pow = mul(pow, z);
        if (pow.is_zero())
            break;
        acc = combine(1, acc, (k % 2 == 0) ? 1 : -1, pow);
    }
    return combine(static_cast<int64_t>(*uinv), acc, 0, Element::zero(ctx));
}

std::optional<int> min_weight(const Element& a) {
    for (const Term& t : a.terms())
        if (t.mono.length() > 0)
            return t.mono.length();
    return std::nullopt;
}

Element face_algebra(int i, const Element& a) {
    const Context& ctx = a.context();
    if (i < 1 || i > ctx.letters)
        throw UsageError("face index out of range: " + std::to_string(i));
    Context target(ctx.letters - 1, ctx.modulus);
    std::vector<Term> out;
    for (const Term& t : a.terms()) {
        if (t.mono.contains(static_cast<uint8_t>(i)))
            continue;
        std::vector<uint8_t> letters = t.mono.letters();
        for (uint8_t& l : letters)
            if (l > i)
                --l;
        out.push_back({Monomial::from_letters(letters), t.coeff});
    }
    return Element::from_terms(target, std::move(out));
}

std::string to_string(const Monomial& m) {
    if (m.length() == 0)
        return "1";
    std::string s;
    for (int i = 0; i < m.length(); ++i) {
        if (i)
            s += '.';
        s += 'y';
        s += std::to_string(int(m.letter(i)));
    }
    return s;
}

std::string to_string(const Element& e) {
    if (e.is_zero())
        return "0";
    std::string s;
    for (const Term& t : e.terms()) {
        if (!s.empty())
            s += " + ";
        if (t.mono.length() == 0) {
            s += std::to_string(t.coeff);
        } else if (t.coeff == 1) {
            s += to_string(t.mono);
        } else {
            s += std::to_string(t.coeff);
            s += '*';
            s += to_string(t.mono);
        }
    }
    return s;
}

ResidueNotInLieSpan::ResidueNotInLieSpan(int w, std::vector<uint8_t> supp, std::string res)
    : InternalError("weight-" + std::to_string(w) +
                    " residue not in the Lie span; remainder: " + res),
      weight(w),
      support(std::move(supp)),
      residual(std::move(res)) {}

}  // namespace cohen
