#include "cohen/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace cohen {

Word Word::generator(int i) {
    if (i < 1)
        throw UsageError("generator index must be positive, got x" + std::to_string(i));
    Word w;
    w.kind = Kind::Generator;
    w.gen = i;
    return w;
}

Word Word::product(std::vector<Word> factors) {
    Word w;
    w.kind = Kind::Product;
    w.children = std::move(factors);
    return w;
}

Word Word::inverse(Word inner) {
    Word w;
    w.kind = Kind::Inverse;
    w.children.push_back(std::move(inner));
    return w;
}

Word Word::power(Word base, int64_t e) {
    Word w;
    w.kind = Kind::Power;
    w.exponent = e;
    w.children.push_back(std::move(base));
    return w;
}

Word Word::commutator(Word a, Word b) {
    Word w;
    w.kind = Kind::Commutator;
    w.children.push_back(std::move(a));
    w.children.push_back(std::move(b));
    return w;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, const Context& ctx) : text_(text), ctx_(ctx) {}

    Word parse() {
        Word w = parse_sequence();
        skip_separators();
        if (pos_ != text_.size())
            throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return w;
    }

private:
    std::string_view text_;
    const Context& ctx_;
    size_t pos_ = 0;

    // Whitespace is insignificant; `*` and the UTF-8 middle dot are accepted
    // as factor separators so factorization output parses back.
    void skip_separators() {
        while (pos_ < text_.size()) {
            unsigned char c = text_[pos_];
            if (std::isspace(c) || c == '*') {
                ++pos_;
            } else if (c == 0xC2 && pos_ + 1 < text_.size() &&
                       static_cast<unsigned char>(text_[pos_ + 1]) == 0xB7) {
                pos_ += 2;
            } else {
                break;
            }
        }
    }

    bool at_terminator() {
        skip_separators();
        if (pos_ >= text_.size())
            return true;
        char c = text_[pos_];
        return c == ')' || c == ']' || c == ',';
    }

    void expect(char c) {
        skip_separators();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    uint64_t parse_nat() {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError(pos_, "expected a number");
        uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > (1ull << 62))
                throw ParseError(pos_, "number too large");
            ++pos_;
        }
        return v;
    }

    int64_t parse_int() {
        skip_separators();
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        int64_t v = static_cast<int64_t>(parse_nat());
        return neg ? -v : v;
    }

    Word parse_sequence() {
        std::vector<Word> factors;
        while (!at_terminator())
            factors.push_back(parse_factor());
        if (factors.empty())
            throw ParseError(pos_, "expected a word");
        if (factors.size() == 1)
            return std::move(factors[0]);
        return Word::product(std::move(factors));
    }

    Word parse_factor() {
        Word atom = parse_atom();
        skip_separators();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            return Word::power(std::move(atom), parse_int());
        }
        return atom;
    }

    Word parse_atom() {
        skip_separators();
        if (pos_ >= text_.size())
            throw ParseError(pos_, "unexpected end of input");
        char c = text_[pos_];
        if (c == '1') {
            ++pos_;
            return Word::identity();
        }
        if (c == 'x') {
            size_t at = pos_++;
            uint64_t idx = parse_nat();
            if (idx < 1 || idx > static_cast<uint64_t>(ctx_.letters))
                throw ParseError(at, "generator index out of range: x" + std::to_string(idx) +
                                         " (context has " + std::to_string(ctx_.letters) +
                                         " letters)");
            return Word::generator(static_cast<int>(idx));
        }
        if (c == '(') {
            ++pos_;
            Word w = parse_sequence();
            expect(')');
            return w;
        }
        if (c == '[') {
            ++pos_;
            Word a = parse_sequence();
            expect(',');
            Word b = parse_sequence();
            expect(']');
            return Word::commutator(std::move(a), std::move(b));
        }
        throw ParseError(pos_, std::string("unexpected '") + c + "'");
    }
};

std::string render_factor_of(const Word& w);

std::string render(const Word& w) {
    switch (w.kind) {
        case Word::Kind::Identity:
            return "1";
        case Word::Kind::Generator:
            return "x" + std::to_string(w.gen);
        case Word::Kind::Product: {
            std::string s;
            for (const Word& c : w.children)
                s += render_factor_of(c);
            return s;
        }
        case Word::Kind::Inverse:
            return render_factor_of(w.children[0]) + "^-1";
        case Word::Kind::Power:
            return render_factor_of(w.children[0]) + "^" + std::to_string(w.exponent);
        case Word::Kind::Commutator:
            return "[" + render(w.children[0]) + "," + render(w.children[1]) + "]";
    }
    return "?";
}

std::string render_factor_of(const Word& w) {
    if (w.kind == Word::Kind::Product || w.kind == Word::Kind::Power ||
        w.kind == Word::Kind::Inverse)
        return "(" + render(w) + ")";
    return render(w);
}

}  // namespace

Word parse_word(std::string_view text, const Context& ctx) {
    return Parser(text, ctx).parse();
}

std::string to_string(const Word& w) {
    return render(w);
}

Element magnus_image(const Word& w, const Context& ctx) {
    switch (w.kind) {
        case Word::Kind::Identity:
            return Element::unit(ctx);
        case Word::Kind::Generator:
            if (w.gen > ctx.letters)
                throw UsageError("generator x" + std::to_string(w.gen) +
                                 " exceeds context with " + std::to_string(ctx.letters) +
                                 " letters");
            return Element::unit(ctx) + Element::generator(ctx, w.gen);
        case Word::Kind::Product: {
            Element acc = Element::unit(ctx);
            for (const Word& c : w.children)
                acc = mul(acc, magnus_image(c, ctx));
            return acc;
        }
        case Word::Kind::Inverse:
            return invert(magnus_image(w.children[0], ctx));
        case Word::Kind::Power: {
            Element base = magnus_image(w.children[0], ctx);
            if (w.exponent >= 0)
                return power(base, static_cast<uint64_t>(w.exponent));
            return power(invert(base), static_cast<uint64_t>(-w.exponent));
        }
        case Word::Kind::Commutator: {
            Element a = magnus_image(w.children[0], ctx);
            Element b = magnus_image(w.children[1], ctx);
            return mul(mul(invert(a), invert(b)), mul(a, b));
        }
    }
    throw InternalError("unhandled word node");
}

GroupElement magnus(const Word& w, const Context& ctx) {
    return GroupElement{ctx, magnus_image(w, ctx), w};
}

bool equal(const Word& w1, const Word& w2, const Context& ctx) {
    return magnus_image(w1, ctx) == magnus_image(w2, ctx);
}

Word alpha(int n) {
    if (n < 1)
        throw UsageError("alpha requires n >= 1");
    if (n == 1)
        return Word::generator(1);
    std::vector<Word> gens;
    gens.reserve(n);
    for (int i = 1; i <= n; ++i)
        gens.push_back(Word::generator(i));
    return Word::product(std::move(gens));
}

Word face_group(int i, const Word& w) {
    switch (w.kind) {
        case Word::Kind::Identity:
            return w;
        case Word::Kind::Generator:
            if (w.gen == i)
                return Word::identity();
            if (w.gen > i)
                return Word::generator(w.gen - 1);
            return w;
        default: {
            Word out = w;
            for (Word& c : out.children)
                c = face_group(i, c);
            return out;
        }
    }
}

bool in_Hn(const Word& w, const Context& ctx) {
    if (ctx.letters == 0)
        return true;
    Context target(ctx.letters - 1, ctx.modulus);
    Element first = magnus_image(face_group(1, w), target);
    for (int i = 2; i <= ctx.letters; ++i)
        if (magnus_image(face_group(i, w), target) != first)
            return false;
    return true;
}

BasicCommutator::BasicCommutator(std::vector<uint8_t> arr) : arrangement(std::move(arr)) {
    if (arrangement.size() < 2)
        throw UsageError("basic commutator needs at least two letters");
    uint16_t seen = 0;
    uint8_t least = arrangement[0];
    for (uint8_t l : arrangement) {
        if (l < 1 || l > Context::kMaxLetters)
            throw UsageError("letter index out of range in commutator");
        if (seen & (uint16_t{1} << l))
            throw UsageError("repeated letter in basic commutator");
        seen |= uint16_t{1} << l;
        least = std::min(least, l);
    }
    if (arrangement[0] != least)
        throw UsageError("basic commutator must start at the minimal letter");
}

std::vector<uint8_t> BasicCommutator::support() const {
    std::vector<uint8_t> s = arrangement;
    std::sort(s.begin(), s.end());
    return s;
}

namespace {

// Left-normed Lie monomial [[y_{i_1}, y_{i_2}], y_{i_3}, ...] as an element;
// a single letter yields the generator itself.
Element lie_element(std::span<const uint8_t> letters, const Context& ctx) {
    Element cur = Element::generator(ctx, letters[0]);
    for (size_t k = 1; k < letters.size(); ++k)
        cur = bracket(cur, Element::generator(ctx, letters[k]));
    return cur;
}

}  // namespace

Element commutator_image(const BasicCommutator& b, const Context& ctx) {
    return Element::unit(ctx) + lie_element(b.arrangement, ctx);
}

Word to_word(const BasicCommutator& b) {
    return Factor{b.arrangement}.word();
}

std::vector<uint8_t> Factor::support() const {
    std::vector<uint8_t> s = letters;
    std::sort(s.begin(), s.end());
    return s;
}

Word Factor::word() const {
    Word w = Word::generator(letters[0]);
    for (size_t k = 1; k < letters.size(); ++k)
        w = Word::commutator(std::move(w), Word::generator(letters[k]));
    return w;
}

bool canonical_less(const Factor& a, const Factor& b) {
    if (a.weight() != b.weight())
        return a.weight() < b.weight();
    auto sa = a.support(), sb = b.support();
    if (sa != sb)
        return sa < sb;
    return a.letters < b.letters;
}

Word Factorization::word() const {
    std::vector<Word> parts;
    parts.reserve(factors.size());
    for (const auto& [factor, exponent] : factors) {
        Word w = factor.word();
        parts.push_back(exponent == 1 ? std::move(w) : Word::power(std::move(w), exponent));
    }
    if (parts.empty())
        return Word::identity();
    if (parts.size() == 1)
        return std::move(parts[0]);
    return Word::product(std::move(parts));
}

std::string to_string(const Factor& f) {
    if (f.weight() == 1)
        return "x" + std::to_string(int(f.letters[0]));
    std::string s = "[x" + std::to_string(int(f.letters[0])) + ",x" +
                    std::to_string(int(f.letters[1])) + "]";
    for (int k = 2; k < f.weight(); ++k)
        s = "[" + s + ",x" + std::to_string(int(f.letters[k])) + "]";
    return s;
}

std::string to_string(const Factorization& f) {
    if (f.empty())
        return "1";
    std::string s;
    for (const auto& [factor, exponent] : f.factors) {
        if (!s.empty())
            s += "\xC2\xB7";  // middle dot
        s += to_string(factor);
        if (exponent != 1)
            s += "^" + std::to_string(exponent);
    }
    return s;
}

namespace {

// Reads the weight-t component off in the left-normed basis.  Coordinates
// are the coefficients of the monomials that begin with the minimal letter
// of each support: those monomials occur exactly once across the basis, so
// the candidate is unique and a mismatch certifies non-membership.
std::vector<std::pair<Factor, uint32_t>> decompose_weight(const Element& h, int t,
                                                          const Context& ctx) {
    std::map<std::vector<uint8_t>, std::vector<Term>> by_support;
    for (const Term& term : h.terms()) {
        std::vector<uint8_t> s = term.mono.letters();
        std::sort(s.begin(), s.end());
        by_support[s].push_back(term);
    }

    std::vector<std::pair<Factor, uint32_t>> out;
    for (const auto& [support, terms] : by_support) {
        Element part = Element::from_terms(ctx, terms);
        if (t == 1) {
            out.push_back({Factor{support}, part.coeff(Monomial::single(support[0]))});
            continue;
        }
        std::vector<uint8_t> rest(support.begin() + 1, support.end());
        std::vector<std::pair<Factor, uint32_t>> matched;
        Element candidate = Element::zero(ctx);
        do {
            std::vector<uint8_t> arrangement;
            arrangement.reserve(t);
            arrangement.push_back(support[0]);
            arrangement.insert(arrangement.end(), rest.begin(), rest.end());
            uint32_t c = part.coeff(Monomial::from_letters(arrangement));
            if (c != 0) {
                matched.push_back({Factor{arrangement}, c});
                candidate = combine(1, candidate, c, lie_element(arrangement, ctx));
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
        if (candidate != part) {
            Element remainder = part - candidate;
            throw ResidueNotInLieSpan(t, support, to_string(remainder));
        }
        out.insert(out.end(), matched.begin(), matched.end());
    }
    return out;
}

}  // namespace

Factorization collect(const Word& w, const Context& ctx, const ProgressFn& progress) {
    Element r = magnus_image(w, ctx);
    if (r.constant_term() != 1)
        throw InternalError("magnus image of a group word lacks unit constant term");

    Factorization out;
    for (int t = 1; t <= ctx.letters && !r.is_unit_element(); ++t) {
        if (progress)
            progress("collecting weight " + std::to_string(t) + " (residual has " +
                     std::to_string(r.term_count()) + " terms)");
        Element h = r.weight_part(t);
        if (h.is_zero())
            continue;
        auto matched = decompose_weight(h, t, ctx);

        Element ft = Element::unit(ctx);
        for (const auto& [factor, c] : matched)
            ft = mul(ft, combine(1, Element::unit(ctx), c,
                                 lie_element(factor.letters, ctx)));
        r = mul(invert(ft), r);

        for (const auto& [factor, c] : matched) {
            uint64_t order = element_order(factor.word(), ctx);
            int64_t e = static_cast<int64_t>(c % order);
            if (e != 0)
                out.factors.push_back({factor, e});
        }
    }
    if (!r.is_unit_element())
        throw NonTermination();
    return out;
}

Factorization power_formula(int n, int64_t k, uint32_t modulus) {
    if (n < 1)
        throw UsageError("power_formula requires n >= 1");
    if (k < 0)
        throw UsageError("power_formula requires k >= 0");
    return collect(Word::power(alpha(n), k), Context(n, modulus));
}

bool verify_identity(std::string_view name) {
    Context ctx(3, 4);
    if (name == "eq24") {
        Word lhs = Word::power(alpha(3), 4);
        Word rhs = parse_word("[x1,x2]^2[x1,x3]^2[x2,x3]^2[[x1,x3],x2]^2", ctx);
        return equal(lhs, rhs, ctx);
    }
    if (name == "shuffle") {
        Word lhs = parse_word("[[x1,x2],x3][[x2,x1],x3][[x3,x1],x2][[x1,x3],x2]", ctx);
        return equal(lhs, Word::identity(), ctx);
    }
    throw UsageError("unknown identity name: " + std::string(name));
}

uint64_t element_order(const Word& w, const Context& ctx) {
    Element g = magnus_image(w, ctx);
    const Element one = Element::unit(ctx);
    uint64_t guard = 1;
    for (int i = 0; i < ctx.letters; ++i) {
        guard *= ctx.modulus;
        if (guard > (1ull << 30)) {
            guard = 1ull << 30;
            break;
        }
    }
    Element acc = g;
    uint64_t m = 1;
    while (acc != one) {
        acc = mul(acc, g);
        if (++m > guard)
            throw GuardExceeded("element order exceeded the q^n guard");
    }
    return m;
}

}  // namespace cohen
