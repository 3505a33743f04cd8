#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "loopauto/errors.hpp"

namespace loopauto::words {

using Letter = std::size_t;
using Symbol = std::size_t;
using PositiveWord = std::vector<Letter>;
using SymbolWord = std::vector<Symbol>;

inline bool valid_letter_name(std::string_view name) {
    if (name.empty()) return false;
    for (unsigned char c : name) {
        if (c == '#' || c == '`' || std::isspace(c)) return false;
    }
    return true;
}

// Ordered list of distinct letter names. Automata reuse this for their symbol
// sets, so "letters" here are symbols in general.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw ValidationError("alphabet: must contain at least one letter");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!valid_letter_name(names_[i]))
                throw ValidationError("alphabet: invalid letter name '" + names_[i] + "'");
            auto [it, fresh] = index_.emplace(names_[i], i);
            if (!fresh) throw ValidationError("alphabet: duplicate letter name '" + names_[i] + "'");
        }
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(Letter i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<Letter> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

enum class Sign { Positive, Barred };

struct SignedLetter {
    Letter base = 0;
    Sign sign = Sign::Positive;

    friend bool operator==(const SignedLetter&, const SignedLetter&) = default;
    friend std::strong_ordering operator<=>(const SignedLetter&, const SignedLetter&) = default;
};

using InvolutiveWord = std::vector<SignedLetter>;

inline SignedLetter pos(Letter x) { return {x, Sign::Positive}; }
inline SignedLetter bar(Letter x) { return {x, Sign::Barred}; }

inline InvolutiveWord to_word(const PositiveWord& w) {
    InvolutiveWord out;
    out.reserve(w.size());
    for (Letter x : w) out.push_back(pos(x));
    return out;
}

// Reverses the word and flips every bar: the unique involutive anti-morphism
// extending x -> x-bar.
inline InvolutiveWord involute(const InvolutiveWord& w) {
    InvolutiveWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back({it->base, it->sign == Sign::Positive ? Sign::Barred : Sign::Positive});
    return out;
}

inline InvolutiveWord bar_word(const PositiveWord& w) { return involute(to_word(w)); }

inline InvolutiveWord concat(InvolutiveWord a, const InvolutiveWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

enum class SignClass { Empty, Positive, Negative, Mixed };

inline SignClass sign_classify(const InvolutiveWord& w) {
    bool has_pos = false, has_bar = false;
    for (const auto& sl : w) (sl.sign == Sign::Positive ? has_pos : has_bar) = true;
    if (!has_pos && !has_bar) return SignClass::Empty;
    if (has_pos && has_bar) return SignClass::Mixed;
    return has_pos ? SignClass::Positive : SignClass::Negative;
}

// Greedy factorization w = u0 v1~ u1 v2~ ... u_{n-1} vn~ into maximal sign
// runs. u[i] holds u_i and v[i] holds v_{i+1}; both vectors have length n >= 1.
// Each v_i is stored positively: the barred run in w reads as involute(v_i),
// so the run's letters appear reversed in v_i.
struct ZigZagFactorization {
    std::vector<PositiveWord> u;
    std::vector<PositiveWord> v;

    std::size_t blocks() const { return u.size(); }
};

inline ZigZagFactorization zigzag_factor(const InvolutiveWord& w) {
    ZigZagFactorization f;
    std::size_t i = 0;
    const std::size_t len = w.size();
    auto read_run = [&](Sign s) {
        PositiveWord run;
        while (i < len && w[i].sign == s) run.push_back(w[i++].base);
        return run;
    };
    f.u.push_back(read_run(Sign::Positive));
    while (i < len) {
        PositiveWord b = read_run(Sign::Barred);
        std::reverse(b.begin(), b.end());
        f.v.push_back(std::move(b));
        if (i < len) f.u.push_back(read_run(Sign::Positive));
    }
    if (f.v.size() < f.u.size()) f.v.push_back({});
    return f;
}

inline InvolutiveWord zigzag_recompose(const ZigZagFactorization& f) {
    InvolutiveWord w;
    for (std::size_t i = 0; i < f.u.size(); ++i) {
        for (Letter x : f.u[i]) w.push_back(pos(x));
        w = concat(std::move(w), bar_word(f.v[i]));
    }
    return w;
}

// --- rendering and parsing ---------------------------------------------------
// Positive letters render as their name, barred letters as name + "'".
// Letters are separated by spaces whenever some name is longer than one
// character; the parser accepts both spaced and compact forms.

inline std::string render_letter(const Alphabet& a, SignedLetter sl) {
    std::string s = a.name(sl.base);
    if (sl.sign == Sign::Barred) s += '\'';
    return s;
}

inline std::string render_word(const Alphabet& a, const InvolutiveWord& w) {
    bool spaced = false;
    for (const auto& n : a.names())
        if (n.size() > 1) spaced = true;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (spaced && i > 0) out += ' ';
        out += render_letter(a, w[i]);
    }
    return out;
}

inline std::string render_word(const Alphabet& a, const PositiveWord& w) {
    return render_word(a, to_word(w));
}

// Compact join with no separators; used for identifier-like element names
// where whitespace is not allowed.
inline std::string render_compact(const Alphabet& a, const InvolutiveWord& w) {
    std::string out;
    for (const auto& sl : w) out += render_letter(a, sl);
    return out;
}

inline std::string render_compact(const Alphabet& a, const PositiveWord& w) {
    return render_compact(a, to_word(w));
}

inline InvolutiveWord parse_word(const Alphabet& a, std::string_view text) {
    InvolutiveWord out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t best_len = 0;
        Letter best = 0;
        for (Letter x = 0; x < a.size(); ++x) {
            const std::string& n = a.name(x);
            if (n.size() > best_len && text.substr(i, n.size()) == n) {
                best_len = n.size();
                best = x;
            }
        }
        if (best_len == 0)
            throw ParseError("word: unknown letter at byte " + std::to_string(i) + " in \"" +
                             std::string(text) + "\"");
        i += best_len;
        if (i < text.size() && text[i] == '\'') {
            ++i;
            out.push_back(bar(best));
        } else {
            out.push_back(pos(best));
        }
    }
    return out;
}

inline PositiveWord parse_positive_word(const Alphabet& a, std::string_view text) {
    InvolutiveWord w = parse_word(a, text);
    PositiveWord out;
    out.reserve(w.size());
    for (const auto& sl : w) {
        if (sl.sign == Sign::Barred)
            throw ParseError("word: barred letter not allowed in \"" + std::string(text) + "\"");
        out.push_back(sl.base);
    }
    return out;
}

// --- the doubled alphabet X-hat ----------------------------------------------
// Symbols 0..k-1 are the letters of X, symbols k..2k-1 their bars.

inline Alphabet hat_alphabet(const Alphabet& base) {
    std::vector<std::string> names = base.names();
    for (const auto& n : base.names()) names.push_back(n + "'");
    return Alphabet(std::move(names));
}

inline Symbol symbol_of(SignedLetter sl, std::size_t k) {
    return sl.sign == Sign::Positive ? sl.base : k + sl.base;
}

inline SignedLetter signed_of(Symbol s, std::size_t k) {
    return s < k ? pos(s) : bar(s - k);
}

inline bool is_barred_symbol(Symbol s, std::size_t k) { return s >= k; }

inline Symbol bar_symbol(Symbol s, std::size_t k) { return s < k ? s + k : s - k; }

inline SymbolWord to_symbols(const InvolutiveWord& w, std::size_t k) {
    SymbolWord out;
    out.reserve(w.size());
    for (const auto& sl : w) out.push_back(symbol_of(sl, k));
    return out;
}

inline SymbolWord to_symbols(const PositiveWord& w) { return w; }

inline InvolutiveWord from_symbols(const SymbolWord& s, std::size_t k) {
    InvolutiveWord out;
    out.reserve(s.size());
    for (Symbol x : s) out.push_back(signed_of(x, k));
    return out;
}

inline SymbolWord involute_symbols(const SymbolWord& s, std::size_t k) {
    return to_symbols(involute(from_symbols(s, k)), k);
}

}  // namespace loopauto::words
