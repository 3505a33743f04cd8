#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "loopauto/errors.hpp"
#include "loopauto/words.hpp"

namespace loopauto::algebra {

using words::Alphabet;
using words::Letter;
using words::PositiveWord;

using Element = std::size_t;

// Finite semigroup given by a full multiplication table; table[a][b] = a*b.
struct FiniteSemigroupTable {
    std::vector<std::string> elements;
    std::vector<std::vector<Element>> table;
    std::optional<Element> identity;

    std::size_t size() const { return elements.size(); }
    Element mul(Element a, Element b) const { return table[a][b]; }

    std::optional<Element> find(std::string_view name) const {
        for (Element i = 0; i < elements.size(); ++i)
            if (elements[i] == name) return i;
        return std::nullopt;
    }
};

inline void validate(const FiniteSemigroupTable& t) {
    const std::size_t n = t.elements.size();
    if (n == 0) throw ValidationError("table: carrier must be non-empty");
    for (std::size_t i = 0; i < n; ++i) {
        if (!words::valid_letter_name(t.elements[i]))
            throw ValidationError("table: invalid element name '" + t.elements[i] + "'");
        for (std::size_t j = i + 1; j < n; ++j)
            if (t.elements[i] == t.elements[j])
                throw ValidationError("table: duplicate element name '" + t.elements[i] + "'");
    }
    if (t.table.size() != n) throw ValidationError("table: expected " + std::to_string(n) + " rows");
    for (std::size_t a = 0; a < n; ++a) {
        if (t.table[a].size() != n)
            throw ValidationError("table: row " + std::to_string(a) + " has wrong length");
        for (std::size_t b = 0; b < n; ++b)
            if (t.table[a][b] >= n)
                throw ValidationError("table: entry [" + std::to_string(a) + "][" + std::to_string(b) +
                                      "] out of range");
    }
    if (t.identity) {
        Element e = *t.identity;
        if (e >= n) throw ValidationError("table: identity index out of range");
        for (Element a = 0; a < n; ++a)
            if (t.mul(e, a) != a || t.mul(a, e) != a)
                throw ValidationError("table: declared identity fails the identity laws");
    }
}

inline bool check_associative(const FiniteSemigroupTable& t) {
    const std::size_t n = t.size();
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            Element ab = t.mul(a, b);
            for (Element c = 0; c < n; ++c)
                if (t.mul(ab, c) != t.mul(a, t.mul(b, c))) return false;
        }
    return true;
}

inline std::optional<Element> find_identity(const FiniteSemigroupTable& t) {
    for (Element e = 0; e < t.size(); ++e) {
        bool ok = true;
        for (Element a = 0; a < t.size() && ok; ++a)
            ok = t.mul(e, a) == a && t.mul(a, e) == a;
        if (ok) return e;
    }
    return std::nullopt;
}

// Adds a fresh two-sided identity as a new last element, even when the table
// already has one.
inline FiniteSemigroupTable adjoin_identity(const FiniteSemigroupTable& t) {
    FiniteSemigroupTable out = t;
    const std::size_t n = t.size();
    std::string name = "1";
    while (out.find(name)) name += '\'';
    out.elements.push_back(name);
    for (std::size_t a = 0; a < n; ++a) out.table[a].push_back(a);
    std::vector<Element> row(n + 1);
    std::iota(row.begin(), row.end(), 0);
    out.table.push_back(std::move(row));
    out.identity = n;
    return out;
}

enum class GenMode { Monoid, Semigroup };

// A choice of generators: letter i maps to element image[i]. In monoid mode
// the empty word evaluates to the identity; in semigroup mode only non-empty
// words have values.
struct GeneratorMap {
    Alphabet alphabet;
    std::vector<Element> image;
    GenMode mode = GenMode::Monoid;
};

inline void validate(const FiniteSemigroupTable& t, const GeneratorMap& g) {
    if (g.image.size() != g.alphabet.size())
        throw ValidationError("generators: expected one image per letter");
    for (Element m : g.image)
        if (m >= t.size()) throw ValidationError("generators: image out of range");
    if (g.mode == GenMode::Monoid && !t.identity)
        throw NotAMonoid("generators: monoid mode requires a table identity");
}

inline bool is_surjective(const FiniteSemigroupTable& t, const GeneratorMap& g) {
    validate(t, g);
    std::vector<char> seen(t.size(), 0);
    std::vector<Element> queue;
    auto push = [&](Element m) {
        if (!seen[m]) {
            seen[m] = 1;
            queue.push_back(m);
        }
    };
    for (Element m : g.image) push(m);
    if (g.mode == GenMode::Monoid) push(*t.identity);
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (Element m : g.image) push(t.mul(queue[i], m));
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

inline Element eval_word(const FiniteSemigroupTable& t, const GeneratorMap& g,
                         const PositiveWord& w) {
    validate(t, g);
    if (w.empty()) {
        if (g.mode == GenMode::Semigroup)
            throw EmptyWordInSemigroupMode("eval: empty word has no value under semigroup generators");
        return *t.identity;
    }
    for (Letter x : w)
        if (x >= g.alphabet.size()) throw AlphabetMismatch("eval: letter out of range");
    Element m = g.image[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) m = t.mul(m, g.image[w[i]]);
    return m;
}

inline bool is_right_cancellative(const FiniteSemigroupTable& t) {
    const std::size_t n = t.size();
    for (Element m = 0; m < n; ++m) {
        std::vector<char> hit(n, 0);
        for (Element a = 0; a < n; ++a) {
            Element b = t.mul(a, m);
            if (hit[b]) return false;
            hit[b] = 1;
        }
    }
    return true;
}

inline bool is_group(const FiniteSemigroupTable& t) {
    auto e = t.identity ? t.identity : find_identity(t);
    if (!e) return false;
    for (Element a = 0; a < t.size(); ++a) {
        bool inv = false;
        for (Element b = 0; b < t.size() && !inv; ++b)
            inv = t.mul(a, b) == *e && t.mul(b, a) == *e;
        if (!inv) return false;
    }
    return true;
}

inline Element group_inverse(const FiniteSemigroupTable& t, Element a) {
    auto e = t.identity ? t.identity : find_identity(t);
    if (!e) throw NotAGroup("group inverse: table has no identity");
    for (Element b = 0; b < t.size(); ++b)
        if (t.mul(a, b) == *e && t.mul(b, a) == *e) return b;
    throw NotAGroup("group inverse: element " + t.elements[a] + " has no inverse");
}

// --- Rees matrix semigroups M(G; I, J; P) -------------------------------------
// Elements (i, g, j) with (i,g,j)(k,h,l) = (i, g P[j][k] h, l); P is J x I over G.

struct ReesElement {
    std::size_t i = 0;
    Element g = 0;
    std::size_t j = 0;

    friend bool operator==(const ReesElement&, const ReesElement&) = default;
};

struct ReesSpec {
    FiniteSemigroupTable group;
    std::size_t I = 1;
    std::size_t J = 1;
    std::vector<std::vector<Element>> P;
};

inline void validate(const ReesSpec& r) {
    validate(r.group);
    if (!check_associative(r.group)) throw ValidationError("rees: group table is not associative");
    if (!is_group(r.group)) throw NotAGroup("rees: structure group must be a group");
    if (r.I == 0 || r.J == 0) throw ValidationError("rees: index sets must be non-empty");
    if (r.P.size() != r.J) throw ValidationError("rees: P must have J rows");
    for (std::size_t j = 0; j < r.J; ++j) {
        if (r.P[j].size() != r.I) throw ValidationError("rees: P row " + std::to_string(j) + " must have I entries");
        for (Element g : r.P[j])
            if (g >= r.group.size())
                throw ValidationError("rees: P entry out of range in row " + std::to_string(j));
    }
}

inline ReesElement rees_multiply(const ReesSpec& r, const ReesElement& a, const ReesElement& b) {
    Element g = r.group.mul(r.group.mul(a.g, r.P[a.j][b.i]), b.g);
    return {a.i, g, b.j};
}

inline std::size_t rees_index(const ReesSpec& r, const ReesElement& e) {
    return (e.i * r.group.size() + e.g) * r.J + e.j;
}

inline ReesElement rees_element_at(const ReesSpec& r, std::size_t index) {
    std::size_t j = index % r.J;
    std::size_t rest = index / r.J;
    return {rest / r.group.size(), rest % r.group.size(), j};
}

inline std::string rees_element_name(const ReesSpec& r, const ReesElement& e) {
    std::ostringstream os;
    os << "(" << e.i + 1 << "," << r.group.elements[e.g] << "," << e.j + 1 << ")";
    return os.str();
}

inline FiniteSemigroupTable rees_to_table(const ReesSpec& r) {
    validate(r);
    const std::size_t n = r.I * r.group.size() * r.J;
    FiniteSemigroupTable t;
    t.elements.reserve(n);
    for (std::size_t idx = 0; idx < n; ++idx)
        t.elements.push_back(rees_element_name(r, rees_element_at(r, idx)));
    t.table.assign(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            t.table[a][b] =
                rees_index(r, rees_multiply(r, rees_element_at(r, a), rees_element_at(r, b)));
    t.identity = find_identity(t);
    return t;
}

// The maximal subgroup H_ij = {(i, g, j)}; its identity is (i, P[j][i]^-1, j)
// and g -> (i, g P[j][i]^-1, j) embeds G isomorphically onto it.
struct MaximalSubgroup {
    std::size_t i = 0;
    std::size_t j = 0;
    ReesElement identity;
    std::vector<ReesElement> embedding;
};

inline MaximalSubgroup rees_maximal_subgroup(const ReesSpec& r, std::size_t i, std::size_t j) {
    if (i >= r.I || j >= r.J) throw PreconditionViolated("maximal subgroup: indices out of range");
    MaximalSubgroup h;
    h.i = i;
    h.j = j;
    Element pinv = group_inverse(r.group, r.P[j][i]);
    h.identity = {i, pinv, j};
    h.embedding.reserve(r.group.size());
    for (Element g = 0; g < r.group.size(); ++g)
        h.embedding.push_back({i, r.group.mul(g, pinv), j});
    return h;
}

// Given x, y in H_ij and a with a*x in H_ij (a may be the adjoined identity,
// passed as nullopt), returns b in H_ij with b*x = a*x and b*y = a*y.
inline ReesElement cs_rectify(const ReesSpec& r, const std::optional<ReesElement>& a,
                              const ReesElement& x, const ReesElement& y) {
    if (x.i != y.i || x.j != y.j)
        throw PreconditionViolated("cs_rectify: x and y must lie in one maximal subgroup");
    const std::size_t i = x.i, j = x.j;
    Element pinv = group_inverse(r.group, r.P[j][i]);
    if (!a) return {i, pinv, j};
    if (a->i != i) throw PreconditionViolated("cs_rectify: a*x lies outside the subgroup of x");
    return {i, r.group.mul(r.group.mul(a->g, r.P[a->j][i]), pinv), j};
}

inline FiniteSemigroupTable direct_product(const FiniteSemigroupTable& a,
                                           const FiniteSemigroupTable& b) {
    validate(a);
    validate(b);
    FiniteSemigroupTable t;
    const std::size_t n = a.size(), m = b.size();
    auto idx = [m](Element x, Element y) { return x * m + y; };
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < m; ++y)
            t.elements.push_back("(" + a.elements[x] + "," + b.elements[y] + ")");
    t.table.assign(n * m, std::vector<Element>(n * m));
    for (Element x1 = 0; x1 < n; ++x1)
        for (Element y1 = 0; y1 < m; ++y1)
            for (Element x2 = 0; x2 < n; ++x2)
                for (Element y2 = 0; y2 < m; ++y2)
                    t.table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
    if (a.identity && b.identity) t.identity = idx(*a.identity, *b.identity);
    return t;
}

// --- isomorphism search --------------------------------------------------------

namespace detail {

struct ElementSignature {
    std::size_t index = 0;
    std::size_t period = 0;
    std::size_t row_distinct = 0;
    std::size_t col_distinct = 0;
    bool idempotent = false;

    friend bool operator==(const ElementSignature&, const ElementSignature&) = default;
};

inline ElementSignature element_signature(const FiniteSemigroupTable& t, Element a) {
    ElementSignature s;
    std::vector<std::optional<std::size_t>> pos(t.size());
    std::size_t steps = 0;
    Element cur = a;
    while (!pos[cur]) {
        pos[cur] = steps++;
        cur = t.mul(cur, a);
    }
    s.index = *pos[cur];
    s.period = steps - *pos[cur];
    s.idempotent = t.mul(a, a) == a;
    std::vector<char> row(t.size(), 0), col(t.size(), 0);
    for (Element b = 0; b < t.size(); ++b) {
        row[t.mul(a, b)] = 1;
        col[t.mul(b, a)] = 1;
    }
    s.row_distinct = static_cast<std::size_t>(std::count(row.begin(), row.end(), 1));
    s.col_distinct = static_cast<std::size_t>(std::count(col.begin(), col.end(), 1));
    return s;
}

}  // namespace detail

// Backtracking search for a table isomorphism a -> b, optionally forced to
// extend the given seed pairs. Assigned products are propagated eagerly, so a
// seed that generates the whole table reduces the search to a morphism check.
inline std::optional<std::vector<Element>> find_isomorphism(
    const FiniteSemigroupTable& a, const FiniteSemigroupTable& b,
    const std::vector<std::pair<Element, Element>>& seed = {}, std::size_t max_size = 64) {
    validate(a);
    validate(b);
    if (a.size() > max_size || b.size() > max_size)
        throw SizeLimitExceeded("isomorphism search: table larger than " + std::to_string(max_size));
    if (a.size() != b.size()) return std::nullopt;
    const std::size_t n = a.size();
    auto ia = a.identity ? a.identity : find_identity(a);
    auto ib = b.identity ? b.identity : find_identity(b);
    if (ia.has_value() != ib.has_value()) return std::nullopt;

    std::vector<detail::ElementSignature> sa(n), sb(n);
    for (Element x = 0; x < n; ++x) {
        sa[x] = detail::element_signature(a, x);
        sb[x] = detail::element_signature(b, x);
    }

    constexpr Element kUnset = static_cast<Element>(-1);
    std::vector<Element> f(n, kUnset);
    std::vector<char> used(n, 0);
    std::vector<Element> trail;

    auto assign = [&](Element x, Element y) {
        if (f[x] != kUnset) return f[x] == y;
        if (used[y] || !(sa[x] == sb[y])) return false;
        f[x] = y;
        used[y] = 1;
        trail.push_back(x);
        return true;
    };
    auto undo_to = [&](std::size_t mark) {
        while (trail.size() > mark) {
            Element x = trail.back();
            trail.pop_back();
            used[f[x]] = 0;
            f[x] = kUnset;
        }
    };
    auto propagate = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < trail.size(); ++i)
                for (std::size_t k = 0; k < trail.size(); ++k) {
                    Element x1 = trail[i], x2 = trail[k];
                    Element z = a.mul(x1, x2);
                    Element w = b.mul(f[x1], f[x2]);
                    if (f[z] == kUnset) {
                        if (!assign(z, w)) return false;
                        changed = true;
                    } else if (f[z] != w) {
                        return false;
                    }
                }
        }
        return true;
    };

    auto dfs = [&](auto&& self, Element next) -> bool {
        while (next < n && f[next] != kUnset) ++next;
        if (next == n) return true;
        for (Element y = 0; y < n; ++y) {
            std::size_t mark = trail.size();
            if (assign(next, y) && propagate() && self(self, next + 1)) return true;
            undo_to(mark);
        }
        return false;
    };

    if (ia && !assign(*ia, *ib)) return std::nullopt;
    for (const auto& [x, y] : seed) {
        if (x >= n || y >= n) throw PreconditionViolated("isomorphism search: seed out of range");
        if (!assign(x, y)) return std::nullopt;
    }
    if (!propagate()) return std::nullopt;
    if (!dfs(dfs, 0)) return std::nullopt;
    return f;
}

// --- oracles for infinite (or just table-free) monoids ------------------------
// Elements are canonical string keys; the oracle fixes the generators, so
// letters act directly.

struct MonoidOracle {
    virtual ~MonoidOracle() = default;

    virtual const Alphabet& alphabet() const = 0;
    virtual std::string identity_key() const = 0;
    virtual std::string right_multiply(const std::string& key, Letter x) const = 0;
    virtual bool has_right_divide() const { return true; }
    // All keys a with a * (x sigma) = key.
    virtual std::vector<std::string> right_divide(const std::string& key, Letter x) const = 0;

    std::string eval(const PositiveWord& w) const {
        std::string k = identity_key();
        for (Letter x : w) k = right_multiply(k, x);
        return k;
    }
};

class FreeMonoidOracle final : public MonoidOracle {
public:
    explicit FreeMonoidOracle(Alphabet a) : alphabet_(std::move(a)) {}

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string identity_key() const override { return ""; }

    std::string right_multiply(const std::string& key, Letter x) const override {
        PositiveWord w = words::parse_positive_word(alphabet_, key);
        w.push_back(x);
        return words::render_word(alphabet_, w);
    }

    std::vector<std::string> right_divide(const std::string& key, Letter x) const override {
        PositiveWord w = words::parse_positive_word(alphabet_, key);
        if (w.empty() || w.back() != x) return {};
        w.pop_back();
        return {words::render_word(alphabet_, w)};
    }

private:
    Alphabet alphabet_;
};

class FreeCommutativeOracle final : public MonoidOracle {
public:
    explicit FreeCommutativeOracle(Alphabet a) : alphabet_(std::move(a)) {}

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string identity_key() const override { return render(std::vector<std::size_t>(alphabet_.size(), 0)); }

    std::string right_multiply(const std::string& key, Letter x) const override {
        auto c = counts(key);
        ++c[x];
        return render(c);
    }

    std::vector<std::string> right_divide(const std::string& key, Letter x) const override {
        auto c = counts(key);
        if (c[x] == 0) return {};
        --c[x];
        return {render(c)};
    }

private:
    std::vector<std::size_t> counts(const std::string& key) const {
        std::vector<std::size_t> c;
        std::size_t value = 0;
        for (char ch : key) {
            if (ch == ',') {
                c.push_back(value);
                value = 0;
            } else {
                value = value * 10 + static_cast<std::size_t>(ch - '0');
            }
        }
        c.push_back(value);
        if (c.size() != alphabet_.size()) throw ValidationError("oracle: malformed key '" + key + "'");
        return c;
    }

    std::string render(const std::vector<std::size_t>& c) const {
        std::string s;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(c[i]);
        }
        return s;
    }

    Alphabet alphabet_;
};

class TableOracle final : public MonoidOracle {
public:
    TableOracle(FiniteSemigroupTable t, GeneratorMap g) : table_(std::move(t)), gens_(std::move(g)) {
        validate(table_, gens_);
        if (gens_.mode != GenMode::Monoid) throw NotAMonoid("oracle: table oracle requires monoid generators");
    }

    const Alphabet& alphabet() const override { return gens_.alphabet; }
    std::string identity_key() const override { return table_.elements[*table_.identity]; }

    std::string right_multiply(const std::string& key, Letter x) const override {
        return table_.elements[table_.mul(index(key), gens_.image[x])];
    }

    std::vector<std::string> right_divide(const std::string& key, Letter x) const override {
        Element b = index(key);
        std::vector<std::string> out;
        for (Element a = 0; a < table_.size(); ++a)
            if (table_.mul(a, gens_.image[x]) == b) out.push_back(table_.elements[a]);
        return out;
    }

    const FiniteSemigroupTable& table() const { return table_; }
    const GeneratorMap& generators() const { return gens_; }

private:
    Element index(const std::string& key) const {
        auto i = table_.find(key);
        if (!i) throw ValidationError("oracle: unknown key '" + key + "'");
        return *i;
    }

    FiniteSemigroupTable table_;
    GeneratorMap gens_;
};

}  // namespace loopauto::algebra
