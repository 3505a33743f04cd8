#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopauto/algebra.hpp"

namespace loopauto::builtins {

using algebra::Element;
using algebra::FiniteSemigroupTable;
using algebra::GeneratorMap;
using algebra::GenMode;
using algebra::MonoidOracle;
using algebra::ReesElement;
using algebra::ReesSpec;
using words::Alphabet;

inline Alphabet letters(std::size_t k) {
    if (k == 0 || k > 26) throw ValidationError("builtins: letter count must be in 1..26");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    return Alphabet(std::move(names));
}

inline FiniteSemigroupTable trivial_monoid() {
    FiniteSemigroupTable t;
    t.elements = {"e"};
    t.table = {{0}};
    t.identity = 0;
    return t;
}

inline FiniteSemigroupTable cyclic_table(std::size_t n) {
    if (n == 0) throw ValidationError("builtins: cyclic order must be positive");
    FiniteSemigroupTable t;
    for (std::size_t i = 0; i < n; ++i) t.elements.push_back(std::to_string(i));
    t.table.assign(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t.table[a][b] = (a + b) % n;
    t.identity = 0;
    return t;
}

// Symmetric group on three points; products compose left to right, so
// (f*g)(x) = g(f(x)).
inline FiniteSemigroupTable s3_table() {
    const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2},  // e
        {1, 0, 2},  // (12)
        {2, 1, 0},  // (13)
        {0, 2, 1},  // (23)
        {1, 2, 0},  // (123)
        {2, 0, 1},  // (132)
    }};
    const std::array<const char*, 6> names = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
    auto index_of = [&](const std::array<int, 3>& p) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return i;
        throw ValidationError("builtins: S3 closure failure");
    };
    FiniteSemigroupTable t;
    for (const char* n : names) t.elements.push_back(n);
    t.table.assign(6, std::vector<Element>(6));
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c;
            for (int x = 0; x < 3; ++x) c[x] = perms[b][perms[a][x]];
            t.table[a][b] = index_of(c);
        }
    t.identity = 0;
    return t;
}

inline FiniteSemigroupTable right_zero_table(std::size_t n) {
    if (n == 0) throw ValidationError("builtins: right-zero size must be positive");
    FiniteSemigroupTable t;
    for (std::size_t i = 0; i < n; ++i) t.elements.push_back("r" + std::to_string(i + 1));
    t.table.assign(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t.table[a][b] = b;
    return t;
}

// Full transformation monoid on two points; (f*g)(x) = g(f(x)).
inline FiniteSemigroupTable t2_table() {
    const std::array<std::array<int, 2>, 4> maps = {{
        {0, 1},  // id
        {1, 0},  // swap
        {0, 0},  // c0
        {1, 1},  // c1
    }};
    const std::array<const char*, 4> names = {"id", "swap", "c0", "c1"};
    auto index_of = [&](const std::array<int, 2>& p) {
        for (std::size_t i = 0; i < maps.size(); ++i)
            if (maps[i] == p) return i;
        throw ValidationError("builtins: T2 closure failure");
    };
    FiniteSemigroupTable t;
    for (const char* n : names) t.elements.push_back(n);
    t.table.assign(4, std::vector<Element>(4));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            std::array<int, 2> c;
            for (int x = 0; x < 2; ++x) c[x] = maps[b][maps[a][x]];
            t.table[a][b] = index_of(c);
        }
    t.identity = 0;
    return t;
}

inline ReesSpec rectangular_band(std::size_t n, std::size_t m) {
    ReesSpec r;
    r.group = trivial_monoid();
    r.I = n;
    r.J = m;
    r.P.assign(m, std::vector<Element>(n, 0));
    return r;
}

inline ReesSpec rees_z2_2x2() {
    ReesSpec r;
    r.group = cyclic_table(2);
    r.group.elements = {"e", "g"};
    r.I = 2;
    r.J = 2;
    r.P = {{0, 0}, {0, 1}};
    return r;
}

inline GeneratorMap default_table_generators(const FiniteSemigroupTable& t) {
    std::vector<Element> image(t.size());
    for (Element i = 0; i < t.size(); ++i) image[i] = i;
    return GeneratorMap{Alphabet(t.elements), std::move(image),
                        t.identity ? GenMode::Monoid : GenMode::Semigroup};
}

// A runnable corpus entry: a finite table with generators, optionally the
// Rees coordinates it came from, or a monoid oracle for the infinite families.
struct Source {
    std::string name;
    enum class Kind { Table, Rees, Oracle } kind = Kind::Table;

    FiniteSemigroupTable table;
    GeneratorMap gens;
    std::optional<GeneratorMap> alt_gens;

    std::optional<ReesSpec> rees;
    std::vector<ReesElement> rees_gens;  // per letter, Rees coordinates of gens.image

    std::shared_ptr<MonoidOracle> oracle;
};

inline Source table_source(std::string name, FiniteSemigroupTable t, GeneratorMap g) {
    Source s;
    s.name = std::move(name);
    s.kind = Source::Kind::Table;
    s.table = std::move(t);
    s.gens = std::move(g);
    return s;
}

inline Source rees_source(std::string name, ReesSpec r, const Alphabet& a,
                          std::vector<ReesElement> gens) {
    Source s;
    s.name = std::move(name);
    s.kind = Source::Kind::Rees;
    s.rees = r;
    s.rees_gens = std::move(gens);
    s.table = rees_to_table(r);
    std::vector<Element> image;
    for (const auto& e : s.rees_gens) image.push_back(rees_index(r, e));
    s.gens = GeneratorMap{a, std::move(image), GenMode::Semigroup};
    return s;
}

inline Source oracle_source(std::string name, std::shared_ptr<MonoidOracle> o) {
    Source s;
    s.name = std::move(name);
    s.kind = Source::Kind::Oracle;
    s.oracle = std::move(o);
    return s;
}

inline std::optional<std::size_t> parse_sized(const std::string& name, const std::string& prefix) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
        return std::nullopt;
    std::size_t value = 0;
    for (std::size_t i = prefix.size(); i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        value = value * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    return value;
}

inline Source make_builtin(const std::string& name) {
    if (name == "trivial") {
        return table_source(name, trivial_monoid(),
                            GeneratorMap{letters(1), {0}, GenMode::Monoid});
    }
    if (name == "S3") {
        Source s = table_source(name, s3_table(), GeneratorMap{letters(2), {1, 4}, GenMode::Monoid});
        s.alt_gens = GeneratorMap{letters(2), {1, 2}, GenMode::Monoid};
        return s;
    }
    if (name == "T2") {
        return table_source(name, t2_table(), GeneratorMap{letters(2), {1, 2}, GenMode::Monoid});
    }
    if (name == "rees-Z2-2x2") {
        ReesSpec r = rees_z2_2x2();
        return rees_source(name, r, letters(2), {{0, 0, 1}, {1, 0, 0}});
    }
    if (auto n = parse_sized(name, "Z")) {
        Source s = table_source(name, cyclic_table(*n), GeneratorMap{letters(1), {*n > 1 ? 1u : 0u}, GenMode::Monoid});
        if (*n > 2) s.alt_gens = GeneratorMap{letters(2), {1, 2}, GenMode::Monoid};
        return s;
    }
    if (auto n = parse_sized(name, "right-zero-")) {
        std::vector<Element> image(*n);
        for (std::size_t i = 0; i < *n; ++i) image[i] = i;
        return table_source(name, right_zero_table(*n),
                            GeneratorMap{letters(*n), std::move(image), GenMode::Semigroup});
    }
    if (name.compare(0, 17, "rectangular-band-") == 0) {
        auto xpos = name.find('x', 17);
        if (xpos != std::string::npos) {
            auto n = parse_sized(name.substr(0, xpos), "rectangular-band-");
            auto m = parse_sized(name, name.substr(0, xpos + 1));
            if (n && m && *n > 0 && *m > 0) {
                ReesSpec r = rectangular_band(*n, *m);
                std::size_t k = std::max(*n, *m);
                std::vector<ReesElement> gens;
                for (std::size_t t = 0; t < k; ++t) gens.push_back({t % *n, 0, t % *m});
                return rees_source(name, r, letters(k), std::move(gens));
            }
        }
    }
    if (auto k = parse_sized(name, "free-monoid-")) {
        return oracle_source(name, std::make_shared<algebra::FreeMonoidOracle>(letters(*k)));
    }
    if (auto k = parse_sized(name, "free-commutative-")) {
        return oracle_source(name, std::make_shared<algebra::FreeCommutativeOracle>(letters(*k)));
    }
    throw ValidationError("builtins: unknown name '" + name + "'");
}

inline std::vector<std::string> default_corpus_names() {
    return {"trivial", "Z2",       "Z3",          "Z4",
            "S3",      "T2",       "right-zero-2", "rectangular-band-2x2",
            "rees-Z2-2x2", "free-monoid-1", "free-monoid-2", "free-commutative-1",
            "free-commutative-2"};
}

}  // namespace loopauto::builtins
