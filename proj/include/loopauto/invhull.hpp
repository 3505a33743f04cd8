#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "loopauto/algebra.hpp"
#include "loopauto/automata.hpp"
#include "loopauto/errors.hpp"
#include "loopauto/loopcore.hpp"
#include "loopauto/words.hpp"

namespace loopauto::invhull {

using algebra::Element;
using algebra::FiniteSemigroupTable;
using algebra::GeneratorMap;
using algebra::MonoidOracle;
using automata::Dfa;
using automata::Nfa;
using automata::State;
using words::Alphabet;
using words::InvolutiveWord;
using words::Letter;
using words::PositiveWord;
using words::Sign;
using words::Symbol;
using words::SymbolWord;

inline constexpr std::size_t kUndefined = std::numeric_limits<std::size_t>::max();

// Partial injective map on {0..n-1}; kUndefined marks points outside the domain.
struct PartialBijection {
    std::vector<std::size_t> map;

    std::size_t size() const { return map.size(); }

    friend bool operator==(const PartialBijection&, const PartialBijection&) = default;
};

inline void validate(const PartialBijection& f) {
    std::vector<char> hit(f.map.size(), 0);
    for (std::size_t v : f.map) {
        if (v == kUndefined) continue;
        if (v >= f.map.size()) throw ValidationError("partial bijection: value out of range");
        if (hit[v]) throw ValidationError("partial bijection: not injective");
        hit[v] = 1;
    }
}

inline PartialBijection identity_bijection(std::size_t n) {
    PartialBijection f;
    f.map.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.map[i] = i;
    return f;
}

// f then g, as right actions compose.
inline PartialBijection compose(const PartialBijection& f, const PartialBijection& g) {
    if (f.size() != g.size()) throw ValidationError("compose: carrier sizes differ");
    PartialBijection h;
    h.map.resize(f.size(), kUndefined);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.map[i] != kUndefined) h.map[i] = g.map[f.map[i]];
    return h;
}

inline PartialBijection relational_inverse(const PartialBijection& f) {
    validate(f);
    PartialBijection g;
    g.map.assign(f.size(), kUndefined);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.map[i] != kUndefined) g.map[f.map[i]] = i;
    return g;
}

inline std::string partial_map_description(const PartialBijection& f,
                                           const std::vector<std::string>& names) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.map[i] == kUndefined) continue;
        if (!first) out += ", ";
        first = false;
        out += names[i] + "->" + names[f.map[i]];
    }
    out += "}";
    return out;
}

// x maps to x*m; total, and injective exactly when the table cancels on the right.
inline PartialBijection right_translation(const FiniteSemigroupTable& t, Element m) {
    algebra::validate(t);
    if (!t.identity) throw NotAMonoid("right translation: table has no identity");
    if (m >= t.size()) throw PreconditionViolated("right translation: element out of range");
    if (!algebra::is_right_cancellative(t))
        throw NotRightCancellative("right translation: table is not right cancellative");
    PartialBijection f;
    f.map.resize(t.size());
    for (Element x = 0; x < t.size(); ++x) f.map[x] = t.mul(x, m);
    return f;
}

struct InverseHullTable {
    std::size_t carrier = 0;
    std::vector<PartialBijection> elements;
    std::vector<SymbolWord> representative;
    std::vector<std::size_t> rho;
    std::vector<std::size_t> rho_inverse;
    std::vector<std::size_t> inverse;
    FiniteSemigroupTable table;

    std::size_t size() const { return elements.size(); }
};

inline void validate(const InverseHullTable& h) {
    algebra::validate(h.table);
    if (h.table.size() != h.elements.size() || h.representative.size() != h.elements.size() ||
        h.inverse.size() != h.elements.size())
        throw ValidationError("inverse hull: field sizes disagree");
    if (!h.table.identity || *h.table.identity != 0)
        throw ValidationError("inverse hull: identity must be element 0");
    for (const auto& f : h.elements) {
        validate(f);
        if (f.size() != h.carrier) throw ValidationError("inverse hull: carrier size mismatch");
    }
    for (std::size_t i = 0; i < h.elements.size(); ++i) {
        if (h.inverse[i] >= h.elements.size())
            throw ValidationError("inverse hull: inverse index out of range");
        if (relational_inverse(h.elements[i]) != h.elements[h.inverse[i]])
            throw ValidationError("inverse hull: stored inverse is not the relational inverse");
        PartialBijection back = compose(compose(h.elements[i], h.elements[h.inverse[i]]),
                                        h.elements[i]);
        if (back != h.elements[i])
            throw ValidationError("inverse hull: f f' f = f fails");
    }
    for (std::size_t i = 0; i < h.elements.size(); ++i)
        for (std::size_t j = 0; j < h.elements.size(); ++j)
            if (compose(h.elements[i], h.elements[j]) != h.elements[h.table.mul(i, j)])
                throw ValidationError("inverse hull: table disagrees with composition");
    for (std::size_t i = 0; i < h.elements.size(); ++i) {
        if (h.table.mul(i, i) != i) continue;
        for (std::size_t j = 0; j < h.elements.size(); ++j) {
            if (h.table.mul(j, j) != j) continue;
            if (h.table.mul(i, j) != h.table.mul(j, i))
                throw ValidationError("inverse hull: idempotents do not commute");
        }
    }
}

// Closure of the letter translations and their inverses under composition.
inline InverseHullTable inverse_hull_finite(const FiniteSemigroupTable& t0,
                                            const GeneratorMap& g0) {
    auto [t, g] = loopcore::monoid_form(t0, g0);
    if (!algebra::is_right_cancellative(t))
        throw NotRightCancellative("inverse hull: monoid form is not right cancellative");
    const std::size_t k = g.alphabet.size();

    InverseHullTable h;
    h.carrier = t.size();

    std::vector<PartialBijection> gen(2 * k);
    for (Letter x = 0; x < k; ++x) {
        gen[x] = right_translation(t, g.image[x]);
        gen[k + x] = relational_inverse(gen[x]);
    }

    std::map<std::vector<std::size_t>, std::size_t> index;
    auto add = [&](const PartialBijection& f, SymbolWord rep) {
        auto [it, fresh] = index.try_emplace(f.map, h.elements.size());
        if (fresh) {
            h.elements.push_back(f);
            h.representative.push_back(std::move(rep));
        }
        return it->second;
    };
    add(identity_bijection(t.size()), {});
    h.rho.resize(k);
    h.rho_inverse.resize(k);
    for (Symbol s = 0; s < 2 * k; ++s) {
        std::size_t at = add(gen[s], {s});
        (s < k ? h.rho[s] : h.rho_inverse[s - k]) = at;
    }
    for (std::size_t i = 0; i < h.elements.size(); ++i)
        for (Symbol s = 0; s < 2 * k; ++s) {
            SymbolWord rep = h.representative[i];
            rep.push_back(s);
            add(compose(h.elements[i], gen[s]), std::move(rep));
        }

    const std::size_t count = h.elements.size();
    h.inverse.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto it = index.find(relational_inverse(h.elements[i]).map);
        if (it == index.end())
            throw ValidationError("inverse hull: closure is missing a relational inverse");
        h.inverse[i] = it->second;
    }

    h.table.elements.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string name = h.representative[i].empty()
                               ? "ε"
                               : words::render_compact(
                                     g.alphabet, words::from_symbols(h.representative[i], k));
        h.table.elements.push_back(std::move(name));
    }
    std::set<std::string> distinct(h.table.elements.begin(), h.table.elements.end());
    if (distinct.size() != count) {
        h.table.elements.clear();
        for (std::size_t i = 0; i < count; ++i)
            h.table.elements.push_back("h" + std::to_string(i));
    }
    h.table.table.assign(count, std::vector<Element>(count));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) {
            auto it = index.find(compose(h.elements[i], h.elements[j]).map);
            if (it == index.end())
                throw ValidationError("inverse hull: closure missed a product");
            h.table.table[i][j] = it->second;
        }
    h.table.identity = 0;
    validate(h);
    return h;
}

// --- symbolic inverse hull of the free monoid ----------------------------------

// Zero, or the partial map t*u -> t*v with domain X*u.
struct PolycyclicElement {
    bool zero = false;
    PositiveWord u;
    PositiveWord v;

    friend bool operator==(const PolycyclicElement&, const PolycyclicElement&) = default;
};

inline PolycyclicElement polycyclic_zero() { return {true, {}, {}}; }
inline PolycyclicElement polycyclic_identity() { return {false, {}, {}}; }

namespace detail {

// If whole = s * tail, returns s.
inline std::optional<PositiveWord> strip_suffix(const PositiveWord& whole,
                                                const PositiveWord& tail) {
    if (tail.size() > whole.size()) return std::nullopt;
    const std::size_t cut = whole.size() - tail.size();
    if (!std::equal(tail.begin(), tail.end(), whole.begin() + cut)) return std::nullopt;
    return PositiveWord(whole.begin(), whole.begin() + cut);
}

inline PositiveWord cat(PositiveWord a, const PositiveWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace detail

inline PolycyclicElement polycyclic_compose(const PolycyclicElement& a,
                                            const PolycyclicElement& b) {
    if (a.zero || b.zero) return polycyclic_zero();
    if (auto s = detail::strip_suffix(a.v, b.u))
        return {false, a.u, detail::cat(std::move(*s), b.v)};
    if (auto s = detail::strip_suffix(b.u, a.v))
        return {false, detail::cat(std::move(*s), a.u), b.v};
    return polycyclic_zero();
}

inline PolycyclicElement polycyclic_eval(const Alphabet& a, const InvolutiveWord& w) {
    PolycyclicElement e = polycyclic_identity();
    for (const auto& sl : w) {
        if (sl.base >= a.size()) throw AlphabetMismatch("polycyclic eval: letter out of range");
        PolycyclicElement step = sl.sign == Sign::Positive
                                     ? PolycyclicElement{false, {}, {sl.base}}
                                     : PolycyclicElement{false, {sl.base}, {}};
        e = polycyclic_compose(e, step);
    }
    return e;
}

inline std::string render_polycyclic(const Alphabet& a, const PolycyclicElement& e) {
    if (e.zero) return "0";
    auto part = [&](const PositiveWord& w) {
        return w.empty() ? std::string("ε") : words::render_compact(a, w);
    };
    return "(" + part(e.u) + "|" + part(e.v) + ")";
}

// One-letter specialization: (p, q) stands for (a^p, a^q); zero never arises.
struct BicyclicElement {
    std::size_t p = 0;
    std::size_t q = 0;

    friend bool operator==(const BicyclicElement&, const BicyclicElement&) = default;
};

inline BicyclicElement bicyclic_compose(const BicyclicElement& a, const BicyclicElement& b) {
    return {a.p + (b.p > a.q ? b.p - a.q : 0), b.q + (a.q > b.p ? a.q - b.p : 0)};
}

inline BicyclicElement bicyclic_eval(const InvolutiveWord& w) {
    BicyclicElement e;
    for (const auto& sl : w) {
        if (sl.base != 0) throw AlphabetMismatch("bicyclic eval: single-letter alphabet required");
        e = bicyclic_compose(e, sl.sign == Sign::Positive ? BicyclicElement{0, 1}
                                                          : BicyclicElement{1, 0});
    }
    return e;
}

// --- minimality of the loop automaton ------------------------------------------

struct SeparationWitness {
    std::size_t p = 0;
    std::size_t q = 0;
    InvolutiveWord word;

    friend bool operator==(const SeparationWitness&, const SeparationWitness&) = default;
};

struct MinimalityReport {
    std::size_t vertices = 0;
    bool deterministic = false;
    bool trim = false;
    std::size_t separated_pairs = 0;
    std::vector<SeparationWitness> witnesses;
};

namespace detail {

inline bool nfa_deterministic(const Nfa& a) {
    std::set<std::pair<State, Symbol>> seen;
    for (const auto& e : a.edges)
        if (!seen.insert({e.from, e.label}).second) return false;
    return true;
}

inline bool nfa_trim(const Nfa& a) {
    std::vector<std::vector<State>> fwd(a.states), rev(a.states);
    for (const auto& e : a.edges) {
        fwd[e.from].push_back(e.to);
        rev[e.to].push_back(e.from);
    }
    auto reach = [&](const std::vector<State>& seeds, const std::vector<std::vector<State>>& adj) {
        std::vector<char> seen(a.states, 0);
        std::vector<State> queue = seeds;
        for (State q : queue) seen[q] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (State to : adj[queue[i]])
                if (!seen[to]) {
                    seen[to] = 1;
                    queue.push_back(to);
                }
        return seen;
    };
    std::vector<State> accepting;
    for (State q = 0; q < a.states; ++q)
        if (a.accepting[q]) accepting.push_back(q);
    auto fromStart = reach({a.start}, fwd);
    auto toAccept = reach(accepting, rev);
    for (State q = 0; q < a.states; ++q)
        if (!fromStart[q] || !toAccept[q]) return false;
    return true;
}

// Reads w over the automaton from the given state set.
inline std::set<State> nfa_walk(const Nfa& a, std::set<State> cur, const SymbolWord& w) {
    std::map<std::pair<State, Symbol>, std::vector<State>> adj;
    for (const auto& e : a.edges) adj[{e.from, e.label}].push_back(e.to);
    for (Symbol s : w) {
        std::set<State> next;
        for (State q : cur) {
            auto it = adj.find({q, s});
            if (it == adj.end()) continue;
            next.insert(it->second.begin(), it->second.end());
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace detail

inline MinimalityReport verify_minimality(const FiniteSemigroupTable& t0,
                                          const GeneratorMap& g0) {
    auto [t, g] = loopcore::monoid_form(t0, g0);
    if (!algebra::is_right_cancellative(t))
        throw NotRightCancellative("minimality: monoid form is not right cancellative");
    loopcore::LoopAutomaton la = loopcore::loop_automaton(t, g);
    const std::size_t k = g.alphabet.size();
    const std::size_t n = t.size();

    MinimalityReport r;
    r.vertices = n;
    r.deterministic = detail::nfa_deterministic(la.nfa);
    r.trim = detail::nfa_trim(la.nfa);

    auto word = loopcore::shortest_words(t, g);
    for (Element p = 0; p < n; ++p)
        if (!word[p]) throw ValidationError("minimality: generators do not reach every element");

    for (Element p = 0; p < n; ++p)
        for (Element q = p + 1; q < n; ++q) {
            InvolutiveWord ubar = words::bar_word(*word[p]);
            SymbolWord sym = words::to_symbols(ubar, k);
            bool inP = false;
            {
                auto end = detail::nfa_walk(la.nfa, {p}, sym);
                inP = end.count(la.identity) != 0;
            }
            bool inQ = true;
            {
                std::set<Element> cur{q};
                for (const auto& sl : ubar) {
                    Element img = g.image[sl.base];
                    std::set<Element> next;
                    for (Element m = 0; m < n; ++m)
                        if (cur.count(t.mul(m, img))) next.insert(m);
                    cur = std::move(next);
                }
                inQ = cur.count(*t.identity) != 0;
            }
            if (inP && !inQ) {
                ++r.separated_pairs;
                r.witnesses.push_back({p, q, std::move(ubar)});
            }
        }
    return r;
}

inline MinimalityReport verify_minimality(const MonoidOracle& o, std::size_t radius) {
    loopcore::Ball b = loopcore::loop_ball(o, radius);
    const std::size_t k = o.alphabet().size();

    MinimalityReport r;
    r.vertices = b.vertex.size();
    r.deterministic = detail::nfa_deterministic(b.nfa);
    r.trim = detail::nfa_trim(b.nfa);

    if (b.vertex.size() > 1 && !o.has_right_divide())
        throw BallTooSmall(
            "minimality: certifying non-membership needs right division; "
            "ball edges alone cannot rule out vertices outside the ball");

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < b.vertex.size(); ++i) index[b.vertex[i]] = i;
    std::vector<PositiveWord> word(b.vertex.size());
    {
        std::vector<char> seen(b.vertex.size(), 0);
        std::vector<std::size_t> queue{0};
        seen[0] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            std::size_t at = queue[i];
            if (b.distance[at] == radius) continue;
            for (Letter x = 0; x < k; ++x) {
                auto it = index.find(o.right_multiply(b.vertex[at], x));
                if (it == index.end() || seen[it->second]) continue;
                seen[it->second] = 1;
                word[it->second] = word[at];
                word[it->second].push_back(x);
                queue.push_back(it->second);
            }
        }
    }

    for (std::size_t p = 0; p < b.vertex.size(); ++p)
        for (std::size_t q = p + 1; q < b.vertex.size(); ++q) {
            InvolutiveWord ubar = words::bar_word(word[p]);
            SymbolWord sym = words::to_symbols(ubar, k);
            bool inP = detail::nfa_walk(b.nfa, {p}, sym).count(0) != 0;
            bool inQ = true;
            {
                std::set<std::string> cur{b.vertex[q]};
                for (const auto& sl : ubar) {
                    std::set<std::string> next;
                    for (const auto& key : cur) {
                        auto pre = o.right_divide(key, sl.base);
                        next.insert(pre.begin(), pre.end());
                    }
                    cur = std::move(next);
                }
                inQ = cur.count(o.identity_key()) != 0;
            }
            if (inP && !inQ) {
                ++r.separated_pairs;
                r.witnesses.push_back({p, q, std::move(ubar)});
            }
        }
    return r;
}

// --- the inverse hull theorem ---------------------------------------------------

struct InverseHullReport {
    InverseHullTable hull;
    automata::SyntacticMonoid syntactic;
    std::optional<std::vector<Element>> isomorphism;
    bool action_coincides = false;
};

inline InverseHullReport verify_inverse_hull_theorem(const FiniteSemigroupTable& t0,
                                                     const GeneratorMap& g0) {
    auto [t, g] = loopcore::monoid_form(t0, g0);
    if (!algebra::is_right_cancellative(t))
        throw NotRightCancellative("inverse hull theorem: monoid form is not right cancellative");
    const std::size_t k = g.alphabet.size();

    InverseHullReport r;
    r.hull = inverse_hull_finite(t, g);
    r.syntactic = automata::syntactic_monoid(loopcore::loop_problem_dfa(t, g));

    std::vector<std::pair<Element, Element>> seed;
    for (Letter x = 0; x < k; ++x) {
        seed.push_back({r.syntactic.monoid.letter_class[x], r.hull.rho[x]});
        seed.push_back({r.syntactic.monoid.letter_class[k + x], r.hull.rho_inverse[x]});
    }
    r.isomorphism = algebra::find_isomorphism(r.syntactic.monoid.table, r.hull.table, seed);

    const Dfa& m = r.syntactic.minimal;
    r.action_coincides = m.states == t.size();
    if (r.action_coincides) {
        std::vector<State> state_of(t.size(), automata::kNoState);
        std::vector<Element> elem_of(m.states, kUndefined);
        auto bind = [&](Element e, State s) {
            if (s == automata::kNoState) return false;
            if (state_of[e] != automata::kNoState) return state_of[e] == s;
            if (elem_of[s] != kUndefined) return false;
            state_of[e] = s;
            elem_of[s] = e;
            return true;
        };
        bool ok = bind(*t.identity, m.start);
        std::vector<Element> queue{*t.identity};
        for (std::size_t i = 0; ok && i < queue.size(); ++i)
            for (Letter x = 0; ok && x < k; ++x) {
                Element e = t.mul(queue[i], g.image[x]);
                State s = m.delta[state_of[queue[i]]][x];
                if (state_of[e] == automata::kNoState) queue.push_back(e);
                ok = bind(e, s);
            }
        for (Element e = 0; ok && e < t.size(); ++e)
            ok = state_of[e] != automata::kNoState;
        for (Element e = 0; ok && e < t.size(); ++e) {
            State s = state_of[e];
            ok = m.accepting[s] == (e == *t.identity);
            for (Letter x = 0; ok && x < k; ++x) {
                ok = m.delta[s][x] == state_of[t.mul(e, g.image[x])];
                if (!ok) break;
                std::vector<Element> divisors;
                for (Element d = 0; d < t.size(); ++d)
                    if (t.mul(d, g.image[x]) == e) divisors.push_back(d);
                State expect = divisors.size() == 1 ? state_of[divisors[0]] : automata::kNoState;
                ok = divisors.size() <= 1 && m.delta[s][k + x] == expect;
            }
        }
        r.action_coincides = ok;
    }
    return r;
}

// --- bounded syntactic equivalence ----------------------------------------------

namespace detail {

inline std::vector<InvolutiveWord> involutive_words_up_to(std::size_t letters, std::size_t len) {
    std::vector<InvolutiveWord> out{{}};
    std::size_t begin = 0;
    for (std::size_t l = 0; l < len; ++l) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Symbol s = 0; s < 2 * letters; ++s) {
                InvolutiveWord w = out[i];
                w.push_back(words::signed_of(s, letters));
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

}  // namespace detail

// First context (x, y) with |x|, |y| <= bound telling u and v apart, in
// length-lex order of x then y; nullopt when none exists.
template <typename Member>
std::optional<std::pair<InvolutiveWord, InvolutiveWord>> bounded_equivalence_witness(
    std::size_t letters, const Member& member, const InvolutiveWord& u, const InvolutiveWord& v,
    std::size_t bound = 6) {
    auto contexts = detail::involutive_words_up_to(letters, bound);
    for (const auto& x : contexts)
        for (const auto& y : contexts) {
            InvolutiveWord xuy = words::concat(x, words::concat(u, y));
            InvolutiveWord xvy = words::concat(x, words::concat(v, y));
            if (member(xuy) != member(xvy)) return std::make_pair(x, y);
        }
    return std::nullopt;
}

template <typename Member>
bool bounded_syntactic_equivalence(std::size_t letters, const Member& member,
                                   const InvolutiveWord& u, const InvolutiveWord& v,
                                   std::size_t bound = 6) {
    return !bounded_equivalence_witness(letters, member, u, v, bound).has_value();
}

}  // namespace loopauto::invhull
