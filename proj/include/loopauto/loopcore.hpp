#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "loopauto/algebra.hpp"
#include "loopauto/automata.hpp"
#include "loopauto/errors.hpp"
#include "loopauto/words.hpp"

namespace loopauto::loopcore {

using algebra::Element;
using algebra::FiniteSemigroupTable;
using algebra::GeneratorMap;
using algebra::GenMode;
using algebra::MonoidOracle;
using automata::Dfa;
using automata::Nfa;
using words::Alphabet;
using words::InvolutiveWord;
using words::Letter;
using words::PositiveWord;
using words::Sign;
using words::SymbolWord;

// Semigroup generators act on the semigroup with a fresh identity adjoined;
// monoid generators are used as given.
inline std::pair<FiniteSemigroupTable, GeneratorMap> monoid_form(const FiniteSemigroupTable& t,
                                                                 const GeneratorMap& g) {
    algebra::validate(t, g);
    if (g.mode == GenMode::Monoid) return {t, g};
    return {adjoin_identity(t), GeneratorMap{g.alphabet, g.image, GenMode::Monoid}};
}

struct CayleyGraph {
    Alphabet alphabet;
    std::vector<std::string> vertex;
    Element identity = 0;

    struct Edge {
        Element from = 0;
        Letter label = 0;
        Element to = 0;
    };
    std::vector<Edge> edges;
};

inline CayleyGraph cayley_graph(const FiniteSemigroupTable& t, const GeneratorMap& g) {
    algebra::validate(t);
    algebra::validate(t, g);
    if (g.mode != GenMode::Monoid || !t.identity)
        throw NotAMonoid("cayley graph: monoid generators over a table with identity required");
    if (!algebra::is_surjective(t, g))
        throw ValidationError("cayley graph: generators must generate the whole monoid");
    CayleyGraph c;
    c.alphabet = g.alphabet;
    c.vertex = t.elements;
    c.identity = *t.identity;
    for (Element a = 0; a < t.size(); ++a)
        for (Letter x = 0; x < g.alphabet.size(); ++x)
            c.edges.push_back({a, x, t.mul(a, g.image[x])});
    return c;
}

// The Cayley graph with a reversed barred edge for every positive edge, read
// as an automaton whose start and sole terminal is the identity vertex.
struct LoopAutomaton {
    Alphabet base;
    Alphabet hat;
    std::vector<std::string> vertex;
    Element identity = 0;
    Nfa nfa;
};

inline LoopAutomaton loop_automaton(const FiniteSemigroupTable& t0, const GeneratorMap& g0) {
    auto [t, g] = monoid_form(t0, g0);
    CayleyGraph c = cayley_graph(t, g);
    LoopAutomaton l;
    l.base = g.alphabet;
    l.hat = words::hat_alphabet(g.alphabet);
    l.vertex = c.vertex;
    l.identity = c.identity;
    const std::size_t k = g.alphabet.size();
    l.nfa.symbols = 2 * k;
    l.nfa.states = c.vertex.size();
    l.nfa.start = c.identity;
    l.nfa.accepting.assign(c.vertex.size(), 0);
    l.nfa.accepting[c.identity] = 1;
    for (const auto& e : c.edges) {
        l.nfa.edges.push_back({e.from, e.label, e.to});
        l.nfa.edges.push_back({e.to, e.label + k, e.from});
    }
    return l;
}

inline Dfa loop_problem_dfa(const FiniteSemigroupTable& t, const GeneratorMap& g) {
    return automata::minimize(automata::determinize(loop_automaton(t, g).nfa));
}

// Loop automaton restricted to the vertices at positive-letter distance at
// most radius from the identity. Non-authoritative: membership is always
// decided by simulation, never by ball edges.
struct Ball {
    Alphabet base;
    Alphabet hat;
    std::vector<std::string> vertex;
    std::vector<std::size_t> distance;
    std::vector<char> boundary;
    std::size_t radius = 0;
    Nfa nfa;
};

inline Ball loop_ball(const MonoidOracle& o, std::size_t radius) {
    Ball b;
    b.base = o.alphabet();
    b.hat = words::hat_alphabet(o.alphabet());
    b.radius = radius;
    const std::size_t k = o.alphabet().size();

    std::map<std::string, std::size_t> index;
    auto add = [&](const std::string& key, std::size_t dist) {
        auto [it, fresh] = index.try_emplace(key, b.vertex.size());
        if (fresh) {
            b.vertex.push_back(key);
            b.distance.push_back(dist);
        }
        return it->second;
    };
    add(o.identity_key(), 0);
    for (std::size_t at = 0; at < b.vertex.size(); ++at) {
        if (b.distance[at] == radius) continue;
        std::string key = b.vertex[at];
        for (Letter x = 0; x < k; ++x) add(o.right_multiply(key, x), b.distance[at] + 1);
    }

    b.boundary.assign(b.vertex.size(), 0);
    for (std::size_t q = 0; q < b.vertex.size(); ++q) b.boundary[q] = b.distance[q] == radius;

    b.nfa.symbols = 2 * k;
    b.nfa.states = b.vertex.size();
    b.nfa.start = 0;
    b.nfa.accepting.assign(b.vertex.size(), 0);
    b.nfa.accepting[0] = 1;
    for (std::size_t q = 0; q < b.vertex.size(); ++q)
        for (Letter x = 0; x < k; ++x) {
            auto it = index.find(o.right_multiply(b.vertex[q], x));
            if (it == index.end()) continue;
            b.nfa.edges.push_back({q, x, it->second});
            b.nfa.edges.push_back({it->second, x + k, q});
        }
    return b;
}

// Set-of-vertices simulation over the loop automaton: positive letters act by
// right multiplication, barred letters by edge reversal.
inline bool loop_membership(const FiniteSemigroupTable& t0, const GeneratorMap& g0,
                            const InvolutiveWord& w) {
    auto [t, g] = monoid_form(t0, g0);
    const std::size_t n = t.size();
    std::vector<char> cur(n, 0), next(n, 0);
    cur[*t.identity] = 1;
    for (const auto& sl : w) {
        if (sl.base >= g.alphabet.size())
            throw AlphabetMismatch("loop membership: letter out of range");
        Element img = g.image[sl.base];
        std::fill(next.begin(), next.end(), 0);
        if (sl.sign == Sign::Positive) {
            for (Element m = 0; m < n; ++m)
                if (cur[m]) next[t.mul(m, img)] = 1;
        } else {
            for (Element m = 0; m < n; ++m)
                if (cur[t.mul(m, img)]) next[m] = 1;
        }
        std::swap(cur, next);
    }
    return cur[*t.identity] != 0;
}

inline bool loop_membership(const MonoidOracle& o, const InvolutiveWord& w) {
    std::set<std::string> cur{o.identity_key()};
    for (const auto& sl : w) {
        if (sl.base >= o.alphabet().size())
            throw AlphabetMismatch("loop membership: letter out of range");
        if (sl.sign == Sign::Barred && !o.has_right_divide())
            throw OracleLacksDivision("loop membership: oracle cannot divide");
        std::set<std::string> next;
        for (const auto& key : cur) {
            if (sl.sign == Sign::Positive) {
                next.insert(o.right_multiply(key, sl.base));
            } else {
                auto pre = o.right_divide(key, sl.base);
                next.insert(pre.begin(), pre.end());
            }
        }
        cur = std::move(next);
    }
    return cur.count(o.identity_key()) != 0;
}

// Points p_0 .. p_n for the factorization w = u_0 involute(v_1) u_1 ...: the
// word labels a path from p_0 to p_n exactly when consecutive points satisfy
// p_i (u_i sigma) = p_{i+1} (v_{i+1} sigma).
struct ZigZagWitness {
    words::ZigZagFactorization factorization;
    std::vector<Element> points;
};

inline bool zigzag_witness_valid(const FiniteSemigroupTable& t0, const GeneratorMap& g0,
                                 const ZigZagWitness& z, Element x, Element y) {
    auto [t, g] = monoid_form(t0, g0);
    const std::size_t n = z.factorization.blocks();
    if (z.points.size() != n + 1) return false;
    if (z.points.front() != x || z.points.back() != y) return false;
    for (std::size_t i = 0; i < n; ++i) {
        Element lhs = z.points[i];
        for (Letter a : z.factorization.u[i]) lhs = t.mul(lhs, g.image[a]);
        Element rhs = z.points[i + 1];
        for (Letter a : z.factorization.v[i]) rhs = t.mul(rhs, g.image[a]);
        if (lhs != rhs) return false;
    }
    return true;
}

inline std::optional<ZigZagWitness> zigzag_check(const FiniteSemigroupTable& t0,
                                                 const GeneratorMap& g0, Element x, Element y,
                                                 const InvolutiveWord& w) {
    auto [t, g] = monoid_form(t0, g0);
    if (x >= t.size() || y >= t.size())
        throw PreconditionViolated("zig-zag: elements out of range");
    for (const auto& sl : w)
        if (sl.base >= g.alphabet.size()) throw AlphabetMismatch("zig-zag: letter out of range");

    ZigZagWitness z;
    z.factorization = words::zigzag_factor(w);
    const std::size_t n = z.factorization.blocks();
    const std::size_t size = t.size();

    auto eval_from = [&](Element m, const PositiveWord& p) {
        for (Letter a : p) m = t.mul(m, g.image[a]);
        return m;
    };

    // layers[i] = possible values of p_i; parent pointers recover one witness
    std::vector<std::vector<Element>> parent(n + 1, std::vector<Element>(size, automata::kNoState));
    std::vector<char> cur(size, 0);
    cur[x] = 1;
    std::vector<char> reached = cur;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<char> next(size, 0);
        std::vector<Element> target(size);
        for (Element q = 0; q < size; ++q) target[q] = eval_from(q, z.factorization.v[i]);
        for (Element p = 0; p < size; ++p) {
            if (!cur[p]) continue;
            Element goal = eval_from(p, z.factorization.u[i]);
            for (Element q = 0; q < size; ++q)
                if (target[q] == goal && !next[q]) {
                    next[q] = 1;
                    parent[i + 1][q] = p;
                }
        }
        cur = std::move(next);
    }
    if (!cur[y]) return std::nullopt;

    z.points.assign(n + 1, 0);
    z.points[n] = y;
    for (std::size_t i = n; i > 0; --i) z.points[i - 1] = parent[i][z.points[i]];
    return z;
}

// Decides u sigma = v sigma through the loop problem; the direct table
// evaluation is computed alongside and any disagreement is an internal error.
inline bool words_equal(const FiniteSemigroupTable& t, const GeneratorMap& g,
                        const PositiveWord& u, const PositiveWord& v) {
    Element ue = algebra::eval_word(t, g, u);
    Element ve = algebra::eval_word(t, g, v);
    InvolutiveWord w = words::concat(words::to_word(u), words::involute(words::to_word(v)));
    bool member = loop_membership(t, g, w);
    if (member != (ue == ve))
        throw ValidationError("words_equal: loop membership contradicts the table");
    return member;
}

inline bool words_equal(const MonoidOracle& o, const PositiveWord& u, const PositiveWord& v) {
    std::string ue = o.eval(u), ve = o.eval(v);
    InvolutiveWord w = words::concat(words::to_word(u), words::involute(words::to_word(v)));
    bool member = loop_membership(o, w);
    if (member != (ue == ve))
        throw ValidationError("words_equal: loop membership contradicts the oracle");
    return member;
}

// DFA of X* Xbar* over the hat alphabet of k base letters.
inline Dfa positive_negative_shape_dfa(std::size_t k) {
    Dfa d;
    d.symbols = 2 * k;
    d.states = 2;
    d.start = 0;
    d.accepting = {1, 1};
    d.delta.assign(2, std::vector<automata::State>(2 * k, automata::kNoState));
    for (std::size_t x = 0; x < k; ++x) {
        d.delta[0][x] = 0;
        d.delta[0][k + x] = 1;
        d.delta[1][k + x] = 1;
    }
    return d;
}

inline Dfa meeting_problem(const FiniteSemigroupTable& t, const GeneratorMap& g) {
    Dfa loop = loop_problem_dfa(t, g);
    return automata::intersect(loop, positive_negative_shape_dfa(g.alphabet.size()));
}

inline bool loops_everywhere(const FiniteSemigroupTable& t0, const GeneratorMap& g0,
                             const InvolutiveWord& w) {
    auto [t, g] = monoid_form(t0, g0);
    const std::size_t n = t.size();
    for (Element start = 0; start < n; ++start) {
        std::vector<char> cur(n, 0), next(n, 0);
        cur[start] = 1;
        for (const auto& sl : w) {
            if (sl.base >= g.alphabet.size())
                throw AlphabetMismatch("loops everywhere: letter out of range");
            Element img = g.image[sl.base];
            std::fill(next.begin(), next.end(), 0);
            if (sl.sign == Sign::Positive) {
                for (Element m = 0; m < n; ++m)
                    if (cur[m]) next[t.mul(m, img)] = 1;
            } else {
                for (Element m = 0; m < n; ++m)
                    if (cur[t.mul(m, img)]) next[m] = 1;
            }
            std::swap(cur, next);
        }
        if (!cur[start]) return false;
    }
    return true;
}

// Shortest-then-lexicographically-least word evaluating to each element, or
// nothing if the element is not reachable. Monoid mode reaches the identity
// by the empty word; semigroup mode uses non-empty words only.
inline std::vector<std::optional<PositiveWord>> shortest_words(const FiniteSemigroupTable& t,
                                                               const GeneratorMap& g) {
    algebra::validate(t, g);
    std::vector<std::optional<PositiveWord>> out(t.size());
    std::vector<Element> queue;
    auto push = [&](Element m, PositiveWord w) {
        if (!out[m]) {
            out[m] = std::move(w);
            queue.push_back(m);
        }
    };
    if (g.mode == GenMode::Monoid) {
        push(*t.identity, {});
    } else {
        for (Letter x = 0; x < g.alphabet.size(); ++x) push(g.image[x], {x});
    }
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (Letter x = 0; x < g.alphabet.size(); ++x) {
            PositiveWord w = *out[queue[i]];
            w.push_back(x);
            push(t.mul(queue[i], g.image[x]), std::move(w));
        }
    return out;
}

// Both identities relating the loop problem over monoid generators to the
// loop problem over the same images read as semigroup generators: the
// semigroup loop problem is the monoid one cut to X Xhat* Xbar plus the
// empty word, and the monoid one is recovered from the semigroup one as a
// two-sided quotient by any non-empty word w evaluating to the identity.
struct SemigroupMonoidReport {
    PositiveWord identity_word;
    Dfa monoid_loop;
    Dfa semigroup_loop;
    bool restriction_holds = false;
    bool quotient_holds = false;
};

inline SemigroupMonoidReport semigroup_monoid_relation_check(const FiniteSemigroupTable& t,
                                                             const GeneratorMap& semigroup_gens) {
    if (!t.identity) throw NotAMonoid("semigroup/monoid relation: table must be a monoid");
    if (semigroup_gens.mode != GenMode::Semigroup)
        throw PreconditionViolated("semigroup/monoid relation: semigroup generators expected");
    GeneratorMap monoid_gens{semigroup_gens.alphabet, semigroup_gens.image, GenMode::Monoid};
    const std::size_t k = semigroup_gens.alphabet.size();

    SemigroupMonoidReport r;
    auto words_to = shortest_words(t, semigroup_gens);
    if (!words_to[*t.identity])
        throw NoIdentityWord("semigroup/monoid relation: no non-empty word evaluates to 1");
    r.identity_word = *words_to[*t.identity];

    r.monoid_loop = loop_problem_dfa(t, monoid_gens);
    r.semigroup_loop = loop_problem_dfa(t, semigroup_gens);

    // X Xhat* Xbar plus the empty word
    Dfa shape;
    shape.symbols = 2 * k;
    shape.states = 3;
    shape.start = 0;
    shape.accepting = {1, 0, 1};
    shape.delta.assign(3, std::vector<automata::State>(2 * k, automata::kNoState));
    for (std::size_t x = 0; x < k; ++x) {
        shape.delta[0][x] = 1;
        shape.delta[1][x] = 1;
        shape.delta[1][k + x] = 2;
        shape.delta[2][x] = 1;
        shape.delta[2][k + x] = 2;
    }
    r.restriction_holds =
        automata::dfa_equivalent(r.semigroup_loop, automata::intersect(r.monoid_loop, shape));

    SymbolWord w = words::to_symbols(r.identity_word);
    SymbolWord wbar = words::to_symbols(words::involute(words::to_word(r.identity_word)), k);
    Dfa quotient = automata::right_quotient(automata::left_quotient(r.semigroup_loop, w), wbar);
    r.quotient_holds = automata::dfa_equivalent(r.monoid_loop, quotient);
    return r;
}

// Rewriting morphism between hat alphabets: each letter of tau's alphabet is
// sent to a chosen sigma-word with the same image, barred letters to the
// involuted choice; the tau loop problem is the preimage of the sigma loop
// problem under it.
struct GeneratorChangeReport {
    std::vector<PositiveWord> chosen;
    std::vector<SymbolWord> rho;
    Dfa sigma_loop;
    Dfa tau_loop;
    bool verified = false;
};

inline GeneratorChangeReport generator_change(const FiniteSemigroupTable& t,
                                              const GeneratorMap& sigma, const GeneratorMap& tau) {
    if (sigma.mode != tau.mode)
        throw PreconditionViolated("generator change: generator modes must agree");
    if (!algebra::is_surjective(t, sigma) || !algebra::is_surjective(t, tau))
        throw ValidationError("generator change: both maps must generate the whole table");
    const std::size_t kx = sigma.alphabet.size(), ky = tau.alphabet.size();

    GeneratorChangeReport r;
    auto words_to = shortest_words(t, sigma);
    for (Letter y = 0; y < ky; ++y) {
        auto w = words_to[tau.image[y]];
        if (!w)
            throw ValidationError("generator change: image of '" + tau.alphabet.name(y) +
                                  "' is not reachable");
        r.chosen.push_back(*w);
    }
    r.rho.assign(2 * ky, {});
    for (Letter y = 0; y < ky; ++y) {
        r.rho[y] = words::to_symbols(r.chosen[y]);
        r.rho[ky + y] = words::to_symbols(words::involute(words::to_word(r.chosen[y])), kx);
    }
    r.sigma_loop = loop_problem_dfa(t, sigma);
    r.tau_loop = loop_problem_dfa(t, tau);
    r.verified = automata::dfa_equivalent(
        r.tau_loop, automata::inverse_morphism_image(r.sigma_loop, r.rho));
    return r;
}

// For groups the loop problem is a word problem: extend sigma to the hat
// alphabet by sending barred letters to inverses, and read the Cayley graph
// of the extension as a deterministic automaton.
struct GroupWordProblemReport {
    GeneratorMap tau;
    Dfa word_problem;
    bool matches_loop_automaton = false;
};

inline GroupWordProblemReport group_loop_as_word_problem(const FiniteSemigroupTable& g,
                                                         const GeneratorMap& sigma) {
    if (!algebra::is_group(g)) throw NotAGroup("group word problem: table is not a group");
    auto [t, s] = monoid_form(g, sigma);
    if (!algebra::is_group(t)) throw NotAGroup("group word problem: adjoined table is not a group");
    const std::size_t k = s.alphabet.size();

    GroupWordProblemReport r;
    std::vector<Element> image = s.image;
    for (Letter x = 0; x < k; ++x) image.push_back(algebra::group_inverse(t, s.image[x]));
    r.tau = GeneratorMap{words::hat_alphabet(s.alphabet), image, GenMode::Monoid};

    r.word_problem.symbols = 2 * k;
    r.word_problem.states = t.size();
    r.word_problem.start = *t.identity;
    r.word_problem.accepting.assign(t.size(), 0);
    r.word_problem.accepting[*t.identity] = 1;
    r.word_problem.delta.assign(t.size(), std::vector<automata::State>(2 * k, 0));
    for (Element a = 0; a < t.size(); ++a)
        for (std::size_t x = 0; x < 2 * k; ++x) r.word_problem.delta[a][x] = t.mul(a, image[x]);

    std::set<Nfa::Edge> loop_edges, word_edges;
    for (const auto& e : loop_automaton(t, s).nfa.edges) loop_edges.insert(e);
    for (const auto& e : automata::to_nfa(r.word_problem).edges) word_edges.insert(e);
    r.matches_loop_automaton = loop_edges == word_edges;
    return r;
}

// For each pair of returned words, appending the involute of the first is a
// context that separates their loop-problem cones.
struct DistinctConesCertificate {
    std::vector<PositiveWord> prefixes;
    std::vector<std::string> keys;
    std::vector<InvolutiveWord> discriminators;
};

inline DistinctConesCertificate distinct_cones_witness(const MonoidOracle& o, std::size_t n,
                                                       std::size_t max_length) {
    if (!o.has_right_divide())
        throw OracleLacksDivision("distinct cones: oracle cannot divide");
    DistinctConesCertificate c;
    if (n == 0) return c;
    std::map<std::string, PositiveWord> seen;
    std::vector<std::string> queue;
    auto push = [&](const std::string& key, PositiveWord w) {
        if (seen.count(key)) return;
        seen.emplace(key, std::move(w));
        queue.push_back(key);
    };
    push(o.identity_key(), {});
    for (std::size_t i = 0; i < queue.size() && seen.size() < n; ++i) {
        const PositiveWord base = seen.at(queue[i]);
        if (base.size() == max_length) continue;
        for (Letter x = 0; x < o.alphabet().size() && seen.size() < n; ++x) {
            PositiveWord w = base;
            w.push_back(x);
            push(o.right_multiply(queue[i], x), std::move(w));
        }
    }
    if (seen.size() < n)
        throw NotEnoughElements("distinct cones: found " + std::to_string(seen.size()) +
                                " elements within length " + std::to_string(max_length));
    for (const auto& key : queue) {
        c.prefixes.push_back(seen.at(key));
        c.keys.push_back(key);
        c.discriminators.push_back(words::involute(words::to_word(seen.at(key))));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            InvolutiveWord probe =
                words::concat(words::to_word(c.prefixes[j]), c.discriminators[i]);
            if (loop_membership(o, probe) != (i == j))
                throw ValidationError("distinct cones: discriminator failed to separate");
        }
    return c;
}

inline DistinctConesCertificate distinct_cones_witness(const MonoidOracle& o, std::size_t n) {
    return distinct_cones_witness(o, n, n);
}

}  // namespace loopauto::loopcore
