#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "loopauto/algebra.hpp"
#include "loopauto/errors.hpp"
#include "loopauto/words.hpp"

namespace loopauto::automata {

using State = std::size_t;
using Symbol = words::Symbol;
using words::SymbolWord;

inline constexpr State kNoState = std::numeric_limits<State>::max();

// A zero-state Nfa is the canonical empty-language automaton; its start field
// is meaningless.
struct Nfa {
    std::size_t symbols = 0;
    std::size_t states = 0;
    State start = 0;
    std::vector<char> accepting;

    struct Edge {
        State from = 0;
        Symbol label = 0;
        State to = 0;

        friend auto operator<=>(const Edge&, const Edge&) = default;
    };
    std::vector<Edge> edges;
};

// Edges carry whole words; empty labels are allowed and removed by
// normalize_labels.
struct WordAutomaton {
    std::size_t symbols = 0;
    std::size_t states = 0;
    State start = 0;
    std::vector<char> accepting;

    struct Edge {
        State from = 0;
        SymbolWord label;
        State to = 0;
    };
    std::vector<Edge> edges;
};

// Partial deterministic automaton; kNoState marks a missing transition. Always
// has at least one state: the empty language is one non-accepting state.
struct Dfa {
    std::size_t symbols = 0;
    std::size_t states = 0;
    State start = 0;
    std::vector<char> accepting;
    std::vector<std::vector<State>> delta;

    State step(State q, Symbol x) const { return delta[q][x]; }

    friend bool operator==(const Dfa&, const Dfa&) = default;
};

inline void validate(const Nfa& a) {
    if (a.states == 0) {
        if (!a.accepting.empty() || !a.edges.empty())
            throw ValidationError("nfa: zero-state automaton must have no flags or edges");
        return;
    }
    if (a.start >= a.states) throw ValidationError("nfa: start state out of range");
    if (a.accepting.size() != a.states) throw ValidationError("nfa: accepting flags have wrong length");
    for (const auto& e : a.edges) {
        if (e.from >= a.states || e.to >= a.states) throw ValidationError("nfa: edge state out of range");
        if (e.label >= a.symbols) throw ValidationError("nfa: edge label out of range");
    }
}

inline void validate(const WordAutomaton& a) {
    if (a.states == 0) throw ValidationError("word automaton: need at least one state");
    if (a.start >= a.states) throw ValidationError("word automaton: start state out of range");
    if (a.accepting.size() != a.states)
        throw ValidationError("word automaton: accepting flags have wrong length");
    for (const auto& e : a.edges) {
        if (e.from >= a.states || e.to >= a.states)
            throw ValidationError("word automaton: edge state out of range");
        for (Symbol x : e.label)
            if (x >= a.symbols) throw ValidationError("word automaton: edge label out of range");
    }
}

inline void validate(const Dfa& d) {
    if (d.states == 0) throw ValidationError("dfa: need at least one state");
    if (d.start >= d.states) throw ValidationError("dfa: start state out of range");
    if (d.accepting.size() != d.states) throw ValidationError("dfa: accepting flags have wrong length");
    if (d.delta.size() != d.states) throw ValidationError("dfa: transition table has wrong length");
    for (const auto& row : d.delta) {
        if (row.size() != d.symbols) throw ValidationError("dfa: transition row has wrong length");
        for (State q : row)
            if (q != kNoState && q >= d.states) throw ValidationError("dfa: transition out of range");
    }
}

inline Dfa empty_language_dfa(std::size_t symbols) {
    Dfa d;
    d.symbols = symbols;
    d.states = 1;
    d.start = 0;
    d.accepting = {0};
    d.delta = {std::vector<State>(symbols, kNoState)};
    return d;
}

inline Nfa to_nfa(const Dfa& d) {
    validate(d);
    Nfa a;
    a.symbols = d.symbols;
    a.states = d.states;
    a.start = d.start;
    a.accepting = d.accepting;
    for (State q = 0; q < d.states; ++q)
        for (Symbol x = 0; x < d.symbols; ++x)
            if (d.delta[q][x] != kNoState) a.edges.push_back({q, x, d.delta[q][x]});
    return a;
}

// Subdivides multi-letter edges through fresh states, then removes empty
// labels by forward closure.
inline Nfa normalize_labels(const WordAutomaton& a) {
    validate(a);
    Nfa out;
    out.symbols = a.symbols;
    out.states = a.states;
    out.start = a.start;
    std::vector<Nfa::Edge> letter_edges;
    std::vector<std::pair<State, State>> eps_edges;
    for (const auto& e : a.edges) {
        if (e.label.empty()) {
            eps_edges.emplace_back(e.from, e.to);
            continue;
        }
        State cur = e.from;
        for (std::size_t i = 0; i + 1 < e.label.size(); ++i) {
            State fresh = out.states++;
            letter_edges.push_back({cur, e.label[i], fresh});
            cur = fresh;
        }
        letter_edges.push_back({cur, e.label.back(), e.to});
    }

    std::vector<std::vector<State>> eps(out.states);
    for (auto [p, q] : eps_edges) eps[p].push_back(q);
    auto closure = [&](State p) {
        std::vector<char> seen(out.states, 0);
        std::vector<State> stack{p}, result;
        seen[p] = 1;
        while (!stack.empty()) {
            State q = stack.back();
            stack.pop_back();
            result.push_back(q);
            for (State r : eps[q])
                if (!seen[r]) {
                    seen[r] = 1;
                    stack.push_back(r);
                }
        }
        return result;
    };

    std::vector<std::vector<Nfa::Edge>> from(out.states);
    for (const auto& e : letter_edges) from[e.from].push_back(e);
    out.accepting.assign(out.states, 0);
    for (State q = 0; q < a.states; ++q) out.accepting[q] = a.accepting[q];

    std::set<Nfa::Edge> dedup;
    for (State p = 0; p < out.states; ++p)
        for (State r : closure(p)) {
            if (r < a.states && a.accepting[r]) out.accepting[p] = 1;
            for (const auto& e : from[r]) dedup.insert({p, e.label, e.to});
        }
    out.edges.assign(dedup.begin(), dedup.end());
    return out;
}

// Keeps exactly the states that lie on some path from the start to a terminal.
inline Nfa trim(const Nfa& a) {
    validate(a);
    if (a.states == 0) return a;
    std::vector<std::vector<State>> fwd(a.states), bwd(a.states);
    for (const auto& e : a.edges) {
        fwd[e.from].push_back(e.to);
        bwd[e.to].push_back(e.from);
    }
    auto reach = [&](const std::vector<State>& roots, const std::vector<std::vector<State>>& adj) {
        std::vector<char> seen(a.states, 0);
        std::vector<State> stack;
        for (State r : roots)
            if (!seen[r]) {
                seen[r] = 1;
                stack.push_back(r);
            }
        while (!stack.empty()) {
            State q = stack.back();
            stack.pop_back();
            for (State r : adj[q])
                if (!seen[r]) {
                    seen[r] = 1;
                    stack.push_back(r);
                }
        }
        return seen;
    };
    std::vector<State> terminals;
    for (State q = 0; q < a.states; ++q)
        if (a.accepting[q]) terminals.push_back(q);
    auto acc = reach({a.start}, fwd);
    auto coacc = reach(terminals, bwd);

    std::vector<State> renum(a.states, kNoState);
    Nfa out;
    out.symbols = a.symbols;
    for (State q = 0; q < a.states; ++q)
        if (acc[q] && coacc[q]) {
            renum[q] = out.states++;
            out.accepting.push_back(a.accepting[q]);
        }
    if (renum[a.start] == kNoState) {
        Nfa empty;
        empty.symbols = a.symbols;
        return empty;
    }
    out.start = renum[a.start];
    for (const auto& e : a.edges)
        if (renum[e.from] != kNoState && renum[e.to] != kNoState)
            out.edges.push_back({renum[e.from], e.label, renum[e.to]});
    return out;
}

inline bool membership(const Nfa& a, const SymbolWord& w) {
    validate(a);
    for (Symbol x : w)
        if (x >= a.symbols) throw AlphabetMismatch("membership: symbol out of range");
    if (a.states == 0) return false;
    std::vector<std::vector<std::pair<Symbol, State>>> from(a.states);
    for (const auto& e : a.edges) from[e.from].emplace_back(e.label, e.to);
    std::vector<char> cur(a.states, 0), next(a.states, 0);
    cur[a.start] = 1;
    for (Symbol x : w) {
        std::fill(next.begin(), next.end(), 0);
        for (State q = 0; q < a.states; ++q)
            if (cur[q])
                for (auto [y, r] : from[q])
                    if (y == x) next[r] = 1;
        std::swap(cur, next);
    }
    for (State q = 0; q < a.states; ++q)
        if (cur[q] && a.accepting[q]) return true;
    return false;
}

inline Dfa determinize(const Nfa& a) {
    validate(a);
    if (a.states == 0) return empty_language_dfa(a.symbols);
    std::vector<std::vector<std::vector<State>>> targets(a.states,
                                                         std::vector<std::vector<State>>(a.symbols));
    for (const auto& e : a.edges) targets[e.from][e.label].push_back(e.to);

    Dfa d;
    d.symbols = a.symbols;
    std::map<std::vector<State>, State> index;
    std::vector<std::vector<State>> subsets;
    auto add = [&](std::vector<State> subset) {
        auto [it, fresh] = index.try_emplace(std::move(subset), d.states);
        if (fresh) {
            d.states++;
            subsets.push_back(it->first);
            bool acc = false;
            for (State q : it->first) acc = acc || a.accepting[q];
            d.accepting.push_back(acc);
            d.delta.emplace_back(a.symbols, kNoState);
        }
        return it->second;
    };
    d.start = add({a.start});
    for (State s = 0; s < d.states; ++s) {
        for (Symbol x = 0; x < a.symbols; ++x) {
            std::set<State> next;
            for (State q : subsets[s]) next.insert(targets[q][x].begin(), targets[q][x].end());
            if (next.empty()) continue;
            d.delta[s][x] = add(std::vector<State>(next.begin(), next.end()));
        }
    }
    return d;
}

namespace detail {

// Moore refinement over the trimmed partial automaton; a missing transition
// acts as a permanent extra class.
inline std::vector<std::size_t> equivalence_classes(const Dfa& d, std::size_t& count) {
    constexpr std::size_t kSink = static_cast<std::size_t>(-1);
    std::vector<std::size_t> cls(d.states, 0);
    count = 1;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> ids;
        std::vector<std::size_t> next(d.states);
        for (State q = 0; q < d.states; ++q) {
            std::vector<std::size_t> sig{cls[q], d.accepting[q] ? 1u : 0u};
            for (Symbol x = 0; x < d.symbols; ++x)
                sig.push_back(d.delta[q][x] == kNoState ? kSink : cls[d.delta[q][x]]);
            next[q] = ids.try_emplace(std::move(sig), ids.size()).first->second;
        }
        if (ids.size() == count) return next;
        count = ids.size();
        cls = std::move(next);
    }
}

}  // namespace detail

inline Dfa trim(const Dfa& d) {
    Nfa t = trim(to_nfa(d));
    if (t.states == 0) return empty_language_dfa(d.symbols);
    Dfa out;
    out.symbols = t.symbols;
    out.states = t.states;
    out.start = t.start;
    out.accepting = t.accepting;
    out.delta.assign(t.states, std::vector<State>(t.symbols, kNoState));
    for (const auto& e : t.edges) out.delta[e.from][e.label] = e.to;
    return out;
}

// Minimal partial automaton with canonical numbering: states are renumbered
// breadth-first from the start, exploring symbols in order, so equal languages
// give byte-equal automata.
inline Dfa minimize(const Dfa& d0) {
    validate(d0);
    Nfa t = trim(to_nfa(d0));
    if (t.states == 0) return empty_language_dfa(d0.symbols);
    Dfa d;
    d.symbols = t.symbols;
    d.states = t.states;
    d.start = t.start;
    d.accepting = t.accepting;
    d.delta.assign(t.states, std::vector<State>(t.symbols, kNoState));
    for (const auto& e : t.edges) d.delta[e.from][e.label] = e.to;

    std::size_t count = 0;
    auto cls = detail::equivalence_classes(d, count);

    std::vector<State> order(count, kNoState);
    Dfa out;
    out.symbols = d.symbols;
    out.states = count;
    out.accepting.assign(count, 0);
    out.delta.assign(count, std::vector<State>(d.symbols, kNoState));
    std::vector<State> rep(count, kNoState);
    std::vector<std::size_t> queue;
    auto visit = [&](std::size_t c, State member) {
        if (order[c] != kNoState) return;
        order[c] = queue.size();
        rep[c] = member;
        queue.push_back(c);
    };
    visit(cls[d.start], d.start);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        State q = rep[queue[i]];
        for (Symbol x = 0; x < d.symbols; ++x)
            if (d.delta[q][x] != kNoState) visit(cls[d.delta[q][x]], d.delta[q][x]);
    }

    out.start = order[cls[d.start]];
    for (std::size_t c = 0; c < count; ++c) {
        State q = rep[c];
        out.accepting[order[c]] = d.accepting[q];
        for (Symbol x = 0; x < d.symbols; ++x)
            if (d.delta[q][x] != kNoState) out.delta[order[c]][x] = order[cls[d.delta[q][x]]];
    }
    return out;
}

inline bool accepts(const Dfa& d, const SymbolWord& w) {
    validate(d);
    State q = d.start;
    for (Symbol x : w) {
        if (x >= d.symbols) throw AlphabetMismatch("accepts: symbol out of range");
        q = d.delta[q][x];
        if (q == kNoState) return false;
    }
    return d.accepting[q];
}

// Shortest word accepted by exactly one of the two automata; symbols are
// explored in order, so the result is also lexicographically least among the
// shortest.
inline std::optional<SymbolWord> separating_word(const Dfa& a, const Dfa& b) {
    validate(a);
    validate(b);
    if (a.symbols != b.symbols)
        throw AlphabetMismatch("language comparison: alphabets have different sizes");
    const State deadA = a.states, deadB = b.states;
    auto key = [&](State p, State q) { return p * (b.states + 1) + q; };
    std::vector<char> seen((a.states + 1) * (b.states + 1), 0);
    struct Node {
        State p, q;
        std::size_t parent;
        Symbol via;
    };
    std::vector<Node> nodes;
    std::size_t head = 0;
    auto push = [&](State p, State q, std::size_t parent, Symbol via) {
        if (seen[key(p, q)]) return;
        seen[key(p, q)] = 1;
        nodes.push_back({p, q, parent, via});
    };
    push(a.start, b.start, kNoState, 0);
    while (head < nodes.size()) {
        auto [p, q, parent, via] = nodes[head];
        bool accA = p != deadA && a.accepting[p];
        bool accB = q != deadB && b.accepting[q];
        if (accA != accB) {
            SymbolWord w;
            std::size_t at = head;
            while (nodes[at].parent != kNoState) {
                w.push_back(nodes[at].via);
                at = nodes[at].parent;
            }
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (Symbol x = 0; x < a.symbols; ++x) {
            State pa = p == deadA ? deadA : (a.delta[p][x] == kNoState ? deadA : a.delta[p][x]);
            State qb = q == deadB ? deadB : (b.delta[q][x] == kNoState ? deadB : b.delta[q][x]);
            if (pa == deadA && qb == deadB) continue;
            push(pa, qb, head, x);
        }
        ++head;
    }
    return std::nullopt;
}

inline bool dfa_equivalent(const Dfa& a, const Dfa& b) { return !separating_word(a, b); }

inline std::optional<SymbolWord> shortest_accepted(const Dfa& d) {
    return separating_word(d, empty_language_dfa(d.symbols));
}

inline bool language_empty(const Dfa& d) { return !shortest_accepted(d); }

inline bool language_finite(const Dfa& d) {
    Nfa t = trim(to_nfa(d));
    // a trim automaton accepts infinitely many words iff it has a cycle
    std::vector<std::vector<State>> adj(t.states);
    for (const auto& e : t.edges) adj[e.from].push_back(e.to);
    std::vector<int> color(t.states, 0);
    auto dfs = [&](auto&& self, State q) -> bool {
        color[q] = 1;
        for (State r : adj[q]) {
            if (color[r] == 1) return false;
            if (color[r] == 0 && !self(self, r)) return false;
        }
        color[q] = 2;
        return true;
    };
    for (State q = 0; q < t.states; ++q)
        if (color[q] == 0 && !dfs(dfs, q)) return false;
    return true;
}

// All accepted words of length at most maxlen, in length-lexicographic order.
inline std::vector<SymbolWord> accepted_up_to(const Dfa& d, std::size_t maxlen) {
    validate(d);
    std::vector<SymbolWord> out;
    SymbolWord w;
    auto dfs = [&](auto&& self, State q) -> void {
        if (d.accepting[q]) out.push_back(w);
        if (w.size() == maxlen) return;
        for (Symbol x = 0; x < d.symbols; ++x)
            if (d.delta[q][x] != kNoState) {
                w.push_back(x);
                self(self, d.delta[q][x]);
                w.pop_back();
            }
    };
    dfs(dfs, d.start);
    std::stable_sort(out.begin(), out.end(),
                     [](const SymbolWord& a, const SymbolWord& b) { return a.size() < b.size(); });
    return out;
}

inline Dfa complete(const Dfa& d) {
    validate(d);
    Dfa out = d;
    bool partial = false;
    for (const auto& row : d.delta)
        for (State q : row) partial = partial || q == kNoState;
    if (!partial) return out;
    State sink = out.states++;
    out.accepting.push_back(0);
    out.delta.emplace_back(out.symbols, sink);
    for (State q = 0; q < sink; ++q)
        for (Symbol x = 0; x < out.symbols; ++x)
            if (out.delta[q][x] == kNoState) out.delta[q][x] = sink;
    return out;
}

namespace detail {

template <class Acc>
inline Dfa product(const Dfa& a0, const Dfa& b0, Acc combine) {
    if (a0.symbols != b0.symbols)
        throw AlphabetMismatch("product: alphabets have different sizes");
    Dfa a = complete(a0), b = complete(b0);
    Dfa d;
    d.symbols = a.symbols;
    std::map<std::pair<State, State>, State> index;
    std::vector<std::pair<State, State>> pairs;
    auto add = [&](State p, State q) {
        auto [it, fresh] = index.try_emplace(std::make_pair(p, q), d.states);
        if (fresh) {
            d.states++;
            pairs.emplace_back(p, q);
            d.accepting.push_back(combine(a.accepting[p] != 0, b.accepting[q] != 0));
            d.delta.emplace_back(d.symbols, kNoState);
        }
        return it->second;
    };
    add(a.start, b.start);
    d.start = 0;
    for (State s = 0; s < d.states; ++s) {
        auto [p, q] = pairs[s];
        for (Symbol x = 0; x < d.symbols; ++x) d.delta[s][x] = add(a.delta[p][x], b.delta[q][x]);
    }
    return minimize(d);
}

}  // namespace detail

inline Dfa intersect(const Dfa& a, const Dfa& b) {
    return detail::product(a, b, [](bool x, bool y) { return x && y; });
}

inline Dfa unite(const Dfa& a, const Dfa& b) {
    return detail::product(a, b, [](bool x, bool y) { return x || y; });
}

inline Dfa difference(const Dfa& a, const Dfa& b) {
    return detail::product(a, b, [](bool x, bool y) { return x && !y; });
}

inline Dfa complement(const Dfa& d) {
    Dfa c = complete(d);
    for (State q = 0; q < c.states; ++q) c.accepting[q] = !c.accepting[q];
    return minimize(c);
}

inline Dfa concat(const Dfa& a, const Dfa& b) {
    validate(a);
    validate(b);
    if (a.symbols != b.symbols)
        throw AlphabetMismatch("concatenation: alphabets have different sizes");
    WordAutomaton w;
    w.symbols = a.symbols;
    w.states = a.states + b.states;
    w.start = a.start;
    w.accepting.assign(w.states, 0);
    for (State q = 0; q < b.states; ++q) w.accepting[a.states + q] = b.accepting[q];
    for (State q = 0; q < a.states; ++q)
        for (Symbol x = 0; x < a.symbols; ++x)
            if (a.delta[q][x] != kNoState) w.edges.push_back({q, {x}, a.delta[q][x]});
    for (State q = 0; q < b.states; ++q)
        for (Symbol x = 0; x < b.symbols; ++x)
            if (b.delta[q][x] != kNoState)
                w.edges.push_back({a.states + q, {x}, a.states + b.delta[q][x]});
    for (State q = 0; q < a.states; ++q)
        if (a.accepting[q]) w.edges.push_back({q, {}, a.states + b.start});
    return minimize(determinize(normalize_labels(w)));
}

inline Dfa kleene_star(const Dfa& d) {
    validate(d);
    WordAutomaton w;
    w.symbols = d.symbols;
    w.states = d.states + 1;
    w.start = d.states;
    w.accepting.assign(w.states, 0);
    w.accepting[w.start] = 1;
    for (State q = 0; q < d.states; ++q)
        for (Symbol x = 0; x < d.symbols; ++x)
            if (d.delta[q][x] != kNoState) w.edges.push_back({q, {x}, d.delta[q][x]});
    w.edges.push_back({w.start, {}, d.start});
    for (State q = 0; q < d.states; ++q)
        if (d.accepting[q]) w.edges.push_back({q, {}, w.start});
    return minimize(determinize(normalize_labels(w)));
}

inline Dfa left_quotient(const Dfa& d, const SymbolWord& w) {
    validate(d);
    State q = d.start;
    for (Symbol x : w) {
        if (x >= d.symbols) throw AlphabetMismatch("left quotient: symbol out of range");
        q = d.delta[q][x];
        if (q == kNoState) return empty_language_dfa(d.symbols);
    }
    Dfa out = d;
    out.start = q;
    return minimize(out);
}

inline Dfa right_quotient(const Dfa& d, const SymbolWord& w) {
    validate(d);
    for (Symbol x : w)
        if (x >= d.symbols) throw AlphabetMismatch("right quotient: symbol out of range");
    Dfa out = d;
    for (State q = 0; q < d.states; ++q) {
        State at = q;
        for (Symbol x : w) {
            at = d.delta[at][x];
            if (at == kNoState) break;
        }
        out.accepting[q] = at != kNoState && d.accepting[at];
    }
    return minimize(out);
}

// Preimage under the letter-to-word morphism given by images: the language of
// all v with v-image in L(d).
inline Dfa inverse_morphism_image(const Dfa& d, const std::vector<SymbolWord>& images) {
    validate(d);
    for (const auto& w : images)
        for (Symbol x : w)
            if (x >= d.symbols) throw AlphabetMismatch("morphism preimage: image symbol out of range");
    Dfa out;
    out.symbols = images.size();
    out.states = d.states;
    out.start = d.start;
    out.accepting = d.accepting;
    out.delta.assign(d.states, std::vector<State>(images.size(), kNoState));
    for (State q = 0; q < d.states; ++q)
        for (Symbol y = 0; y < images.size(); ++y) {
            State at = q;
            for (Symbol x : images[y]) {
                at = d.delta[at][x];
                if (at == kNoState) break;
            }
            out.delta[q][y] = at;
        }
    return minimize(out);
}

inline Dfa cone(const Nfa& a, State q) {
    validate(a);
    if (q >= a.states) throw ValidationError("cone: state out of range");
    Nfa b = a;
    b.start = q;
    return minimize(determinize(b));
}

// --- transition and syntactic monoids ------------------------------------------

struct BoolMatrix {
    std::size_t n = 0;
    std::vector<char> bits;

    explicit BoolMatrix(std::size_t size = 0) : n(size), bits(size * size, 0) {}

    bool get(std::size_t i, std::size_t j) const { return bits[i * n + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { bits[i * n + j] = v ? 1 : 0; }

    static BoolMatrix identity(std::size_t size) {
        BoolMatrix m(size);
        for (std::size_t i = 0; i < size; ++i) m.set(i, i, true);
        return m;
    }

    BoolMatrix operator*(const BoolMatrix& o) const {
        BoolMatrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (get(i, k))
                    for (std::size_t j = 0; j < n; ++j)
                        if (o.get(k, j)) r.set(i, j, true);
        return r;
    }

    friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;
};

// The monoid generated by the letter relations, with the empty-word relation
// adjoined as identity. Elements are numbered in closure order: identity, the
// letter relations, then products in discovery order.
struct TransitionMonoid {
    std::size_t letters = 0;
    std::vector<BoolMatrix> matrices;
    std::vector<SymbolWord> representative;
    std::vector<algebra::Element> letter_class;
    algebra::FiniteSemigroupTable table;

    algebra::Element class_of(const SymbolWord& w) const {
        algebra::Element m = *table.identity;
        for (Symbol x : w) {
            if (x >= letters) throw AlphabetMismatch("transition monoid: symbol out of range");
            m = table.mul(m, letter_class[x]);
        }
        return m;
    }

    std::size_t size() const { return matrices.size(); }
};

inline TransitionMonoid transition_monoid(const Nfa& a) {
    validate(a);
    const std::size_t n = a.states;
    std::vector<BoolMatrix> gen(a.symbols, BoolMatrix(n));
    for (const auto& e : a.edges) gen[e.label].set(e.from, e.to, true);

    TransitionMonoid tm;
    tm.letters = a.symbols;
    std::map<std::vector<char>, algebra::Element> index;
    auto add = [&](const BoolMatrix& m, const SymbolWord& rep) {
        auto [it, fresh] = index.try_emplace(m.bits, tm.matrices.size());
        if (fresh) {
            tm.matrices.push_back(m);
            tm.representative.push_back(rep);
        }
        return it->second;
    };
    add(BoolMatrix::identity(n), {});
    tm.letter_class.resize(a.symbols);
    for (Symbol x = 0; x < a.symbols; ++x) {
        SymbolWord rep{x};
        tm.letter_class[x] = add(gen[x], rep);
    }
    for (std::size_t i = 0; i < tm.matrices.size(); ++i)
        for (Symbol x = 0; x < a.symbols; ++x) {
            SymbolWord rep = tm.representative[i];
            rep.push_back(x);
            add(tm.matrices[i] * gen[x], rep);
        }

    const std::size_t count = tm.matrices.size();
    tm.table.elements.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        tm.table.elements.push_back(i == 0 ? "ε" : "m" + std::to_string(i));
    tm.table.table.assign(count, std::vector<algebra::Element>(count));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) {
            auto it = index.find((tm.matrices[i] * tm.matrices[j]).bits);
            if (it == index.end())
                throw ValidationError("transition monoid: closure missed a product");
            tm.table.table[i][j] = it->second;
        }
    tm.table.identity = 0;
    return tm;
}

// Renames monoid elements by their representative words over the given
// alphabet; falls back to the positional names if that would collide.
inline algebra::FiniteSemigroupTable named_table(const TransitionMonoid& tm,
                                                 const words::Alphabet& alphabet) {
    algebra::FiniteSemigroupTable t = tm.table;
    std::vector<std::string> names;
    for (const auto& rep : tm.representative) {
        std::string name = rep.empty() ? "ε" : words::render_compact(alphabet, rep);
        names.push_back(name);
    }
    std::set<std::string> distinct(names.begin(), names.end());
    if (distinct.size() == names.size()) t.elements = names;
    return t;
}

struct SyntacticMonoid {
    Dfa minimal;
    TransitionMonoid monoid;

    algebra::Element class_of(const SymbolWord& w) const { return monoid.class_of(w); }
    std::size_t size() const { return monoid.size(); }
};

// The transition monoid of the trimmed minimal automaton; for the empty
// language the trim automaton has no states, which collapses everything to
// the identity and yields the trivial monoid.
inline SyntacticMonoid syntactic_monoid(const Dfa& d) {
    SyntacticMonoid s;
    s.minimal = minimize(d);
    s.monoid = transition_monoid(trim(to_nfa(s.minimal)));
    return s;
}

}  // namespace loopauto::automata
