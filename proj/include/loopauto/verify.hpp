#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "loopauto/algebra.hpp"
#include "loopauto/automata.hpp"
#include "loopauto/builtins.hpp"
#include "loopauto/closure.hpp"
#include "loopauto/errors.hpp"
#include "loopauto/invhull.hpp"
#include "loopauto/loopcore.hpp"
#include "loopauto/transduce.hpp"
#include "loopauto/words.hpp"

namespace loopauto::verify {

using algebra::Element;
using algebra::FiniteSemigroupTable;
using algebra::GeneratorMap;
using algebra::GenMode;
using automata::Dfa;
using builtins::Source;
using words::Alphabet;
using words::InvolutiveWord;
using words::Letter;
using words::PositiveWord;
using words::SymbolWord;

enum class Status { Pass, Fail, Skip };

struct CheckRecord {
    std::string item;
    std::string check;
    std::string claim;
    Status status = Status::Skip;
    std::string details;
    double millis = 0.0;
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckRecord> records;

    std::size_t count(Status s) const {
        std::size_t n = 0;
        for (const auto& r : records)
            if (r.status == s) ++n;
        return n;
    }
    bool all_passed() const { return count(Status::Fail) == 0; }
};

namespace detail {

struct Outcome {
    bool pass = false;
    std::string details;
};

inline void run_check(VerificationReport& report, const std::string& item,
                      const std::string& check, const std::string& claim,
                      const std::function<Outcome()>& body) {
    CheckRecord rec{item, check, claim, Status::Fail, "", 0.0};
    auto t0 = std::chrono::steady_clock::now();
    try {
        Outcome o = body();
        rec.status = o.pass ? Status::Pass : Status::Fail;
        rec.details = std::move(o.details);
    } catch (const Error& e) {
        rec.status = Status::Fail;
        rec.details = std::string("error: ") + e.what();
    }
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
    report.records.push_back(std::move(rec));
}

inline void skip(VerificationReport& report, const std::string& item, const std::string& check,
                 const std::string& claim, const std::string& reason) {
    report.records.push_back({item, check, claim, Status::Skip, reason, 0.0});
}

// Largest length whose full word count stays under the cap, so per-item work
// is bounded irrespective of alphabet size.
inline std::size_t length_budget(std::size_t symbols, std::size_t cap, std::size_t maxlen) {
    std::size_t len = 0, total = 1, layer = 1;
    while (len < maxlen) {
        layer *= symbols;
        if (total + layer > cap) break;
        total += layer;
        ++len;
    }
    return len;
}

inline std::vector<SymbolWord> all_symbol_words(std::size_t symbols, std::size_t maxlen) {
    std::vector<SymbolWord> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= maxlen; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t s = 0; s < symbols; ++s) {
                SymbolWord w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

inline std::string word_or_eps(const std::string& s) { return s.empty() ? "ε" : s; }

inline std::string render_hat(const Alphabet& base, const SymbolWord& s) {
    return word_or_eps(words::render_word(base, words::from_symbols(s, base.size())));
}

struct ClosureViolation {
    SymbolWord x, w, y;
};

inline std::optional<ClosureViolation> insertion_violation_bruteforce(const Dfa& d,
                                                                      std::size_t maxlen) {
    std::vector<SymbolWord> members;
    for (const auto& s : all_symbol_words(d.symbols, maxlen))
        if (automata::accepts(d, s)) members.push_back(s);
    for (const auto& s : members)
        for (const auto& w : members) {
            if (s.size() + w.size() > maxlen) continue;
            for (std::size_t i = 0; i <= s.size(); ++i) {
                SymbolWord probe(s.begin(), s.begin() + i);
                probe.insert(probe.end(), w.begin(), w.end());
                probe.insert(probe.end(), s.begin() + i, s.end());
                if (!automata::accepts(d, probe))
                    return ClosureViolation{SymbolWord(s.begin(), s.begin() + i), w,
                                            SymbolWord(s.begin() + i, s.end())};
            }
        }
    return std::nullopt;
}

inline std::optional<ClosureViolation> deletion_violation_bruteforce(const Dfa& d,
                                                                     std::size_t maxlen) {
    for (const auto& s : all_symbol_words(d.symbols, maxlen)) {
        if (!automata::accepts(d, s)) continue;
        for (std::size_t i = 0; i <= s.size(); ++i)
            for (std::size_t j = i; j <= s.size(); ++j) {
                SymbolWord w(s.begin() + i, s.begin() + j);
                if (!automata::accepts(d, w)) continue;
                SymbolWord xy(s.begin(), s.begin() + i);
                xy.insert(xy.end(), s.begin() + j, s.end());
                if (!automata::accepts(d, xy))
                    return ClosureViolation{SymbolWord(s.begin(), s.begin() + i), w,
                                            SymbolWord(s.begin() + j, s.end())};
            }
    }
    return std::nullopt;
}

inline bool finite(const Source& s) { return s.kind != Source::Kind::Oracle; }

inline bool right_cancellative_form(const Source& s) {
    auto [t, g] = loopcore::monoid_form(s.table, s.gens);
    return algebra::is_right_cancellative(t);
}

inline std::optional<GeneratorMap> semigroup_generators(const Source& s) {
    if (!s.table.identity) return std::nullopt;
    GeneratorMap semi{s.gens.alphabet, s.gens.image, GenMode::Semigroup};
    if (!algebra::is_surjective(s.table, semi)) return std::nullopt;
    return semi;
}

}  // namespace detail

// --- suites ------------------------------------------------------------------

inline void suite_zigzag(const Source& s, VerificationReport& report) {
    static const std::string claim_member =
        "a word belongs to the loop problem exactly when it labels a loop at the identity";
    static const std::string claim_zigzag =
        "a word labels a path between two vertices exactly when it admits a zig-zag witness "
        "through them";
    if (!detail::finite(s)) {
        if (!s.oracle->has_right_divide()) {
            detail::skip(report, s.name, "loopcore::loop_membership", claim_member,
                         "oracle cannot divide, so barred letters cannot be simulated");
            return;
        }
        detail::run_check(report, s.name, "loopcore::loop_membership", claim_member, [&] {
            const std::size_t k = s.oracle->alphabet().size();
            std::size_t len = detail::length_budget(2 * k, 2000, 4);
            loopcore::Ball b = loopcore::loop_ball(*s.oracle, len);
            std::size_t members = 0, total = 0;
            for (const auto& sym : detail::all_symbol_words(2 * k, len)) {
                bool sim = loopcore::loop_membership(*s.oracle,
                                                     words::from_symbols(sym, k));
                bool walk = invhull::detail::nfa_walk(b.nfa, {b.nfa.start}, sym)
                                .count(b.nfa.start) != 0;
                if (sim != walk)
                    return detail::Outcome{false, "disagreement on " +
                                                      detail::render_hat(b.base, sym)};
                ++total;
                if (sim) ++members;
            }
            return detail::Outcome{true, std::to_string(total) + " words up to length " +
                                             std::to_string(len) + ", " +
                                             std::to_string(members) +
                                             " members; oracle simulation agrees with the "
                                             "ball automaton"};
        });
        return;
    }

    detail::run_check(report, s.name, "loopcore::loop_membership", claim_member, [&] {
        auto [t, g] = loopcore::monoid_form(s.table, s.gens);
        loopcore::LoopAutomaton la = loopcore::loop_automaton(s.table, s.gens);
        Dfa d = loopcore::loop_problem_dfa(s.table, s.gens);
        const std::size_t k = g.alphabet.size();
        std::size_t len = detail::length_budget(2 * k, 20000, 8);
        std::size_t members = 0, total = 0;
        for (const auto& sym : detail::all_symbol_words(2 * k, len)) {
            bool sim = loopcore::loop_membership(s.table, s.gens, words::from_symbols(sym, k));
            bool walk =
                invhull::detail::nfa_walk(la.nfa, {la.identity}, sym).count(la.identity) != 0;
            bool dfa = automata::accepts(d, sym);
            if (sim != walk || sim != dfa)
                return detail::Outcome{false,
                                       "disagreement on " + detail::render_hat(g.alphabet, sym)};
            ++total;
            if (sim) ++members;
        }
        return detail::Outcome{true, std::to_string(total) + " words up to length " +
                                         std::to_string(len) + ", " + std::to_string(members) +
                                         " members; simulation, automaton walk and dfa agree"};
    });

    detail::run_check(report, s.name, "loopcore::zigzag_check", claim_zigzag, [&] {
        auto [t, g] = loopcore::monoid_form(s.table, s.gens);
        loopcore::LoopAutomaton la = loopcore::loop_automaton(s.table, s.gens);
        const std::size_t k = g.alphabet.size();
        const std::size_t n = t.size();
        std::size_t len = detail::length_budget(2 * k, std::max<std::size_t>(40000 / (n * n), 15),
                                                5);
        std::size_t witnesses = 0, total = 0;
        for (const auto& sym : detail::all_symbol_words(2 * k, len)) {
            InvolutiveWord w = words::from_symbols(sym, k);
            for (Element x = 0; x < n; ++x) {
                auto reach = invhull::detail::nfa_walk(la.nfa, {x}, sym);
                for (Element y = 0; y < n; ++y) {
                    auto z = loopcore::zigzag_check(s.table, s.gens, x, y, w);
                    if (z.has_value() != (reach.count(y) != 0))
                        return detail::Outcome{
                            false, "witness existence disagrees with the automaton on " +
                                       detail::render_hat(g.alphabet, sym)};
                    ++total;
                    if (!z) continue;
                    if (!loopcore::zigzag_witness_valid(s.table, s.gens, *z, x, y))
                        return detail::Outcome{
                            false, "invalid witness for " + detail::render_hat(g.alphabet, sym)};
                    ++witnesses;
                }
            }
        }
        return detail::Outcome{true, std::to_string(total) + " element pairs with words up to " +
                                         "length " + std::to_string(len) + "; " +
                                         std::to_string(witnesses) + " witnesses validated"};
    });
}

inline void suite_insertion(const Source& s, VerificationReport& report) {
    static const std::string claim = "every loop problem is insertion-closed";
    if (!detail::finite(s)) {
        detail::skip(report, s.name, "closure::is_insertion_closed", claim,
                     "infinite monoid: the loop problem has no finite acceptor");
        return;
    }
    detail::run_check(report, s.name, "closure::is_insertion_closed", claim, [&] {
        Dfa d = loopcore::loop_problem_dfa(s.table, s.gens);
        closure::ClosureReport r = closure::is_insertion_closed(d);
        if (!r.holds) {
            auto [t, g] = loopcore::monoid_form(s.table, s.gens);
            const auto& c = *r.counterexample;
            return detail::Outcome{false, "counterexample x=" +
                                              detail::render_hat(g.alphabet, c.x) + " w=" +
                                              detail::render_hat(g.alphabet, c.w) + " y=" +
                                              detail::render_hat(g.alphabet, c.y)};
        }
        return detail::Outcome{true,
                               "holds on a dfa with " + std::to_string(d.states) + " states"};
    });
}

inline void suite_deletion(const Source& s, VerificationReport& report) {
    static const std::string claim_rc =
        "the loop problem of a right-cancellative monoid is deletion-closed";
    static const std::string claim_def =
        "the deletion checker agrees with the definition of deletion closure";
    static const std::string claim_identity =
        "a non-empty language is insertion- and deletion-closed exactly when it is the set of "
        "words acting as the identity of its syntactic monoid";
    if (!detail::finite(s)) {
        detail::skip(report, s.name, "closure::is_deletion_closed", claim_rc,
                     "infinite monoid: the loop problem has no finite acceptor");
        return;
    }
    Dfa d = loopcore::loop_problem_dfa(s.table, s.gens);
    auto [t, g] = loopcore::monoid_form(s.table, s.gens);
    const Alphabet& base = g.alphabet;

    if (detail::right_cancellative_form(s)) {
        detail::run_check(report, s.name, "closure::is_deletion_closed", claim_rc, [&] {
            closure::ClosureReport r = closure::is_deletion_closed(d);
            if (!r.holds) {
                const auto& c = *r.counterexample;
                return detail::Outcome{false, "counterexample x=" + detail::render_hat(base, c.x) +
                                                  " w=" + detail::render_hat(base, c.w) + " y=" +
                                                  detail::render_hat(base, c.y)};
            }
            return detail::Outcome{true, "holds on a dfa with " + std::to_string(d.states) +
                                             " states"};
        });
    } else {
        detail::run_check(report, s.name, "closure::is_deletion_closed", claim_def, [&] {
            closure::ClosureReport r = closure::is_deletion_closed(d);
            std::size_t len = detail::length_budget(d.symbols, 30000, 8);
            auto brute = detail::deletion_violation_bruteforce(d, len);
            if (r.holds && brute)
                return detail::Outcome{false, "checker reports closed but x=" +
                                                  detail::render_hat(base, brute->x) + " w=" +
                                                  detail::render_hat(base, brute->w) + " y=" +
                                                  detail::render_hat(base, brute->y) +
                                                  " violates the definition"};
            if (!r.holds) {
                const auto& c = *r.counterexample;
                SymbolWord xwy = c.x;
                xwy.insert(xwy.end(), c.w.begin(), c.w.end());
                xwy.insert(xwy.end(), c.y.begin(), c.y.end());
                SymbolWord xy = c.x;
                xy.insert(xy.end(), c.y.begin(), c.y.end());
                if (!automata::accepts(d, xwy) || !automata::accepts(d, c.w) ||
                    automata::accepts(d, xy))
                    return detail::Outcome{false, "reported counterexample is not a violation"};
                return detail::Outcome{true, "deletion closure fails; counterexample x=" +
                                                 detail::render_hat(base, c.x) + " w=" +
                                                 detail::render_hat(base, c.w) + " y=" +
                                                 detail::render_hat(base, c.y) +
                                                 " confirmed against the dfa"};
            }
            return detail::Outcome{true, "deletion closure holds; brute force up to combined "
                                         "length " +
                                             std::to_string(len) + " agrees"};
        });
    }

    detail::run_check(report, s.name, "closure::identity_language_check", claim_identity, [&] {
        closure::ClosureReport ins = closure::is_insertion_closed(d);
        closure::ClosureReport del = closure::is_deletion_closed(d);
        closure::ClosureReport both = closure::identity_language_check(d);
        if (both.holds != (ins.holds && del.holds))
            return detail::Outcome{false, "combined verdict differs from the two closures"};
        return detail::Outcome{true, std::string("identity language: ") +
                                         (both.holds ? "yes" : "no") +
                                         "; syntactic-monoid cross-check passed"};
    });
}

inline void suite_semimonoid(const Source& s, VerificationReport& report) {
    static const std::string claim =
        "the semigroup loop problem is the monoid loop problem restricted to the empty word and "
        "words of shape X Xhat* Xbar, and the monoid loop problem is the two-sided quotient of "
        "the semigroup one by an identity-representing word";
    static const std::string check = "loopcore::semigroup_monoid_relation_check";
    if (!detail::finite(s)) {
        detail::skip(report, s.name, check, claim, "infinite monoid: no finite table");
        return;
    }
    if (!s.table.identity) {
        detail::skip(report, s.name, check, claim,
                     "the table has no identity, so only the semigroup loop problem exists");
        return;
    }
    auto semi = detail::semigroup_generators(s);
    if (!semi) {
        detail::skip(report, s.name, check, claim,
                     "the identity is not a non-empty product of generators");
        return;
    }
    detail::run_check(report, s.name, check, claim, [&] {
        loopcore::SemigroupMonoidReport r = loopcore::semigroup_monoid_relation_check(s.table, *semi);
        if (!r.restriction_holds) return detail::Outcome{false, "the restriction identity fails"};
        if (!r.quotient_holds) return detail::Outcome{false, "the quotient identity fails"};
        return detail::Outcome{true, "both identities hold with identity word w = " +
                                         words::render_word(semi->alphabet, r.identity_word)};
    });
}

inline void suite_genchange(const Source& s, VerificationReport& report) {
    static const std::string claim =
        "loop problems over two finite generating sets are each the inverse image of the other "
        "under a letterwise substitution";
    static const std::string check = "loopcore::generator_change";
    if (!detail::finite(s)) {
        detail::skip(report, s.name, check, claim, "infinite monoid: no finite table");
        return;
    }
    GeneratorMap tau = s.alt_gens ? *s.alt_gens : builtins::default_table_generators(s.table);
    tau.mode = s.gens.mode;
    std::string which = s.alt_gens ? "its alternative generating set"
                                   : "the full generating set of all elements";
    detail::run_check(report, s.name, check, claim, [&] {
        loopcore::GeneratorChangeReport fwd = loopcore::generator_change(s.table, s.gens, tau);
        loopcore::GeneratorChangeReport rev = loopcore::generator_change(s.table, tau, s.gens);
        if (!fwd.verified || !rev.verified)
            return detail::Outcome{false, "inverse-image equivalence fails against " + which};
        return detail::Outcome{true, "both directions verified against " + which + " (" +
                                         std::to_string(s.gens.alphabet.size()) + " and " +
                                         std::to_string(tau.alphabet.size()) + " letters)"};
    });
}

inline void suite_cs_restriction(const Source& s, VerificationReport& report) {
    static const std::string claim =
        "the loop problem of a maximal subgroup equals the restriction of the completely simple "
        "semigroup's loop problem to words over the subgroup's letters";
    static const std::string check = "transduce::cs_subgroup_restriction_check";
    if (!s.rees) {
        detail::skip(report, s.name, check, claim, "not presented as a Rees matrix semigroup");
        return;
    }
    detail::run_check(report, s.name, check, claim, [&] {
        const algebra::ReesSpec& spec = *s.rees;
        std::optional<std::vector<Letter>> sub;
        for (std::size_t i = 0; i < spec.I && !sub; ++i)
            for (std::size_t j = 0; j < spec.J && !sub; ++j) {
                std::vector<Letter> cell;
                std::vector<std::string> names;
                std::vector<Element> images;
                for (Letter y = 0; y < s.gens.alphabet.size(); ++y) {
                    algebra::ReesElement e = s.rees_gens[y];
                    if (e.i != i || e.j != j) continue;
                    cell.push_back(y);
                    names.push_back(s.gens.alphabet.name(y));
                    images.push_back(spec.group.mul(e.g, spec.P[j][i]));
                }
                if (cell.empty()) continue;
                GeneratorMap candidate{Alphabet(names), images, GenMode::Semigroup};
                if (algebra::is_surjective(spec.group, candidate)) sub = cell;
            }

        GeneratorMap gens = s.gens;
        std::string note;
        if (!sub) {
            std::set<std::string> used(gens.alphabet.names().begin(),
                                       gens.alphabet.names().end());
            std::vector<std::string> names = gens.alphabet.names();
            std::vector<Letter> added;
            std::size_t counter = 0;
            for (Element g = 0; g < spec.group.size(); ++g) {
                std::string name;
                do {
                    name = "s" + std::to_string(++counter);
                } while (used.count(name));
                used.insert(name);
                added.push_back(names.size());
                names.push_back(name);
                gens.image.push_back(algebra::rees_index(spec, {0, g, 0}));
            }
            gens.alphabet = Alphabet(names);
            sub = added;
            note = "; generators augmented with " + std::to_string(spec.group.size()) +
                   " letters for the subgroup at cell (1, 1)";
        }

        transduce::CsRestrictionReport r =
            transduce::cs_subgroup_restriction_check(spec, gens, *sub);
        if (!r.holds) return detail::Outcome{false, "restriction equivalence fails" + note};
        return detail::Outcome{true, "holds for the subgroup at cell (" + std::to_string(r.i + 1) +
                                         ", " + std::to_string(r.j + 1) + ") with " +
                                         std::to_string(sub->size()) + " letters" + note};
    });
}

inline void suite_cs_transducer(const Source& s, VerificationReport& report) {
    static const std::string claim =
        "the loop problem of a completely simple semigroup is the Kleene closure of the image of "
        "a maximal subgroup's word problem under a rational transduction, the image itself being "
        "the non-returning loops";
    static const std::string check = "transduce::cs_loop_problem";
    if (!s.rees) {
        detail::skip(report, s.name, check, claim, "not presented as a Rees matrix semigroup");
        return;
    }
    detail::run_check(report, s.name, check, claim, [&] {
        GeneratorMap sigma_g = builtins::default_table_generators(s.rees->group);
        transduce::CsTransducerSpec spec =
            transduce::make_cs_spec(*s.rees, sigma_g, s.gens.alphabet, s.rees_gens);
        transduce::CsLoopProblemResult r = transduce::cs_loop_problem(spec);
        if (!automata::dfa_equivalent(r.star, loopcore::loop_problem_dfa(s.table, s.gens)))
            return detail::Outcome{false, "Kleene closure differs from the loop problem"};
        if (!automata::dfa_equivalent(r.k, transduce::nonreturning_loops(s.table, s.gens)))
            return detail::Outcome{false, "transducer image differs from the non-returning loops"};
        return detail::Outcome{true, "transducer with " + std::to_string(r.transducer.states) +
                                         " states and " + std::to_string(r.transducer.edges.size()) +
                                         " edges; image and Kleene closure both match"};
    });
}

inline void suite_regularity(const Source& s, VerificationReport& report) {
    static const std::string claim =
        "a finitely generated monoid or semigroup is finite exactly when its loop problem is "
        "regular";
    if (detail::finite(s)) {
        detail::run_check(report, s.name, "loopcore::loop_problem_dfa", claim, [&] {
            Dfa d = loopcore::loop_problem_dfa(s.table, s.gens);
            Dfa m = automata::minimize(d);
            if (!automata::dfa_equivalent(d, m))
                return detail::Outcome{false, "minimization changed the language"};
            return detail::Outcome{true, "regular: " + std::to_string(d.states) +
                                             " states, minimal dfa has " +
                                             std::to_string(m.states)};
        });
        return;
    }
    detail::run_check(report, s.name, "loopcore::distinct_cones_witness", claim, [&] {
        loopcore::DistinctConesCertificate c = loopcore::distinct_cones_witness(*s.oracle, 10);
        if (c.prefixes.size() != 10)
            return detail::Outcome{false, "expected 10 cone representatives"};
        return detail::Outcome{true,
                               "10 pairwise distinct cones certified; every acceptor needs at "
                               "least 10 states, and the bound grows with the length budget"};
    });
}

inline void suite_minimality(const Source& s, VerificationReport& report) {
    static const std::string claim =
        "for a right-cancellative monoid the loop automaton is the minimal automaton of the loop "
        "problem: deterministic, trim, with pairwise distinct cones";
    static const std::string check = "invhull::verify_minimality";
    auto judge = [&](const invhull::MinimalityReport& r, const std::string& extra) {
        std::size_t pairs = r.vertices * (r.vertices - 1) / 2;
        if (!r.deterministic) return detail::Outcome{false, "automaton is not deterministic"};
        if (!r.trim) return detail::Outcome{false, "automaton is not trim"};
        if (r.separated_pairs != pairs)
            return detail::Outcome{false,
                                   std::to_string(r.separated_pairs) + " of " +
                                       std::to_string(pairs) + " vertex pairs separated" + extra};
        return detail::Outcome{true, std::to_string(r.vertices) + " vertices, all " +
                                         std::to_string(pairs) + " pairs separated" + extra};
    };
    if (detail::finite(s)) {
        if (!detail::right_cancellative_form(s)) {
            detail::skip(report, s.name, check, claim, "monoid form is not right cancellative");
            return;
        }
        detail::run_check(report, s.name, check, claim, [&] {
            return judge(invhull::verify_minimality(s.table, s.gens), "");
        });
        return;
    }
    if (!s.oracle->has_right_divide()) {
        detail::skip(report, s.name, check, claim,
                     "oracle cannot divide, so non-membership cannot be simulated");
        return;
    }
    detail::run_check(report, s.name, check, claim, [&] {
        return judge(invhull::verify_minimality(*s.oracle, 3), " within the radius-3 ball");
    });
}

inline void suite_invhull(const Source& s, VerificationReport& report) {
    static const std::string claim =
        "the syntactic monoid of the loop problem of a finite right-cancellative monoid is its "
        "inverse hull, acting on the minimal automaton as the right translations act on elements";
    static const std::string check = "invhull::verify_inverse_hull_theorem";
    if (!detail::finite(s)) {
        detail::skip(report, s.name, check, claim, "infinite monoid: no finite table");
        return;
    }
    if (!detail::right_cancellative_form(s)) {
        detail::skip(report, s.name, check, claim, "monoid form is not right cancellative");
        return;
    }
    detail::run_check(report, s.name, check, claim, [&] {
        invhull::InverseHullReport r = invhull::verify_inverse_hull_theorem(s.table, s.gens);
        if (!r.isomorphism)
            return detail::Outcome{false, "no isomorphism between hull and syntactic monoid"};
        if (!r.action_coincides)
            return detail::Outcome{false, "actions on the automaton states differ"};
        return detail::Outcome{true, "hull of order " + std::to_string(r.hull.table.size()) +
                                         " is isomorphic to the syntactic monoid; actions "
                                         "coincide"};
    });
}

inline void suite_multtable(const Source& s, VerificationReport& report) {
    static const std::string claim =
        "the multiplication-table language accepts u#v#z exactly when u v and the reversal of z "
        "evaluate to the same element";
    static const std::string check = "transduce::multiplication_table_language";
    if (!detail::finite(s)) {
        detail::skip(report, s.name, check, claim, "infinite monoid: no finite table");
        return;
    }
    GeneratorMap semi{s.gens.alphabet, s.gens.image, GenMode::Semigroup};
    if (!algebra::is_surjective(s.table, semi)) {
        detail::skip(report, s.name, check, claim,
                     "the generators do not generate the table as a semigroup");
        return;
    }
    detail::run_check(report, s.name, check, claim, [&] {
        Dfa mtl = transduce::multiplication_table_language(s.table, semi);
        auto [t, g] = loopcore::monoid_form(s.table, semi);
        const std::size_t k = semi.alphabet.size();
        std::size_t len = 1;
        while (len < 3) {
            std::size_t cnt = 1, layer = 1;
            for (std::size_t i = 1; i <= len + 1; ++i) {
                layer *= k;
                cnt += layer;
            }
            if (cnt * cnt * cnt > 50000) break;
            ++len;
        }
        auto blocks = detail::all_symbol_words(k, len);
        auto eval = [&](const PositiveWord& w) {
            Element m = *t.identity;
            for (Letter x : w) m = t.mul(m, g.image[x]);
            return m;
        };
        std::size_t accepted = 0;
        for (const auto& u : blocks)
            for (const auto& v : blocks)
                for (const auto& z : blocks) {
                    SymbolWord tape = u;
                    tape.push_back(k);
                    tape.insert(tape.end(), v.begin(), v.end());
                    tape.push_back(k);
                    tape.insert(tape.end(), z.begin(), z.end());
                    InvolutiveWord probe = words::to_word(u);
                    for (Letter x : v) probe.push_back(words::pos(x));
                    for (Letter x : z) probe.push_back(words::bar(x));
                    PositiveWord uv = u;
                    uv.insert(uv.end(), v.begin(), v.end());
                    PositiveWord rz(z.rbegin(), z.rend());
                    bool lang = automata::accepts(mtl, tape);
                    bool loop = loopcore::loop_membership(s.table, semi, probe);
                    bool alg = eval(uv) == eval(rz);
                    if (lang != loop || lang != alg)
                        return detail::Outcome{false,
                                               "disagreement at u=" +
                                                   detail::word_or_eps(words::render_word(
                                                       semi.alphabet, u)) +
                                                   " v=" +
                                                   detail::word_or_eps(words::render_word(
                                                       semi.alphabet, v)) +
                                                   " z=" +
                                                   detail::word_or_eps(words::render_word(
                                                       semi.alphabet, z))};
                    if (lang) ++accepted;
                }
        return detail::Outcome{true, std::to_string(blocks.size() * blocks.size() *
                                                    blocks.size()) +
                                         " block triples up to length " + std::to_string(len) +
                                         ", " + std::to_string(accepted) +
                                         " accepted; language, loop probe and evaluation agree"};
    });
}

inline void suite_reconstruct(const Source& s, VerificationReport& report) {
    static const std::string claim =
        "a finite monoid is recovered from its loop problem up to an isomorphism aligning the "
        "generators";
    static const std::string check = "closure::reconstruct_monoid";
    if (!detail::finite(s)) {
        detail::skip(report, s.name, check, claim, "infinite monoid: no finite acceptor");
        return;
    }
    detail::run_check(report, s.name, check, claim, [&] {
        Dfa d = loopcore::loop_problem_dfa(s.table, s.gens);
        closure::ReconstructedMonoid rec = closure::reconstruct_monoid(d);
        auto [t, g] = loopcore::monoid_form(s.table, s.gens);
        if (rec.table.size() != t.size())
            return detail::Outcome{false, "reconstructed " + std::to_string(rec.table.size()) +
                                              " elements, expected " + std::to_string(t.size())};
        std::vector<std::pair<Element, Element>> seed;
        for (Letter x = 0; x < g.alphabet.size(); ++x)
            seed.push_back({rec.gens.image[x], g.image[x]});
        auto iso = algebra::find_isomorphism(rec.table, t, seed);
        if (!iso)
            return detail::Outcome{false, "no isomorphism aligning the generators"};
        for (Letter x = 0; x < g.alphabet.size(); ++x)
            if ((*iso)[rec.gens.image[x]] != g.image[x])
                return detail::Outcome{false, "generator images misaligned"};
        return detail::Outcome{true, "round trip through a dfa with " + std::to_string(d.states) +
                                         " states recovers all " + std::to_string(t.size()) +
                                         " elements with generators aligned"};
    });
}

// --- dispatch ----------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "zigzag",     "insertion",      "deletion",      "semimonoid",
        "genchange",  "cs-restriction", "cs-transducer", "regularity",
        "minimality", "invhull",        "multtable",     "reconstruct"};
    return names;
}

inline VerificationReport run_suite(const std::string& suite,
                                    const std::vector<Source>& corpus) {
    using Runner = void (*)(const Source&, VerificationReport&);
    static const std::vector<std::pair<std::string, Runner>> runners{
        {"zigzag", suite_zigzag},
        {"insertion", suite_insertion},
        {"deletion", suite_deletion},
        {"semimonoid", suite_semimonoid},
        {"genchange", suite_genchange},
        {"cs-restriction", suite_cs_restriction},
        {"cs-transducer", suite_cs_transducer},
        {"regularity", suite_regularity},
        {"minimality", suite_minimality},
        {"invhull", suite_invhull},
        {"multtable", suite_multtable},
        {"reconstruct", suite_reconstruct}};
    for (const auto& [name, runner] : runners)
        if (name == suite) {
            VerificationReport report;
            report.suite = suite;
            for (const auto& s : corpus) runner(s, report);
            return report;
        }
    throw ValidationError("verify: unknown suite '" + suite + "'");
}

inline std::vector<VerificationReport> run_suites(const std::vector<std::string>& suites,
                                                  const std::vector<Source>& corpus) {
    std::vector<VerificationReport> out;
    for (const auto& name : suites) out.push_back(run_suite(name, corpus));
    return out;
}

inline std::string render_report(const VerificationReport& report) {
    std::ostringstream out;
    out << "suite " << report.suite << "\n";
    for (const auto& r : report.records) {
        const char* tag = r.status == Status::Pass ? "pass"
                          : r.status == Status::Fail ? "FAIL"
                                                     : "skip";
        out << "  [" << tag << "] " << r.item << " :: " << r.check;
        if (r.status != Status::Skip)
            out << " (" << std::fixed << std::setprecision(2) << r.millis << " ms)";
        out << "\n";
        out << "         claim: " << r.claim << "\n";
        if (!r.details.empty()) out << "         " << r.details << "\n";
    }
    out << "  " << report.suite << ": " << report.count(Status::Pass) << " passed, "
        << report.count(Status::Fail) << " failed, " << report.count(Status::Skip)
        << " skipped\n";
    return out.str();
}

}  // namespace loopauto::verify
