#pragma once

// Test-side oracles. They deliberately avoid the library's evaluators so that
// agreement means something.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mbr/io.hpp"
#include "mbr/kripke.hpp"

namespace oracle {

using mbr::Formula;

inline bool eval(const Formula& f, std::uint32_t bits) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True: return true;
        case K::False: return false;
        case K::Atom: return (bits >> f.index()) & 1U;
        case K::Not: return !eval(f.lhs(), bits);
        case K::And: return eval(f.lhs(), bits) && eval(f.rhs(), bits);
        case K::Or: return eval(f.lhs(), bits) || eval(f.rhs(), bits);
        case K::Implies: return !eval(f.lhs(), bits) || eval(f.rhs(), bits);
        case K::Iff: return eval(f.lhs(), bits) == eval(f.rhs(), bits);
        case K::Belief: break;
    }
    throw std::logic_error("oracle::eval on a belief formula");
}

// Truth table as a bitmask over the 2^props valuations.
inline std::uint64_t table(const Formula& f, int props) {
    std::uint64_t t = 0;
    for (std::uint32_t v = 0; v < (1U << props); ++v)
        if (eval(f, v)) t |= std::uint64_t{1} << v;
    return t;
}

// Kripke semantics straight from the definition, over a plain edge list.
inline bool holds(const mbr::KripkeModel& m, int w, const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Belief: {
            for (int t = 0; t < m.world_count(); ++t)
                if (m.related(f.index(), w, t) && !holds(m, t, f.lhs())) return false;
            return true;
        }
        case K::Not: return !holds(m, w, f.lhs());
        case K::And: return holds(m, w, f.lhs()) && holds(m, w, f.rhs());
        case K::Or: return holds(m, w, f.lhs()) || holds(m, w, f.rhs());
        case K::Implies: return !holds(m, w, f.lhs()) || holds(m, w, f.rhs());
        case K::Iff: return holds(m, w, f.lhs()) == holds(m, w, f.rhs());
        default: return eval(f, m.valuation(w).bits());
    }
}

// Propositional formulas up to `depth`, one representative per truth table
// (the first one found, so shallow representatives win).
inline std::vector<Formula> formulas_by_table(int props, int depth) {
    std::map<std::uint64_t, Formula> seen;
    std::vector<Formula> level;
    auto offer = [&](const Formula& f, std::vector<Formula>& into) {
        if (seen.emplace(table(f, props), f).second) into.push_back(f);
    };
    std::vector<Formula> base{Formula::top(), Formula::bottom()};
    for (int p = 0; p < props; ++p) base.push_back(Formula::atom(p));
    for (const auto& f : base) offer(f, level);
    std::vector<Formula> all = level;
    for (int d = 1; d <= depth; ++d) {
        std::vector<Formula> next;
        std::vector<Formula> pool = all;
        for (const auto& f : pool) offer(Formula::negation(f), next);
        for (const auto& f : pool) {
            for (const auto& g : pool) {
                offer(Formula::conjunction(f, g), next);
                offer(Formula::disjunction(f, g), next);
                offer(Formula::implication(f, g), next);
                offer(Formula::equivalence(f, g), next);
            }
        }
        all.insert(all.end(), next.begin(), next.end());
    }
    return all;
}

// Uniform-ish random propositional formula of depth <= depth.
inline Formula random_formula(std::mt19937_64& rng, int props, int depth) {
    int choice = depth == 0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 8);
    switch (choice) {
        case 0: return Formula::atom(static_cast<int>(rng() % props));
        case 1: return rng() % 2 ? Formula::top() : Formula::bottom();
        case 2: return Formula::atom(static_cast<int>(rng() % props));
        case 3: return Formula::negation(random_formula(rng, props, depth - 1));
        case 4: return Formula::conjunction(random_formula(rng, props, depth - 1), random_formula(rng, props, depth - 1));
        case 5: return Formula::disjunction(random_formula(rng, props, depth - 1), random_formula(rng, props, depth - 1));
        case 6: return Formula::implication(random_formula(rng, props, depth - 1), random_formula(rng, props, depth - 1));
        default: return Formula::equivalence(random_formula(rng, props, depth - 1), random_formula(rng, props, depth - 1));
    }
}

// K1 ⊆ K2 by brute force: every B_a phi (phi from the depth-3 enumeration)
// true in K1 is true in K2.
inline bool subset_by_formulas(const mbr::PointedModel& k1, const mbr::PointedModel& k2) {
    const auto& sig = k1.signature();
    static std::map<int, std::vector<Formula>> cache;
    auto& fs = cache[sig.prop_count()];
    if (fs.empty()) fs = formulas_by_table(sig.prop_count(), 3);
    for (int a = 0; a < sig.agent_count(); ++a) {
        for (const auto& phi : fs) {
            Formula b = Formula::belief(a, phi);
            if (holds(k1.model(), k1.designated(), b) && !holds(k2.model(), k2.designated(), b)) return false;
        }
    }
    return true;
}

}  // namespace oracle

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(MBR_FIXTURE_DIR) + "/" + name; }
inline mbr::PointedModel load(const std::string& name) { return mbr::load_model(path(name)); }

}  // namespace fixtures
