#pragma once

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "pbc/pbc.hpp"

namespace pbctest {

// Tests are reproducible: the seed comes from PBC_SEED when set, otherwise
// a fixed default.
inline std::uint64_t seed_from_env() {
    if (const char* s = std::getenv("PBC_SEED")) return std::strtoull(s, nullptr, 10);
    return 961748941;
}

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) {
    return std::mt19937_64(seed_from_env() ^ (salt * 0x9e3779b97f4a7c15ull));
}

inline pbc::Int pick(std::mt19937_64& rng, pbc::Int lo, pbc::Int hi) {
    return std::uniform_int_distribution<pbc::Int>(lo, hi)(rng);
}

// Random Poisson-legal forest: every center on the anticanonical curve,
// multiplicities descending along strict transforms.
inline pbc::BlowupForest random_forest(std::mt19937_64& rng, std::size_t n) {
    std::vector<pbc::BlowupNode> nodes;
    for (std::size_t i = 0; i < n; ++i) {
        pbc::BlowupNode node;
        if (i == 0 || pick(rng, 0, 1) == 0) {
            node.parent = pbc::ParentRef::base("p" + std::to_string(i + 1));
            node.multiplicity = pick(rng, 1, 3);
        } else {
            const std::size_t j = static_cast<std::size_t>(pick(rng, 0, static_cast<pbc::Int>(i) - 1));
            node.parent = pbc::ParentRef::at_node(static_cast<int>(j));
            node.multiplicity = pick(rng, 1, nodes[j].multiplicity);
        }
        node.on_anticanonical = true;
        nodes.push_back(std::move(node));
    }
    return pbc::BlowupForest(std::move(nodes));
}

inline pbc::SurfaceModel random_surface(std::mt19937_64& rng, std::size_t max_blowups,
                                        std::size_t min_blowups = 0) {
    const std::size_t n =
        static_cast<std::size_t>(pick(rng, static_cast<pbc::Int>(min_blowups),
                                      static_cast<pbc::Int>(max_blowups)));
    const pbc::Int which = pick(rng, 0, 3);
    if (which == 0)
        return pbc::SurfaceModel(pbc::BaseCase::F2Rational, 0, random_forest(rng, n),
                                 pbc::KodairaSubcase::I1);
    if (which == 1)
        return pbc::SurfaceModel(pbc::BaseCase::Genus1Product, 1, random_forest(rng, n));
    return pbc::SurfaceModel(pbc::BaseCase::StandardRuled, pick(rng, 0, 3), random_forest(rng, n));
}

inline pbc::DivisorClass random_divisor(std::mt19937_64& rng, std::size_t stage, pbc::Int bound) {
    pbc::DivisorClass d(stage);
    d.s = pick(rng, -bound, bound);
    d.f = pick(rng, -bound, bound);
    for (pbc::Int& c : d.e) c = pick(rng, -bound, bound);
    return d;
}

inline pbc::SheafClass random_class(std::mt19937_64& rng, std::size_t stage, pbc::Int max_rank,
                                    pbc::Int coeff_bound) {
    pbc::SheafClass m;
    m.rank = pick(rng, 0, max_rank);
    m.c1 = random_divisor(rng, stage, coeff_bound);
    m.chi = pick(rng, -coeff_bound, coeff_bound);
    return m;
}

inline pbc::LiftDatum random_datum(std::mt19937_64& rng, std::size_t count, pbc::Int max_mult) {
    pbc::LiftDatum d(count);
    for (pbc::Int& m : d) m = pick(rng, 0, max_mult);
    return d;
}

struct ResolutionInstance {
    pbc::SurfaceModel surface;
    pbc::SheafClass cls;
    pbc::JetProfile jets;
};

// A rank-0 class transverse to the anticanonical curve together with a
// consistent jet profile: total length == c1 . (-K).  On the unblown
// surface c1 . (-K) is always even, so totals get adjusted there.
inline ResolutionInstance random_resolution_instance(std::mt19937_64& rng, pbc::Int max_total) {
    using namespace pbc;
    SurfaceModel surface = random_surface(rng, 3);
    const std::size_t n = surface.blowup_count();

    JetProfile jets;
    std::vector<int> used_nodes;
    Int total = 0;
    const Int want = pick(rng, 0, 3);
    for (Int i = 0; i < want; ++i) {
        const Int room = max_total - total;
        if (room < 1) break;
        const Int len = pick(rng, 1, std::min<Int>(room, 4));
        JetSite site = JetSite::base("q" + std::to_string(i + 1));
        if (n > 0 && pick(rng, 0, 2) == 0) {
            const int node = static_cast<int>(pick(rng, 0, static_cast<Int>(n) - 1));
            if (std::find(used_nodes.begin(), used_nodes.end(), node) != used_nodes.end())
                continue;
            used_nodes.push_back(node);
            site = JetSite::exceptional(node);
        }
        jets.entries.push_back({std::move(site), len});
        total += len;
    }
    if (n == 0 && total % 2 == 1) {
        if (total + 1 <= max_total) {
            jets.entries.back().length += 1;
            total += 1;
        } else {
            jets.entries.back().length -= 1;
            total -= 1;
            if (jets.entries.back().length == 0) jets.entries.pop_back();
        }
    }

    const Int ss = 2 - 2 * surface.genus();
    DivisorClass c1(n);
    c1.s = pick(rng, -2, 2);
    if (n >= 1) {
        c1.f = pick(rng, -2, 2);
        for (std::size_t i = 1; i < n; ++i) c1.e[i] = pick(rng, -2, 2);
        Int rest = 0;
        for (std::size_t i = 1; i < n; ++i) rest += c1.e[i];
        c1.e[0] = total - 2 * c1.s * ss - 2 * c1.f - rest;
    } else {
        c1.f = (total - 2 * c1.s * ss) / 2;
    }
    SheafClass cls{0, std::move(c1), pick(rng, -4, 4)};
    return {std::move(surface), std::move(cls), std::move(jets)};
}

} // namespace pbctest
