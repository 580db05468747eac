#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "pbc/divisor.hpp"
#include "pbc/errors.hpp"
#include "pbc/lattice.hpp"
#include "pbc/surface.hpp"

namespace pbc {

// Numerical class of a sheaf killed by the blowdown: rank 0, chi 0, c1 in
// the exceptional span, with its coordinates in the component basis (the
// multiplicities of O_f(-1) in a composition series).
struct ExceptionalClass {
    DivisorClass c1;
    std::vector<Int> multiplicities;

    friend bool operator==(const ExceptionalClass&, const ExceptionalClass&) = default;
};

inline ExceptionalClass make_exceptional_class(const SurfaceModel& surface, DivisorClass c1) {
    std::vector<Int> mult = component_coordinates(surface, c1);
    return {std::move(c1), std::move(mult)};
}

// Multiplicities of the irreducibles O_f(-1) in any composition series;
// a negative coordinate means the class is not the class of an actual
// exceptional sheaf.
inline std::vector<Int> composition_multiplicities(const SurfaceModel& surface,
                                                   const ExceptionalClass& e) {
    std::vector<Int> m = component_coordinates(surface, e.c1);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] < 0)
            throw math_error("class has negative multiplicity " + std::to_string(m[i]) +
                             " at component f" + std::to_string(i + 1) +
                             ": not an exceptional sheaf class");
    return m;
}

// c1(P_f) = c1(I_f) = f_dual: the projective cover and the injective hull
// of O_f(-1) share their numerical class.
inline ExceptionalClass projective_class(const SurfaceModel& surface, std::size_t f) {
    return make_exceptional_class(surface, dual_component(surface, f));
}

inline ExceptionalClass injective_class(const SurfaceModel& surface, std::size_t f) {
    return projective_class(surface, f);
}

struct SubsheafEntry {
    std::vector<std::size_t> subset; // component indices, ascending
    DivisorClass cls;                // D = sum of e_f over the subset
};

// The boolean lattice of exceptional subsheaf classes: one entry per subset
// S of components, D(S) = sum_{f in S} e_f.  Every D satisfies
// D . (e_pi - D) = 0.  Refuses n > 20.
inline std::vector<SubsheafEntry> subsheaf_lattice(const SurfaceModel& surface) {
    detail::require_lattice(surface);
    const std::size_t n = surface.blowup_count();
    if (n > 20)
        throw size_error("subsheaf lattice has 2^" + std::to_string(n) +
                         " elements; refusing n > 20");
    std::vector<SubsheafEntry> out;
    out.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        SubsheafEntry entry;
        entry.cls = DivisorClass(n);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) {
                entry.subset.push_back(i);
                entry.cls += orthonormal_divisor(surface, i);
            }
        out.push_back(std::move(entry));
    }
    return out;
}

struct ChainStep {
    std::size_t component = 0;      // f added at this step
    DivisorClass subquotient_c1;    // = e_f
    std::vector<Int> decomposition; // component coordinates of e_f
};

struct MaximalChain {
    std::vector<ExceptionalClass> filtration; // 0 = E_0 c E_1 c ... c E_n
    std::vector<ChainStep> steps;
};

// The maximal chain attached to an ordering of the components: partial sums
// of the orthonormal divisors e_f in that order.
inline MaximalChain chain_for_ordering(const SurfaceModel& surface,
                                       const std::vector<std::size_t>& ordering) {
    detail::require_lattice(surface);
    const std::size_t n = surface.blowup_count();
    if (ordering.size() != n) throw math_error("ordering must list every component exactly once");
    std::vector<bool> seen(n, false);
    for (std::size_t f : ordering) {
        if (f >= n || seen[f]) throw math_error("ordering is not a permutation of the components");
        seen[f] = true;
    }
    MaximalChain chain;
    DivisorClass acc(n);
    chain.filtration.push_back(make_exceptional_class(surface, acc));
    for (std::size_t f : ordering) {
        const DivisorClass ef = orthonormal_divisor(surface, f);
        acc += ef;
        chain.filtration.push_back(make_exceptional_class(surface, acc));
        chain.steps.push_back({f, ef, component_coordinates(surface, ef)});
    }
    return chain;
}

// Length of Hom(P_f, E) for the subquotient E with c1 = e_g, up to the sign
// normalization |f_dual . e_g| (the form is negative on effective classes).
inline Int hom_length(const SurfaceModel& surface, std::size_t f, std::size_t g) {
    const Int v = intersect(surface, dual_component(surface, f), orthonormal_divisor(surface, g));
    return std::abs(v);
}

// Degree d of the jet ring k[t]/t^d acting on Hom(P_f, .): |f_dual . e_pi|.
inline Int jet_degree(const SurfaceModel& surface, std::size_t f) {
    const Int v = intersect(surface, dual_component(surface, f), e_pi(surface));
    return std::abs(v);
}

} // namespace pbc
