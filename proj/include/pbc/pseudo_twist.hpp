#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pbc/errors.hpp"
#include "pbc/jets.hpp"
#include "pbc/kclass.hpp"
#include "pbc/lattice.hpp"
#include "pbc/surface.hpp"

namespace pbc {

struct PseudoTwist {
    SheafClass result; // class on the base, after the pseudo-twist
    Int r = 0;         // number of point classes gained (up) or lost (down)
};

namespace detail {

// `lift` must be a lift of `base` through the nodes above base.stage():
// same rank and chi, and c1 agreeing below the new coordinates.
inline void check_lift_pair(const SurfaceModel& surface, const SheafClass& base,
                            const SheafClass& lift, std::size_t component) {
    check_class(surface, base);
    check_class(surface, lift);
    if (lift.stage() != surface.blowup_count())
        throw math_error("lift does not live on the fully blown-up surface");
    if (component >= surface.blowup_count())
        throw math_error("component index out of range");
    if (component < base.stage())
        throw math_error("component is not exceptional over the class's base stage");
    if (lift.rank != base.rank || lift.chi != base.chi)
        throw math_error("lift is inconsistent with the base class (rank or chi differ)");
    if (lift.c1.s != base.c1.s || lift.c1.f != base.c1.f)
        throw math_error("lift is inconsistent with the base class (s,f part differs)");
    for (std::size_t i = 0; i < base.stage(); ++i)
        if (lift.c1.e[i] != base.c1.e[i])
            throw math_error("lift is inconsistent with the base class (existing coordinates differ)");
}

} // namespace detail

// Direct image of (minimal lift twisted by L(e_f)): the universal extension
// by r1 = c1(lift).e_f point sheaves.  c1 and rank are unchanged, chi grows
// by r1.
inline PseudoTwist pseudo_twist_up(const SurfaceModel& surface, const SheafClass& on_base,
                                   const SheafClass& lift, std::size_t component) {
    detail::check_lift_pair(surface, on_base, lift, component);
    const Int r1 = intersect(surface, lift.c1, orthonormal_divisor(surface, component));
    if (r1 < 0)
        throw negative_length("pseudo-twist up has negative length r1 = " + std::to_string(r1) +
                              ": the lift datum is inconsistent");
    return {{on_base.rank, on_base.c1, on_base.chi + r1}, r1};
}

// Direct image of (minimal lift twisted by L(-e_f)): the kernel of the
// universal map onto r2 = c1(lift).e_f + rank point sheaves.  c1 and rank
// are unchanged, chi drops by r2.
inline PseudoTwist pseudo_twist_down(const SurfaceModel& surface, const SheafClass& on_base,
                                     const SheafClass& lift, std::size_t component) {
    detail::check_lift_pair(surface, on_base, lift, component);
    const Int r2 =
        intersect(surface, lift.c1, orthonormal_divisor(surface, component)) + on_base.rank;
    if (r2 < 0)
        throw negative_length("pseudo-twist down has negative length r2 = " + std::to_string(r2) +
                              ": the lift datum is inconsistent");
    return {{on_base.rank, on_base.c1, on_base.chi - r2}, r2};
}

struct ResolutionStep {
    std::size_t node = 0;    // index of the blowup appended at this step
    JetSite center;          // the site that was blown up
    std::string direction;   // pseudo-twist normalization ("down")
    Int r = 0;               // pseudo-twist length at this step
    SheafClass lift;         // minimal lift on the enlarged surface
    JetProfile jets;         // residual profile after the step
};

struct ResolutionTrace {
    std::vector<ResolutionStep> steps;
    SurfaceModel final_surface;
    SheafClass final_lift;
};

// Iterated blowup/pseudo-twist procedure making a transverse rank-0 class
// disjoint from the anticanonical curve.  Each step blows up the site with
// the longest jet (ties: lowest site id), lifts with multiplicity 1 and
// moves the residual jet to the new exceptional curve, so the total jet
// length and c1 . (-K) both drop by exactly 1 per step.
inline ResolutionTrace resolve_disjoint(const SurfaceModel& surface, const SheafClass& m,
                                        const JetProfile& jets) {
    if (m.rank != 0)
        throw math_error("disjointness resolution applies to rank-0 classes only");
    detail::check_class(surface, m);
    if (m.stage() != surface.blowup_count())
        throw math_error("class does not live on the given surface");
    check_jet_profile(jets, "jets");
    for (const JetEntry& j : jets.entries) {
        if (!j.site.on_anticanonical)
            throw not_transverse("jet site " + j.site.display() +
                                 " is not on the anticanonical curve");
        if (j.site.kind == JetSite::Kind::Exceptional) {
            if (j.site.node < 0 || j.site.node >= static_cast<int>(surface.blowup_count()))
                throw not_transverse("jet site " + j.site.display() + " names a missing blowup");
            if (!surface.forest().node(static_cast<std::size_t>(j.site.node)).on_anticanonical)
                throw not_transverse("jet site " + j.site.display() +
                                     " sits on an exceptional curve away from the anticanonical curve");
        } else {
            for (const BlowupNode& b : surface.forest().nodes())
                if (b.parent.is_base() && b.parent.label == j.site.label)
                    throw not_transverse("jet site base:" + j.site.label +
                                         " was already blown up");
        }
    }
    if (jets.total_length() != intersect(surface, m.c1, anticanonical_class(surface)))
        throw not_transverse("jet profile total length " + std::to_string(jets.total_length()) +
                             " differs from c1 . (-K) = " +
                             std::to_string(intersect(surface, m.c1, anticanonical_class(surface))));

    ResolutionTrace trace{{}, surface, m};
    SurfaceModel cur = surface;
    SheafClass lift = m;
    JetProfile prof = jets;
    while (!prof.entries.empty()) {
        std::size_t pick = 0;
        for (std::size_t i = 1; i < prof.entries.size(); ++i) {
            const JetEntry& a = prof.entries[i];
            const JetEntry& b = prof.entries[pick];
            if (a.length > b.length || (a.length == b.length && a.site.key() < b.site.key()))
                pick = i;
        }
        JetEntry& entry = prof.entries[pick];
        const JetSite center = entry.site;
        ParentRef parent = center.kind == JetSite::Kind::Base
                               ? ParentRef::base(center.label)
                               : ParentRef::at_node(center.node);
        cur = cur.with_poisson_blowup({std::move(parent), true, 1});
        const std::size_t added = cur.blowup_count() - 1;
        lift = minimal_lift_class(cur, lift, {1});
        const Int r = intersect(cur, lift.c1, orthonormal_divisor(cur, added)) + lift.rank;
        entry.length -= 1;
        if (entry.length == 0)
            prof.entries.erase(prof.entries.begin() + static_cast<std::ptrdiff_t>(pick));
        else
            entry.site = JetSite::exceptional(static_cast<int>(added));
        trace.steps.push_back({added, center, "down", r, lift, prof});
    }
    if (intersect(cur, lift.c1, anticanonical_class(cur)) != 0)
        throw math_error("internal: resolution finished without reaching disjointness");
    trace.final_surface = cur;
    trace.final_lift = lift;
    return trace;
}

} // namespace pbc
