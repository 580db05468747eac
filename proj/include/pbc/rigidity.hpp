#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "pbc/errors.hpp"
#include "pbc/jets.hpp"
#include "pbc/kclass.hpp"
#include "pbc/lattice.hpp"
#include "pbc/surface.hpp"

namespace pbc {

// What is known about the derived restrictions of the two classes to the
// anticanonical curve.  This is sheaf-level data; the engine consumes it.
struct RestrictionData {
    enum class Kind { Disjoint, TransverseJets, Explicit };
    Kind kind = Kind::Disjoint;
    std::optional<JetProfile> jets_left;  // TransverseJets
    std::optional<JetProfile> jets_right; // absent: same profile as the left
    Int hom_dim = 0;                      // Explicit
    Int ext_minus1_dim = 0;               // Explicit

    static RestrictionData disjoint() { return {}; }

    static RestrictionData transverse(JetProfile m, std::optional<JetProfile> n = {}) {
        RestrictionData r;
        r.kind = Kind::TransverseJets;
        r.jets_left = std::move(m);
        r.jets_right = std::move(n);
        return r;
    }

    static RestrictionData explicit_dims(Int hom, Int ext_minus1) {
        RestrictionData r;
        r.kind = Kind::Explicit;
        r.hom_dim = hom;
        r.ext_minus1_dim = ext_minus1;
        return r;
    }
};

// chi_alpha(M, N) = ext_euler(M, N) + dim Hom of the restrictions
// - dim Ext^{-1} of the restrictions.  Disjoint restrictions contribute
// nothing; transverse jets contribute sum over shared sites of
// min(a_M, a_N), with the Ext^{-1} term killed by transversality.
inline Int chi_alpha(const SurfaceModel& surface, const SheafClass& m, const SheafClass& n,
                     const RestrictionData& restr) {
    Int correction = 0;
    switch (restr.kind) {
        case RestrictionData::Kind::Disjoint:
            break;
        case RestrictionData::Kind::Explicit:
            correction = restr.hom_dim - restr.ext_minus1_dim;
            break;
        case RestrictionData::Kind::TransverseJets: {
            if (m.rank != 0 || n.rank != 0)
                throw math_error("transverse-jet restriction data applies to rank-0 classes only");
            if (!restr.jets_left)
                throw math_error("transverse restriction data carries no jet profile");
            const JetProfile& a = *restr.jets_left;
            const JetProfile& b = restr.jets_right ? *restr.jets_right : a;
            check_jet_profile(a, "jets");
            check_jet_profile(b, "jets");
            for (const JetEntry& ja : a.entries)
                for (const JetEntry& jb : b.entries)
                    if (ja.site.same_site(jb.site)) correction += std::min(ja.length, jb.length);
            break;
        }
    }
    return ext_euler(surface, m, n) + correction;
}

// chi_alpha(M, M): value 2 characterizes infinitesimal rigidity of a
// simple sheaf.
inline Int index_of_rigidity(const SurfaceModel& surface, const SheafClass& m,
                             const RestrictionData& restr) {
    return chi_alpha(surface, m, m, restr);
}

// Dimension of the tangent space of the symplectic leaf through M:
// 2 dim End(M) - chi_alpha(M, M).
inline Int leaf_tangent_dim(const SurfaceModel& surface, const SheafClass& m,
                            const RestrictionData& restr, Int dim_end) {
    if (dim_end < 1) throw math_error("dim End(M) must be >= 1");
    const Int v = 2 * dim_end - index_of_rigidity(surface, m, restr);
    if (v < 0)
        throw math_error("negative leaf tangent dimension " + std::to_string(v) +
                         ": restriction data is inconsistent");
    return v;
}

struct RigidityReport {
    Int chi_alpha = 0;
    bool numeric_rigid = false;
    Int c1_self_intersection = 0;
    Int c1_dot_canonical = 0;
    bool in_minus_two_list = false;
    Int coeff_bound = 0;
    std::string assumption;
};

// Decision procedure for a rank-0 class disjoint from the anticanonical
// curve: rigid candidates are exactly the numerical -2-classes
// (c1^2 = -2, forced K.c1 = 0).  Integrality of the support is sheaf-level
// data and is reported as an assumption, not verified.
inline RigidityReport is_rigid_candidate(const SurfaceModel& surface, const SheafClass& m,
                                         const RestrictionData& restr, Int coeff_bound) {
    if (m.rank != 0) throw math_error("rigidity candidates must have rank 0");
    if (restr.kind != RestrictionData::Kind::Disjoint)
        throw math_error("rigidity candidates need disjoint restriction data");
    if (m.stage() != surface.blowup_count())
        throw math_error("class does not live on the given surface");
    RigidityReport report;
    report.c1_dot_canonical = intersect(surface, m.c1, canonical_class(surface));
    if (report.c1_dot_canonical != 0)
        throw math_error("class cannot be disjoint from the anticanonical curve: c1.K = " +
                         std::to_string(report.c1_dot_canonical));
    report.chi_alpha = index_of_rigidity(surface, m, restr);
    report.c1_self_intersection = intersect(surface, m.c1, m.c1);
    report.numeric_rigid = report.chi_alpha == 2;
    report.coeff_bound = coeff_bound;
    const auto classes = enumerate_minus_two_classes(surface, coeff_bound);
    report.in_minus_two_list =
        std::find(classes.begin(), classes.end(), m.c1) != classes.end();
    report.assumption =
        "integrality of the supporting curve is asserted by the caller, not verified";
    return report;
}

} // namespace pbc
