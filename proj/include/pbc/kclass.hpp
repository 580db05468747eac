#pragma once

#include <cstddef>
#include <vector>

#include "pbc/divisor.hpp"
#include "pbc/errors.hpp"
#include "pbc/surface.hpp"

namespace pbc {

// Numerical K-theory class of a coherent sheaf of homological dimension
// <= 1: (rank, c1, chi).  The stage of c1 records where in the blowup
// tower the class lives.
struct SheafClass {
    Int rank = 0;
    DivisorClass c1;
    Int chi = 0;

    std::size_t stage() const { return c1.stage(); }

    friend bool operator==(const SheafClass&, const SheafClass&) = default;
};

// dim Ext^1(O_{p_i}, M) for each blowup center being added, in forest
// order.  This is sheaf-level input the numerical class cannot determine.
using LiftDatum = std::vector<Int>;

namespace detail {

inline void check_class(const SurfaceModel& surface, const SheafClass& m) {
    if (m.rank < 0) throw math_error("sheaf class has negative rank");
    if (m.stage() > surface.blowup_count())
        throw math_error("sheaf class has more exceptional coordinates than the surface has blowups");
}

} // namespace detail

// Inverse image: extend c1 by zero on the new exceptional coordinates.
// rank and chi survive because R pi_* pi^* M = M.
inline SheafClass pullback_class(const SurfaceModel& surface, const SheafClass& m) {
    detail::check_class(surface, m);
    SheafClass out = m;
    out.c1.e.resize(surface.blowup_count(), 0);
    return out;
}

// Exceptional inverse image: pi^! twists pi^* by omega_X - pi^* omega_Y,
// so c1 gains rank(M) * e_pi of the morphism being applied.
inline SheafClass shriek_class(const SurfaceModel& surface, const SheafClass& m) {
    SheafClass out = pullback_class(surface, m);
    for (std::size_t i = m.stage(); i < out.c1.e.size(); ++i) out.c1.e[i] += m.rank;
    return out;
}

// Minimal lift: [pi^{*!} M] = pi^*[M] - sum_i m_i [O_{e_i}(-1)].  Each new
// node subtracts its Ext^1 multiplicity from the total-transform
// coordinate; rank and chi are untouched since [O_e(-1)] has rank 0 and
// chi 0.
inline SheafClass minimal_lift_class(const SurfaceModel& surface, const SheafClass& m,
                                     const LiftDatum& datum) {
    SheafClass out = pullback_class(surface, m);
    if (datum.size() != surface.blowup_count() - m.stage())
        throw math_error("lift datum must cover exactly the nodes being added (" +
                         std::to_string(surface.blowup_count() - m.stage()) + " expected, " +
                         std::to_string(datum.size()) + " given)");
    for (std::size_t t = 0; t < datum.size(); ++t) {
        if (datum[t] < 0) throw math_error("negative multiplicity in lift datum");
        out.c1.e[m.stage() + t] -= datum[t];
    }
    return out;
}

// Twist by the line bundle L(D):
//   chi(M(D)) = chi(M) + c1(M).D + rank(M) (D.D - D.K)/2.
inline SheafClass twist_class(const SurfaceModel& surface, const SheafClass& m,
                              const DivisorClass& d) {
    detail::check_class(surface, m);
    if (d.stage() != m.stage())
        throw math_error("twist divisor lives on a different stage than the class");
    const SurfaceModel at = surface.prefix(m.stage());
    const DivisorClass k = canonical_class(at);
    const Int dd = intersect(at, d, d);
    const Int dk = intersect(at, d, k);
    if ((dd - dk) % 2 != 0)
        throw math_error("parity violation: D.D - D.K is even on a smooth surface");
    SheafClass out;
    out.rank = m.rank;
    out.c1 = m.c1 + m.rank * d;
    out.chi = m.chi + intersect(at, m.c1, d) + m.rank * (dd - dk) / 2;
    return out;
}

// Euler characteristic chi(N, M) = hom(N,M) - ext^1(N,M) + ext^2(N,M),
// evaluated on the numerical classes by Riemann-Roch:
//   rank(M) chi(N) + rank(N) chi(M) - chi(O_X) rank(M) rank(N)
//   - c1(M).c1(N) + rank(M) K.c1(N).
inline Int ext_euler(const SurfaceModel& surface, const SheafClass& m, const SheafClass& n) {
    detail::check_class(surface, m);
    detail::check_class(surface, n);
    if (m.stage() != n.stage()) throw math_error("classes live on different stages");
    const SurfaceModel at = surface.prefix(m.stage());
    const DivisorClass k = canonical_class(at);
    return m.rank * n.chi + n.rank * m.chi - surface.chi_structure_sheaf() * m.rank * n.rank -
           intersect(at, m.c1, n.c1) + m.rank * intersect(at, k, n.c1);
}

} // namespace pbc
