#pragma once

#include <string>
#include <vector>

#include "pbc/divisor.hpp"
#include "pbc/errors.hpp"
#include "pbc/surface.hpp"

namespace pbc {

// One contracted rational curve of the blowdown morphism.  class_f is the
// strict transform of the exceptional curve, class_f_dual its dual basis
// partner (f_dual . g = -delta_fg), class_e_f the unique effective
// exceptional divisor with square -1 meeting f.
struct ExceptionalComponent {
    int index = 0; // node id, 0-based
    DivisorClass class_f;
    DivisorClass class_f_dual;
    DivisorClass class_e_f;
};

namespace detail {

inline void require_lattice(const SurfaceModel& surface) {
    if (!surface.lattice_modeled())
        throw math_error("Picard lattice is not modeled for trivial-anticanonical surfaces");
}

} // namespace detail

// f_i = e_i - sum of e_j over the children of node i
inline DivisorClass component_class(const SurfaceModel& surface, std::size_t i) {
    detail::require_lattice(surface);
    const std::size_t n = surface.blowup_count();
    if (i >= n) throw math_error("component index out of range");
    DivisorClass d(n);
    d.e[i] = 1;
    for (int c : surface.forest().children(i)) d.e[static_cast<std::size_t>(c)] -= 1;
    return d;
}

// e_f for the component of node i: the total transform e_i
inline DivisorClass orthonormal_divisor(const SurfaceModel& surface, std::size_t i) {
    detail::require_lattice(surface);
    if (i >= surface.blowup_count()) throw math_error("component index out of range");
    return exceptional_class(surface.blowup_count(), i);
}

// f_dual: the unique class in span{e} with f_dual . f_g = -delta_fg.  The
// coefficient system c_g = delta_fg + sum of c over the children of g is
// triangular for a parent-proximity forest; solving it gives the indicator
// of the ancestor chain of i.  The dual identity is re-checked afterwards
// so a corrupted forest cannot slip through.
inline DivisorClass dual_component(const SurfaceModel& surface, std::size_t i) {
    detail::require_lattice(surface);
    const std::size_t n = surface.blowup_count();
    if (i >= n) throw math_error("component index out of range");
    DivisorClass d(n);
    for (std::size_t g = n; g-- > 0;) {
        Int c = (g == i) ? 1 : 0;
        for (int ch : surface.forest().children(g)) c += d.e[static_cast<std::size_t>(ch)];
        d.e[g] = c;
    }
    for (std::size_t g = 0; g < n; ++g) {
        const Int expected = (g == i) ? -1 : 0;
        if (intersect(surface, d, component_class(surface, g)) != expected)
            throw math_error("dual-basis system is singular: forest data is corrupt");
    }
    return d;
}

inline std::vector<ExceptionalComponent> exceptional_components(const SurfaceModel& surface) {
    detail::require_lattice(surface);
    std::vector<ExceptionalComponent> out;
    out.reserve(surface.blowup_count());
    for (std::size_t i = 0; i < surface.blowup_count(); ++i)
        out.push_back({static_cast<int>(i), component_class(surface, i),
                       dual_component(surface, i), orthonormal_divisor(surface, i)});
    return out;
}

// e_pi = e_1 + ... + e_n = sum over components of e_f
inline DivisorClass e_pi(const SurfaceModel& surface) {
    detail::require_lattice(surface);
    DivisorClass d(surface.blowup_count());
    for (Int& c : d.e) c = 1;
    return d;
}

// Coordinates of an exceptional-span class in the component basis {f_i}:
// m_j = D_j + m_{parent(j)}, walking the forest in order.
inline std::vector<Int> component_coordinates(const SurfaceModel& surface, const DivisorClass& d) {
    detail::require_lattice(surface);
    const std::size_t n = surface.blowup_count();
    if (d.stage() != n) throw math_error("class does not live on the fully blown-up surface");
    if (!d.exceptional_only())
        throw math_error("class is not supported on the exceptional lattice");
    std::vector<Int> m(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        Int acc = d.e[j];
        const ParentRef& p = surface.forest().node(j).parent;
        if (!p.is_base()) acc += m[static_cast<std::size_t>(p.node)];
        m[j] = acc;
    }
    return m;
}

// All effective divisors on the exceptional lattice with square -1.  In the
// orthonormal coordinates e_f such a divisor has exactly one coordinate
// equal to +-1, and effectivity in the component basis rules out the
// negative sign, so the answer is exactly {e_f}.
inline std::vector<DivisorClass> enumerate_minus_one_divisors(const SurfaceModel& surface) {
    detail::require_lattice(surface);
    std::vector<DivisorClass> out;
    out.reserve(surface.blowup_count());
    for (std::size_t i = 0; i < surface.blowup_count(); ++i)
        out.push_back(orthonormal_divisor(surface, i));
    return out;
}

namespace detail {

inline void minus_two_rec(std::vector<DivisorClass>& out, DivisorClass& d, std::size_t pos,
                          Int bound, Int need_sum, Int need_sq) {
    const Int remaining = static_cast<Int>(d.e.size() - pos);
    if (remaining == 0) {
        if (need_sum == 0 && need_sq == 0) out.push_back(d);
        return;
    }
    if (need_sq < 0) return;
    if (need_sum > remaining * bound || need_sum < -remaining * bound) return;
    if (need_sq > remaining * bound * bound) return;
    // Cauchy-Schwarz: sum^2 <= remaining * sum-of-squares
    if (need_sum * need_sum > remaining * need_sq) return;
    for (Int c = -bound; c <= bound; ++c) {
        d.e[pos] = c;
        minus_two_rec(out, d, pos + 1, bound, need_sum - c, need_sq - c * c);
    }
    d.e[pos] = 0;
}

} // namespace detail

// All classes D with coefficients in [-bound, bound], D.D = -2 and
// D.K = 0, in lexicographic order on (s, f, e1..en).  These are numerical
// -2-classes; effectivity of a representative curve is not decided here.
inline std::vector<DivisorClass> enumerate_minus_two_classes(const SurfaceModel& surface, Int bound) {
    detail::require_lattice(surface);
    if (bound < 1) throw math_error("coefficient bound must be >= 1");
    const std::size_t n = surface.blowup_count();
    const Int ss = 2 - 2 * surface.genus();
    std::vector<DivisorClass> out;
    DivisorClass d(n);
    for (Int a = -bound; a <= bound; ++a) {
        for (Int b = -bound; b <= bound; ++b) {
            // With K = -2s + sum e_i:
            //   D.K = -2a*ss - 2b - sum(c_i),  D.D = a^2*ss + 2ab - sum(c_i^2)
            const Int need_sum = -2 * a * ss - 2 * b; // = sum(c_i) forced by D.K = 0
            const Int need_sq = a * a * ss + 2 * a * b + 2; // = sum(c_i^2) forced by D.D = -2
            d.s = a;
            d.f = b;
            detail::minus_two_rec(out, d, 0, bound, need_sum, need_sq);
        }
    }
    return out;
}

} // namespace pbc
