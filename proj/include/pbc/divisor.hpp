#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "pbc/errors.hpp"

namespace pbc {

using Int = std::int64_t;

// Integer divisor class in the Neron-Severi basis {s, f, e1..en} of a
// blown-up ruled surface: s a section class, f the class of a fiber of the
// ruling, e_i the total transform of the i-th exceptional curve.  The
// number of e-coordinates records which stage of the blowup tower the
// class lives on.
struct DivisorClass {
    Int s = 0;
    Int f = 0;
    std::vector<Int> e;

    DivisorClass() = default;
    explicit DivisorClass(std::size_t blowups) : e(blowups, 0) {}
    DivisorClass(Int s_coeff, Int f_coeff, std::vector<Int> e_coeffs)
        : s(s_coeff), f(f_coeff), e(std::move(e_coeffs)) {}

    std::size_t stage() const { return e.size(); }

    bool is_zero() const {
        if (s != 0 || f != 0) return false;
        for (Int c : e)
            if (c != 0) return false;
        return true;
    }

    // true when the class lies in span{e1..en}
    bool exceptional_only() const { return s == 0 && f == 0; }

    DivisorClass& operator+=(const DivisorClass& o) {
        if (e.size() != o.e.size())
            throw math_error("divisor classes live on different stages");
        s += o.s;
        f += o.f;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
        return *this;
    }

    DivisorClass& operator-=(const DivisorClass& o) {
        if (e.size() != o.e.size())
            throw math_error("divisor classes live on different stages");
        s -= o.s;
        f -= o.f;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
        return *this;
    }

    DivisorClass& operator*=(Int k) {
        s *= k;
        f *= k;
        for (Int& c : e) c *= k;
        return *this;
    }

    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
    // lexicographic on the coefficient tuple (s, f, e1, ..., en)
    friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;
};

inline DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
inline DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
inline DivisorClass operator-(DivisorClass a) { return a *= -1; }
inline DivisorClass operator*(Int k, DivisorClass a) { return a *= k; }

inline DivisorClass section_class(std::size_t blowups) {
    DivisorClass d(blowups);
    d.s = 1;
    return d;
}

inline DivisorClass fiber_class(std::size_t blowups) {
    DivisorClass d(blowups);
    d.f = 1;
    return d;
}

// e_{i+1} in 1-based display terms
inline DivisorClass exceptional_class(std::size_t blowups, std::size_t i) {
    if (i >= blowups) throw math_error("exceptional index out of range");
    DivisorClass d(blowups);
    d.e[i] = 1;
    return d;
}

namespace detail {

inline void append_term(std::string& out, Int c, const std::string& sym) {
    if (c == 0) return;
    if (out.empty()) {
        if (c == -1)
            out += "-";
        else if (c != 1)
            out += std::to_string(c);
    } else {
        out += (c < 0) ? " - " : " + ";
        Int a = c < 0 ? -c : c;
        if (a != 1) out += std::to_string(a);
    }
    out += sym;
}

} // namespace detail

inline std::string to_string(const DivisorClass& d) {
    std::string out;
    detail::append_term(out, d.s, "s");
    detail::append_term(out, d.f, "f");
    for (std::size_t i = 0; i < d.e.size(); ++i)
        detail::append_term(out, d.e[i], "e" + std::to_string(i + 1));
    return out.empty() ? "0" : out;
}

} // namespace pbc
