#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbc/divisor.hpp"
#include "pbc/errors.hpp"
#include "pbc/forest.hpp"

namespace pbc {

// Classification of the minimal Poisson surface under a forest of blowups.
enum class BaseCase { F2Rational, Genus1Product, StandardRuled, TrivialCanonical };

// Kodaira symbol of the anticanonical curve in the rational (F2) case.
enum class KodairaSubcase { I0, I1, II, I2, III };

inline std::string to_string(BaseCase b) {
    switch (b) {
        case BaseCase::F2Rational: return "F2_RATIONAL";
        case BaseCase::Genus1Product: return "GENUS1_PRODUCT";
        case BaseCase::StandardRuled: return "STANDARD_RULED";
        case BaseCase::TrivialCanonical: return "TRIVIAL_CANONICAL";
    }
    return "?";
}

inline std::string to_string(KodairaSubcase k) {
    switch (k) {
        case KodairaSubcase::I0: return "I0";
        case KodairaSubcase::I1: return "I1";
        case KodairaSubcase::II: return "II";
        case KodairaSubcase::I2: return "I2";
        case KodairaSubcase::III: return "III";
    }
    return "?";
}

inline std::optional<BaseCase> base_case_from_string(const std::string& s) {
    if (s == "F2_RATIONAL") return BaseCase::F2Rational;
    if (s == "GENUS1_PRODUCT") return BaseCase::Genus1Product;
    if (s == "STANDARD_RULED") return BaseCase::StandardRuled;
    if (s == "TRIVIAL_CANONICAL") return BaseCase::TrivialCanonical;
    return std::nullopt;
}

inline std::optional<KodairaSubcase> subcase_from_string(const std::string& s) {
    if (s == "I0") return KodairaSubcase::I0;
    if (s == "I1") return KodairaSubcase::I1;
    if (s == "II") return KodairaSubcase::II;
    if (s == "I2") return KodairaSubcase::I2;
    if (s == "III") return KodairaSubcase::III;
    return std::nullopt;
}

class SurfaceModel;
inline bool validate_poisson_blowup(const SurfaceModel& surface, const BlowupNode& node);

// A standard Poisson surface together with a forest of Poisson blowups.
// Immutable; every blowup is checked to be Poisson-legal at construction.
class SurfaceModel {
public:
    SurfaceModel(BaseCase base, Int genus, BlowupForest forest = {},
                 std::optional<KodairaSubcase> subcase = {},
                 std::optional<Int> chi_trivial = {})
        : base_(base), genus_(genus), forest_(std::move(forest)),
          subcase_(subcase), chi_trivial_(chi_trivial) {
        if (genus_ < 0) throw config_error("surface.genus: must be nonnegative");
        if (base_ == BaseCase::F2Rational && genus_ != 0)
            throw config_error("surface: F2_RATIONAL forces genus 0");
        if (base_ == BaseCase::Genus1Product && genus_ != 1)
            throw config_error("surface: GENUS1_PRODUCT forces genus 1");
        if (subcase_ && base_ != BaseCase::F2Rational)
            throw config_error("surface.subcase: Kodaira symbols apply to the F2_RATIONAL case only");
        if (chi_trivial_ && base_ != BaseCase::TrivialCanonical)
            throw config_error("surface.chi_structure_sheaf: only meaningful for TRIVIAL_CANONICAL");
        if (base_ == BaseCase::TrivialCanonical && !forest_.empty())
            throw config_error("surface: a trivial-anticanonical surface admits no Poisson blowups");
        for (std::size_t i = 0; i < forest_.size(); ++i)
            if (!legal(forest_.node(i)))
                throw poisson_violation("blowups[" + std::to_string(i + 1) +
                                        "]: center is not on the anticanonical curve");
    }

    BaseCase base_case() const { return base_; }
    Int genus() const { return genus_; }
    const BlowupForest& forest() const { return forest_; }
    std::optional<KodairaSubcase> subcase() const { return subcase_; }
    std::size_t blowup_count() const { return forest_.size(); }

    bool lattice_modeled() const { return base_ != BaseCase::TrivialCanonical; }

    Int chi_structure_sheaf() const {
        if (base_ == BaseCase::TrivialCanonical) {
            if (!chi_trivial_)
                throw math_error("chi(O) was not specified for the trivial-anticanonical surface");
            return *chi_trivial_;
        }
        return 1 - genus_;
    }

    std::optional<Int> chi_trivial() const { return chi_trivial_; }

    SurfaceModel prefix(std::size_t k) const {
        return SurfaceModel(base_, genus_, forest_.prefix(k), subcase_, chi_trivial_);
    }

    SurfaceModel with_poisson_blowup(BlowupNode node) const {
        if (base_ == BaseCase::TrivialCanonical)
            throw poisson_violation("no Poisson blowups on a surface with trivial anticanonical bundle");
        if (!validate_poisson_blowup(*this, node))
            throw poisson_violation("blowup center is not on the anticanonical curve");
        return SurfaceModel(base_, genus_, forest_.with_node(std::move(node)), subcase_, chi_trivial_);
    }

    friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;

private:
    BaseCase base_;
    Int genus_;
    BlowupForest forest_;
    std::optional<KodairaSubcase> subcase_;
    std::optional<Int> chi_trivial_;

    bool legal(const BlowupNode& n) const {
        if (!n.on_anticanonical || n.multiplicity < 1) return false;
        if (!n.parent.is_base()) {
            const BlowupNode& p = forest_.node(static_cast<std::size_t>(n.parent.node));
            if (!p.on_anticanonical || p.multiplicity < 1) return false;
        }
        return true;
    }
};

// Whether `node` may be appended as a Poisson blowup: the center must lie
// on the anticanonical curve with multiplicity >= 1, and for an infinitely
// near point the parent must still carry multiplicity there.  Structural
// defects (bad parent index, multiplicity growing down the forest) throw.
inline bool validate_poisson_blowup(const SurfaceModel& surface, const BlowupNode& node) {
    // run the structural checks as if the node were appended
    surface.forest().with_node(node);
    if (!node.on_anticanonical || node.multiplicity < 1) return false;
    if (!node.parent.is_base()) {
        const BlowupNode& p = surface.forest().node(static_cast<std::size_t>(node.parent.node));
        if (!p.on_anticanonical || p.multiplicity < 1) return false;
    }
    return true;
}

namespace detail {

inline void check_same_stage(const SurfaceModel& surface, const DivisorClass& a, const DivisorClass& b) {
    if (a.stage() != b.stage())
        throw math_error("divisor classes live on different stages");
    if (a.stage() > surface.blowup_count())
        throw math_error("divisor class has more exceptional coordinates than the surface has blowups");
}

} // namespace detail

// The symmetric bilinear intersection form: s.s = 2-2g, s.f = 1, f.f = 0,
// e_i.e_j = -delta_ij, and the s,f block is orthogonal to the e block.
inline Int intersect(const SurfaceModel& surface, const DivisorClass& a, const DivisorClass& b) {
    if (!surface.lattice_modeled())
        throw math_error("Picard lattice is not modeled for trivial-anticanonical surfaces");
    detail::check_same_stage(surface, a, b);
    Int out = a.s * b.s * (2 - 2 * surface.genus()) + a.s * b.f + a.f * b.s;
    for (std::size_t i = 0; i < a.e.size(); ++i) out -= a.e[i] * b.e[i];
    return out;
}

// K_X = -2s + e_1 + ... + e_n; the zero class on a trivial-anticanonical
// surface.
inline DivisorClass canonical_class(const SurfaceModel& surface) {
    if (!surface.lattice_modeled()) return DivisorClass(0);
    DivisorClass k(surface.blowup_count());
    k.s = -2;
    for (Int& c : k.e) c = 1;
    return k;
}

inline DivisorClass anticanonical_class(const SurfaceModel& surface) {
    return -canonical_class(surface);
}

// The anticanonical curve as the engine sees it: its class (always -K)
// and the user-asserted multiplicity at each blowup center.
struct AnticanonicalState {
    DivisorClass divisor_class;
    std::vector<Int> multiplicities;
};

inline AnticanonicalState anticanonical_state(const SurfaceModel& surface) {
    AnticanonicalState st;
    st.divisor_class = anticanonical_class(surface);
    st.multiplicities.reserve(surface.blowup_count());
    for (const BlowupNode& n : surface.forest().nodes())
        st.multiplicities.push_back(n.multiplicity);
    return st;
}

// h^1(O_{C_alpha}) = g + 1 for the ruled cases
inline Int h1_anticanonical(const SurfaceModel& surface) {
    if (surface.base_case() == BaseCase::TrivialCanonical)
        throw math_error("h1 of the anticanonical curve is undefined when the anticanonical bundle is trivial");
    return surface.genus() + 1;
}

struct BirationalTypeReport {
    BaseCase base_case;
    Int genus = 0;
    std::optional<KodairaSubcase> subcase;
    std::string birational_class;
    std::vector<std::string> notes;
};

inline BirationalTypeReport classify_birational_type(const SurfaceModel& surface) {
    BirationalTypeReport r;
    r.base_case = surface.base_case();
    r.genus = surface.genus();
    r.subcase = surface.subcase();
    switch (surface.base_case()) {
        case BaseCase::F2Rational: {
            r.birational_class = "rational";
            if (r.subcase) {
                switch (*r.subcase) {
                    case KodairaSubcase::I0:
                        r.birational_class += ", smooth anticanonical";
                        break;
                    case KodairaSubcase::I1:
                        r.birational_class += ", integral nodal anticanonical; equivalent to I2";
                        break;
                    case KodairaSubcase::II:
                        r.birational_class += ", integral cuspidal anticanonical; equivalent to III";
                        break;
                    case KodairaSubcase::I2:
                        r.birational_class += ", two components meeting in a reduced scheme; equivalent to I1";
                        break;
                    case KodairaSubcase::III:
                        r.birational_class += ", two components meeting in a nonreduced scheme; equivalent to II";
                        break;
                }
            }
            r.notes.push_back("Poisson birational maps need not preserve the ruling");
            break;
        }
        case BaseCase::Genus1Product:
            r.birational_class = "genus-1 product C x P1; ruling unique; only elementary transformations";
            r.notes.push_back("anticanonical curve is a union of two disjoint sections");
            break;
        case BaseCase::StandardRuled:
            if (surface.genus() >= 1) {
                r.birational_class = "ruling unique; only elementary transformations";
            } else {
                r.birational_class = "rational, nonreduced anticanonical 2C0";
                r.notes.push_back("Poisson birational maps need not preserve the ruling");
            }
            r.notes.push_back("anticanonical curve is twice the negative section");
            break;
        case BaseCase::TrivialCanonical:
            r.birational_class = "no nontrivial Poisson birational maps";
            break;
    }
    return r;
}

} // namespace pbc
