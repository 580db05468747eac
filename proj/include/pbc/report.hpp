#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pbc/config.hpp"
#include "pbc/exceptional.hpp"
#include "pbc/pbc.hpp"

namespace pbc {

namespace detail {

inline Json divisor_json(const DivisorClass& d) {
    Json j = divisor_to_json(d);
    j["text"] = to_string(d);
    return j;
}

inline Json class_json(const SheafClass& c) {
    Json j;
    j["rank"] = c.rank;
    j["c1"] = divisor_json(c.c1);
    j["chi"] = c.chi;
    return j;
}

inline Json jets_json(const JetProfile& p) {
    Json arr = Json::array();
    for (const JetEntry& e : p.entries) {
        Json j;
        j["site"] = e.site.display();
        j["length"] = e.length;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline Json surface_json(const SurfaceModel& s) {
    Json j;
    j["base_case"] = to_string(s.base_case());
    j["genus"] = s.genus();
    if (s.subcase()) j["subcase"] = to_string(*s.subcase());
    j["blowups"] = s.blowup_count();
    return j;
}

inline const SheafSpec& find_sheaf(const Config& cfg, const std::string& name) {
    auto it = cfg.sheaves.find(name);
    if (it == cfg.sheaves.end()) throw config_error("no sheaf named '" + name + "' in the config");
    return it->second;
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

// "2s + 3f - e1 + K" over the stage-n lattice
inline DivisorClass parse_divisor_expr(const std::string& text, const SurfaceModel& surface,
                                       std::size_t stage) {
    DivisorClass out(stage);
    const DivisorClass k = canonical_class(surface.prefix(stage));
    std::string compact;
    for (char c : text)
        if (c != ' ' && c != '\t') compact += c;
    if (compact.empty()) throw config_error("empty divisor expression");
    if (compact == "0") return out;
    std::size_t pos = 0;
    while (pos < compact.size()) {
        Int sign = 1;
        if (compact[pos] == '+' || compact[pos] == '-') {
            sign = compact[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw config_error("divisor expression: expected '+' or '-' at '" +
                               compact.substr(pos) + "'");
        }
        Int coeff = 1;
        std::size_t digits = pos;
        while (digits < compact.size() && std::isdigit(static_cast<unsigned char>(compact[digits])))
            ++digits;
        if (digits > pos) {
            coeff = std::stoll(compact.substr(pos, digits - pos));
            pos = digits;
        }
        if (pos >= compact.size())
            throw config_error("divisor expression: dangling coefficient");
        const char sym = compact[pos];
        ++pos;
        if (sym == 's') {
            out.s += sign * coeff;
        } else if (sym == 'f') {
            out.f += sign * coeff;
        } else if (sym == 'K') {
            out += (sign * coeff) * k;
        } else if (sym == 'e') {
            std::size_t idx_end = pos;
            while (idx_end < compact.size() &&
                   std::isdigit(static_cast<unsigned char>(compact[idx_end])))
                ++idx_end;
            if (idx_end == pos) throw config_error("divisor expression: 'e' needs an index");
            const long long idx = std::stoll(compact.substr(pos, idx_end - pos));
            if (idx < 1 || idx > static_cast<long long>(stage))
                throw config_error("divisor expression: e" + compact.substr(pos, idx_end - pos) +
                                   " is out of range at this stage");
            out.e[static_cast<std::size_t>(idx - 1)] += sign * coeff;
            pos = idx_end;
        } else {
            throw config_error(std::string("divisor expression: unknown symbol '") + sym + "'");
        }
    }
    return out;
}

inline std::size_t parse_component_name(const std::string& text, const SurfaceModel& surface) {
    if (text.size() < 2 || text[0] != 'f')
        throw config_error("expected a component name like 'f1', got '" + text + "'");
    const std::string idx = text.substr(1);
    for (char c : idx)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw config_error("expected a component name like 'f1', got '" + text + "'");
    const long long v = std::stoll(idx);
    if (v < 1 || v > static_cast<long long>(surface.blowup_count()))
        throw config_error("component " + text + " is out of range");
    return static_cast<std::size_t>(v - 1);
}

} // namespace detail

inline Json lattice_report(const Config& cfg, std::optional<Int> bound_override = {}) {
    const SurfaceModel& surface = cfg.surface;
    Json j;
    j["command"] = "lattice";
    j["surface"] = detail::surface_json(surface);
    const BirationalTypeReport type = classify_birational_type(surface);
    Json cls;
    cls["birational_class"] = type.birational_class;
    cls["notes"] = type.notes;
    j["classification"] = std::move(cls);
    if (!surface.lattice_modeled()) {
        j["canonical_class"] = detail::divisor_json(canonical_class(surface));
        j["anticanonical_class"] = detail::divisor_json(anticanonical_class(surface));
        j["note"] = "Picard lattice is not modeled for trivial-anticanonical surfaces";
        j["summary"] = to_string(surface.base_case()) + ": classification tag only";
        return j;
    }
    const std::size_t n = surface.blowup_count();
    std::vector<std::string> basis = {"s", "f"};
    for (std::size_t i = 0; i < n; ++i) basis.push_back("e" + std::to_string(i + 1));
    std::vector<DivisorClass> basis_classes = {section_class(n), fiber_class(n)};
    for (std::size_t i = 0; i < n; ++i) basis_classes.push_back(exceptional_class(n, i));
    Json gram = Json::array();
    for (const DivisorClass& a : basis_classes) {
        Json row = Json::array();
        for (const DivisorClass& b : basis_classes) row.push_back(intersect(surface, a, b));
        gram.push_back(std::move(row));
    }
    Json matrix;
    matrix["basis"] = basis;
    matrix["gram"] = std::move(gram);
    j["intersection_matrix"] = std::move(matrix);
    j["canonical_class"] = detail::divisor_json(canonical_class(surface));
    const AnticanonicalState anticanonical = anticanonical_state(surface);
    j["anticanonical_class"] = detail::divisor_json(anticanonical.divisor_class);
    j["anticanonical_multiplicities"] = anticanonical.multiplicities;
    j["h1_anticanonical"] = h1_anticanonical(surface);
    Json comps = Json::array();
    for (const ExceptionalComponent& c : exceptional_components(surface)) {
        Json e;
        e["name"] = "f" + std::to_string(c.index + 1);
        e["center"] = surface.forest().node(static_cast<std::size_t>(c.index)).parent.display();
        e["f"] = detail::divisor_json(c.class_f);
        e["self_intersection"] = intersect(surface, c.class_f, c.class_f);
        e["f_dual"] = detail::divisor_json(c.class_f_dual);
        e["e_f"] = detail::divisor_json(c.class_e_f);
        comps.push_back(std::move(e));
    }
    j["components"] = std::move(comps);
    j["e_pi"] = detail::divisor_json(e_pi(surface));
    Json ones = Json::array();
    for (const DivisorClass& d : enumerate_minus_one_divisors(surface))
        ones.push_back(detail::divisor_json(d));
    j["minus_one_divisors"] = std::move(ones);
    std::optional<Int> bound = bound_override ? bound_override : cfg.coeff_bound;
    if (bound) {
        Json block;
        block["coeff_bound"] = *bound;
        Json classes = Json::array();
        for (const DivisorClass& d : enumerate_minus_two_classes(surface, *bound))
            classes.push_back(detail::divisor_json(d));
        block["classes"] = std::move(classes);
        j["minus_two_classes"] = std::move(block);
    }
    std::ostringstream summary;
    summary << to_string(surface.base_case()) << " genus " << surface.genus() << ", " << n
            << " blowups: K = " << to_string(canonical_class(surface)) << "; " << n
            << " exceptional components; " << n << " (-1)-divisors";
    if (bound)
        summary << "; " << j["minus_two_classes"]["classes"].size()
                << " (-2)-classes within coefficient bound " << *bound;
    j["summary"] = summary.str();
    return j;
}

inline Json transform_report(const Config& cfg, const std::string& sheaf_name,
                             const std::string& ops_chain) {
    const SurfaceModel& surface = cfg.surface;
    const SheafSpec& spec = detail::find_sheaf(cfg, sheaf_name);
    const std::size_t n = surface.blowup_count();

    Json j;
    j["command"] = "transform";
    j["surface"] = detail::surface_json(surface);
    j["sheaf"] = sheaf_name;
    j["initial"] = detail::class_json(spec.cls);

    std::vector<std::string> raw;
    std::string piece;
    for (char c : ops_chain) {
        if (c == ';' || c == ',') {
            raw.push_back(piece);
            piece.clear();
        } else {
            piece += c;
        }
    }
    raw.push_back(piece);

    SheafClass cur = spec.cls;
    const std::size_t base_stage = cur.stage();
    std::optional<SheafClass> base_before_lift; // set while a minimal lift is live
    Json steps = Json::array();
    bool any = false;
    for (const std::string& r : raw) {
        const std::string op_text = detail::trim(r);
        if (op_text.empty()) continue;
        any = true;
        std::string op = op_text, arg;
        if (const auto space = op_text.find(' '); space != std::string::npos) {
            op = op_text.substr(0, space);
            arg = detail::trim(op_text.substr(space + 1));
        }
        Json step;
        step["op"] = op;
        if (op == "pullback" || op == "shriek" || op == "minimal-lift") {
            if (!arg.empty()) throw config_error("op '" + op + "' takes no argument");
            if (cur.stage() == n)
                throw config_error("op '" + op + "': the class already lives on the full surface");
            base_before_lift.reset();
            if (op == "pullback") {
                cur = pullback_class(surface, cur);
            } else if (op == "shriek") {
                cur = shriek_class(surface, cur);
            } else {
                if (!spec.lift)
                    throw config_error("sheaf '" + sheaf_name +
                                       "' has no lift datum; minimal-lift needs one");
                if (cur.stage() != base_stage)
                    throw config_error("minimal-lift: the declared lift datum starts at stage " +
                                       std::to_string(base_stage));
                base_before_lift = cur;
                cur = minimal_lift_class(surface, cur, *spec.lift);
            }
        } else if (op == "twist") {
            if (arg.empty()) throw config_error("op 'twist' needs a divisor expression");
            const DivisorClass d = detail::parse_divisor_expr(arg, surface, cur.stage());
            step["divisor"] = detail::divisor_json(d);
            cur = twist_class(surface, cur, d);
            base_before_lift.reset();
        } else if (op == "pseudo-twist-up" || op == "pseudo-twist-down") {
            if (arg.empty()) throw config_error("op '" + op + "' needs a component name");
            if (!base_before_lift)
                throw config_error("op '" + op + "' must follow a minimal-lift step");
            const std::size_t comp = detail::parse_component_name(arg, surface);
            const PseudoTwist t = op == "pseudo-twist-up"
                                      ? pseudo_twist_up(surface, *base_before_lift, cur, comp)
                                      : pseudo_twist_down(surface, *base_before_lift, cur, comp);
            step["component"] = arg;
            step["r"] = t.r;
            cur = t.result;
            base_before_lift.reset();
        } else {
            throw config_error("unknown op '" + op + "'");
        }
        step["class"] = detail::class_json(cur);
        steps.push_back(std::move(step));
    }
    if (!any) throw config_error("empty ops chain");
    j["steps"] = std::move(steps);
    j["final"] = detail::class_json(cur);
    std::ostringstream summary;
    summary << sheaf_name << ": " << j["steps"].size() << " steps; final class (rank " << cur.rank
            << ", c1 = " << to_string(cur.c1) << ", chi = " << cur.chi << ")";
    j["summary"] = summary.str();
    return j;
}

inline Json resolve_report(const Config& cfg, const std::string& sheaf_name) {
    const SheafSpec& spec = detail::find_sheaf(cfg, sheaf_name);
    if (!spec.jets) throw config_error("sheaf '" + sheaf_name + "' has no jet profile");
    SheafClass cls = spec.cls;
    if (cls.stage() < cfg.surface.blowup_count())
        cls = pullback_class(cfg.surface, cls); // classes declared downstairs extend by zero
    const ResolutionTrace trace = resolve_disjoint(cfg.surface, cls, *spec.jets);
    Json j;
    j["command"] = "resolve";
    j["surface"] = detail::surface_json(cfg.surface);
    j["sheaf"] = sheaf_name;
    j["initial"] = detail::class_json(cls);
    j["initial_jets"] = detail::jets_json(*spec.jets);
    Json steps = Json::array();
    for (const ResolutionStep& s : trace.steps) {
        Json step;
        step["blowup"] = "e" + std::to_string(s.node + 1);
        step["center"] = s.center.display();
        step["pseudo_twist"] = s.direction;
        step["r"] = s.r;
        step["lift"] = detail::class_json(s.lift);
        step["jets"] = detail::jets_json(s.jets);
        steps.push_back(std::move(step));
    }
    j["steps"] = std::move(steps);
    Json final_block;
    final_block["surface"] = detail::surface_json(trace.final_surface);
    final_block["lift"] = detail::class_json(trace.final_lift);
    final_block["c1_dot_anticanonical"] =
        intersect(trace.final_surface, trace.final_lift.c1, anticanonical_class(trace.final_surface));
    final_block["disjoint"] = final_block["c1_dot_anticanonical"] == 0;
    j["final"] = std::move(final_block);
    std::ostringstream summary;
    summary << sheaf_name << ": disjoint lift after " << trace.steps.size()
            << " blowups; final lift c1 = " << to_string(trace.final_lift.c1) << "; c1.(-K) = 0";
    j["summary"] = summary.str();
    return j;
}

inline Json rigidity_report(const Config& cfg, const std::string& sheaf_name,
                            std::optional<Int> bound_override = {}) {
    const SurfaceModel& surface = cfg.surface;
    const SheafSpec& spec = detail::find_sheaf(cfg, sheaf_name);
    SheafClass cls = spec.cls;
    if (cls.stage() < surface.blowup_count()) cls = pullback_class(surface, cls);
    RestrictionData restr = RestrictionData::disjoint();
    std::string restr_kind = "disjoint";
    if (spec.restriction) {
        restr = *spec.restriction;
        switch (restr.kind) {
            case RestrictionData::Kind::Disjoint: restr_kind = "disjoint"; break;
            case RestrictionData::Kind::TransverseJets: restr_kind = "transverse"; break;
            case RestrictionData::Kind::Explicit: restr_kind = "explicit"; break;
        }
    } else if (spec.jets) {
        restr = RestrictionData::transverse(*spec.jets);
        restr_kind = "transverse";
    }
    const Int index = index_of_rigidity(surface, cls, restr);
    const Int dim_end = spec.dim_end.value_or(1);
    Json j;
    j["command"] = "rigidity";
    j["surface"] = detail::surface_json(surface);
    j["sheaf"] = sheaf_name;
    j["class"] = detail::class_json(cls);
    j["restriction"] = restr_kind;
    j["chi_alpha"] = index;
    j["index_of_rigidity"] = index;
    j["dim_end"] = dim_end;
    j["leaf_tangent_dim"] = leaf_tangent_dim(surface, cls, restr, dim_end);
    std::ostringstream summary;
    summary << sheaf_name << ": chi_alpha = " << index;
    if (restr.kind == RestrictionData::Kind::Disjoint && cls.rank == 0) {
        const Int bound = bound_override ? *bound_override : cfg.coeff_bound.value_or(5);
        if (intersect(surface, cls.c1, canonical_class(surface)) != 0) {
            Json candidate;
            candidate["applicable"] = false;
            candidate["reason"] = "c1.K = " +
                                  std::to_string(intersect(surface, cls.c1, canonical_class(surface))) +
                                  " != 0: the class cannot be disjoint from the anticanonical curve";
            j["rigid_candidate"] = std::move(candidate);
            summary << "; cannot be disjoint (c1.K != 0)";
        } else {
            const RigidityReport rep = is_rigid_candidate(surface, cls, restr, bound);
            Json candidate;
            candidate["applicable"] = true;
            candidate["numeric_rigid"] = rep.numeric_rigid;
            candidate["c1_self_intersection"] = rep.c1_self_intersection;
            candidate["c1_dot_canonical"] = rep.c1_dot_canonical;
            candidate["in_minus_two_list"] = rep.in_minus_two_list;
            candidate["coeff_bound"] = rep.coeff_bound;
            candidate["assumption"] = rep.assumption;
            j["rigid_candidate"] = std::move(candidate);
            summary << (rep.numeric_rigid ? "; numerically rigid (support integrality assumed)"
                                          : "; not numerically rigid");
        }
    }
    j["summary"] = summary.str();
    return j;
}

inline Json exceptional_report(const Config& cfg) {
    const SurfaceModel& surface = cfg.surface;
    detail::require_lattice(surface);
    const std::size_t n = surface.blowup_count();
    Json j;
    j["command"] = "exceptional";
    j["surface"] = detail::surface_json(surface);
    Json comps = Json::array();
    for (const ExceptionalComponent& c : exceptional_components(surface)) {
        Json e;
        e["name"] = "f" + std::to_string(c.index + 1);
        e["f"] = detail::divisor_json(c.class_f);
        e["projective_c1"] = detail::divisor_json(c.class_f_dual);
        e["projective_multiplicities"] =
            composition_multiplicities(surface, projective_class(surface, static_cast<std::size_t>(c.index)));
        e["e_f"] = detail::divisor_json(c.class_e_f);
        comps.push_back(std::move(e));
    }
    j["components"] = std::move(comps);
    Json lattice = Json::array();
    for (const SubsheafEntry& s : subsheaf_lattice(surface)) {
        Json entry;
        Json subset = Json::array();
        for (std::size_t i : s.subset) subset.push_back("f" + std::to_string(i + 1));
        entry["subset"] = std::move(subset);
        entry["class"] = detail::divisor_json(s.cls);
        entry["pairing_check"] = intersect(surface, s.cls, e_pi(surface) - s.cls);
        lattice.push_back(std::move(entry));
    }
    j["subsheaf_lattice"] = std::move(lattice);
    Int chains = 1;
    for (std::size_t i = 2; i <= n; ++i) chains *= static_cast<Int>(i);
    j["maximal_chain_count"] = chains;
    if (n <= 4) {
        Json all = Json::array();
        std::vector<std::size_t> ordering(n);
        for (std::size_t i = 0; i < n; ++i) ordering[i] = i;
        do {
            const MaximalChain chain = chain_for_ordering(surface, ordering);
            Json c;
            Json names = Json::array();
            for (std::size_t f : ordering) names.push_back("f" + std::to_string(f + 1));
            c["ordering"] = std::move(names);
            Json subq = Json::array();
            for (const ChainStep& s : chain.steps) subq.push_back(to_string(s.subquotient_c1));
            c["subquotient_c1"] = std::move(subq);
            all.push_back(std::move(c));
        } while (std::next_permutation(ordering.begin(), ordering.end()));
        j["maximal_chains"] = std::move(all);
    }
    Json hom = Json::array();
    for (std::size_t f = 0; f < n; ++f) {
        Json row = Json::array();
        for (std::size_t g = 0; g < n; ++g) row.push_back(hom_length(surface, f, g));
        hom.push_back(std::move(row));
    }
    j["hom_length"] = std::move(hom);
    Json degrees = Json::array();
    for (std::size_t f = 0; f < n; ++f) degrees.push_back(jet_degree(surface, f));
    j["jet_degrees"] = std::move(degrees);
    std::ostringstream summary;
    summary << n << " exceptional components: " << (std::size_t{1} << n)
            << " subsheaf classes, " << chains << " maximal chains";
    j["summary"] = summary.str();
    return j;
}

inline std::string render_report(const Json& j) { return j.dump(2) + "\n"; }

} // namespace pbc
