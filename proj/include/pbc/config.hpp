#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbc/errors.hpp"
#include "pbc/jets.hpp"
#include "pbc/kclass.hpp"
#include "pbc/rigidity.hpp"
#include "pbc/surface.hpp"

namespace pbc {

using Json = nlohmann::ordered_json;

// A named sheaf class plus whatever sheaf-level data the engine cannot
// derive: the Ext^1 lift multiplicities, a jet profile, restriction data.
struct SheafSpec {
    SheafClass cls;
    std::optional<LiftDatum> lift;
    std::optional<JetProfile> jets;
    std::optional<RestrictionData> restriction;
    std::optional<Int> dim_end;
};

struct Config {
    SurfaceModel surface;
    std::map<std::string, SheafSpec> sheaves;
    std::optional<Int> coeff_bound;
};

namespace detail {

inline const Json& require_field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw config_error(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw config_error(path + "." + key + ": missing");
    return *it;
}

inline Int as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw config_error(path + ": expected an integer");
    return j.get<Int>();
}

inline std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw config_error(path + ": expected a string");
    return j.get<std::string>();
}

inline bool as_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw config_error(path + ": expected a boolean");
    return j.get<bool>();
}

inline void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                           const std::string& path) {
    if (!j.is_object()) throw config_error(path + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) known = true;
        if (!known) throw config_error(path + "." + it.key() + ": unknown field");
    }
}

// "base:<label>" or "node:<k>" with k 1-based
inline std::pair<bool, std::string> split_site_ref(const std::string& s, const std::string& path) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw config_error(path + ": expected \"base:<label>\" or \"node:<index>\"");
    const std::string kind = s.substr(0, colon);
    const std::string rest = s.substr(colon + 1);
    if (kind != "base" && kind != "node")
        throw config_error(path + ": expected \"base:<label>\" or \"node:<index>\"");
    if (rest.empty()) throw config_error(path + ": empty site reference");
    return {kind == "base", rest};
}

inline int parse_node_index(const std::string& text, std::size_t count, const std::string& path) {
    std::size_t consumed = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &consumed);
    } catch (const std::exception&) {
        throw config_error(path + ": '" + text + "' is not a node index");
    }
    if (consumed != text.size()) throw config_error(path + ": '" + text + "' is not a node index");
    if (v < 1 || v > static_cast<long long>(count))
        throw config_error(path + ": node index " + text + " out of range (" +
                           std::to_string(count) + " blowups declared)");
    return static_cast<int>(v - 1);
}

inline DivisorClass parse_divisor(const Json& j, std::size_t max_stage, const std::string& path) {
    reject_unknown(j, {"s", "f", "e"}, path);
    DivisorClass d;
    d.s = as_int(require_field(j, "s", path), path + ".s");
    d.f = as_int(require_field(j, "f", path), path + ".f");
    const Json& e = require_field(j, "e", path);
    if (!e.is_array()) throw config_error(path + ".e: expected an array of integers");
    if (e.size() > max_stage)
        throw config_error(path + ".e: " + std::to_string(e.size()) +
                           " coordinates but only " + std::to_string(max_stage) +
                           " blowups declared");
    for (std::size_t i = 0; i < e.size(); ++i)
        d.e.push_back(as_int(e[i], path + ".e[" + std::to_string(i) + "]"));
    return d;
}

} // namespace detail

inline Config parse_config(const Json& j) {
    detail::reject_unknown(j, {"surface", "blowups", "sheaves", "options"}, "config");

    const Json& js = detail::require_field(j, "surface", "config");
    detail::reject_unknown(js, {"base_case", "genus", "subcase", "chi_structure_sheaf"},
                           "surface");
    const std::string base_str =
        detail::as_string(detail::require_field(js, "base_case", "surface"), "surface.base_case");
    const auto base = base_case_from_string(base_str);
    if (!base) throw config_error("surface.base_case: unknown value '" + base_str + "'");
    const Int genus = detail::as_int(detail::require_field(js, "genus", "surface"), "surface.genus");
    std::optional<KodairaSubcase> subcase;
    if (js.contains("subcase")) {
        const std::string sub = detail::as_string(js["subcase"], "surface.subcase");
        subcase = subcase_from_string(sub);
        if (!subcase) throw config_error("surface.subcase: unknown Kodaira symbol '" + sub + "'");
    }
    std::optional<Int> chi_trivial;
    if (js.contains("chi_structure_sheaf"))
        chi_trivial = detail::as_int(js["chi_structure_sheaf"], "surface.chi_structure_sheaf");

    std::vector<BlowupNode> nodes;
    if (j.contains("blowups")) {
        const Json& jb = j["blowups"];
        if (!jb.is_array()) throw config_error("blowups: expected an array");
        for (std::size_t i = 0; i < jb.size(); ++i) {
            const std::string path = "blowups[" + std::to_string(i + 1) + "]";
            const Json& node = jb[i];
            detail::reject_unknown(node, {"parent", "on_anticanonical", "multiplicity"}, path);
            const std::string ref = detail::as_string(detail::require_field(node, "parent", path),
                                                      path + ".parent");
            auto [is_base, rest] = detail::split_site_ref(ref, path + ".parent");
            ParentRef parent = is_base
                                   ? ParentRef::base(rest)
                                   : ParentRef::at_node(detail::parse_node_index(rest, i, path + ".parent"));
            bool on = true;
            if (node.contains("on_anticanonical"))
                on = detail::as_bool(node["on_anticanonical"], path + ".on_anticanonical");
            Int mult = on ? 1 : 0;
            if (node.contains("multiplicity"))
                mult = detail::as_int(node["multiplicity"], path + ".multiplicity");
            nodes.push_back({std::move(parent), on, mult});
        }
    }

    Config cfg{SurfaceModel(*base, genus, BlowupForest(std::move(nodes)), subcase, chi_trivial),
               {},
               {}};
    const std::size_t n = cfg.surface.blowup_count();

    if (j.contains("sheaves")) {
        const Json& jsh = j["sheaves"];
        if (!jsh.is_object()) throw config_error("sheaves: expected an object");
        for (auto it = jsh.begin(); it != jsh.end(); ++it) {
            const std::string path = "sheaves." + it.key();
            const Json& spec = *it;
            detail::reject_unknown(spec, {"rank", "c1", "chi", "lift", "jets", "restriction", "dim_end"},
                                   path);
            SheafSpec sh;
            sh.cls.rank = detail::as_int(detail::require_field(spec, "rank", path), path + ".rank");
            if (sh.cls.rank < 0) throw config_error(path + ".rank: must be nonnegative");
            sh.cls.c1 = detail::parse_divisor(detail::require_field(spec, "c1", path), n, path + ".c1");
            sh.cls.chi = detail::as_int(detail::require_field(spec, "chi", path), path + ".chi");
            if (spec.contains("lift")) {
                const Json& jl = spec["lift"];
                if (!jl.is_array()) throw config_error(path + ".lift: expected an array of integers");
                LiftDatum datum;
                for (std::size_t i = 0; i < jl.size(); ++i) {
                    const Int m = detail::as_int(jl[i], path + ".lift[" + std::to_string(i) + "]");
                    if (m < 0) throw config_error(path + ".lift[" + std::to_string(i) +
                                                  "]: multiplicities are nonnegative");
                    datum.push_back(m);
                }
                if (datum.size() != n - sh.cls.stage())
                    throw config_error(path + ".lift: expected " +
                                       std::to_string(n - sh.cls.stage()) + " entries, got " +
                                       std::to_string(datum.size()));
                sh.lift = std::move(datum);
            }
            if (spec.contains("jets")) {
                const Json& jj = spec["jets"];
                if (!jj.is_array()) throw config_error(path + ".jets: expected an array");
                JetProfile profile;
                for (std::size_t i = 0; i < jj.size(); ++i) {
                    const std::string jpath = path + ".jets[" + std::to_string(i + 1) + "]";
                    const Json& entry = jj[i];
                    detail::reject_unknown(entry, {"site", "length", "on_anticanonical"}, jpath);
                    const std::string ref = detail::as_string(
                        detail::require_field(entry, "site", jpath), jpath + ".site");
                    auto [is_base, rest] = detail::split_site_ref(ref, jpath + ".site");
                    bool on = true;
                    if (entry.contains("on_anticanonical"))
                        on = detail::as_bool(entry["on_anticanonical"], jpath + ".on_anticanonical");
                    JetSite site =
                        is_base ? JetSite::base(rest, on)
                                : JetSite::exceptional(
                                      detail::parse_node_index(rest, n, jpath + ".site"), on);
                    if (site.kind == JetSite::Kind::Base)
                        for (const BlowupNode& b : cfg.surface.forest().nodes())
                            if (b.parent.is_base() && b.parent.label == site.label)
                                throw config_error(jpath + ".site: base:" + site.label +
                                                   " was already blown up");
                    const Int len = detail::as_int(detail::require_field(entry, "length", jpath),
                                                   jpath + ".length");
                    if (len < 1) throw config_error(jpath + ".length: must be >= 1");
                    profile.entries.push_back({std::move(site), len});
                }
                try {
                    check_jet_profile(profile, "jets");
                } catch (const math_error& e) {
                    throw config_error(path + ".jets: " + e.what());
                }
                sh.jets = std::move(profile);
            }
            if (spec.contains("restriction")) {
                const Json& jr = spec["restriction"];
                detail::reject_unknown(jr, {"kind", "hom_dim", "ext_minus1_dim"},
                                       path + ".restriction");
                const std::string kind = detail::as_string(
                    detail::require_field(jr, "kind", path + ".restriction"),
                    path + ".restriction.kind");
                if (kind == "disjoint") {
                    sh.restriction = RestrictionData::disjoint();
                } else if (kind == "transverse") {
                    if (!sh.jets)
                        throw config_error(path +
                                           ".restriction: transverse data needs a jet profile");
                    sh.restriction = RestrictionData::transverse(*sh.jets);
                } else if (kind == "explicit") {
                    const Int hom = detail::as_int(
                        detail::require_field(jr, "hom_dim", path + ".restriction"),
                        path + ".restriction.hom_dim");
                    const Int extm1 = detail::as_int(
                        detail::require_field(jr, "ext_minus1_dim", path + ".restriction"),
                        path + ".restriction.ext_minus1_dim");
                    sh.restriction = RestrictionData::explicit_dims(hom, extm1);
                } else {
                    throw config_error(path + ".restriction.kind: unknown kind '" + kind + "'");
                }
            }
            if (spec.contains("dim_end")) {
                sh.dim_end = detail::as_int(spec["dim_end"], path + ".dim_end");
                if (*sh.dim_end < 1) throw config_error(path + ".dim_end: must be >= 1");
            }
            cfg.sheaves.emplace(it.key(), std::move(sh));
        }
    }

    if (j.contains("options")) {
        const Json& jo = j["options"];
        detail::reject_unknown(jo, {"coeff_bound"}, "options");
        if (jo.contains("coeff_bound")) {
            cfg.coeff_bound = detail::as_int(jo["coeff_bound"], "options.coeff_bound");
            if (*cfg.coeff_bound < 1) throw config_error("options.coeff_bound: must be >= 1");
        }
    }
    return cfg;
}

inline Json divisor_to_json(const DivisorClass& d) {
    Json j;
    j["s"] = d.s;
    j["f"] = d.f;
    j["e"] = d.e;
    return j;
}

inline Json serialize_config(const Config& cfg) {
    Json j;
    Json& surface = j["surface"];
    surface["base_case"] = to_string(cfg.surface.base_case());
    surface["genus"] = cfg.surface.genus();
    if (cfg.surface.subcase()) surface["subcase"] = to_string(*cfg.surface.subcase());
    if (cfg.surface.chi_trivial()) surface["chi_structure_sheaf"] = *cfg.surface.chi_trivial();
    Json blowups = Json::array();
    for (const BlowupNode& b : cfg.surface.forest().nodes()) {
        Json node;
        node["parent"] = b.parent.display();
        node["on_anticanonical"] = b.on_anticanonical;
        node["multiplicity"] = b.multiplicity;
        blowups.push_back(std::move(node));
    }
    j["blowups"] = std::move(blowups);
    Json sheaves = Json::object();
    for (const auto& [name, sh] : cfg.sheaves) {
        Json spec;
        spec["rank"] = sh.cls.rank;
        spec["c1"] = divisor_to_json(sh.cls.c1);
        spec["chi"] = sh.cls.chi;
        if (sh.lift) spec["lift"] = *sh.lift;
        if (sh.jets) {
            Json jets = Json::array();
            for (const JetEntry& e : sh.jets->entries) {
                Json entry;
                entry["site"] = e.site.display();
                entry["length"] = e.length;
                entry["on_anticanonical"] = e.site.on_anticanonical;
                jets.push_back(std::move(entry));
            }
            spec["jets"] = std::move(jets);
        }
        if (sh.restriction) {
            Json r;
            switch (sh.restriction->kind) {
                case RestrictionData::Kind::Disjoint: r["kind"] = "disjoint"; break;
                case RestrictionData::Kind::TransverseJets: r["kind"] = "transverse"; break;
                case RestrictionData::Kind::Explicit:
                    r["kind"] = "explicit";
                    r["hom_dim"] = sh.restriction->hom_dim;
                    r["ext_minus1_dim"] = sh.restriction->ext_minus1_dim;
                    break;
            }
            spec["restriction"] = std::move(r);
        }
        if (sh.dim_end) spec["dim_end"] = *sh.dim_end;
        sheaves[name] = std::move(spec);
    }
    j["sheaves"] = std::move(sheaves);
    if (cfg.coeff_bound) {
        Json options;
        options["coeff_bound"] = *cfg.coeff_bound;
        j["options"] = std::move(options);
    }
    return j;
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

} // namespace pbc
