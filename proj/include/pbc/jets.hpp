#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "pbc/divisor.hpp"
#include "pbc/errors.hpp"

namespace pbc {

// A point of the surface where a pure 1-dimensional sheaf meets the
// anticanonical curve: either a labeled base point or a point on the
// exceptional curve of a blowup.
struct JetSite {
    enum class Kind { Base, Exceptional };
    Kind kind = Kind::Base;
    std::string label; // Base
    int node = -1;     // Exceptional, 0-based
    bool on_anticanonical = true;

    static JetSite base(std::string label, bool on = true) {
        JetSite s;
        s.kind = Kind::Base;
        s.label = std::move(label);
        s.on_anticanonical = on;
        return s;
    }

    static JetSite exceptional(int node, bool on = true) {
        JetSite s;
        s.kind = Kind::Exceptional;
        s.node = node;
        s.on_anticanonical = on;
        return s;
    }

    // identity of the point; the anticanonical flag is data, not identity
    std::tuple<int, std::string, int> key() const {
        return {kind == Kind::Base ? 0 : 1, label, node};
    }

    bool same_site(const JetSite& o) const { return key() == o.key(); }

    std::string display() const {
        if (kind == Kind::Base) return "base:" + label;
        return "node:" + std::to_string(node + 1);
    }

    friend bool operator==(const JetSite&, const JetSite&) = default;
};

struct JetEntry {
    JetSite site;
    Int length = 1;

    friend bool operator==(const JetEntry&, const JetEntry&) = default;
};

// Multiset of local intersection lengths of a transverse rank-0 sheaf with
// the anticanonical curve; total length equals c1 . C_alpha.
struct JetProfile {
    std::vector<JetEntry> entries;

    Int total_length() const {
        Int t = 0;
        for (const JetEntry& j : entries) t += j.length;
        return t;
    }

    friend bool operator==(const JetProfile&, const JetProfile&) = default;
};

// Throws when a profile repeats a site or carries a non-positive length.
inline void check_jet_profile(const JetProfile& p, const char* what) {
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        if (p.entries[i].length < 1)
            throw math_error(std::string(what) + ": jet lengths must be >= 1");
        for (std::size_t j = i + 1; j < p.entries.size(); ++j)
            if (p.entries[i].site.same_site(p.entries[j].site))
                throw math_error(std::string(what) + ": duplicate jet site " +
                                 p.entries[i].site.display());
    }
}

} // namespace pbc
