#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pbc/divisor.hpp"
#include "pbc/errors.hpp"

namespace pbc {

// A blowup center: either a labeled point of the base surface or a point
// on the exceptional curve of an earlier blowup (an infinitely near point).
struct ParentRef {
    enum class Kind { Base, Node };
    Kind kind = Kind::Base;
    std::string label; // Base
    int node = -1;     // Node, 0-based index into the forest

    static ParentRef base(std::string label) {
        ParentRef p;
        p.kind = Kind::Base;
        p.label = std::move(label);
        return p;
    }

    static ParentRef at_node(int index) {
        ParentRef p;
        p.kind = Kind::Node;
        p.node = index;
        return p;
    }

    bool is_base() const { return kind == Kind::Base; }

    std::string display() const {
        if (kind == Kind::Base) return "base:" + label;
        return "node:" + std::to_string(node + 1);
    }

    friend bool operator==(const ParentRef&, const ParentRef&) = default;
};

struct BlowupNode {
    ParentRef parent;
    bool on_anticanonical = true;
    // multiplicity of the anticanonical curve at the center; user-asserted
    Int multiplicity = 1;

    friend bool operator==(const BlowupNode&, const BlowupNode&) = default;
};

// Ordered forest of (possibly infinitely near) blowup centers.  Parents
// always precede children, so every prefix is itself a valid forest.
class BlowupForest {
public:
    BlowupForest() = default;

    explicit BlowupForest(std::vector<BlowupNode> nodes) : nodes_(std::move(nodes)) {
        validate();
    }

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const BlowupNode& node(std::size_t i) const { return nodes_[i]; }
    const std::vector<BlowupNode>& nodes() const { return nodes_; }

    std::vector<int> children(std::size_t i) const {
        std::vector<int> out;
        for (std::size_t j = i + 1; j < nodes_.size(); ++j)
            if (!nodes_[j].parent.is_base() && nodes_[j].parent.node == static_cast<int>(i))
                out.push_back(static_cast<int>(j));
        return out;
    }

    BlowupForest with_node(BlowupNode n) const {
        std::vector<BlowupNode> v = nodes_;
        v.push_back(std::move(n));
        return BlowupForest(std::move(v));
    }

    BlowupForest prefix(std::size_t k) const {
        if (k > nodes_.size()) throw math_error("forest prefix longer than the forest");
        return BlowupForest(std::vector<BlowupNode>(nodes_.begin(), nodes_.begin() + k));
    }

    friend bool operator==(const BlowupForest&, const BlowupForest&) = default;

private:
    std::vector<BlowupNode> nodes_;

    void validate() const {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const BlowupNode& n = nodes_[i];
            const std::string where = "blowups[" + std::to_string(i + 1) + "]";
            if (n.multiplicity < 0)
                throw config_error(where + ": negative anticanonical multiplicity");
            if (n.on_anticanonical && n.multiplicity < 1)
                throw config_error(where + ": a center on the anticanonical curve needs multiplicity >= 1");
            if (!n.on_anticanonical && n.multiplicity != 0)
                throw config_error(where + ": a center off the anticanonical curve has multiplicity 0");
            if (n.parent.is_base()) {
                if (n.parent.label.empty())
                    throw config_error(where + ": empty base site label");
                for (std::size_t j = 0; j < i; ++j)
                    if (nodes_[j].parent.is_base() && nodes_[j].parent.label == n.parent.label)
                        throw config_error(where + ": base site '" + n.parent.label +
                                           "' already blown up by blowups[" + std::to_string(j + 1) + "]");
            } else {
                if (n.parent.node < 0 || n.parent.node >= static_cast<int>(i))
                    throw config_error(where + ": parent node index " +
                                       std::to_string(n.parent.node + 1) +
                                       " must name an earlier blowup");
                const BlowupNode& p = nodes_[static_cast<std::size_t>(n.parent.node)];
                // multiplicity cannot grow on a strict transform
                if (p.on_anticanonical && n.on_anticanonical && n.multiplicity > p.multiplicity)
                    throw config_error(where + ": multiplicity " + std::to_string(n.multiplicity) +
                                       " exceeds parent multiplicity " + std::to_string(p.multiplicity));
            }
        }
    }
};

} // namespace pbc
