/*
 * Copyright (c) 2026, rofsim authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rofsim/channel/fiber.hpp"
#include "rofsim/core/error.hpp"

namespace rofsim {

enum class NodeKind { central_office, smart_edge, splitter, onu, ru };

inline const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::central_office: return "central_office";
        case NodeKind::smart_edge: return "smart_edge";
        case NodeKind::splitter: return "splitter";
        case NodeKind::onu: return "onu";
        case NodeKind::ru: return "ru";
    }
    return "?";
}

inline NodeKind parse_node_kind(const std::string& s) {
    for (auto k : {NodeKind::central_office, NodeKind::smart_edge, NodeKind::splitter, NodeKind::onu, NodeKind::ru})
        if (s == to_string(k)) return k;
    throw ValidationError("unknown node kind '" + s + "'");
}

/// Default queueing/processing delay of an eCPRI node.
inline constexpr double kDefaultEcpriQueueUs = 50.0;

struct ChipCoupling {
    FacetKind kind = FacetKind::packaged;
    int facets = 2;
};

struct Node {
    std::string id;
    NodeKind kind = NodeKind::onu;
    double processing_delay_us = 0.0;
    bool sync_compensation = false;
    bool ecpri = false;                   // adds ecpri_queue_us to the processing delay
    double ecpri_queue_us = kDefaultEcpriQueueUs;
    std::size_t split_ways = 0;           // splitter fan-out; 0 for none
    double split_excess_db = 0.0;
    std::optional<ChipCoupling> chip;     // silicon-photonic chip on the path
    double bus_insertion_db = 0.0;

    double total_processing_us() const { return processing_delay_us + (ecpri ? ecpri_queue_us : 0.0); }
};

struct ComponentLoss {
    std::string label;
    double db = 0.0;
};

struct Link {
    std::string from;
    std::string to;
    FiberParams fiber;
    std::vector<ComponentLoss> component_losses;
};

/// Optical access network: a strict tree rooted at the central office.
class Topology {
public:
    Topology() = default;
    Topology(std::vector<Node> nodes, std::vector<Link> links) : nodes_(std::move(nodes)), links_(std::move(links)) {
        validate();
    }

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }

    const Node& node(const std::string& id) const {
        const auto it = index_.find(id);
        if (it == index_.end()) throw TopologyError("topology: unknown node '" + id + "'");
        return nodes_[it->second];
    }
    bool has_node(const std::string& id) const { return index_.count(id) != 0; }

    const std::string& root() const { return root_; }

    /// The link joining a and b (either direction); TopologyError if they are not adjacent.
    const Link& link_between(const std::string& a, const std::string& b) const {
        for (const auto& l : links_)
            if ((l.from == a && l.to == b) || (l.from == b && l.to == a)) return l;
        throw TopologyError("topology: no link between '" + a + "' and '" + b + "'");
    }

    /// Node sequence from a to b through the tree.
    std::vector<std::string> route(const std::string& a, const std::string& b) const {
        node(a);
        node(b);
        auto up = [&](std::string n) {
            std::vector<std::string> chain{n};
            while (n != root_) {
                n = parent_.at(n);
                chain.push_back(n);
            }
            return chain;
        };
        const auto ca = up(a), cb = up(b);
        // Drop the common ancestors above the lowest one.
        std::size_t i = ca.size(), j = cb.size();
        while (i > 0 && j > 0 && ca[i - 1] == cb[j - 1]) --i, --j;
        std::vector<std::string> path(ca.begin(), ca.begin() + static_cast<long>(i) + 1);
        for (std::size_t k = j; k-- > 0;) path.push_back(cb[k]);
        return path;
    }

private:
    void validate() {
        index_.clear();
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].id.empty()) throw ValidationError("topology: node with empty id");
            if (!index_.emplace(nodes_[i].id, i).second)
                throw ValidationError("topology: duplicate node id '" + nodes_[i].id + "'");
            if (nodes_[i].processing_delay_us < 0.0 || nodes_[i].ecpri_queue_us < 0.0)
                throw ValidationError("topology: node '" + nodes_[i].id + "' has a negative delay");
        }
        std::vector<const Node*> roots;
        for (const auto& n : nodes_)
            if (n.kind == NodeKind::central_office) roots.push_back(&n);
        if (roots.size() != 1)
            throw ValidationError("topology: need exactly one central_office node, found " + num(roots.size()));
        root_ = roots.front()->id;
        parent_.clear();
        for (const auto& l : links_) {
            node(l.from);
            node(l.to);
            if (l.fiber.length_km < 0.0)
                throw ValidationError("topology: link '" + l.from + "' -> '" + l.to + "' has negative length");
            if (l.to == root_) throw ValidationError("topology: link into the central office from '" + l.from + "'");
            if (!parent_.emplace(l.to, l.from).second)
                throw ValidationError("topology: node '" + l.to + "' has more than one parent");
        }
        for (const auto& n : nodes_) {
            if (n.id == root_) continue;
            std::string cur = n.id;
            for (std::size_t steps = 0;; ++steps) {
                const auto it = parent_.find(cur);
                if (it == parent_.end())
                    throw TopologyError("topology: node '" + n.id + "' is not connected to the central office");
                cur = it->second;
                if (cur == root_) break;
                if (steps > nodes_.size()) throw ValidationError("topology: cycle through node '" + n.id + "'");
            }
        }
    }

    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::map<std::string, std::size_t> index_;
    std::map<std::string, std::string> parent_;
    std::string root_;
};

}  // namespace rofsim
