#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cvmem/errors.hpp"

namespace cvmem {

/// Undirected graph over vertices 1..n defining a cluster layout and the
/// neighborhoods that enter each vertex's nullifier.
class GraphSpec {
  public:
    GraphSpec(int n_vertices, std::vector<std::pair<int, int>> edges) : n_(n_vertices) {
        if (n_ < 1) {
            throw ValidationError("graph needs at least one vertex");
        }
        std::set<std::pair<int, int>> unique_edges;
        for (auto [a, b] : edges) {
            if (a < 1 || a > n_ || b < 1 || b > n_) {
                throw ValidationError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                      ") leaves the vertex range 1.." + std::to_string(n_));
            }
            if (a == b) {
                throw ValidationError("self-loop on vertex " + std::to_string(a));
            }
            if (a > b) {
                std::swap(a, b);
            }
            if (!unique_edges.emplace(a, b).second) {
                throw ValidationError("duplicate edge (" + std::to_string(a) + "," +
                                      std::to_string(b) + ")");
            }
        }
        edges_.assign(unique_edges.begin(), unique_edges.end());
    }

    /// Path graph 1-2-...-n.
    static GraphSpec chain(int n_vertices) {
        std::vector<std::pair<int, int>> edges;
        for (int a = 1; a < n_vertices; ++a) {
            edges.emplace_back(a, a + 1);
        }
        return GraphSpec(n_vertices, std::move(edges));
    }

    /// Loads {"n": integer, "edges": [[a, b], ...]} with 1-based indices.
    static GraphSpec from_json(const nlohmann::json& doc) {
        if (!doc.is_object()) {
            throw ParseError("graph document must be a JSON object");
        }
        for (const auto& item : doc.items()) {
            if (item.key() != "n" && item.key() != "edges") {
                throw ParseError("graph document has unknown field '" + item.key() + "'");
            }
        }
        if (!doc.contains("n") || !doc["n"].is_number_integer()) {
            throw ParseError("graph field 'n' must be an integer");
        }
        std::vector<std::pair<int, int>> edges;
        if (doc.contains("edges")) {
            if (!doc["edges"].is_array()) {
                throw ParseError("graph field 'edges' must be an array of pairs");
            }
            for (const auto& e : doc["edges"]) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                    !e[1].is_number_integer()) {
                    throw ParseError("graph edges must be [a, b] integer pairs");
                }
                edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        }
        return GraphSpec(doc["n"].get<int>(), std::move(edges));
    }

    int n_vertices() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    /// Sorted nearest neighbors of vertex a.
    std::vector<int> neighbors(int a) const {
        if (a < 1 || a > n_) {
            throw ValidationError("vertex " + std::to_string(a) + " outside 1.." +
                                  std::to_string(n_));
        }
        std::vector<int> out;
        for (auto [u, v] : edges_) {
            if (u == a) {
                out.push_back(v);
            } else if (v == a) {
                out.push_back(u);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
};

/// One squeezing parameter per input mode. Positive r squeezes p (and
/// antisqueezes x); negative values are permitted and act as antisqueezing.
class SqueezingProfile {
  public:
    explicit SqueezingProfile(Eigen::VectorXd r) : r_(std::move(r)) {
        if (r_.size() == 0) {
            throw ValidationError("squeezing profile must not be empty");
        }
        if (!r_.allFinite()) {
            throw ValidationError("squeezing parameters must be finite");
        }
    }

    static SqueezingProfile uniform(double r, int n_modes) {
        return SqueezingProfile(Eigen::VectorXd::Constant(n_modes, r));
    }

    const Eigen::VectorXd& values() const { return r_; }
    int size() const { return static_cast<int>(r_.size()); }
    double operator[](int i) const { return r_(i); }

    bool is_uniform() const {
        return (r_.array() == r_(0)).all();
    }

  private:
    Eigen::VectorXd r_;
};

} // namespace cvmem
