// Copyright 2026 The toric-anyons Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Geometry of a k x k square lattice wrapped on a torus.
 *
 * Qubits live on edges. Indexing convention (tag `rowmajor-h-then-v/1`):
 *
 *  - vertex (r, c) and face (r, c) both have index r*k + c; face (r, c) is the
 *    plaquette whose top-left corner is vertex (r, c);
 *  - horizontal edge (r, c) joins vertex (r, c) to (r, c+1), index r*k + c;
 *  - vertical edge (r, c) joins vertex (r, c) to (r+1, c), index k*k + r*k + c.
 *
 * All coordinates wrap modulo k.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace toric {

inline constexpr std::string_view lattice_indexing_tag = "rowmajor-h-then-v/1";

class TorusLattice {
  public:
    explicit TorusLattice(std::size_t k) : k_{k} {
        if (k == 0) {
            throw std::invalid_argument("TorusLattice: k must be >= 1");
        }
    }

    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t num_vertices() const noexcept { return k_ * k_; }
    [[nodiscard]] std::size_t num_faces() const noexcept { return k_ * k_; }
    [[nodiscard]] std::size_t num_edges() const noexcept { return 2 * k_ * k_; }

    /// k = 1 stars and plaquettes touch the same edge twice.
    [[nodiscard]] bool degenerate() const noexcept { return k_ == 1; }

    [[nodiscard]] std::size_t vertex(std::size_t r, std::size_t c) const {
        return wrap(r) * k_ + wrap(c);
    }
    [[nodiscard]] std::size_t face(std::size_t r, std::size_t c) const {
        return wrap(r) * k_ + wrap(c);
    }
    [[nodiscard]] std::size_t horizontal_edge(std::size_t r,
                                              std::size_t c) const {
        return wrap(r) * k_ + wrap(c);
    }
    [[nodiscard]] std::size_t vertical_edge(std::size_t r,
                                            std::size_t c) const {
        return k_ * k_ + wrap(r) * k_ + wrap(c);
    }
    [[nodiscard]] bool is_horizontal(std::size_t e) const {
        check_edge(e);
        return e < k_ * k_;
    }

    /// Edges of the star at vertex s, ordered right, down, left, up.
    [[nodiscard]] std::array<std::size_t, 4>
    star_edges(std::size_t s) const {
        check_index(s, num_vertices(), "vertex");
        const auto [r, c] = coords(s);
        return {horizontal_edge(r, c), vertical_edge(r, c),
                horizontal_edge(r, c + k_ - 1), vertical_edge(r + k_ - 1, c)};
    }

    /// Edges of the boundary of face p, ordered top, right, bottom, left.
    [[nodiscard]] std::array<std::size_t, 4>
    boundary_edges(std::size_t p) const {
        check_index(p, num_faces(), "face");
        const auto [r, c] = coords(p);
        return {horizontal_edge(r, c), vertical_edge(r, c + 1),
                horizontal_edge(r + 1, c), vertical_edge(r, c)};
    }

    /// The two vertices joined by edge e.
    [[nodiscard]] std::array<std::size_t, 2>
    edge_vertices(std::size_t e) const {
        check_edge(e);
        const auto [r, c] = coords(e % (k_ * k_));
        if (e < k_ * k_) {
            return {vertex(r, c), vertex(r, c + 1)};
        }
        return {vertex(r, c), vertex(r + 1, c)};
    }

    /// The two faces separated by edge e.
    [[nodiscard]] std::array<std::size_t, 2>
    edge_faces(std::size_t e) const {
        check_edge(e);
        const auto [r, c] = coords(e % (k_ * k_));
        if (e < k_ * k_) {
            return {face(r + k_ - 1, c), face(r, c)};
        }
        return {face(r, c + k_ - 1), face(r, c)};
    }

    void check_edge(std::size_t e) const { check_index(e, num_edges(), "edge"); }

    friend bool operator==(const TorusLattice &, const TorusLattice &) = default;

  private:
    std::size_t k_;

    [[nodiscard]] std::size_t wrap(std::size_t i) const noexcept {
        return i % k_;
    }
    [[nodiscard]] std::pair<std::size_t, std::size_t>
    coords(std::size_t i) const noexcept {
        return {i / k_, i % k_};
    }
    static void check_index(std::size_t i, std::size_t bound,
                            const char *what) {
        if (i >= bound) {
            throw std::out_of_range(std::string("TorusLattice: ") + what +
                                    " index " + std::to_string(i) +
                                    " out of range (< " +
                                    std::to_string(bound) + ")");
        }
    }
};

inline TorusLattice build_lattice(std::size_t k) { return TorusLattice{k}; }

inline std::array<std::size_t, 4> star_edges(const TorusLattice &lattice,
                                             std::size_t s) {
    return lattice.star_edges(s);
}

inline std::array<std::size_t, 4> boundary_edges(const TorusLattice &lattice,
                                                 std::size_t p) {
    return lattice.boundary_edges(p);
}

/// Direct paths hop vertex to vertex; dual paths hop face to face.
enum class PathKind { direct, dual };

inline std::string_view to_string(PathKind kind) {
    return kind == PathKind::direct ? "direct" : "dual";
}

/**
 * An ordered walk of edges on the lattice (direct) or its dual.
 *
 * The walk is anchored at a start node (a vertex for direct paths, a face for
 * dual paths). The anchor removes the ambiguity on small tori where two edges
 * can share both of their endpoints.
 */
class Path {
  public:
    Path(const TorusLattice &lattice, PathKind kind, std::size_t start,
         std::vector<std::size_t> edges)
        : k_{lattice.k()}, kind_{kind}, start_{start},
          edges_{std::move(edges)} {
        const std::size_t nodes = kind == PathKind::direct
                                      ? lattice.num_vertices()
                                      : lattice.num_faces();
        if (start_ >= nodes) {
            throw std::out_of_range("Path: start node out of range");
        }
        auto end = walk(lattice, kind_, start_, edges_);
        if (!end) {
            throw std::invalid_argument(
                std::string("Path: consecutive edges do not share a ") +
                (kind == PathKind::direct ? "vertex" : "face"));
        }
        end_ = *end;
    }

    /// Builds a path whose start node is inferred from its first edge.
    static Path from_edges(const TorusLattice &lattice, PathKind kind,
                           std::vector<std::size_t> edges) {
        if (edges.empty()) {
            throw std::invalid_argument("Path: cannot infer start of an empty path");
        }
        lattice.check_edge(edges.front());
        const auto ends = kind == PathKind::direct
                              ? lattice.edge_vertices(edges.front())
                              : lattice.edge_faces(edges.front());
        for (auto start : ends) {
            if (walk(lattice, kind, start, edges)) {
                return Path{lattice, kind, start, std::move(edges)};
            }
        }
        throw std::invalid_argument(
            std::string("Path: consecutive edges do not share a ") +
            (kind == PathKind::direct ? "vertex" : "face"));
    }

    [[nodiscard]] std::size_t lattice_size() const noexcept { return k_; }
    [[nodiscard]] PathKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t start() const noexcept { return start_; }
    [[nodiscard]] std::size_t end() const noexcept { return end_; }
    [[nodiscard]] const std::vector<std::size_t> &edges() const noexcept {
        return edges_;
    }
    [[nodiscard]] bool closed() const noexcept { return start_ == end_; }
    [[nodiscard]] std::size_t size() const noexcept { return edges_.size(); }

  private:
    std::size_t k_;
    PathKind kind_;
    std::size_t start_;
    std::size_t end_{0};
    std::vector<std::size_t> edges_;

    static std::optional<std::size_t>
    walk(const TorusLattice &lattice, PathKind kind, std::size_t node,
         const std::vector<std::size_t> &edges) {
        for (auto e : edges) {
            lattice.check_edge(e);
            const auto ends = kind == PathKind::direct
                                  ? lattice.edge_vertices(e)
                                  : lattice.edge_faces(e);
            if (ends[0] == node) {
                node = ends[1];
            } else if (ends[1] == node) {
                node = ends[0];
            } else {
                return std::nullopt;
            }
        }
        return node;
    }
};

/**
 * Number of shared edges between a direct path and a dual path, counted with
 * multiplicity: an edge used a times by `direct` and b times by `dual`
 * contributes a*b. Its parity is the commutation sign of the two strings.
 */
inline std::size_t crossing_count(const Path &direct, const Path &dual) {
    if (direct.lattice_size() != dual.lattice_size()) {
        throw std::invalid_argument(
            "crossing_count: paths belong to different lattices");
    }
    if (direct.kind() != PathKind::direct || dual.kind() != PathKind::dual) {
        throw std::invalid_argument(
            "crossing_count: expects a direct path and a dual path");
    }
    std::map<std::size_t, std::size_t> uses;
    for (auto e : direct.edges()) {
        ++uses[e];
    }
    std::size_t count = 0;
    for (auto e : dual.edges()) {
        if (auto it = uses.find(e); it != uses.end()) {
            count += it->second;
        }
    }
    return count;
}

/// Random walk of `length` steps from `start` on the lattice or its dual.
template <class URBG>
Path random_path(const TorusLattice &lattice, PathKind kind, std::size_t start,
                 std::size_t length, URBG &rng) {
    std::vector<std::size_t> edges;
    edges.reserve(length);
    std::size_t node = start;
    for (std::size_t step = 0; step < length; ++step) {
        const auto around = kind == PathKind::direct
                                ? lattice.star_edges(node)
                                : lattice.boundary_edges(node);
        std::uniform_int_distribution<std::size_t> pick(0, 3);
        const auto e = around[pick(rng)];
        const auto ends = kind == PathKind::direct ? lattice.edge_vertices(e)
                                                   : lattice.edge_faces(e);
        node = ends[0] == node ? ends[1] : ends[0];
        edges.push_back(e);
    }
    return Path{lattice, kind, start, std::move(edges)};
}

/**
 * The four edges around vertex 0 that carry the reduced braiding model.
 *
 * Entry i is reduced qubit i+1. Neighbouring entries (cyclically) share a
 * plaquette, so the plaquette terms restricted to the quartet are
 * Z1Z2, Z2Z3, Z3Z4 and Z1Z4, and the star term is X1X2X3X4. The same four
 * edges, in order, form the closed dual loop around vertex 0.
 */
inline std::array<std::size_t, 4> braid_quartet(const TorusLattice &lattice) {
    if (lattice.degenerate()) {
        throw std::invalid_argument("braid_quartet: requires k >= 2");
    }
    const std::size_t k = lattice.k();
    return {lattice.horizontal_edge(0, 0), lattice.vertical_edge(0, 0),
            lattice.horizontal_edge(0, k - 1), lattice.vertical_edge(k - 1, 0)};
}

inline void to_json(nlohmann::json &j, const TorusLattice &lattice) {
    j = nlohmann::json{{"k", lattice.k()},
                       {"indexing", std::string(lattice_indexing_tag)},
                       {"vertices", lattice.num_vertices()},
                       {"faces", lattice.num_faces()},
                       {"edges", lattice.num_edges()}};
}

inline TorusLattice lattice_from_json(const nlohmann::json &j) {
    if (j.contains("indexing") &&
        j.at("indexing").get<std::string>() != lattice_indexing_tag) {
        throw std::invalid_argument("lattice JSON: unsupported indexing tag");
    }
    return TorusLattice{j.at("k").get<std::size_t>()};
}

inline void to_json(nlohmann::json &j, const Path &path) {
    j = nlohmann::json{{"kind", std::string(to_string(path.kind()))},
                       {"start", path.start()},
                       {"edges", path.edges()},
                       {"closed", path.closed()}};
}

inline Path path_from_json(const TorusLattice &lattice,
                           const nlohmann::json &j) {
    const auto kind_name = j.at("kind").get<std::string>();
    PathKind kind;
    if (kind_name == "direct") {
        kind = PathKind::direct;
    } else if (kind_name == "dual") {
        kind = PathKind::dual;
    } else {
        throw std::invalid_argument("path JSON: unknown kind " + kind_name);
    }
    auto edges = j.at("edges").get<std::vector<std::size_t>>();
    if (j.contains("start")) {
        return Path{lattice, kind, j.at("start").get<std::size_t>(),
                    std::move(edges)};
    }
    return Path::from_edges(lattice, kind, std::move(edges));
}

} // namespace toric
