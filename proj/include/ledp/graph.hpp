// Copyright 2026 The LEDP Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEDP_GRAPH_HPP_
#define LEDP_GRAPH_HPP_

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ledp/bits.hpp"
#include "ledp/rng.hpp"

namespace ledp {

using Vertex = std::size_t;

// Undirected simple graph on vertices 0..n-1, stored as packed adjacency
// rows. Symmetric with an empty diagonal by construction; immutable once
// built (see GraphBuilder).
class Graph {
 public:
  Graph() = default;

  std::size_t n() const { return n_; }
  std::size_t words_per_row() const { return words_per_row_; }

  bool HasEdge(Vertex i, Vertex j) const {
    return (Row(i)[j / 64] >> (j % 64)) & 1u;
  }

  std::span<const std::uint64_t> Row(Vertex i) const {
    return {bits_.data() + i * words_per_row_, words_per_row_};
  }

  BitVector RowBits(Vertex i) const {
    BitVector out(n_);
    std::copy(Row(i).begin(), Row(i).end(), out.mutable_words().begin());
    return out;
  }

  std::size_t Degree(Vertex i) const {
    std::size_t d = 0;
    for (std::uint64_t w : Row(i)) d += std::popcount(w);
    return d;
  }

  std::size_t EdgeCount() const {
    std::size_t twice = 0;
    for (std::uint64_t w : bits_) twice += std::popcount(w);
    return twice / 2;
  }

  // Edges (i, j) with i < j in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> Edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex i = 0; i < n_; ++i) {
      for (Vertex j = i + 1; j < n_; ++j) {
        if (HasEdge(i, j)) out.emplace_back(i, j);
      }
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;

  std::size_t n_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) {
    g_.n_ = n;
    g_.words_per_row_ = BitVector::WordCount(n);
    g_.bits_.assign(n * g_.words_per_row_, 0);
  }

  std::size_t n() const { return g_.n_; }

  GraphBuilder& AddEdge(Vertex i, Vertex j) { return SetEdge(i, j, true); }

  GraphBuilder& SetEdge(Vertex i, Vertex j, bool present) {
    if (i >= g_.n_ || j >= g_.n_) {
      throw std::out_of_range("GraphBuilder: vertex out of range");
    }
    if (i == j) throw std::invalid_argument("GraphBuilder: self-loop");
    SetBit(i, j, present);
    SetBit(j, i, present);
    return *this;
  }

  bool HasEdge(Vertex i, Vertex j) const { return g_.HasEdge(i, j); }

  Graph Build() const& { return g_; }
  Graph Build() && { return std::move(g_); }

 private:
  void SetBit(Vertex i, Vertex j, bool present) {
    std::uint64_t& w = g_.bits_[i * g_.words_per_row_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    w = present ? (w | mask) : (w & ~mask);
  }

  Graph g_;
};

// Named disjoint vertex sets, e.g. {U1, U2, W} of the query graphs.
struct VertexPartition {
  std::vector<std::vector<Vertex>> parts;
  std::vector<std::string> labels;

  const std::vector<Vertex>& Part(std::string_view label) const {
    for (std::size_t p = 0; p < labels.size(); ++p) {
      if (labels[p] == label) return parts[p];
    }
    throw std::out_of_range("VertexPartition: no part named " +
                            std::string(label));
  }

  // Throws unless parts are pairwise disjoint, inside [0, n), and labelled.
  void Validate(std::size_t n) const {
    if (parts.size() != labels.size()) {
      throw std::invalid_argument("VertexPartition: label count mismatch");
    }
    std::vector<bool> seen(n, false);
    for (const auto& part : parts) {
      for (Vertex v : part) {
        if (v >= n) throw std::invalid_argument("VertexPartition: out of range");
        if (seen[v]) throw std::invalid_argument("VertexPartition: overlap");
        seen[v] = true;
      }
    }
  }
};

struct PartitionedGraph {
  Graph graph;
  VertexPartition partition;
};

// Exact triangle count by enumerating all vertex triples.
inline std::uint64_t CountTrianglesExact(const Graph& g) {
  const std::size_t n = g.n();
  std::uint64_t count = 0;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (!g.HasEdge(i, j)) continue;
      for (Vertex k = j + 1; k < n; ++k) {
        if (g.HasEdge(i, k) && g.HasEdge(j, k)) ++count;
      }
    }
  }
  return count;
}

// Same count via row intersections: for every edge (i, j) with i < j,
// popcount of the common neighbours above j.
inline std::uint64_t CountTrianglesFast(const Graph& g) {
  const std::size_t n = g.n();
  const std::size_t words = g.words_per_row();
  std::uint64_t count = 0;
  for (Vertex i = 0; i < n; ++i) {
    const auto ri = g.Row(i);
    for (Vertex j = i + 1; j < n; ++j) {
      if (!g.HasEdge(i, j)) continue;
      const auto rj = g.Row(j);
      // Mask out vertices <= j.
      const std::size_t first = (j + 1) / 64;
      for (std::size_t w = first; w < words; ++w) {
        std::uint64_t both = ri[w] & rj[w];
        if (w == first) {
          const std::size_t shift = (j + 1) % 64;
          both &= shift == 0 ? ~std::uint64_t{0} : (~std::uint64_t{0} << shift);
        }
        count += std::popcount(both);
      }
    }
  }
  return count;
}

// Number of distinct 4-cycles, each counted once. Every 4-vertex set
// {a, b, c, d} supports exactly three cycles: a-b-c-d, a-b-d-c, a-c-b-d.
inline std::uint64_t CountC4Exact(const Graph& g) {
  const std::size_t n = g.n();
  std::uint64_t count = 0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      for (Vertex c = b + 1; c < n; ++c) {
        for (Vertex d = c + 1; d < n; ++d) {
          const bool ab = g.HasEdge(a, b), ac = g.HasEdge(a, c),
                     ad = g.HasEdge(a, d), bc = g.HasEdge(b, c),
                     bd = g.HasEdge(b, d), cd = g.HasEdge(c, d);
          count += (ab && bc && cd && ad);
          count += (ab && bd && cd && ac);
          count += (ac && bc && bd && ad);
        }
      }
    }
  }
  return count;
}

// ---------------------------------------------------------------------------
// Generators.

inline Graph EmptyGraph(std::size_t n) { return GraphBuilder(n).Build(); }

inline Graph CompleteGraph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) b.AddEdge(i, j);
  }
  return std::move(b).Build();
}

inline Graph PathGraph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex i = 0; i + 1 < n; ++i) b.AddEdge(i, i + 1);
  return std::move(b).Build();
}

inline Graph CycleGraph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("CycleGraph: n < 3");
  GraphBuilder b(n);
  for (Vertex i = 0; i < n; ++i) b.AddEdge(i, (i + 1) % n);
  return std::move(b).Build();
}

// Star with centre 0 and `leaves` leaves (leaves + 1 vertices).
inline Graph StarGraph(std::size_t leaves) {
  GraphBuilder b(leaves + 1);
  for (Vertex i = 1; i <= leaves; ++i) b.AddEdge(0, i);
  return std::move(b).Build();
}

// K_{a,b} with sides [0, a) and [a, a + b).
inline Graph CompleteBipartiteGraph(std::size_t a, std::size_t b) {
  GraphBuilder builder(a + b);
  for (Vertex i = 0; i < a; ++i) {
    for (Vertex j = 0; j < b; ++j) builder.AddEdge(i, a + j);
  }
  return std::move(builder).Build();
}

// G(n, p): pair (i, j), i < j, is decided by the single stream `key`, read
// in lexicographic pair order.
inline Graph ErdosRenyi(std::size_t n, double p, const StreamKey& key) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("ErdosRenyi: p must lie in [0, 1]");
  }
  GraphBuilder b(n);
  Stream rng = key.Open();
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (rng.Bernoulli(p)) b.AddEdge(i, j);
    }
  }
  return std::move(b).Build();
}

// ---------------------------------------------------------------------------
// Text format: "n\n" followed by one "i j\n" line per edge, 0 <= i < j < n.

inline std::string FormatGraph(const Graph& g) {
  std::string out = std::to_string(g.n()) + "\n";
  for (const auto& [i, j] : g.Edges()) {
    out += std::to_string(i) + " " + std::to_string(j) + "\n";
  }
  return out;
}

namespace internal {

inline std::size_t ParseDecimal(std::string_view s, std::size_t line_no) {
  std::size_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument("graph text: bad integer on line " +
                                std::to_string(line_no));
  }
  return value;
}

}  // namespace internal

inline Graph ParseGraph(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t lf = text.find('\n', start);
    if (lf == std::string_view::npos) {
      throw std::invalid_argument("graph text: last line not LF-terminated");
    }
    lines.push_back(text.substr(start, lf - start));
    start = lf + 1;
  }
  if (lines.empty()) throw std::invalid_argument("graph text: empty input");
  const std::size_t n = internal::ParseDecimal(lines[0], 1);
  if (n == 0) throw std::invalid_argument("graph text: n must be positive");

  GraphBuilder b(n);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::string_view line = lines[l];
    const std::size_t space = line.find(' ');
    if (space == std::string_view::npos) {
      throw std::invalid_argument("graph text: expected \"i j\" on line " +
                                  std::to_string(l + 1));
    }
    const std::size_t i = internal::ParseDecimal(line.substr(0, space), l + 1);
    const std::size_t j = internal::ParseDecimal(line.substr(space + 1), l + 1);
    if (!(i < j && j < n)) {
      throw std::invalid_argument("graph text: pair out of range on line " +
                                  std::to_string(l + 1));
    }
    if (b.HasEdge(i, j)) {
      throw std::invalid_argument("graph text: duplicate edge on line " +
                                  std::to_string(l + 1));
    }
    b.AddEdge(i, j);
  }
  return std::move(b).Build();
}

inline Graph LoadGraph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseGraph(buf.str());
}

inline void SaveGraph(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph file " + path);
  out << FormatGraph(g);
}

}  // namespace ledp

#endif  // LEDP_GRAPH_HPP_
