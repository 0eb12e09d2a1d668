#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svoa/discform.hpp"
#include "svoa/lattice.hpp"

namespace svoa {

/// Class of a vector in M/2M; coordinate i sits at bit n-1-i so that integer
/// order is lexicographic order of the coordinate tuple.
struct Norm4Class {
  std::uint64_t bits = 0;
  std::size_t rank = 0;
  LatticeVector lift() const;  // {0,1}-lift
  std::string to_string() const;
  static Norm4Class of(const LatticeVector& v);
};

struct OrbitClass {
  Norm4Class rep;  // least element of the orbit
  std::uint64_t size = 0;
};

struct OrbitData {
  std::size_t rank = 0;
  std::vector<OrbitClass> orbits;  // nonzero classes of norm 0 mod 4, sorted by rep
  std::vector<std::uint32_t> orbit_of;  // per class; npos for classes outside the orbits
  static constexpr std::uint32_t npos = 0xffffffffu;
  /// Orbit index of the class of an integral vector, or npos.
  std::uint32_t index_of(const LatticeVector& v) const;
};

/// Orbits of the generator action on nonzero classes of M/2M with norm
/// divisible by 4. Rank is limited to 24.
OrbitData orbit_classes(const Lattice& m, const GeneratorSet& gens);

struct NeighbourResult {
  LatticeVector v;    // defining vector in M
  Embedded k;         // {x in M : <v,x> even}
  Embedded m1;        // M itself
  Embedded m2;        // the even neighbour
  Embedded odd;       // odd unimodular lattice with even part K
  LatticeVector reverse;  // vector of M2 (M2 coordinates) whose neighbour is M
};

/// Requires <v,v> = 0 mod 4 and v not in 2M; all bases are in M coordinates.
NeighbourResult two_neighbour(const Lattice& m, const LatticeVector& v);

/// 1: neighbours not isometric; 2: loop joining different orbits; 3: loop
/// whose two ends lie in the same orbit.
int edge_kind(const Lattice& m, const OrbitData& orbits, const NeighbourResult& res);

struct GraphNode {
  Lattice lattice;
  GeneratorSet gens;
  Fingerprint fp;
  std::string name;
};

struct NeighbourEdge {
  std::size_t from = 0, to = 0;
  Lattice k;
  std::string k_name;
  Lattice odd;
  std::string odd_name;
  int kind = 1;
  std::uint64_t orbit_size = 0;
  LatticeVector v;  // in the lattice of node `from`
  /// The odd lattice contains unit vectors; such edges are loops and are
  /// customarily left out of drawn graphs.
  bool has_units = false;
};

struct NeighbourGraph {
  std::vector<GraphNode> nodes;
  std::vector<NeighbourEdge> edges;
  std::size_t loops() const;
  std::string to_dot() const;
  std::string to_json() const;
};

/// Closure of the seeds under 2-neighbours. New nodes get their root
/// reflections as generators.
NeighbourGraph build_graph(const std::vector<std::pair<Lattice, GeneratorSet>>& seeds);

/// Seed for the graph of even unimodular lattices of the given rank (0, 8, 16).
std::vector<std::pair<Lattice, GeneratorSet>> standard_seeds(std::size_t rank);

struct OddClassRow {
  std::size_t rank = 0;
  std::size_t odd = 0;
  std::size_t even = 0;
  std::size_t new_odd_stumps = 0;  // odd lattices without unit vectors
  std::vector<std::string> odd_names;
  std::vector<std::string> even_names;
};

struct OddClassification {
  std::vector<OddClassRow> rows;  // ranks 0..max_rank
  std::vector<Lattice> odd_stumps;
  std::vector<Lattice> even_stumps;
};

OddClassification classify_odd_unimodular(std::size_t max_rank);

struct InnerOrbit {
  OrbitClass orbit;
  LatticeVector h;        // v/2, in M coordinates
  Embedded fixed;         // L^h
  std::string glue_type;  // always "I" for unimodular M
  Embedded neighbour;     // L^h together with the even part of h + M
};

std::vector<InnerOrbit> classify_inner_lattice_node(const Lattice& m, const GeneratorSet& gens);

}  // namespace svoa
