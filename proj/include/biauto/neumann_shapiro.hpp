#pragma once

#include <string>
#include <vector>

#include "biauto/quotient.hpp"

namespace biauto {

/// Primitive integer vector standing for a ray in Z^k.
using Direction = lattice::Vec;

Direction direction_of(const lattice::Vec& v);

/// Ordered rational simplex on the sphere at infinity.
struct Simplex {
  std::vector<Direction> vertices;
  Word source;  // word of the simple path it was read from (empty for added faces)

  std::size_t dimension() const noexcept { return vertices.size() - 1; }
  /// Vertices in sorted order; identifies the simplex as a set.
  std::vector<Direction> key() const;
};

struct Subdivision {
  std::size_t rank = 0;
  std::vector<Simplex> simplices;  // sorted by dimension, then key

  /// Number of simplices of each dimension.
  std::vector<std::size_t> f_vector() const;
};

struct LoopAnchor {
  std::size_t time = 0;  // index into the path's visited states
  Loop loop;
};

/// s_1 is the first state of the path on a simple loop; s_i the first state
/// after s_{i-1} on a simple loop other than the previous one.
std::vector<LoopAnchor> loop_sequence(const Automaton& m, const Path& pi);

/// All vertex-simple accepted paths from the start state, in shortlex order.
std::vector<Path> simple_accepted_paths(const Automaton& m);

Subdivision build_subdivision(const BiautomaticStructure& bs);

/// Adds every face of every simplex, removing duplicates.
Subdivision close_faces(Subdivision s);

/// Independence of each simplex, and: every nonzero integer point of the
/// L1 ball lies in the relative interior of exactly one simplex cone.
VerificationReport verify_subdivision(const Subdivision& s, std::size_t sample_radius,
                                      std::size_t witness_cap = 32);

struct PathNormalForm {
  Path pi;
  std::vector<LoopAnchor> anchors;
  std::vector<Int> exponents;

  Word word() const;
};

PathNormalForm path_normal_form(const BiautomaticStructure& bs, const Element& g);

/// Angle in [0, pi] between the rays of two nonzero vectors.
double visual_distance(const lattice::Vec& a, const lattice::Vec& b);

/// Checks the annulus B_r < |g| <= 2 B_r, where B_r = ceil(delta / sin eps) + delta
/// and delta is the longest simple live path.
VerificationReport visual_lemma_check(const BiautomaticStructure& bs, double epsilon,
                                      std::size_t witness_cap = 32);

/// Simplices whose closed cone contains d.
std::vector<Simplex> star(const Subdivision& s, const Direction& d);

struct Representative {
  Word word;
  Int m = 0;             // power of z used to move g near [z]
  double epsilon = 0;    // neighbourhood radius around [z]
  std::size_t ball_radius = 0;
  Int stripped = 0;      // total multiplicity removed
};

/// Constructive L_H representative of the coset g<z> for an abelian structure.
Representative find_LH_representative(const BiautomaticStructure& bs, const QuotientStructure& qs, const Element& g,
                                      Int m_cap = 100000);

/// Plain-text listing: one simplex per line, vertices as integer vectors.
std::string export_subdivision(const Subdivision& s);

}  // namespace biauto
