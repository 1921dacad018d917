#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "biauto/fsa.hpp"
#include "biauto/lattice.hpp"

namespace biauto {

using lattice::Int;

/// Group element in the flat encoding of its Group: per factor, an abelian
/// block [free coords..., residues...] or a free block [length, letters...]
/// with letters encoded as +/-(generator index + 1).
struct Element {
  std::vector<Int> data;
  auto operator<=>(const Element&) const = default;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// Z^rank + Z/torsion[0] + ... ; every torsion order is >= 2.
struct AbelianFactor {
  std::size_t rank = 0;
  std::vector<Int> torsion;
  bool operator==(const AbelianFactor&) const = default;
};

/// Free group on the named generators.
struct FreeFactor {
  std::vector<std::string> names;
  bool operator==(const FreeFactor&) const = default;
};

using Factor = std::variant<AbelianFactor, FreeFactor>;

/// Coordinates of central elements in the explicit presentation of the
/// center: abelian factors contribute all their coordinates, rank-1 free
/// factors one free coordinate, other free factors nothing.
struct CenterCoordinates {
  lattice::Matrix free;     // one row per input element
  lattice::Matrix torsion;  // residues, one row per input element
  lattice::Vec moduli;      // torsion column orders
};

/// A direct product of abelian and free factors. Equality, products,
/// centrality and cyclic membership are exact.
class Group {
 public:
  Group() : Group(std::vector<Factor>{AbelianFactor{}}) {}
  explicit Group(std::vector<Factor> factors);

  static Group abelian(std::size_t rank, std::vector<Int> torsion = {});
  static Group free(std::vector<std::string> names);
  static Group product(const Group& left, const Group& right);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_abelian() const;
  /// Rank of the free part when abelian (rank-1 free factors count as Z).
  std::size_t free_rank() const;

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  Element power(const Element& a, Int e) const;
  bool is_identity(const Element& a) const { return a == identity_; }
  bool commute(const Element& a, const Element& b) const;
  bool has_infinite_order(const Element& a) const;

  /// Throws Input when `a` is not a well-formed element of this group.
  void validate(const Element& a) const;

  /// e with g = z^e, if any. Precondition: z has infinite order.
  std::optional<Int> cyclic_exponent(const Element& z, const Element& g) const;

  /// Structural center test (independent of any generating set).
  bool in_center(const Element& g) const;
  CenterCoordinates center_coordinates(const std::vector<Element>& gs) const;
  Element from_center_coordinates(const lattice::Vec& free, const lattice::Vec& torsion) const;
  std::size_t center_free_rank() const;
  lattice::Vec center_moduli() const;

  std::string format(const Element& a) const;
  Element parse(std::string_view text) const;
  std::string describe() const;

  /// One block per factor: [free..., residues...] for abelian factors, the
  /// reduced letter sequence (+/-(index+1)) for free factors.
  std::vector<std::vector<Int>> split(const Element& a) const;
  Element join(const std::vector<std::vector<Int>>& parts) const;

  bool operator==(const Group& o) const { return factors_ == o.factors_; }

 private:
  std::vector<Factor> factors_;
  Element identity_;
};

/// A group together with the images of the alphabet letters.
class GroupModel {
 public:
  GroupModel() = default;
  GroupModel(Group group, Alphabet alphabet, std::vector<Element> images);

  const Group& group() const noexcept { return group_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Element>& images() const noexcept { return images_; }
  const Element& image(Letter x) const { return images_.at(x); }

  Element evaluate(const Word& w) const;
  /// Prefix images w(0), ..., w(|w|).
  std::vector<Element> prefixes(const Word& w) const;

  /// Commutes with the image of every letter.
  bool is_central(const Element& g) const;

  /// Every image's inverse is again an image.
  bool is_symmetric() const;

  /// Distinct non-identity images, in letter order.
  const std::vector<Element>& steps() const noexcept { return steps_; }

 private:
  Group group_;
  Alphabet alphabet_;
  std::vector<Element> images_;
  std::vector<Element> steps_;
};

CenterCoordinates central_coordinates(const GroupModel& model, const std::vector<Element>& gs);
std::optional<Int> cyclic_exponent(const GroupModel& model, const Element& z, const Element& g);

/// Exact Cayley ball; members listed in BFS order (ties in letter order).
struct Ball {
  std::size_t radius = 0;
  std::vector<Element> members;
  std::unordered_map<Element, std::size_t, ElementHash> length;

  bool contains(const Element& g) const { return length.count(g) != 0; }
  std::size_t size() const noexcept { return members.size(); }
};

struct BallOptions {
  std::size_t max_elements = 4'000'000;
};

Ball ball(const GroupModel& model, std::size_t radius, const BallOptions& options = {});

/// Word metric with a memo table. Lengths are found by bidirectional BFS
/// capped at `search_radius`; beyond it a Resource ("distance overflow")
/// error reports the cap.
class WordMetric {
 public:
  explicit WordMetric(const GroupModel& model, std::size_t search_radius = 64);

  std::size_t length(const Element& g);
  std::size_t distance(const Element& g, const Element& h);
  std::size_t search_radius() const noexcept { return search_radius_; }

 private:
  const GroupModel* model_;
  std::size_t search_radius_;
  std::unordered_map<Element, std::size_t, ElementHash> memo_;
};

std::size_t distance(const GroupModel& model, const Element& g, const Element& h, std::size_t search_radius = 64);

}  // namespace biauto
