#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biauto/central.hpp"

namespace biauto {

/// Quotient map G -> G/N for a subgroup N generated by central elements,
/// computed by a Smith normal form change of basis on the abelian factors
/// that N touches. Maps compose by chaining stages.
class Projection {
 public:
  Projection() = default;
  static Projection identity(const Group& g);
  static Projection quotient(const Group& g, const std::vector<Element>& central);

  const Group& source() const { return stages_.front().source; }
  const Group& target() const { return stages_.back().target; }
  Element operator()(const Element& g) const;
  Projection then(const Projection& next) const;
  std::size_t stage_count() const noexcept { return stages_.size(); }

 private:
  struct Stage {
    Group source, target;
    std::vector<std::size_t> touched;          // source factors merged into one abelian block
    std::vector<std::optional<std::size_t>> copy_to;  // untouched source factor -> target factor
    std::optional<std::size_t> merged_to;      // target factor of the merged block, if kept
    lattice::Matrix V;
    lattice::Vec orders;                       // per column: 0 free, 1 dropped, >1 torsion
    Element apply(const Element& g) const;
  };
  std::vector<Stage> stages_;
};

/// Recognizes the words whose path meets `loop`.
Automaton build_touch_acceptor(const Automaton& m, const Loop& loop);

/// Recognizes the words whose path, from its first arrival on `loop`,
/// immediately runs through the rotated loop at least n times.
Automaton build_contains_acceptor(const Automaton& m, const Loop& loop, Int n);

struct BoundReport {
  std::size_t K = 0;
  Int A = 0, R = 0;
  std::size_t z_length = 0;
  std::size_t K1 = 0;
  std::size_t U = 0;
  std::size_t M = 0;
  std::size_t B = 0;
  std::size_t K_prime = 0;
  std::string M_convention = "live states of the minimized acceptor";
};

BoundReport compute_bound(const BiautomaticStructure& bs, const Element& z, const BallOptions& options = {});

struct QuotientStructure {
  BiautomaticStructure structure;  // over H = G/<z>, acceptor L_H, constant K'
  Projection projection;
  Element z;
  std::vector<ZCycle> cycles;  // all primitive Z-cycles
  CycleConstants constants;
  BoundReport bound;
};

/// The coset language L_H for G/<z> packaged with the quotient model.
QuotientStructure build_LH(const BiautomaticStructure& bs, const Element& z, const BallOptions& options = {});

/// Coset surjectivity over words of length <= max(max_len, radius), two-way
/// fellow travelling in H, and the measured constant against K'.
std::vector<VerificationReport> verify_quotient(const QuotientStructure& qs, std::size_t radius, std::size_t max_len,
                                                const VerifyOptions& options = {});

struct ProjectedStructure {
  BiautomaticStructure structure;
  Projection projection;
};

/// Same acceptor over G/N for a finite central N given by generators.
ProjectedStructure finite_quotient_projection(const BiautomaticStructure& bs, const std::vector<Element>& generators);

struct PipelineStep {
  std::string kind;  // "theorem_e" or "finite"
  std::string element;  // z, or the finite generators, in the step's source group
  std::string group;    // description of the resulting group
  std::size_t states = 0;
  std::size_t K = 0;
  std::optional<BoundReport> bound;
};

struct PipelineResult {
  BiautomaticStructure structure;
  Projection projection;
  std::vector<PipelineStep> log;
};

/// Peels the central subgroup generated by `central` off one infinite cyclic
/// factor at a time, then projects away the finite remainder.
PipelineResult theorem_a_pipeline(const BiautomaticStructure& bs, const std::vector<Element>& central,
                                  const BallOptions& options = {});

}  // namespace biauto
