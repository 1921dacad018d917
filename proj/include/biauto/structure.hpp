#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biauto/fsa.hpp"
#include "biauto/group.hpp"

namespace biauto {

/// Normal-form acceptor over a generating alphabet of a group, with a claimed
/// two-way fellow traveller constant.
class BiautomaticStructure {
 public:
  BiautomaticStructure(GroupModel model, Automaton acceptor, std::size_t fellow_traveller_constant);

  const GroupModel& model() const noexcept { return model_; }
  const Group& group() const noexcept { return model_.group(); }
  const Alphabet& alphabet() const noexcept { return model_.alphabet(); }
  const Automaton& acceptor() const noexcept { return acceptor_; }
  std::size_t K() const noexcept { return K_; }

  Element evaluate(const Word& w) const { return model_.evaluate(w); }

 private:
  GroupModel model_;
  Automaton acceptor_;
  std::size_t K_;
};

/// Outcome of one bounded check. Witnesses are tuples of rendered words and
/// elements that parse back with Alphabet::parse / Group::parse.
struct VerificationReport {
  std::string property;
  bool passed = true;
  std::string bound_name;  // e.g. "max_len", "radius"
  std::size_t bound = 0;
  std::vector<std::vector<std::string>> witnesses;  // capped, in enumeration order
  std::size_t witness_total = 0;
  std::optional<std::size_t> measured;  // measured constant, when the check has one
  std::vector<std::pair<std::string, std::string>> notes;

  static VerificationReport make(std::string property, std::string bound_name, std::size_t bound);
  void add_witness(std::vector<std::string> w, std::size_t cap);
};

struct VerifyOptions {
  std::size_t slack = 4;
  std::size_t witness_cap = 32;
  std::size_t search_radius = 64;
};

VerificationReport verify_surjectivity(const BiautomaticStructure& bs, std::size_t radius,
                                       const VerifyOptions& options = {});
VerificationReport verify_uniqueness(const BiautomaticStructure& bs, std::size_t max_len,
                                     const VerifyOptions& options = {});
/// Measures the two-way constant over all accepted pairs of length <= max_len.
/// Witness tuples: (side, v, w, a, t, distance); side is "right" for
/// v = w a and "left" for a v = w.
VerificationReport verify_fellow_traveller(const BiautomaticStructure& bs, std::size_t max_len,
                                           const VerifyOptions& options = {});

/// Names accepted by builtin().
std::vector<std::string> builtin_names();
BiautomaticStructure builtin(const std::string& name);
/// The fixture's distinguished central element z.
Element builtin_center(const std::string& name);

}  // namespace biauto
