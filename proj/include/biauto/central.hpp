#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biauto/structure.hpp"

namespace biauto {

/// Live simple loop whose word evaluates to a central element.
struct CentralLoop {
  Loop loop;
  Element element;
  lattice::Vec free;     // center coordinates, free part
  lattice::Vec torsion;  // center coordinates, residues

  bool operator==(const CentralLoop& o) const { return loop == o.loop; }
};

/// "word@state" rendering of the canonical base point.
std::string loop_label(const Automaton& m, const Loop& loop);

std::vector<CentralLoop> find_central_loops(const BiautomaticStructure& bs, std::size_t loop_cap = 10000);

/// Live simple loops must not meet each other when one of them is central.
/// Witnesses: (central loop, other loop, shared state).
VerificationReport check_simplicity(const BiautomaticStructure& bs, std::size_t loop_cap = 10000);

/// A set of central loops (indices into the find_central_loops list) met by
/// one accepted path; `witness` is the shortlex-least such path's word.
struct LiveSet {
  std::vector<std::size_t> members;
  Word witness;
};

std::vector<LiveSet> enumerate_live_sets(const BiautomaticStructure& bs, const std::vector<CentralLoop>& loops);

/// Independence of central elements in the center (no nontrivial integer
/// relation). On failure the witness is (coefficients, labels) of a relation.
VerificationReport check_independence(const Group& group, const std::vector<Element>& elements,
                                      const std::vector<std::string>& labels);
VerificationReport check_independence(const BiautomaticStructure& bs, const std::vector<CentralLoop>& loops,
                                      const LiveSet& set);

struct CycleTerm {
  CentralLoop loop;
  Int coefficient = 1;
};

/// Positive combination of the loops of a live set.
struct CentralCycle {
  std::vector<CycleTerm> terms;

  Element element(const Group& g) const;
  bool is_primitive() const;  // gcd of coefficients is 1
  CentralCycle scaled(Int k) const;
  std::string label(const Automaton& m) const;
};

/// A central cycle representing z^exponent.
struct ZCycle {
  CentralCycle cycle;
  Int exponent = 0;
  std::vector<std::size_t> members;  // indices into find_central_loops

  bool positive() const noexcept { return exponent >= 1; }
};

/// One Z-cycle per live set that carries one: the generator of the rank <= 1
/// lattice of coefficient vectors representing powers of z, oriented so the
/// coefficients are positive. Throws Structural on an independence failure.
std::vector<ZCycle> find_primitive_z_cycles(const BiautomaticStructure& bs, const Element& z);

/// Insert c's loop powers at the first visit of `pi` to each loop.
Path splice(const Automaton& m, const Path& pi, const CentralCycle& c);

/// True iff at its first visit to each loop, the path immediately runs
/// through that loop at least `coefficient` consecutive times.
bool contains(const Automaton& m, const Path& q, const CentralCycle& c);

struct StripResult {
  Path base;
  Int multiplicity = 0;
};

/// Largest m with q = splice(base, m c); (q, 0) when q does not contain c.
StripResult strip(const Automaton& m, const Path& q, const CentralCycle& c);

struct LoopPowerClass {
  std::size_t loop = 0;                 // index into find_central_loops
  std::vector<std::size_t> members;     // loops with a positive iterate equal to a positive power of it
  Int m = 1;                            // least m such that every member has an iterate equal to loop^m
};

struct CycleConstants {
  Int A = 0;                            // largest exponent of a primitive positive Z-cycle
  std::vector<ZCycle> positive;         // primitive positive Z-cycles
  std::vector<LoopPowerClass> classes;  // one per loop occurring in a positive cycle
  std::vector<std::vector<Int>> rho;    // per positive cycle, per term
  Int R = 0;
};

CycleConstants compute_cycle_constants(const BiautomaticStructure& bs, const Element& z);

}  // namespace biauto
