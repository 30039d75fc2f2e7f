#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rdc/group.hpp"
#include "rdc/matrix.hpp"

namespace rdc {

/// A homomorphism between descriptor groups in coordinates.
///
/// A group G is presented as (Z^k + R^m) / Lambda with k = fg_generator_count
/// (free coordinates first, then one per torsion factor) and m = real_rank +
/// number of circles (real coordinates first). Lambda is generated by
/// order_i * e_i on torsion coordinates and by the unit vectors on circle
/// coordinates, so circle coordinates are measured in units of the lattice.
///
/// `fg` is k_target x k_source. `cont` is m_target x (k_source + m_source):
/// its first k_source columns give the lattice-to-real cross block (Z(w) -> R
/// in the (e_k) pattern), the rest act on real and circle coordinates.
/// Continuous coordinates never map to discrete ones.
///
/// Instead of `cont`, a map may give only `real_rank`: the rank of a linear
/// map R^{m_source} -> R^{m_target}. That form needs circle-free groups and
/// carries no cross block.
struct Homomorphism {
  IntegerMatrix fg;
  std::optional<IntegerMatrix> cont;
  std::optional<std::int64_t> real_rank;
};

struct SequenceNode {
  std::optional<GroupDescriptor> group;
  /// Map to the next node; ignored (and may be absent) on the last node.
  std::optional<Homomorphism> map_to_next;
};

enum class NodeStatus { kExact, kInexact, kNotComplex };

struct NodeReport {
  std::size_t index;
  NodeStatus status;
  /// ker / im when inexact.
  std::optional<GroupDescriptor> homology;
  std::string note;
};

struct ExactnessReport {
  std::vector<NodeReport> nodes;
  bool exact() const;
};

/// Checks image = kernel at every interior node. Dimension mismatches,
/// unknown entries and ill-defined maps raise malformed-input errors.
ExactnessReport verify_exact(const std::vector<SequenceNode>& seq);

struct ExtensionHints {
  /// The extension is known to split.
  bool split = false;
  /// Read the second argument as the middle term R^m containing A = Z(w)^r as
  /// a lattice and solve for the quotient instead.
  bool lattice_quotient = false;
  /// Weight tag for the circles produced by lattice_quotient.
  std::int64_t weight = 0;
};

struct ShortExactSolution {
  std::optional<GroupDescriptor> group;
  /// Possible middle terms when the sequence does not force one.
  std::vector<GroupDescriptor> candidates;
  std::string note;

  bool ambiguous() const { return !group.has_value(); }
};

/// Solves 0 -> A -> B -> C -> 0 for B (or for C under lattice_quotient).
ShortExactSolution solve_short_exact(const GroupDescriptor& a, const GroupDescriptor& c,
                                     const ExtensionHints& hints = {});

/// The standard inclusion / projection sequence 0 -> A -> A + C -> C -> 0.
std::vector<SequenceNode> split_sequence(const GroupDescriptor& a, const GroupDescriptor& c);

/// 0 -> Z(2k) -> R -> D^{1,2k} -> 0.
std::vector<SequenceNode> e_sequence(std::int64_t k);
/// 0 -> R -> D^{1,2k-1} -> Z/2 -> 0, with x -> log|x| and the sign map.
std::vector<SequenceNode> o_sequence(std::int64_t k);

/// Number of continuous coordinates (real_rank + circles).
inline std::int64_t continuous_dim(const GroupDescriptor& g) {
  return g.real_rank() + static_cast<std::int64_t>(g.circle_factors().size());
}

}  // namespace rdc
