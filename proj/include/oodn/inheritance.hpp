// Core/projection inheritance algebra for all eight inheritance types
// (single|multiple x full|partial x strong|weak).

#ifndef OODN_INHERITANCE_HPP_
#define OODN_INHERITANCE_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oodn/model.hpp"

namespace oodn {

struct Octant {
  enum class Arity { Single, Multiple };
  enum class Extent { Full, Partial };
  enum class Strength { Strong, Weak };

  Arity arity = Arity::Single;
  Extent extent = Extent::Full;
  Strength strength = Strength::Strong;

  friend bool operator==(const Octant&, const Octant&) = default;
};

/// "single/full/strong" and so on.
std::string to_string(const Octant& o);

/// How to combine one member weakly inherited from several parallel sources
/// at different degrees.
enum class DegreePolicy { Reject, Min, Max };

std::optional<DegreePolicy> parse_degree_policy(std::string_view s);

enum class ConflictKind { UnknownClass, UnknownMember, MalformedPlan, Exception, Ambiguity };

/// A reason a plan cannot be executed as written.
struct Conflict {
  ConflictKind kind;
  std::vector<std::string> subjects;
  std::vector<std::string> members;
  std::string explanation;

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

class InheritanceError : public std::runtime_error {
 public:
  InheritanceError(Conflict conflict, std::optional<InheritancePlan> repair = std::nullopt);

  const Conflict& conflict() const { return conflict_; }
  /// For exception conflicts: the same plan with the clashing name left out.
  const std::optional<InheritancePlan>& repair() const { return repair_; }

 private:
  Conflict conflict_;
  std::optional<InheritancePlan> repair_;
};

struct CoreSplit {
  MemberSet core;
  std::vector<MemberSet> remainders;
};

/// Members similar (with equal degree) across all sets, copied from the first
/// set, and what is left of each set. Needs at least two sets.
CoreSplit compute_core(const std::vector<MemberSet>& sets);

/// One inherited or declared member of a participant, with the participants
/// whose own declarations it arrived from along one inheritance path.
struct Arrival {
  DegreedMember member;
  std::vector<std::string> origins;
  /// Source the member was inherited through; empty for own members.
  std::string via;
};

/// What a plan gives each participant before the core/projection split.
/// Participants run roots first and the heir last.
struct PlanAnalysis {
  std::vector<std::string> participants;
  std::vector<std::vector<Arrival>> effective;
  std::vector<Conflict> conflicts;

  /// Index of a participant, or npos.
  std::size_t index_of(const std::string& name) const;
  MemberSet members_of(std::size_t i) const;
};

/// Resolves the plan against the network without failing on conflicts; every
/// conflict found is listed. Unresolvable member references make the
/// affected participant skip that source.
PlanAnalysis analyze_plan(const InheritancePlan& plan, const Network& net,
                          DegreePolicy policy = DegreePolicy::Reject);

/// Members a source offers to the next level of the plan: the source's own
/// members for a parallel plan, the effective set of the level for a chain.
MemberSet available_from(const InheritancePlan& plan, std::size_t source_index,
                         const Network& net);

struct InheritOptions {
  DegreePolicy policy = DegreePolicy::Reject;
};

/// Executes any plan. Throws InheritanceError on the first conflict.
HetClass inherit(const InheritancePlan& plan, const Network& net, InheritOptions options = {});

/// Full strong inheritance down a chain given root first: chain[1] inherits
/// chain[0], chain[2] inherits chain[1], ...
HetClass inherit_single(const std::vector<std::string>& chain, const Network& net);

/// Full strong inheritance of `heir` from every source in parallel.
HetClass inherit_multiple(const std::vector<std::string>& sources, const std::string& heir,
                          const Network& net, InheritOptions options = {});

/// The plan with `member` no longer taken from source `source_index`.
/// Listed selections that become empty drop their source when the plan has
/// other parallel sources; nullopt when nothing valid remains.
std::optional<InheritancePlan> without_member(const InheritancePlan& plan,
                                              std::size_t source_index,
                                              const std::string& member, const Network& net);

/// Builds the heterogeneous class from already computed effective sets.
HetClass assemble(const std::string& name, const std::vector<std::string>& participants,
                  const std::vector<MemberSet>& effective, bool parallel_heir);

/// Octant of a plan, reading "partial" off the source members in `net`.
Octant classify_plan(const InheritancePlan& plan, const Network& net);
/// Octant without a network: any Listed selection counts as partial.
Octant classify_plan(const InheritancePlan& plan);

/// Structure of one participant: core plus its projection and everything
/// that projection depends on. Throws std::out_of_range for non-participants.
MemberSet decompose(const HetClass& het, const std::string& name);

/// Effective members of a class in the network: the plan result for a plan
/// heir, the declared members of a homogeneous class, or the participant's
/// structure inside a stored heterogeneous class.
MemberSet materialize(const Network& net, const std::string& name,
                      InheritOptions options = {});

/// Rebuilds `net.derived` for every plan and clears stale marks. Plans that
/// fail are reported and left out.
std::vector<Conflict> rebuild_derived(Network& net, InheritOptions options = {});

}  // namespace oodn

#endif  // OODN_INHERITANCE_HPP_
