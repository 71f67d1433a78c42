// Detectors for the three classic inheritance problems (exceptions,
// redundancy, ambiguity) with repairs phrased as partial or weak plans.

#ifndef OODN_DIAGNOSTICS_HPP_
#define OODN_DIAGNOSTICS_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oodn/inheritance.hpp"
#include "oodn/model.hpp"

namespace oodn {

enum class DiagnosticKind { Exception, Redundancy, Ambiguity };

std::string_view to_string(DiagnosticKind k);

/// A repair other than the main suggestion. `drop_own` names heir members
/// that must be removed before `plan` applies cleanly.
struct Alternative {
  InheritancePlan plan;
  std::vector<std::string> drop_own;
  std::string note;

  friend bool operator==(const Alternative&, const Alternative&) = default;
};

struct Diagnostic {
  DiagnosticKind kind;
  std::string plan;  // heir of the offending plan
  std::vector<std::string> subjects;
  std::vector<std::string> members;
  std::string explanation;
  std::optional<InheritancePlan> suggestion;
  std::vector<Alternative> alternatives;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One diagnostic per heir member that contradicts an inherited member.
std::vector<Diagnostic> detect_exception(const InheritancePlan& plan, const Network& net);

/// With `required`: one diagnostic listing every inherited member outside it.
/// Without: one diagnostic per member that arrives from two or more levels.
/// Throws DiagnosticError if `required` names something no source offers.
std::vector<Diagnostic> detect_redundancy(
    const InheritancePlan& plan, const Network& net,
    const std::optional<std::set<std::string>>& required = std::nullopt);

/// One diagnostic per name offered with different definitions by two or more
/// parallel sources. Degree clashes between similar members count too unless
/// `policy` resolves them.
std::vector<Diagnostic> detect_ambiguity(const InheritancePlan& plan, const Network& net,
                                         DegreePolicy policy = DegreePolicy::Reject);

/// All three detectors over every plan, ordered by plan and then member name.
std::vector<Diagnostic> diagnose_all(const Network& net,
                                     const std::optional<std::set<std::string>>& required =
                                         std::nullopt,
                                     DegreePolicy policy = DegreePolicy::Reject);

/// Replaces each plan by its suggestions until no suggestion applies.
/// Returns the number of plan rewrites.
std::size_t apply_suggestions(Network& net,
                              const std::optional<std::set<std::string>>& required = std::nullopt,
                              DegreePolicy policy = DegreePolicy::Reject);

/// "exception plan Penguin [Bird, Penguin] fly: ..." plus suggestion lines.
std::string render_report(const std::vector<Diagnostic>& diagnostics);

}  // namespace oodn

#endif  // OODN_DIAGNOSTICS_HPP_
