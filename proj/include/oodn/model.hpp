// Domain types of an object-oriented dynamic network: members, homogeneous
// and heterogeneous classes, objects, relations and the network itself.
//
// Everything here is a value type. Inference lives in inheritance.hpp and
// operations.hpp; this header only knows how to check its own invariants.

#ifndef OODN_MODEL_HPP_
#define OODN_MODEL_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace oodn {

using Rational = boost::rational<std::int64_t>;

/// Canonical text for an exact rational: terminating decimals print as
/// decimals ("0.5", "1", "0.125"), everything else as "n/d".
std::string format_rational(const Rational& r);

/// Membership degree in (0, 1]. 1 is strong membership, anything below is weak.
class Degree {
 public:
  Degree() = default;
  explicit Degree(const Rational& value);
  Degree(std::int64_t num, std::int64_t den) : Degree(Rational(num, den)) {}

  static Degree one() { return Degree(); }

  const Rational& value() const { return value_; }
  bool is_strong() const { return value_ == Rational(1); }
  bool is_weak() const { return value_ < Rational(1); }

  Degree operator*(const Degree& other) const { return Degree(value_ * other.value_); }

  friend bool operator==(const Degree& a, const Degree& b) { return a.value_ == b.value_; }
  friend bool operator<(const Degree& a, const Degree& b) { return a.value_ < b.value_; }

 private:
  Rational value_{1};
};

inline std::string to_string(const Degree& d) { return format_rational(d.value()); }

enum class TypeTag { Int, Real, Text, Bool, Fuzzy };

std::string_view to_string(TypeTag t);
std::optional<TypeTag> parse_type_tag(std::string_view s);

/// Element label of a fuzzy set: a number or a piece of text.
using FuzzyLabel = std::variant<std::int64_t, double, std::string>;

struct FuzzyElement {
  FuzzyLabel element;
  Rational membership;

  friend bool operator==(const FuzzyElement&, const FuzzyElement&) = default;
};

struct FuzzySet {
  std::vector<FuzzyElement> elements;

  friend bool operator==(const FuzzySet&, const FuzzySet&) = default;
};

using PropertyValue = std::variant<std::int64_t, double, std::string, bool, FuzzySet>;

bool is_fuzzy_value(const PropertyValue& v);
bool value_matches(TypeTag type, const PropertyValue& v);
/// Empty when the fuzzy set is well formed, otherwise the broken rule.
std::optional<std::string> check_fuzzy_set(const FuzzySet& set);

struct Parameter {
  std::string name;
  TypeTag type;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct Property {
  TypeTag type;
  PropertyValue value;

  friend bool operator==(const Property&, const Property&) = default;
};

/// Methods are symbolic declarations; there are no bodies.
struct Method {
  std::vector<Parameter> params;
  std::optional<TypeTag> returns;

  friend bool operator==(const Method&, const Method&) = default;
};

enum class MemberKind { Property, Method };

struct Member {
  std::string name;
  std::string owner;
  std::variant<Property, Method> body;

  static Member property(std::string name, std::string owner, TypeTag type, PropertyValue value);
  static Member method(std::string name, std::string owner, std::vector<Parameter> params = {},
                       std::optional<TypeTag> returns = std::nullopt);

  MemberKind kind() const {
    return std::holds_alternative<Property>(body) ? MemberKind::Property : MemberKind::Method;
  }
  bool is_property() const { return kind() == MemberKind::Property; }
  const Property& as_property() const { return std::get<Property>(body); }
  const Method& as_method() const { return std::get<Method>(body); }

  friend bool operator==(const Member&, const Member&) = default;
};

/// Two members describe the same thing: same kind and name, and equal type
/// plus value (properties) or equal signature (methods). Owner is ignored.
bool similar(const Member& a, const Member& b);

struct DegreedMember {
  Member member;
  Degree degree;

  const std::string& name() const { return member.name; }

  friend bool operator==(const DegreedMember&, const DegreedMember&) = default;
};

/// True when both members are similar and carry the same degree.
bool same_item(const DegreedMember& a, const DegreedMember& b);

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered member collection with unique names. Iteration follows insertion
/// order; equality compares as sets.
class MemberSet {
 public:
  using const_iterator = std::vector<DegreedMember>::const_iterator;

  MemberSet() = default;
  MemberSet(std::initializer_list<DegreedMember> members);

  /// Throws InvariantError on a duplicate name.
  void add(DegreedMember m);
  void add(Member m, Degree d = Degree::one()) { add(DegreedMember{std::move(m), d}); }
  bool remove(const std::string& name);

  const DegreedMember* find(const std::string& name) const;
  DegreedMember* find(const std::string& name);
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  /// A member similar to `m` with the same degree.
  const DegreedMember* find_item(const DegreedMember& m) const;

  std::vector<std::string> names() const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const_iterator begin() const { return members_.begin(); }
  const_iterator end() const { return members_.end(); }
  const DegreedMember& operator[](std::size_t i) const { return members_[i]; }

  friend bool operator==(const MemberSet& a, const MemberSet& b);

 private:
  std::vector<DegreedMember> members_;
};

/// Same size and every item of `a` has a similar, equally degreed item in `b`.
bool equivalent(const MemberSet& a, const MemberSet& b);

struct HomClass {
  std::string name;
  MemberSet spec;  // properties
  MemberSet sig;   // methods

  /// spec followed by sig.
  MemberSet members() const;
  /// Puts the member into spec or sig by kind.
  void add(DegreedMember m);

  friend bool operator==(const HomClass&, const HomClass&) = default;
};

struct Projection {
  std::string label;
  std::vector<std::string> depends_on;
  MemberSet members;

  friend bool operator==(const Projection&, const Projection&) = default;
};

/// A class or object that took part in building a heterogeneous class, and
/// the projection its structure starts from (none: it is the core alone).
struct Participant {
  std::string name;
  std::optional<std::string> entry;

  friend bool operator==(const Participant&, const Participant&) = default;
};

struct HetClass {
  std::string name;
  MemberSet core;
  std::vector<Projection> projections;
  std::vector<Participant> participants;

  const Projection* find_projection(const std::string& label) const;
  const Participant* find_participant(const std::string& name) const;

  friend bool operator==(const HetClass&, const HetClass&) = default;
};

using ClassEntry = std::variant<HomClass, HetClass>;

const std::string& class_name(const ClassEntry& c);

struct ObjectInstance {
  std::string name;
  std::string class_ref;
  std::vector<std::pair<std::string, PropertyValue>> assignments;

  const PropertyValue* find(const std::string& member) const;

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

enum class RelationKind { Generalization, InstanceOf, Aggregation, Association };

std::string_view to_string(RelationKind k);
std::optional<RelationKind> parse_relation_kind(std::string_view s);

struct Relation {
  RelationKind kind;
  std::string label;
  std::string from;
  std::string to;
  std::optional<Degree> degree;

  friend bool operator==(const Relation&, const Relation&) = default;
};

// Inheritance plans are stored in the network, so their types live here.
// The algebra that executes them is in inheritance.hpp.

struct SelectionItem {
  std::string name;
  Degree degree;

  friend bool operator==(const SelectionItem&, const SelectionItem&) = default;
};

/// What an heir takes from one source. In All mode `items` are degree
/// overrides for an otherwise complete inheritance; in Listed mode they are
/// the only members taken.
struct Selection {
  enum class Mode { All, Listed };

  Mode mode = Mode::All;
  std::vector<SelectionItem> items;

  static Selection all() { return {}; }
  static Selection listed(std::vector<SelectionItem> items) {
    return {Mode::Listed, std::move(items)};
  }

  const SelectionItem* find(const std::string& name) const;
  bool has_weak_degree() const;

  friend bool operator==(const Selection&, const Selection&) = default;
};

struct PlanSource {
  std::string name;
  Selection selection;

  friend bool operator==(const PlanSource&, const PlanSource&) = default;
};

/// One inheritance act. For a chain, sources run nearest-first: the heir
/// inherits sources[0], which inherits sources[1], and so on.
struct InheritancePlan {
  std::string heir;
  std::vector<PlanSource> sources;
  bool chain = true;

  bool is_parallel() const { return !chain && sources.size() >= 2; }

  friend bool operator==(const InheritancePlan&, const InheritancePlan&) = default;
};

class Network;

struct ExploiterResult {
  std::string exploiter;
  std::vector<std::string> inputs;
  std::vector<ClassEntry> produced;
  std::optional<std::variant<bool, Degree>> verdict;
};

struct ModifierRequest {
  std::string target;
  std::string member;
  std::optional<DegreedMember> new_member;
  std::optional<PropertyValue> value;
};

using Exploiter = std::function<ExploiterResult(const Network&, const std::vector<std::string>&)>;
using Modifier = std::function<void(Network&, const ModifierRequest&)>;

/// The (objects, classes, relations, exploiters, modifiers) tuple, plus the
/// inheritance plans declared over its classes.
class Network {
 public:
  std::map<std::string, ObjectInstance> objects;
  std::map<std::string, ClassEntry> classes;
  std::vector<Relation> relations;
  std::vector<InheritancePlan> plans;
  std::map<std::string, Exploiter> exploiters;
  std::map<std::string, Modifier> modifiers;

  /// Heterogeneous classes built from plans (keyed by heir) and kept around.
  std::map<std::string, HetClass> derived;
  /// Keys of `derived` or of stored heterogeneous classes invalidated by a
  /// modifier since they were built.
  std::set<std::string> stale;

  const HomClass* find_hom(const std::string& name) const;
  HomClass* find_hom(const std::string& name);
  const HetClass* find_het(const std::string& name) const;
  const InheritancePlan* plan_for(const std::string& heir) const;
  bool has_entity(const std::string& name) const {
    return classes.count(name) != 0 || objects.count(name) != 0;
  }

  /// Structural equality: objects, classes, relations, plans, and the names
  /// registered as exploiters and modifiers.
  friend bool operator==(const Network& a, const Network& b);
};

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::string entity;
  std::string rule;
  std::string message;

  bool is_error() const { return severity == Severity::Error; }
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every broken invariant of the network; an empty list means it is valid.
/// Warnings (e.g. a class with no members) are listed but are not failures.
std::vector<Violation> validate_network(const Network& net);
bool has_errors(const std::vector<Violation>& violations);

/// Fuzzy network test: some object or class has a fuzzy-set valued property,
/// some class member has degree below 1, or some relation carries a degree.
bool is_fuzzy(const Network& net);
bool is_fuzzy_object(const Network& net, const ObjectInstance& obj);
bool is_fuzzy_class(const ClassEntry& c);

std::vector<std::string> to_strings(const std::vector<Violation>& v);

}  // namespace oodn

#endif  // OODN_MODEL_HPP_
