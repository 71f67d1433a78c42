#include "oodn/model.hpp"

#include <algorithm>
#include <numeric>

namespace oodn {

std::string format_rational(const Rational& r) {
  const std::int64_t num = r.numerator();
  const std::int64_t den = r.denominator();
  std::int64_t rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) {
    return std::to_string(num) + "/" + std::to_string(den);
  }
  // den = 2^a 5^b, so num/den == num * 10^k / 10^k with k = max(a, b).
  const int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = num < 0;
  const std::int64_t scaled = (negative ? -num : num) * (scale / den);
  std::string out = std::to_string(scaled / scale);
  if (digits > 0) {
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  return negative ? "-" + out : out;
}

Degree::Degree(const Rational& value) : value_(value) {
  if (value <= Rational(0) || value > Rational(1)) {
    throw InvariantError("degree " + format_rational(value) + " outside (0, 1]");
  }
}

std::string_view to_string(TypeTag t) {
  switch (t) {
    case TypeTag::Int: return "int";
    case TypeTag::Real: return "real";
    case TypeTag::Text: return "text";
    case TypeTag::Bool: return "bool";
    case TypeTag::Fuzzy: return "fuzzy";
  }
  return "?";
}

std::optional<TypeTag> parse_type_tag(std::string_view s) {
  if (s == "int") return TypeTag::Int;
  if (s == "real") return TypeTag::Real;
  if (s == "text") return TypeTag::Text;
  if (s == "bool") return TypeTag::Bool;
  if (s == "fuzzy") return TypeTag::Fuzzy;
  return std::nullopt;
}

bool is_fuzzy_value(const PropertyValue& v) { return std::holds_alternative<FuzzySet>(v); }

bool value_matches(TypeTag type, const PropertyValue& v) {
  if (const auto* set = std::get_if<FuzzySet>(&v)) {
    if (type == TypeTag::Fuzzy) return true;
    return std::all_of(set->elements.begin(), set->elements.end(), [&](const FuzzyElement& e) {
      switch (type) {
        case TypeTag::Int: return std::holds_alternative<std::int64_t>(e.element);
        case TypeTag::Real:
          return std::holds_alternative<double>(e.element) ||
                 std::holds_alternative<std::int64_t>(e.element);
        case TypeTag::Text: return std::holds_alternative<std::string>(e.element);
        default: return false;
      }
    });
  }
  switch (type) {
    case TypeTag::Int: return std::holds_alternative<std::int64_t>(v);
    case TypeTag::Real: return std::holds_alternative<double>(v);
    case TypeTag::Text: return std::holds_alternative<std::string>(v);
    case TypeTag::Bool: return std::holds_alternative<bool>(v);
    case TypeTag::Fuzzy: return false;
  }
  return false;
}

std::optional<std::string> check_fuzzy_set(const FuzzySet& set) {
  for (std::size_t i = 0; i < set.elements.size(); ++i) {
    const auto& mu = set.elements[i].membership;
    if (mu < Rational(0) || mu > Rational(1)) return "fuzzy membership " + format_rational(mu) + " outside [0, 1]";
    for (std::size_t j = 0; j < i; ++j) {
      if (set.elements[j].element == set.elements[i].element) {
        return "duplicate fuzzy-set element";
      }
    }
  }
  return std::nullopt;
}

Member Member::property(std::string name, std::string owner, TypeTag type, PropertyValue value) {
  return Member{std::move(name), std::move(owner), Property{type, std::move(value)}};
}

Member Member::method(std::string name, std::string owner, std::vector<Parameter> params,
                      std::optional<TypeTag> returns) {
  return Member{std::move(name), std::move(owner), Method{std::move(params), returns}};
}

bool similar(const Member& a, const Member& b) { return a.name == b.name && a.body == b.body; }

bool same_item(const DegreedMember& a, const DegreedMember& b) {
  return a.degree == b.degree && similar(a.member, b.member);
}

MemberSet::MemberSet(std::initializer_list<DegreedMember> members) {
  for (const auto& m : members) add(m);
}

void MemberSet::add(DegreedMember m) {
  if (contains(m.name())) throw InvariantError("duplicate member name '" + m.name() + "'");
  members_.push_back(std::move(m));
}

bool MemberSet::remove(const std::string& name) {
  auto it = std::find_if(members_.begin(), members_.end(),
                         [&](const DegreedMember& m) { return m.name() == name; });
  if (it == members_.end()) return false;
  members_.erase(it);
  return true;
}

const DegreedMember* MemberSet::find(const std::string& name) const {
  for (const auto& m : members_) {
    if (m.name() == name) return &m;
  }
  return nullptr;
}

DegreedMember* MemberSet::find(const std::string& name) {
  for (auto& m : members_) {
    if (m.name() == name) return &m;
  }
  return nullptr;
}

const DegreedMember* MemberSet::find_item(const DegreedMember& m) const {
  const auto* hit = find(m.name());
  return hit != nullptr && same_item(*hit, m) ? hit : nullptr;
}

std::vector<std::string> MemberSet::names() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.name());
  return out;
}

bool operator==(const MemberSet& a, const MemberSet& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const DegreedMember& m) {
    const auto* other = b.find(m.name());
    return other != nullptr && *other == m;
  });
}

bool equivalent(const MemberSet& a, const MemberSet& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(),
                     [&](const DegreedMember& m) { return b.find_item(m) != nullptr; });
}

MemberSet HomClass::members() const {
  MemberSet out;
  for (const auto& m : spec) out.add(m);
  for (const auto& m : sig) out.add(m);
  return out;
}

void HomClass::add(DegreedMember m) {
  if (spec.contains(m.name()) || sig.contains(m.name())) {
    throw InvariantError("duplicate member name '" + m.name() + "' in class " + name);
  }
  if (m.member.is_property()) {
    spec.add(std::move(m));
  } else {
    sig.add(std::move(m));
  }
}

const Projection* HetClass::find_projection(const std::string& label) const {
  for (const auto& p : projections) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

const Participant* HetClass::find_participant(const std::string& n) const {
  for (const auto& p : participants) {
    if (p.name == n) return &p;
  }
  return nullptr;
}

const std::string& class_name(const ClassEntry& c) {
  return std::visit([](const auto& k) -> const std::string& { return k.name; }, c);
}

const PropertyValue* ObjectInstance::find(const std::string& member) const {
  for (const auto& [n, v] : assignments) {
    if (n == member) return &v;
  }
  return nullptr;
}

std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Generalization: return "generalization";
    case RelationKind::InstanceOf: return "instance_of";
    case RelationKind::Aggregation: return "aggregation";
    case RelationKind::Association: return "association";
  }
  return "?";
}

std::optional<RelationKind> parse_relation_kind(std::string_view s) {
  if (s == "generalization") return RelationKind::Generalization;
  if (s == "instance_of") return RelationKind::InstanceOf;
  if (s == "aggregation") return RelationKind::Aggregation;
  if (s == "association") return RelationKind::Association;
  return std::nullopt;
}

const SelectionItem* Selection::find(const std::string& n) const {
  for (const auto& item : items) {
    if (item.name == n) return &item;
  }
  return nullptr;
}

bool Selection::has_weak_degree() const {
  return std::any_of(items.begin(), items.end(),
                     [](const SelectionItem& i) { return i.degree.is_weak(); });
}

const HomClass* Network::find_hom(const std::string& n) const {
  auto it = classes.find(n);
  return it == classes.end() ? nullptr : std::get_if<HomClass>(&it->second);
}

HomClass* Network::find_hom(const std::string& n) {
  auto it = classes.find(n);
  return it == classes.end() ? nullptr : std::get_if<HomClass>(&it->second);
}

const HetClass* Network::find_het(const std::string& n) const {
  auto it = classes.find(n);
  return it == classes.end() ? nullptr : std::get_if<HetClass>(&it->second);
}

const InheritancePlan* Network::plan_for(const std::string& heir) const {
  for (const auto& p : plans) {
    if (p.heir == heir) return &p;
  }
  return nullptr;
}

namespace {

template <typename Map>
std::vector<std::string> keys(const Map& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

}  // namespace

bool operator==(const Network& a, const Network& b) {
  return a.objects == b.objects && a.classes == b.classes && a.relations == b.relations &&
         a.plans == b.plans && keys(a.exploiters) == keys(b.exploiters) &&
         keys(a.modifiers) == keys(b.modifiers);
}

bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.is_error(); });
}

std::vector<std::string> to_strings(const std::vector<Violation>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) {
    out.push_back(std::string(x.is_error() ? "error" : "warning") + ": " + x.entity + ": " +
                  x.rule + ": " + x.message);
  }
  return out;
}

bool is_fuzzy_class(const ClassEntry& c) {
  auto fuzzy_set = [](const MemberSet& s) {
    return std::any_of(s.begin(), s.end(), [](const DegreedMember& m) {
      return m.degree.is_weak() ||
             (m.member.is_property() && is_fuzzy_value(m.member.as_property().value));
    });
  };
  if (const auto* hom = std::get_if<HomClass>(&c)) {
    return fuzzy_set(hom->spec) || fuzzy_set(hom->sig);
  }
  const auto& het = std::get<HetClass>(c);
  return fuzzy_set(het.core) ||
         std::any_of(het.projections.begin(), het.projections.end(),
                     [&](const Projection& p) { return fuzzy_set(p.members); });
}

bool is_fuzzy_object(const Network&, const ObjectInstance& obj) {
  return std::any_of(obj.assignments.begin(), obj.assignments.end(),
                     [](const auto& kv) { return is_fuzzy_value(kv.second); });
}

bool is_fuzzy(const Network& net) {
  for (const auto& [n, obj] : net.objects) {
    if (is_fuzzy_object(net, obj)) return true;
  }
  for (const auto& [n, c] : net.classes) {
    if (is_fuzzy_class(c)) return true;
  }
  for (const auto& [n, het] : net.derived) {
    if (is_fuzzy_class(het)) return true;
  }
  // A weak plan makes its heir a class with degree < 1 members.
  for (const auto& plan : net.plans) {
    for (const auto& src : plan.sources) {
      if (src.selection.has_weak_degree()) return true;
    }
  }
  return std::any_of(net.relations.begin(), net.relations.end(),
                     [](const Relation& r) { return r.degree.has_value(); });
}

}  // namespace oodn
