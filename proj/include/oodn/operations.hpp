// Exploiters derive new knowledge from a network without touching it;
// modifiers change classes and objects in place.

#ifndef OODN_OPERATIONS_HPP_
#define OODN_OPERATIONS_HPP_

#include <string>
#include <variant>

#include "oodn/model.hpp"

namespace oodn {

/// Heterogeneous class over both classes: shared members form the core, the
/// rest stay in one projection per input. The result is unnamed.
ExploiterResult exploit_union(const std::string& a, const std::string& b, const Network& net);

/// Homogeneous (unnamed) class of the members shared by both classes.
ExploiterResult exploit_intersection(const std::string& a, const std::string& b,
                                     const Network& net);

using InstanceVerdict = std::variant<bool, Degree>;

/// Whether the object's properties cover the class's properties. When the
/// class has weak members the answer is the smallest degree among the weak
/// members the object satisfies.
InstanceVerdict exploit_instance_check(const std::string& object, const std::string& cls,
                                       const Network& net);

class ModifierError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every modifier either succeeds and leaves a network that validates, or
// throws ModifierError and leaves the network exactly as it was. On success
// every plan or stored heterogeneous class that mentions the target is
// marked stale.

void modify_add_member(Network& net, const std::string& cls, DegreedMember member);
void modify_remove_member(Network& net, const std::string& cls, const std::string& member);
/// Target is a class (changes the declared value) or an object (assigns it).
void modify_set_value(Network& net, const std::string& target, const std::string& member,
                      PropertyValue value);

/// Plan heirs and stored heterogeneous classes that would go stale if `name`
/// changed.
std::set<std::string> dependents_of(const Network& net, const std::string& name);

/// Registers union/intersection/instance_check and add_member/remove_member/
/// set_value under those names.
void register_builtins(Network& net);

}  // namespace oodn

#endif  // OODN_OPERATIONS_HPP_
