#include "olms/ontology.hpp"

#include "olms/error.hpp"

#include <algorithm>
#include <functional>

namespace olms {

namespace {

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::string quoted(const Id& id) { return "'" + id + "'"; }

} // namespace

bool is_identifier(std::string_view text) noexcept {
  if (text.empty() || !ident_start(text.front())) {
    return false;
  }
  return std::all_of(text.begin() + 1, text.end(), ident_char);
}

std::string_view to_string(EntityKind kind) noexcept {
  switch (kind) {
    case EntityKind::Class: return "class";
    case EntityKind::Individual: return "individual";
    case EntityKind::ObjectProperty: return "object property";
    case EntityKind::DataProperty: return "data property";
  }
  return "entity";
}

// ---------------------------------------------------------------------------
// validation helpers

void OntologyStore::require_fresh(const Id& id) const {
  if (!is_identifier(id)) {
    throw Error(Errc::InvalidIdentifier, quoted(id) + " is not a valid identifier");
  }
  if (auto kind = kind_of(id)) {
    throw Error(Errc::DuplicateId,
                quoted(id) + " is already declared as " + std::string(to_string(*kind)));
  }
}

void OntologyStore::require_class(const Id& id) const {
  if (!classes_.contains(id)) {
    throw Error(Errc::UnknownClass, "no class " + quoted(id));
  }
}

const ObjectPropertyDecl& OntologyStore::require_object_property(const Id& id) const {
  auto it = object_properties_.find(id);
  if (it == object_properties_.end()) {
    throw Error(Errc::UnknownEntity, "no object property " + quoted(id));
  }
  return it->second;
}

void OntologyStore::require_individual(const Id& id) const {
  if (!individuals_.contains(id)) {
    throw Error(Errc::UnknownEntity, "no individual " + quoted(id));
  }
}

std::optional<EntityKind> OntologyStore::kind_of(const Id& id) const {
  if (classes_.contains(id)) return EntityKind::Class;
  if (individuals_.contains(id)) return EntityKind::Individual;
  if (object_properties_.contains(id)) return EntityKind::ObjectProperty;
  if (data_properties_.contains(id)) return EntityKind::DataProperty;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// declarations

const Id& OntologyStore::declare_class(const Id& id, const IdSet& parents) {
  if (parents.contains(id)) {
    throw Error(Errc::CycleDetected, quoted(id) + " cannot be its own parent");
  }
  require_fresh(id);
  for (const auto& parent : parents) {
    if (!classes_.contains(parent)) {
      throw Error(Errc::UnknownParent, "parent " + quoted(parent) + " of " + quoted(id) +
                                           " is not a declared class");
    }
  }
  // A fresh node has no descendants, so no parent set can close a cycle.
  auto [it, inserted] = classes_.emplace(id, ClassNode{id, parents});
  children_[id];
  for (const auto& parent : parents) {
    children_[parent].insert(id);
  }
  return it->first;
}

void OntologyStore::add_parent(const Id& cls, const Id& parent) {
  require_class(cls);
  require_class(parent);
  if (is_subclass_of(parent, cls)) {
    throw Error(Errc::CycleDetected,
                "making " + quoted(cls) + " a subclass of " + quoted(parent) + " closes a cycle");
  }
  classes_.at(cls).parents.insert(parent);
  children_[parent].insert(cls);
}

void OntologyStore::remove_class(const Id& cls) {
  require_class(cls);
  if (!children_.at(cls).empty()) {
    throw Error(Errc::ClassInUse, quoted(cls) + " still has subclasses");
  }
  if (auto it = members_.find(cls); it != members_.end() && !it->second.empty()) {
    throw Error(Errc::ClassInUse, quoted(cls) + " still has individuals");
  }
  for (const auto& [id, decl] : object_properties_) {
    if (decl.domain == cls || decl.range == cls) {
      throw Error(Errc::ClassInUse, quoted(cls) + " is used by property " + quoted(id));
    }
  }
  for (const auto& [id, decl] : data_properties_) {
    if (decl.domain == cls) {
      throw Error(Errc::ClassInUse, quoted(cls) + " is used by property " + quoted(id));
    }
  }
  for (const auto& parent : classes_.at(cls).parents) {
    children_[parent].erase(cls);
  }
  children_.erase(cls);
  members_.erase(cls);
  classes_.erase(cls);
}

const Id& OntologyStore::declare_object_property(const Id& id, const Id& domain, const Id& range,
                                                 const std::optional<Id>& inverse) {
  require_fresh(id);
  require_class(domain);
  require_class(range);
  if (inverse) {
    const auto& partner = require_object_property(*inverse);
    if (partner.inverse) {
      throw Error(Errc::InverseAlreadyBound,
                  quoted(*inverse) + " is already the inverse of " + quoted(*partner.inverse));
    }
    if (partner.domain != range || partner.range != domain) {
      throw Error(Errc::InverseMismatch,
                  quoted(id) + " (" + domain + " -> " + range + ") cannot invert " +
                      quoted(*inverse) + " (" + partner.domain + " -> " + partner.range + ")");
    }
  }

  auto [it, inserted] = object_properties_.emplace(
      id, ObjectPropertyDecl{id, domain, range, inverse, inverse.has_value()});
  if (inverse) {
    object_properties_.at(*inverse).inverse = id;
    // Facts already stated on the partner gain their mirrored half.
    std::vector<Key> mirrored;
    for (const auto& key : forward_) {
      if (key[1] == *inverse) {
        mirrored.push_back(key);
      }
    }
    for (const auto& key : mirrored) {
      forward_.insert({key[2], id, key[0]});
      backward_.insert({key[0], id, key[2]});
    }
  }
  return it->first;
}

const Id& OntologyStore::declare_data_property(const Id& id, const Id& domain) {
  require_fresh(id);
  require_class(domain);
  return data_properties_.emplace(id, DataPropertyDecl{id, domain}).first->first;
}

const Id& OntologyStore::add_individual(const Id& id, const Id& cls) {
  require_class(cls);
  if (auto it = individuals_.find(id); it != individuals_.end()) {
    it->second.types.insert(cls);
    members_[cls].insert(id);
    return it->first;
  }
  if (!is_identifier(id)) {
    throw Error(Errc::InvalidIdentifier, quoted(id) + " is not a valid identifier");
  }
  if (classes_.contains(id)) {
    throw Error(Errc::IdCollidesWithClass, quoted(id) + " is already a class");
  }
  if (auto kind = kind_of(id)) {
    throw Error(Errc::DuplicateId,
                quoted(id) + " is already declared as " + std::string(to_string(*kind)));
  }
  auto [it, inserted] = individuals_.emplace(id, Individual{id, {cls}});
  members_[cls].insert(id);
  return it->first;
}

void OntologyStore::remove_individual(const Id& id) {
  require_individual(id);
  std::vector<Key> doomed;
  for (auto it = forward_.lower_bound({id, "", ""});
       it != forward_.end() && (*it)[0] == id; ++it) {
    doomed.push_back(*it);
  }
  for (auto it = backward_.lower_bound({id, "", ""});
       it != backward_.end() && (*it)[0] == id; ++it) {
    doomed.push_back({(*it)[2], (*it)[1], (*it)[0]});
  }
  for (const auto& key : doomed) {
    forward_.erase(key);
    backward_.erase({key[2], key[1], key[0]});
  }
  for (auto it = data_.lower_bound({id, ""}); it != data_.end() && it->first.first == id;) {
    it = data_.erase(it);
  }
  for (const auto& cls : individuals_.at(id).types) {
    members_[cls].erase(id);
  }
  individuals_.erase(id);
}

// ---------------------------------------------------------------------------
// assertions

void OntologyStore::insert_fact(const Id& property, const Id& subject, const Id& object) {
  forward_.insert({subject, property, object});
  backward_.insert({object, property, subject});
}

void OntologyStore::erase_fact(const Id& property, const Id& subject, const Id& object) {
  forward_.erase({subject, property, object});
  backward_.erase({object, property, subject});
}

void OntologyStore::assert_object(const Id& property, const Id& subject, const Id& object) {
  const auto& decl = require_object_property(property);
  require_individual(subject);
  require_individual(object);
  if (!is_instance_of(subject, decl.domain)) {
    throw Error(Errc::DomainViolation,
                quoted(subject) + " is not an instance of " + quoted(decl.domain) +
                    ", the domain of " + quoted(property));
  }
  if (!is_instance_of(object, decl.range)) {
    throw Error(Errc::RangeViolation,
                quoted(object) + " is not an instance of " + quoted(decl.range) +
                    ", the range of " + quoted(property));
  }
  insert_fact(property, subject, object);
  if (decl.inverse) {
    insert_fact(*decl.inverse, object, subject);
  }
}

void OntologyStore::retract_object(const Id& property, const Id& subject, const Id& object) {
  if (!holds(property, subject, object)) {
    throw Error(Errc::AssertionNotFound,
                property + "(" + subject + ", " + object + ") is not asserted");
  }
  erase_fact(property, subject, object);
  if (const auto& inverse = object_properties_.at(property).inverse) {
    erase_fact(*inverse, object, subject);
  }
}

void OntologyStore::assert_data(const Id& property, const Id& subject, const std::string& value) {
  auto it = data_properties_.find(property);
  if (it == data_properties_.end()) {
    throw Error(Errc::UnknownEntity, "no data property " + quoted(property));
  }
  require_individual(subject);
  if (!is_instance_of(subject, it->second.domain)) {
    throw Error(Errc::DomainViolation,
                quoted(subject) + " is not an instance of " + quoted(it->second.domain) +
                    ", the domain of " + quoted(property));
  }
  // One axiom per line in the serialized form.
  if (value.find_first_of("\r\n") != std::string::npos) {
    throw Error(Errc::InvalidLiteral, "literals may not contain line breaks");
  }
  data_[{subject, property}] = value;
}

void OntologyStore::retract_data(const Id& property, const Id& subject) {
  if (data_.erase({subject, property}) == 0) {
    throw Error(Errc::AssertionNotFound, property + "(" + subject + ") has no value");
  }
}

// ---------------------------------------------------------------------------
// queries

bool OntologyStore::is_subclass_of(const Id& sub, const Id& super) const {
  require_class(sub);
  require_class(super);
  IdSet seen;
  std::vector<const Id*> stack{&sub};
  while (!stack.empty()) {
    const Id& current = *stack.back();
    stack.pop_back();
    if (current == super) {
      return true;
    }
    if (!seen.insert(current).second) {
      continue;
    }
    for (const auto& parent : classes_.at(current).parents) {
      stack.push_back(&parent);
    }
  }
  return false;
}

IdSet OntologyStore::subclasses_of(const Id& cls) const {
  require_class(cls);
  IdSet out;
  std::vector<Id> stack{cls};
  while (!stack.empty()) {
    Id current = std::move(stack.back());
    stack.pop_back();
    if (!out.insert(current).second) {
      continue;
    }
    for (const auto& child : children_.at(current)) {
      stack.push_back(child);
    }
  }
  return out;
}

bool OntologyStore::is_instance_of(const Id& individual, const Id& cls) const {
  require_individual(individual);
  require_class(cls);
  const auto& types = individuals_.at(individual).types;
  return std::any_of(types.begin(), types.end(),
                     [&](const Id& type) { return is_subclass_of(type, cls); });
}

IdSet OntologyStore::instances_of(const Id& cls, bool transitive) const {
  require_class(cls);
  IdSet out;
  auto collect = [&](const Id& c) {
    if (auto it = members_.find(c); it != members_.end()) {
      out.insert(it->second.begin(), it->second.end());
    }
  };
  if (!transitive) {
    collect(cls);
    return out;
  }
  for (const auto& c : subclasses_of(cls)) {
    collect(c);
  }
  return out;
}

bool OntologyStore::holds(const Id& property, const Id& subject, const Id& object) const {
  require_object_property(property);
  return forward_.contains({subject, property, object});
}

IdSet OntologyStore::object_values(const Id& individual, const Id& property) const {
  require_individual(individual);
  require_object_property(property);
  IdSet out;
  for (auto it = forward_.lower_bound({individual, property, ""});
       it != forward_.end() && (*it)[0] == individual && (*it)[1] == property; ++it) {
    out.insert((*it)[2]);
  }
  return out;
}

IdSet OntologyStore::object_subjects(const Id& property, const Id& object) const {
  require_object_property(property);
  require_individual(object);
  IdSet out;
  for (auto it = backward_.lower_bound({object, property, ""});
       it != backward_.end() && (*it)[0] == object && (*it)[1] == property; ++it) {
    out.insert((*it)[2]);
  }
  return out;
}

std::optional<std::string> OntologyStore::data_value(const Id& individual,
                                                     const Id& property) const {
  require_individual(individual);
  if (!data_properties_.contains(property)) {
    throw Error(Errc::UnknownEntity, "no data property " + quoted(property));
  }
  if (auto it = data_.find({individual, property}); it != data_.end()) {
    return it->second;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// enumeration

std::vector<ObjectAssertion> OntologyStore::object_assertions() const {
  std::vector<ObjectAssertion> out;
  out.reserve(forward_.size());
  for (const auto& key : forward_) {
    out.push_back({key[1], key[0], key[2]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ObjectAssertion> OntologyStore::stated_object_assertions() const {
  std::vector<ObjectAssertion> out;
  for (const auto& key : forward_) {
    if (!object_properties_.at(key[1]).names_inverse) {
      out.push_back({key[1], key[0], key[2]});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DataAssertion> OntologyStore::data_assertions() const {
  std::vector<DataAssertion> out;
  out.reserve(data_.size());
  for (const auto& [key, value] : data_) {
    out.push_back({key.second, key.first, value});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool OntologyStore::operator==(const OntologyStore& other) const {
  return classes_ == other.classes_ && individuals_ == other.individuals_ &&
         object_properties_ == other.object_properties_ &&
         data_properties_ == other.data_properties_ && forward_ == other.forward_ &&
         data_ == other.data_;
}

bool OntologyStore::empty() const noexcept {
  return classes_.empty() && individuals_.empty() && object_properties_.empty() &&
         data_properties_.empty();
}

void OntologyStore::validate() const {
  auto fail = [](Errc code, std::string detail) { throw Error(code, std::move(detail)); };

  for (const auto& [id, node] : classes_) {
    if (individuals_.contains(id) || object_properties_.contains(id) ||
        data_properties_.contains(id)) {
      fail(Errc::DuplicateId, quoted(id) + " is declared under two kinds");
    }
    for (const auto& parent : node.parents) {
      if (!classes_.contains(parent)) {
        fail(Errc::UnknownParent, "parent " + quoted(parent) + " of " + quoted(id));
      }
    }
  }

  // Three-colour DFS over parent edges.
  std::map<Id, int> colour;
  std::function<void(const Id&)> visit = [&](const Id& id) {
    colour[id] = 1;
    for (const auto& parent : classes_.at(id).parents) {
      if (colour[parent] == 1) {
        fail(Errc::CycleDetected, "class cycle through " + quoted(parent));
      }
      if (colour[parent] == 0) {
        visit(parent);
      }
    }
    colour[id] = 2;
  };
  for (const auto& [id, node] : classes_) {
    if (colour[id] == 0) {
      visit(id);
    }
  }

  for (const auto& [id, ind] : individuals_) {
    if (object_properties_.contains(id) || data_properties_.contains(id)) {
      fail(Errc::DuplicateId, quoted(id) + " is declared under two kinds");
    }
    if (ind.types.empty()) {
      fail(Errc::UnknownClass, quoted(id) + " has no type");
    }
    for (const auto& type : ind.types) {
      if (!classes_.contains(type)) {
        fail(Errc::UnknownClass, "type " + quoted(type) + " of " + quoted(id));
      }
    }
  }

  for (const auto& [id, decl] : object_properties_) {
    if (data_properties_.contains(id)) {
      fail(Errc::DuplicateId, quoted(id) + " is declared under two kinds");
    }
    if (!classes_.contains(decl.domain) || !classes_.contains(decl.range)) {
      fail(Errc::UnknownClass, "domain or range of " + quoted(id));
    }
    if (decl.inverse) {
      auto it = object_properties_.find(*decl.inverse);
      if (it == object_properties_.end() || it->second.inverse != id) {
        fail(Errc::InverseMismatch, "inverse link of " + quoted(id) + " is not symmetric");
      }
      if (it->second.domain != decl.range || it->second.range != decl.domain) {
        fail(Errc::InverseMismatch, "inverse of " + quoted(id) + " does not swap domain/range");
      }
      if (it->second.names_inverse == decl.names_inverse) {
        fail(Errc::InverseMismatch, "inverse pair " + quoted(id) + " has no canonical half");
      }
    }
  }
  for (const auto& [id, decl] : data_properties_) {
    if (!classes_.contains(decl.domain)) {
      fail(Errc::UnknownClass, "domain of " + quoted(id));
    }
  }

  if (forward_.size() != backward_.size()) {
    fail(Errc::AssertionNotFound, "assertion indexes disagree");
  }
  for (const auto& key : forward_) {
    const auto& [subject, property, object] = key;
    if (!backward_.contains({object, property, subject})) {
      fail(Errc::AssertionNotFound, "assertion indexes disagree");
    }
    auto decl = object_properties_.find(property);
    if (decl == object_properties_.end()) {
      fail(Errc::UnknownEntity, "assertion on unknown property " + quoted(property));
    }
    if (!individuals_.contains(subject) || !individuals_.contains(object)) {
      fail(Errc::UnknownEntity, "assertion on unknown individual");
    }
    if (!is_instance_of(subject, decl->second.domain)) {
      fail(Errc::DomainViolation, property + "(" + subject + ", " + object + ")");
    }
    if (!is_instance_of(object, decl->second.range)) {
      fail(Errc::RangeViolation, property + "(" + subject + ", " + object + ")");
    }
    if (decl->second.inverse && !forward_.contains({object, *decl->second.inverse, subject})) {
      fail(Errc::AssertionNotFound,
           "missing inverse of " + property + "(" + subject + ", " + object + ")");
    }
  }

  for (const auto& [key, value] : data_) {
    const auto& [subject, property] = key;
    auto decl = data_properties_.find(property);
    if (decl == data_properties_.end() || !individuals_.contains(subject)) {
      fail(Errc::UnknownEntity, "data assertion " + property + "(" + subject + ")");
    }
    if (!is_instance_of(subject, decl->second.domain)) {
      fail(Errc::DomainViolation, property + "(" + subject + ")");
    }
    if (value.find_first_of("\r\n") != std::string::npos) {
      fail(Errc::InvalidLiteral, property + "(" + subject + ") spans lines");
    }
  }
}

} // namespace olms
