#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace olms {

// Entity names are bare local names matching [A-Za-z_][A-Za-z0-9_]*. Classes,
// individuals and both property kinds share a single namespace.
using Id = std::string;
using IdSet = std::set<Id>;

bool is_identifier(std::string_view text) noexcept;

enum class EntityKind { Class, Individual, ObjectProperty, DataProperty };

std::string_view to_string(EntityKind kind) noexcept;

struct ClassNode {
  Id id;
  IdSet parents;

  bool operator==(const ClassNode&) const = default;
};

struct Individual {
  Id id;
  IdSet types;  // direct class assertions, never empty

  bool operator==(const Individual&) const = default;
};

struct ObjectPropertyDecl {
  Id id;
  Id domain;
  Id range;
  std::optional<Id> inverse;
  // True for the half of an inverse pair that was declared naming its
  // partner. The other half is the canonical one: its assertions are the ones
  // written out by serialization.
  bool names_inverse = false;

  bool operator==(const ObjectPropertyDecl&) const = default;
};

// Only one datatype exists (string), so the declaration does not record it.
struct DataPropertyDecl {
  Id id;
  Id domain;

  bool operator==(const DataPropertyDecl&) const = default;
};

struct ObjectAssertion {
  Id property;
  Id subject;
  Id object;

  auto operator<=>(const ObjectAssertion&) const = default;
};

struct DataAssertion {
  Id property;
  Id subject;
  std::string value;

  auto operator<=>(const DataAssertion&) const = default;
};

/// In-memory ontology: a multi-parent class hierarchy, typed individuals,
/// object/data property declarations and the assertion sets over them.
///
/// Object assertions on a property with a declared inverse are materialized
/// eagerly in both directions, so p(a,b) is stored iff inverse(p)(b,a) is.
/// Every mutating member either succeeds completely or throws olms::Error and
/// leaves the store unchanged.
///
/// Not synchronized; see SharedStore for the reader/writer wrapper.
class OntologyStore {
public:
  // -- declarations --------------------------------------------------------

  const Id& declare_class(const Id& id, const IdSet& parents);
  // Adds a subclass edge between two existing classes.
  void add_parent(const Id& cls, const Id& parent);
  // Only unused classes can be removed: no subclasses, no direct instances,
  // not the domain or range of any property.
  void remove_class(const Id& cls);

  const Id& declare_object_property(const Id& id, const Id& domain, const Id& range,
                                    const std::optional<Id>& inverse = std::nullopt);
  const Id& declare_data_property(const Id& id, const Id& domain);

  // Creates the individual, or adds a type to an existing one.
  const Id& add_individual(const Id& id, const Id& cls);
  // Drops the individual together with every assertion mentioning it.
  void remove_individual(const Id& id);

  // -- assertions ----------------------------------------------------------

  void assert_object(const Id& property, const Id& subject, const Id& object);
  // Removes the assertion and its materialized inverse.
  void retract_object(const Id& property, const Id& subject, const Id& object);

  // Data properties are single-valued; a second assert replaces the value.
  void assert_data(const Id& property, const Id& subject, const std::string& value);
  void retract_data(const Id& property, const Id& subject);

  // -- queries -------------------------------------------------------------

  std::optional<EntityKind> kind_of(const Id& id) const;
  bool has_class(const Id& id) const { return classes_.contains(id); }
  bool has_individual(const Id& id) const { return individuals_.contains(id); }
  bool has_object_property(const Id& id) const { return object_properties_.contains(id); }
  bool has_data_property(const Id& id) const { return data_properties_.contains(id); }

  // Reflexive-transitive subclass test.
  bool is_subclass_of(const Id& sub, const Id& super) const;
  // cls and every class below it.
  IdSet subclasses_of(const Id& cls) const;
  bool is_instance_of(const Id& individual, const Id& cls) const;
  IdSet instances_of(const Id& cls, bool transitive) const;

  bool holds(const Id& property, const Id& subject, const Id& object) const;
  // { o : property(individual, o) }
  IdSet object_values(const Id& individual, const Id& property) const;
  // { s : property(s, object) }
  IdSet object_subjects(const Id& property, const Id& object) const;
  std::optional<std::string> data_value(const Id& individual, const Id& property) const;

  // -- enumeration ---------------------------------------------------------

  const std::map<Id, ClassNode>& classes() const { return classes_; }
  const std::map<Id, Individual>& individuals() const { return individuals_; }
  const std::map<Id, ObjectPropertyDecl>& object_properties() const { return object_properties_; }
  const std::map<Id, DataPropertyDecl>& data_properties() const { return data_properties_; }

  // All stored object assertions, materialized inverses included, sorted.
  std::vector<ObjectAssertion> object_assertions() const;
  // One assertion per inverse pair (the canonical half); what a user states.
  std::vector<ObjectAssertion> stated_object_assertions() const;
  std::vector<DataAssertion> data_assertions() const;

  bool empty() const noexcept;

  // Re-checks every store invariant from scratch; throws olms::Error naming
  // the first violation found.
  void validate() const;

  // Content equality; derived indexes are not compared.
  bool operator==(const OntologyStore& other) const;

private:
  using Key = std::array<Id, 3>;

  void require_fresh(const Id& id) const;
  void require_class(const Id& id) const;
  const ObjectPropertyDecl& require_object_property(const Id& id) const;
  void require_individual(const Id& id) const;
  void insert_fact(const Id& property, const Id& subject, const Id& object);
  void erase_fact(const Id& property, const Id& subject, const Id& object);

  std::map<Id, ClassNode> classes_;
  std::map<Id, IdSet> children_;
  std::map<Id, Individual> individuals_;
  std::map<Id, IdSet> members_;  // class -> direct instances
  std::map<Id, ObjectPropertyDecl> object_properties_;
  std::map<Id, DataPropertyDecl> data_properties_;
  std::set<Key> forward_;   // {subject, property, object}
  std::set<Key> backward_;  // {object, property, subject}
  std::map<std::pair<Id, Id>, std::string> data_;  // {subject, property} -> literal
};

} // namespace olms
