#pragma once

#include "olms/ontology.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace olms {

// The .onto format: one axiom per line, UTF-8.
//
//   Class(<id> <parent>*)
//   ObjectProperty(<id> <domain> <range> [inverse=<id>])
//   DataProperty(<id> <domain>)
//   Individual(<id> <class>+)
//   Object(<prop> <subject> <object>)
//   Data(<prop> <subject> "<literal>")
//
// Literals escape '"' and '\' with a backslash. Lines starting with '#' and
// blank lines are ignored.

// Deterministic rendering: axiom kinds in the order above, lexicographic
// within a kind. Materialized inverse halves are left out.
std::string serialize(const OntologyStore& store);

// Two-pass load (declarations, then assertions) so forward references are
// fine. Throws DocumentError carrying the offending line number; the result
// has passed OntologyStore::validate().
OntologyStore parse_ontology(std::string_view document);

OntologyStore load_ontology_file(const std::filesystem::path& path);
// Writes via a temporary file and rename.
void save_ontology_file(const OntologyStore& store, const std::filesystem::path& path);

// The embedded seed document and the store it describes.
std::string_view seed_document();
OntologyStore load_seed();

// Number of axiom lines serialize() would emit.
std::size_t axiom_count(const OntologyStore& store);

std::string escape_literal(std::string_view text);

} // namespace olms
