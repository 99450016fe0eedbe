#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reef/dublin_core.hpp"
#include "reef/quad.hpp"
#include "reef/quad_store.hpp"

namespace reef {

enum class ResourceKind { Article, Person, Concept };

// The fields that decide whether two harvested resources are the same.
struct ResourceFields {
  ResourceKind kind = ResourceKind::Article;
  std::string guid;   // articles
  std::string title;  // articles without guid; concept labels
  std::string type;   // articles without guid
  std::string name;   // persons, "Last, First M." or free form
};

// Lowercase, punctuation stripped, whitespace collapsed and trimmed.
std::string normalizeLabel(std::string_view text);

// Articles: guid when present, else normalized title + type. Persons:
// normalized full name. Concepts: normalized label.
std::string dedupKey(const ResourceFields& fields);

// Minted IRI for a dedup key.
Term resourceIri(ResourceKind kind, const std::string& key);

struct PersonName {
  std::string firstName;
  std::string lastName;
  std::string display;  // "First Last"
};

// "Rodriguez, Marko A." -> {first "Marko A.", last "Rodriguez"}; names with
// no comma go wholly into lastName.
PersonName splitName(std::string_view name);

// The quads for one record, all in `providerGraph`. Deterministic: equal
// records always produce equal quad sets, so inserting twice is a no-op.
std::vector<Quad> translate(const DCRecord& record, const Term& providerGraph);

struct IngestStats {
  std::size_t records = 0;
  std::size_t quadsAdded = 0;
  std::size_t resourcesAdded = 0;  // new article/person/concept nodes
};

// Translates and inserts each record, counting what was actually new.
IngestStats ingest(QuadStore& store, const std::vector<DCRecord>& records,
                   const Term& providerGraph);

}  // namespace reef
