#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace reef::ns {

inline constexpr std::string_view kCore =
    "http://knowledgereefsystems.com/2007/11/core#";
inline constexpr std::string_view kRelation =
    "http://knowledgereefsystems.com/2008/02/relation#";
inline constexpr std::string_view kRdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs =
    "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kDc = "http://purl.org/dc/elements/1.1/";

// Graph holding the vocabulary when it is exported as quads.
inline constexpr std::string_view kSchemaGraph =
    "http://knowledgereefsystems.com/2007/11/core";
// Graph assigned to N-Quads statements that carry no graph label.
inline constexpr std::string_view kDefaultGraph = "urn:x-reef:default-graph";
// Base for resources minted during ingestion.
inline constexpr std::string_view kResourceBase =
    "http://reef.example.org/resource/";

inline std::string core(std::string_view local) {
  return std::string(kCore) + std::string(local);
}
inline std::string relation(std::string_view local) {
  return std::string(kRelation) + std::string(local);
}
inline std::string rdf(std::string_view local) {
  return std::string(kRdf) + std::string(local);
}
inline std::string rdfs(std::string_view local) {
  return std::string(kRdfs) + std::string(local);
}
inline std::string owl(std::string_view local) {
  return std::string(kOwl) + std::string(local);
}
inline std::string xsd(std::string_view local) {
  return std::string(kXsd) + std::string(local);
}

// Expands "core:Article" style names for the prefixes above. Strings that are
// already absolute IRIs are returned unchanged; anything else yields nullopt.
std::optional<std::string> expand(std::string_view curie);

// The reverse of expand(), for display. Falls back to the full IRI.
std::string compact(std::string_view iri);

}  // namespace reef::ns
