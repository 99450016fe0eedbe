#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reef {

// One OAI-PMH record with an oai_dc payload.
struct DCRecord {
  std::string identifier;  // OAI identifier from the record header
  std::string datestamp;   // header datestamp, as written
  std::string title;
  std::vector<std::string> creators;  // document order = authorship order
  std::vector<std::string> subjects;
  std::string description;
  std::optional<std::string> date;
  std::optional<std::string> typeTag;
  std::optional<std::string> url;  // first dc:identifier that is a URL
};

class XmlError : public std::runtime_error {
 public:
  XmlError(std::size_t byteOffset, const std::string& reason);
  std::size_t byteOffset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct HarvestResult {
  std::vector<DCRecord> records;
  std::vector<std::string> warnings;  // skipped records and why
};

// Parses a bare <record>, or a full OAI-PMH GetRecord/ListRecords response.
// Elements are matched by local name, so undeclared prefixes such as
// "dc:" in hand-edited excerpts are accepted. Whitespace inside field values
// is collapsed; whitespace inside URLs is removed. Throws XmlError with the
// byte offset for malformed input.
HarvestResult parseOaiPmh(std::string_view xml);

}  // namespace reef
