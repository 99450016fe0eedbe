#include "reef/dublin_core.hpp"

#include <expat.h>

#include <memory>

namespace reef {

XmlError::XmlError(std::size_t byteOffset, const std::string& reason)
    : std::runtime_error("XML error at byte " + std::to_string(byteOffset) +
                         ": " + reason),
      offset_(byteOffset) {}

namespace {

std::string_view localName(const XML_Char* name) {
  std::string_view n(name);
  auto colon = n.rfind(':');
  return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

bool isSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

std::string collapse(std::string_view s) {
  std::string out;
  bool pendingSpace = false;
  for (char c : s) {
    if (isSpace(c)) {
      pendingSpace = !out.empty();
      continue;
    }
    if (pendingSpace) out += ' ';
    pendingSpace = false;
    out += c;
  }
  return out;
}

std::string stripSpace(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!isSpace(c)) out += c;
  }
  return out;
}

bool looksLikeUrl(std::string_view s) {
  return s.starts_with("http://") || s.starts_with("https://");
}

class Handler {
 public:
  HarvestResult result;

  void start(const XML_Char* rawName, const XML_Char** attrs) {
    auto name = localName(rawName);
    ++depth_;
    if (name == "record" && !inRecord_) {
      inRecord_ = true;
      recordDepth_ = depth_;
      current_ = DCRecord{};
      deleted_ = false;
      return;
    }
    if (!inRecord_) return;
    if (name == "header" && !inMetadata_) {
      inHeader_ = true;
      for (int i = 0; attrs[i]; i += 2) {
        if (std::string_view(attrs[i]) == "status" &&
            std::string_view(attrs[i + 1]) == "deleted") {
          deleted_ = true;
        }
      }
      return;
    }
    if (name == "metadata" && !inHeader_) {
      inMetadata_ = true;
      return;
    }
    if (inHeader_ || inMetadata_) {
      field_ = std::string(name);
      fieldDepth_ = depth_;
      text_.clear();
    }
  }

  void end(const XML_Char* rawName) {
    auto name = localName(rawName);
    if (inRecord_ && depth_ == fieldDepth_) {
      finishField();
      fieldDepth_ = 0;
    } else if (inRecord_ && name == "header" && inHeader_) {
      inHeader_ = false;
    } else if (inRecord_ && name == "metadata" && inMetadata_) {
      inMetadata_ = false;
    } else if (inRecord_ && depth_ == recordDepth_) {
      finishRecord();
    }
    --depth_;
  }

  void text(const XML_Char* s, int len) {
    if (fieldDepth_ != 0) text_.append(s, static_cast<std::size_t>(len));
  }

 private:
  void finishField() {
    if (inHeader_) {
      if (field_ == "identifier") current_.identifier = collapse(text_);
      if (field_ == "datestamp") current_.datestamp = collapse(text_);
      return;
    }
    std::string value = collapse(text_);
    if (field_ == "title") {
      current_.title = value;
    } else if (field_ == "creator") {
      if (!value.empty()) current_.creators.push_back(value);
    } else if (field_ == "subject") {
      if (!value.empty()) current_.subjects.push_back(value);
    } else if (field_ == "description") {
      current_.description = value;
    } else if (field_ == "date") {
      if (!value.empty()) current_.date = value;
    } else if (field_ == "type") {
      if (!value.empty()) current_.typeTag = value;
    } else if (field_ == "identifier") {
      std::string url = stripSpace(text_);
      if (!current_.url && looksLikeUrl(url)) current_.url = url;
    }
  }

  void finishRecord() {
    inRecord_ = false;
    inHeader_ = false;
    inMetadata_ = false;
    if (current_.identifier.empty()) {
      result.warnings.push_back("record " +
                                std::to_string(recordsSeen_ + 1) +
                                " has no identifier; skipped");
    } else if (deleted_) {
      result.warnings.push_back("record " + current_.identifier +
                                " is marked deleted; skipped");
    } else {
      result.records.push_back(std::move(current_));
    }
    ++recordsSeen_;
  }

  int depth_ = 0;
  bool inRecord_ = false;
  bool inHeader_ = false;
  bool inMetadata_ = false;
  bool deleted_ = false;
  int recordDepth_ = 0;
  int fieldDepth_ = 0;
  std::size_t recordsSeen_ = 0;
  std::string field_;
  std::string text_;
  DCRecord current_;
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

HarvestResult parseOaiPmh(std::string_view xml) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(
      XML_ParserCreate(nullptr));
  if (!parser) throw std::runtime_error("cannot allocate XML parser");
  Handler handler;
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(
      parser.get(),
      [](void* ud, const XML_Char* name, const XML_Char** attrs) {
        static_cast<Handler*>(ud)->start(name, attrs);
      },
      [](void* ud, const XML_Char* name) {
        static_cast<Handler*>(ud)->end(name);
      });
  XML_SetCharacterDataHandler(
      parser.get(), [](void* ud, const XML_Char* s, int len) {
        static_cast<Handler*>(ud)->text(s, len);
      });
  if (XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()),
                XML_TRUE) == XML_STATUS_ERROR) {
    auto offset = XML_GetCurrentByteIndex(parser.get());
    throw XmlError(offset < 0 ? 0 : static_cast<std::size_t>(offset),
                   XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  return std::move(handler.result);
}

}  // namespace reef
