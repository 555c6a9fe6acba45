#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "turntable/error.hpp"

namespace turntable::detail {

using XmlNode = boost::property_tree::ptree;

/// Parses a complete XML document. Malformed input raises MalformedXml;
/// no recovery is attempted.
inline XmlNode parse_xml(std::string_view bytes) {
  std::string text(bytes);
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);
  std::istringstream in(std::move(text));
  XmlNode root;
  try {
    boost::property_tree::read_xml(in, root);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw Error(ErrorCode::malformed_xml, e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  return root;
}

inline std::optional<std::string> attribute(const XmlNode& node, const std::string& name) {
  const auto attrs = node.get_child_optional("<xmlattr>");
  if (!attrs) return std::nullopt;
  const auto value = attrs->get_optional<std::string>(name);
  if (!value) return std::nullopt;
  return *value;
}

inline std::string attribute_or(const XmlNode& node, const std::string& name, std::string fallback = {}) {
  auto value = attribute(node, name);
  return value ? *value : std::move(fallback);
}

inline const XmlNode* child(const XmlNode& node, const std::string& name) {
  const auto found = node.find(name);
  return found == node.not_found() ? nullptr : &found->second;
}

/// Text content of an element without trimming.
inline std::string text_of(const XmlNode& node) { return node.data(); }

}  // namespace turntable::detail
