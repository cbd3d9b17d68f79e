#pragma once

#include "diolab/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diolab::config {

/// Structured-text configuration tree. The format is line oriented:
///
///   # comment to end of line
///   key value with spaces kept verbatim
///   key {
///     nested_key 1/8
///   }
///
/// Keys may repeat (tables use repeated `entry` lines). Item order is
/// preserved; the serializer emits two-space indentation and is the
/// canonical form (parse(serialize(n)) reproduces n).
struct Node {
  struct Item {
    std::string key;
    std::string value;            // scalar payload; empty for block items
    std::shared_ptr<Node> child;  // non-null exactly for block items
  };

  std::vector<Item> items;

  bool has(const std::string& key) const;
  /// First item with the key; throws std::domain_error when absent.
  const Item& at(const std::string& key) const;
  /// Scalar lookup; throws when absent or a block.
  const std::string& value_at(const std::string& key) const;
  /// Block lookup; throws when absent or a scalar.
  const Node& child_at(const std::string& key) const;
  std::optional<std::string> maybe_value(const std::string& key) const;
  const Node* maybe_child(const std::string& key) const;
  /// Every item with the key, in order.
  std::vector<const Item*> all(const std::string& key) const;

  void add_value(std::string key, std::string value);
  Node& add_child(std::string key);
};

/// Parses the format above; throws std::runtime_error with a line number on
/// malformed input (unbalanced braces, value-less keys).
Node parse(std::string_view text);

std::string serialize(const Node& node);

/// Strict scalar readers; throw std::invalid_argument on junk.
std::int64_t to_int(const std::string& text);
Rat to_rat(const std::string& text);
bool to_bool(const std::string& text);

}  // namespace diolab::config
