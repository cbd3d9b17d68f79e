#include "diolab/config.hpp"

#include <charconv>
#include <stdexcept>

namespace diolab::config {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("config: line " + std::to_string(line) + ": " + what);
}

}  // namespace

bool Node::has(const std::string& key) const {
  for (const auto& it : items)
    if (it.key == key) return true;
  return false;
}

const Node::Item& Node::at(const std::string& key) const {
  for (const auto& it : items)
    if (it.key == key) return it;
  throw std::domain_error("config: missing key '" + key + "'");
}

const std::string& Node::value_at(const std::string& key) const {
  const Item& it = at(key);
  if (it.child) throw std::domain_error("config: key '" + key + "' is a block, not a value");
  return it.value;
}

const Node& Node::child_at(const std::string& key) const {
  const Item& it = at(key);
  if (!it.child) throw std::domain_error("config: key '" + key + "' is a value, not a block");
  return *it.child;
}

std::optional<std::string> Node::maybe_value(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return value_at(key);
}

const Node* Node::maybe_child(const std::string& key) const {
  if (!has(key)) return nullptr;
  return &child_at(key);
}

std::vector<const Node::Item*> Node::all(const std::string& key) const {
  std::vector<const Item*> out;
  for (const auto& it : items)
    if (it.key == key) out.push_back(&it);
  return out;
}

void Node::add_value(std::string key, std::string value) {
  items.push_back(Item{std::move(key), std::move(value), nullptr});
}

Node& Node::add_child(std::string key) {
  items.push_back(Item{std::move(key), {}, std::make_shared<Node>()});
  return *items.back().child;
}

Node parse(std::string_view text) {
  Node root;
  std::vector<Node*> stack{&root};
  std::vector<std::size_t> open_lines;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = (nl == std::string_view::npos) ? text.substr(pos)
                                                          : text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line == "}") {
      if (stack.size() == 1) fail(line_no, "unmatched '}'");
      stack.pop_back();
      open_lines.pop_back();
      continue;
    }

    std::size_t sp = line.find_first_of(" \t");
    std::string key(sp == std::string_view::npos ? line : line.substr(0, sp));
    std::string_view rest =
        sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp + 1));

    if (rest == "{") {
      stack.push_back(&stack.back()->add_child(std::move(key)));
      open_lines.push_back(line_no);
    } else if (rest.empty()) {
      fail(line_no, "key '" + key + "' has no value (use 'key value' or 'key {')");
    } else if (rest.back() == '{') {
      fail(line_no, "'{' must stand alone after the key");
    } else {
      stack.back()->add_value(std::move(key), std::string(rest));
    }
  }

  if (stack.size() != 1)
    fail(open_lines.back(), "block opened here is never closed");
  return root;
}

namespace {

void serialize_into(const Node& node, int depth, std::string& out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& it : node.items) {
    out += pad;
    out += it.key;
    if (it.child) {
      out += " {\n";
      serialize_into(*it.child, depth + 1, out);
      out += pad;
      out += "}\n";
    } else {
      out += ' ';
      out += it.value;
      out += '\n';
    }
  }
}

}  // namespace

std::string serialize(const Node& node) {
  std::string out;
  serialize_into(node, 0, out);
  return out;
}

std::int64_t to_int(const std::string& text) {
  std::int64_t v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e)
    throw std::invalid_argument("config: malformed integer '" + text + "'");
  return v;
}

Rat to_rat(const std::string& text) { return parse_rat(text); }

bool to_bool(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw std::invalid_argument("config: malformed boolean '" + text + "' (use true/false)");
}

}  // namespace diolab::config
