#include "ftopos/element.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ftopos/errors.hpp"

namespace ftopos {

struct Element::Node {
  Kind kind = Kind::Tuple;
  std::string name;
  std::vector<Element> items;
  std::vector<Entry> entries;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}


bool is_plain_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == '-' || c == '+' ||
           c == '\'' || c == '*';
  });
}

void write_quoted(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') os << '\\';
    os << c;
  }
  os << '"';
}

void write(std::ostream& os, const Element& e) {
  switch (e.kind()) {
    case Element::Kind::Atom:
      if (is_plain_identifier(e.name())) {
        os << e.name();
      } else {
        write_quoted(os, e.name());
      }
      break;
    case Element::Kind::Tuple: {
      os << '(';
      bool first = true;
      for (const auto& item : e.items()) {
        if (!first) os << ", ";
        first = false;
        write(os, item);
      }
      os << ')';
      break;
    }
    case Element::Kind::Fam: {
      os << '{';
      bool first = true;
      for (const auto& [k, v] : e.entries()) {
        if (!first) os << ", ";
        first = false;
        write(os, k);
        os << ": ";
        write(os, v);
      }
      os << '}';
      break;
    }
  }
}

}  // namespace

Element::Element() : node_(nullptr) {
  static const std::shared_ptr<const Node> empty = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Tuple;
    n->hash = mix(static_cast<std::size_t>(Kind::Tuple), 0);
    return std::shared_ptr<const Node>(std::move(n));
  }();
  node_ = empty;
}

Element Element::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->hash = mix(static_cast<std::size_t>(Kind::Atom),
                std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Element(std::move(n));
}

Element Element::tuple(std::vector<Element> items) {
  if (items.empty()) return Element();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tuple;
  std::size_t h = mix(static_cast<std::size_t>(Kind::Tuple), items.size());
  for (const auto& item : items) h = mix(h, item.hash());
  n->hash = h;
  n->items = std::move(items);
  return Element(std::move(n));
}

Element Element::fam(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i - 1].first == entries[i].first) {
      throw ValidationError("family has repeated key " +
                            entries[i].first.str());
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Fam;
  std::size_t h = mix(static_cast<std::size_t>(Kind::Fam), entries.size());
  for (const auto& [k, v] : entries) h = mix(mix(h, k.hash()), v.hash());
  n->hash = h;
  n->entries = std::move(entries);
  return Element(std::move(n));
}

Element::Kind Element::kind() const noexcept { return node_->kind; }

const std::string& Element::name() const {
  if (node_->kind != Kind::Atom) throw Error("element is not an atom: " + str());
  return node_->name;
}

std::span<const Element> Element::items() const {
  if (node_->kind != Kind::Tuple) throw Error("element is not a tuple: " + str());
  return node_->items;
}

std::span<const Element::Entry> Element::entries() const {
  if (node_->kind != Kind::Fam) throw Error("element is not a family: " + str());
  return node_->entries;
}

const Element* Element::find(const Element& key) const {
  const auto& es = entries();
  auto it = std::lower_bound(
      es.begin(), es.end(), key,
      [](const Entry& e, const Element& k) { return e.first < k; });
  if (it == es.end() || it->first != key) return nullptr;
  return &it->second;
}

std::size_t Element::hash() const noexcept { return node_->hash; }

std::string Element::str() const {
  std::ostringstream os;
  write(os, *this);
  return os.str();
}

bool operator==(const Element& a, const Element& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) {
    return false;
  }
  switch (a.node_->kind) {
    case Element::Kind::Atom:
      return a.node_->name == b.node_->name;
    case Element::Kind::Tuple:
      return a.node_->items == b.node_->items;
    case Element::Kind::Fam:
      return a.node_->entries == b.node_->entries;
  }
  return false;
}

std::strong_ordering operator<=>(const Element& a, const Element& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  switch (a.node_->kind) {
    case Element::Kind::Atom:
      return a.node_->name.compare(b.node_->name) <=> 0;
    case Element::Kind::Tuple:
      return std::lexicographical_compare_three_way(
          a.node_->items.begin(), a.node_->items.end(),
          b.node_->items.begin(), b.node_->items.end());
    case Element::Kind::Fam:
      return std::lexicographical_compare_three_way(
          a.node_->entries.begin(), a.node_->entries.end(),
          b.node_->entries.begin(), b.node_->entries.end(),
          [](const Element::Entry& x, const Element::Entry& y) {
            if (auto c = x.first <=> y.first; c != 0) return c;
            return x.second <=> y.second;
          });
  }
  return std::strong_ordering::equal;
}

Element atom(std::size_t n) { return Element::atom(std::to_string(n)); }

}  // namespace ftopos
