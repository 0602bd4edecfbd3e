#include "ftopos/finset.hpp"

#include <algorithm>
#include <unordered_map>

#include "ftopos/errors.hpp"
#include "ftopos/guard.hpp"

namespace ftopos {

FinSet::FinSet() {
  static const std::shared_ptr<const Data> empty = std::make_shared<Data>();
  data_ = empty;
}

FinSet::FinSet(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  auto d = std::make_shared<Data>();
  d->index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    d->index.emplace(elements[i], i);
  }
  d->elements = std::move(elements);
  data_ = std::move(d);
}

FinSet FinSet::range(std::size_t n) {
  std::vector<Element> es;
  es.reserve(n);
  for (std::size_t i = 0; i < n; ++i) es.push_back(atom(i));
  return FinSet(std::move(es));
}

FinSet FinSet::atoms(std::initializer_list<const char*> names) {
  std::vector<Element> es;
  for (const char* n : names) es.push_back(atom(n));
  return FinSet(std::move(es));
}

std::optional<std::size_t> FinSet::index_of(const Element& e) const {
  auto it = data_->index.find(e);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSet::require(const Element& e, const std::string& context) const {
  if (auto i = index_of(e)) return *i;
  throw ValidationError(context + ": element " + e.str() + " not in set");
}

bool operator==(const FinSet& a, const FinSet& b) noexcept {
  return a.data_ == b.data_ || a.data_->elements == b.data_->elements;
}

FinFunction::FinFunction(FinSet dom, FinSet cod, std::vector<std::size_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)) {
  if (table.size() != dom_.size()) {
    throw ValidationError("function table has " + std::to_string(table.size()) +
                          " entries for a domain of size " +
                          std::to_string(dom_.size()));
  }
  for (std::size_t v : table) {
    if (v >= cod_.size()) {
      throw ValidationError("function value outside codomain");
    }
  }
  table_ = std::make_shared<const std::vector<std::size_t>>(std::move(table));
}

FinFunction FinFunction::from_pairs(
    FinSet dom, FinSet cod,
    const std::vector<std::pair<Element, Element>>& pairs) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> table(dom.size(), kUnset);
  for (const auto& [x, y] : pairs) {
    const std::size_t i = dom.require(x, "function argument");
    const std::size_t j = cod.require(y, "function value");
    if (table[i] != kUnset) {
      throw ValidationError("function defined twice at " + x.str());
    }
    table[i] = j;
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] == kUnset) {
      throw ValidationError("function undefined at " + dom[i].str());
    }
  }
  return FinFunction(std::move(dom), std::move(cod), std::move(table));
}

FinFunction FinFunction::identity(const FinSet& s) {
  std::vector<std::size_t> table(s.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = i;
  return FinFunction(s, s, std::move(table));
}

Element FinFunction::operator()(const Element& x) const {
  return cod_[at(dom_.require(x, "function argument"))];
}

bool FinFunction::is_injective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (std::size_t v : *table_) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool FinFunction::is_surjective() const {
  std::vector<bool> hit(cod_.size(), false);
  std::size_t count = 0;
  for (std::size_t v : *table_) {
    if (!hit[v]) {
      hit[v] = true;
      ++count;
    }
  }
  return count == cod_.size();
}

bool operator==(const FinFunction& a, const FinFunction& b) noexcept {
  return a.dom_ == b.dom_ && a.cod_ == b.cod_ &&
         (a.table_ == b.table_ || *a.table_ == *b.table_);
}

FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (!(f.cod() == g.dom())) {
    throw ValidationError("compose: codomain/domain mismatch");
  }
  std::vector<std::size_t> table(f.dom().size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = g.at(f.at(i));
  return FinFunction(f.dom(), g.cod(), std::move(table));
}

FinFunction inverse(const FinFunction& f) {
  if (!f.is_bijective()) throw ValidationError("inverse: not a bijection");
  std::vector<std::size_t> table(f.cod().size());
  for (std::size_t i = 0; i < f.dom().size(); ++i) table[f.at(i)] = i;
  return FinFunction(f.cod(), f.dom(), std::move(table));
}

std::vector<FinFunction> all_functions(const FinSet& dom, const FinSet& cod) {
  std::vector<FinFunction> out;
  if (cod.empty() && !dom.empty()) return out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    total *= cod.size();
    check_size("all_functions", total);
  }
  std::vector<std::size_t> table(dom.size(), 0);
  while (true) {
    out.emplace_back(dom, cod, table);
    std::size_t k = table.size();
    while (k > 0) {
      --k;
      if (++table[k] < cod.size()) break;
      table[k] = 0;
      if (k == 0) return out;
    }
    if (table.empty()) return out;
  }
}

}  // namespace ftopos
