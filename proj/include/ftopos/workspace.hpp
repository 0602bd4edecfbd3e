#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftopos/category.hpp"
#include "ftopos/presheaf.hpp"
#include "ftopos/segal.hpp"

namespace ftopos {

using json = nlohmann::json;

/// Atoms are strings, tuples arrays, families {"fam": [[key, value], ...]}.
json element_to_json(const Element& e);
Element element_from_json(const json& j);

json category_to_json(const FiniteCategory& c);
FiniteCategory category_from_json(const json& j);

/// Builtin index categories: "terminal", "empty", "discrete:N", "chain:N",
/// "cyclic:N", "symmetric:N".
FiniteCategory builtin_category(const std::string& name);

json presheaf_to_json(const Presheaf& x);
json nat_trans_to_json(const NatTrans& f, const std::string& dom, const std::string& cod);

/// A loaded workspace: one topos plus named structures over it. `spec`
/// holds the canonical form that `dump_workspace` writes.
struct Workspace {
  json spec;
  Topos topos = Topos::sets();
  std::map<std::string, FiniteCategory> categories;
  std::map<std::string, bool> category_checked;
  std::map<std::string, Presheaf> presheaves;
  std::map<std::string, NatTrans> morphisms;
  std::map<std::string, CategoryObject> category_objects;
  std::map<std::string, TruncatedSimplicialObject> simplicial_objects;
  std::vector<std::string> maps;

  const Presheaf& presheaf(const std::string& name) const;
  const NatTrans& morphism(const std::string& name) const;
};

/// Parses and resolves a workspace. Syntax errors raise ParseError with a
/// line and column; bad references and invalid structures raise
/// ValidationError naming the entry.
Workspace load_workspace(const std::string& text);
Workspace load_workspace_file(const std::filesystem::path& path);

/// Builds the canonical spec from a JSON value already in memory.
Workspace load_workspace(const json& spec);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump_workspace(const Workspace& w);
std::string dump_json(const json& j);

}  // namespace ftopos
