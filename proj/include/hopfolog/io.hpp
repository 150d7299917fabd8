#pragma once

#include <optional>
#include <string>

#include "hopfolog/comod.hpp"
#include "json.hpp"

namespace hopfolog {

/// Raised on malformed description files; message includes the json
/// parser's position for syntax errors and a field path otherwise.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A module description file: always an H-module, optionally with the
/// B-action data making it a smash-product module.
struct LoadedModule {
  GradedModule module;
  std::optional<SmashModule> smash;

  const GradedModule& h_module() const { return smash ? smash->module : module; }
};

FamilyPtr parse_family(const nlohmann::json& j);
nlohmann::json family_json(const FamilyPtr& fam);

/// Doubled degree <-> JSON: even degrees as integers, odd as "k/2".
long parse_deg2(const nlohmann::json& j);
nlohmann::json deg2_json(long deg2);

LoadedModule parse_module(const nlohmann::json& j);
LoadedModule load_module_file(const std::string& path);
nlohmann::json module_json(const GradedModule& m);
nlohmann::json module_json(const SmashModule& m);
nlohmann::json module_json(const LoadedModule& m);

/// Morphism description: {"source": <module>, "target": <module>,
/// "mat": [[row, col, "scalar"]]}. A SmashHom when both ends carry
/// B-data, a plain hom otherwise.
struct LoadedHom {
  ModuleHom hom;
  std::optional<SmashHom> smash;
};

LoadedHom parse_hom(const nlohmann::json& j);
LoadedHom load_hom_file(const std::string& path);
nlohmann::json hom_json(const ModuleHom& f);
nlohmann::json hom_json(const SmashHom& f);

/// Canonical text rendering used for files and round-trip checks:
/// 2-space indent, keys in fixed order, trailing newline.
std::string canonical_text(const nlohmann::json& j);

}  // namespace hopfolog
