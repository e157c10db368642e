#include <fmt/format.h>

#include <map>

#include "fuchsian/scheme.hpp"

namespace fuchsian {

namespace {

const std::map<std::string, std::string, std::less<>>& documents() {
  static const std::map<std::string, std::string, std::less<>> docs = {
      {"free-f2-ideal-quad", R"({
  "name": "free-f2-ideal-quad",
  "sides": [
    {"label": "a", "inverse": "a^-1", "compact": false},
    {"label": "b", "inverse": "b^-1", "compact": false},
    {"label": "a^-1", "inverse": "a", "compact": false},
    {"label": "b^-1", "inverse": "b", "compact": false}
  ],
  "corners": [null, null, null, null],
  "vertex_classes": {}
})"},
      {"genus2-octagon", R"({
  "name": "genus2-octagon",
  "sides": [
    {"label": "a", "inverse": "a^-1", "compact": true},
    {"label": "b", "inverse": "b^-1", "compact": true},
    {"label": "a^-1", "inverse": "a", "compact": true},
    {"label": "b^-1", "inverse": "b", "compact": true},
    {"label": "c", "inverse": "c^-1", "compact": true},
    {"label": "d", "inverse": "d^-1", "compact": true},
    {"label": "c^-1", "inverse": "c", "compact": true},
    {"label": "d^-1", "inverse": "d", "compact": true}
  ],
  "corners": [{"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"},
              {"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"}],
  "vertex_classes": {"v": {"petals": 4}}
})"},
      {"triangle-special-case", R"({
  "name": "triangle-special-case",
  "sides": [
    {"label": "g", "inverse": "g", "compact": true},
    {"label": "x", "inverse": "x^-1", "compact": false},
    {"label": "x^-1", "inverse": "x", "compact": false}
  ],
  "corners": [{"vertex": "v"}, null, {"vertex": "v"}],
  "vertex_classes": {"v": {"petals": 3}}
})"},
      {"mutant-octagon-broken-pairing", R"({
  "name": "mutant-octagon-broken-pairing",
  "sides": [
    {"label": "a", "inverse": "a^-1", "compact": true},
    {"label": "b", "inverse": "b^-1", "compact": true},
    {"label": "b^-1", "inverse": "b", "compact": true},
    {"label": "a^-1", "inverse": "a", "compact": true},
    {"label": "c", "inverse": "c^-1", "compact": true},
    {"label": "d", "inverse": "d^-1", "compact": true},
    {"label": "c^-1", "inverse": "c", "compact": true},
    {"label": "d^-1", "inverse": "d", "compact": true}
  ],
  "corners": [{"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"},
              {"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"}],
  "vertex_classes": {"v": {"petals": 4}}
})"},
      {"mutant-octagon-petal-mismatch", R"({
  "name": "mutant-octagon-petal-mismatch",
  "sides": [
    {"label": "a", "inverse": "a^-1", "compact": true},
    {"label": "b", "inverse": "b^-1", "compact": true},
    {"label": "a^-1", "inverse": "a", "compact": true},
    {"label": "b^-1", "inverse": "b", "compact": true},
    {"label": "c", "inverse": "c^-1", "compact": true},
    {"label": "d", "inverse": "d^-1", "compact": true},
    {"label": "c^-1", "inverse": "c", "compact": true},
    {"label": "d^-1", "inverse": "d", "compact": true}
  ],
  "corners": [{"vertex": "v"}, {"vertex": "w"}, {"vertex": "v"}, {"vertex": "w"},
              {"vertex": "v"}, {"vertex": "w"}, {"vertex": "v"}, {"vertex": "w"}],
  "vertex_classes": {"v": {"petals": 4}, "w": {"petals": 3}}
})"},
      {"mutant-compact-quad", R"({
  "name": "mutant-compact-quad",
  "sides": [
    {"label": "a", "inverse": "a^-1", "compact": true},
    {"label": "b", "inverse": "b^-1", "compact": true},
    {"label": "a^-1", "inverse": "a", "compact": true},
    {"label": "b^-1", "inverse": "b", "compact": true}
  ],
  "corners": [{"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"}, {"vertex": "v"}],
  "vertex_classes": {"v": {"petals": 2}}
})"},
  };
  return docs;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [name, doc] : documents()) out.push_back(name);
  return out;
}

std::string catalog_document(std::string_view name) {
  auto it = documents().find(name);
  if (it == documents().end()) throw SchemeError(fmt::format("unknown catalog scheme '{}'", name));
  return it->second;
}

Scheme catalog_scheme(std::string_view name) { return parse_scheme(catalog_document(name)); }

}  // namespace fuchsian
