#include "fuchsian/scheme.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fuchsian {

using nlohmann::json;

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) throw SchemeError(fmt::format("unknown field '{}' in {}", it.key(), where));
  }
}

}  // namespace

Scheme::Scheme(std::string name_, std::vector<Side> sides_, std::vector<std::optional<int>> corners_,
               std::vector<VertexClass> classes_)
    : name(std::move(name_)), sides(std::move(sides_)), corners(std::move(corners_)), classes(std::move(classes_)) {
  const int n = size();
  if (n < 3) throw SchemeError(fmt::format("scheme needs at least 3 sides, got {}", n));
  if (static_cast<int>(corners.size()) != n)
    throw SchemeError("corners must be parallel to sides");
  std::map<std::string, int> by_label;
  for (int i = 0; i < n; ++i) {
    if (!by_label.emplace(sides[i].label, i).second)
      throw SchemeError(fmt::format("duplicate label '{}'", sides[i].label));
  }
  inverse_.resize(n);
  for (int i = 0; i < n; ++i) {
    auto it = by_label.find(sides[i].inverse);
    if (it == by_label.end())
      throw SchemeError(fmt::format("unknown label '{}' referenced as inverse of '{}'", sides[i].inverse,
                                    sides[i].label));
    inverse_[i] = it->second;
  }
  for (int i = 0; i < n; ++i) {
    if (inverse_[inverse_[i]] != i)
      throw SchemeError(fmt::format("pairing is not an involution at '{}'", sides[i].label));
  }
  for (const auto& c : corners) {
    if (c && (*c < 0 || *c >= static_cast<int>(classes.size())))
      throw SchemeError("corner references an unknown vertex class");
  }
}

Label Scheme::label(std::string_view nm) const {
  for (int i = 0; i < size(); ++i)
    if (sides[i].label == nm) return i;
  throw SchemeError(fmt::format("unknown label '{}'", nm));
}

std::optional<int> Scheme::v_left(Label e) const {
  int c = mod(e - 1, size());
  if (!corners[c]) return std::nullopt;
  return c;
}

std::optional<int> Scheme::v_right(Label e) const {
  if (!corners[e]) return std::nullopt;
  return e;
}

int Scheme::class_at(int corner) const {
  if (!corners[corner]) throw SchemeError(fmt::format("corner {} is a boundary end", corner));
  return *corners[corner];
}

int Scheme::petals_at(int corner) const { return classes[class_at(corner)].petals; }

std::optional<Label> Scheme::rot_l(Label e) const {
  if (!v_left(e)) return std::nullopt;
  return inverse_[mod(e - 1, size())];
}

std::optional<Label> Scheme::rot_r(Label e) const {
  if (!v_right(e)) return std::nullopt;
  return inverse_[mod(e + 1, size())];
}

std::vector<int> Scheme::shared_corners(Label a, Label b) const {
  std::vector<int> out;
  auto x = v_left(inv(a)), y = v_right(inv(b));
  if (x && y && *x == *y) out.push_back(*x);
  x = v_left(inv(b));
  y = v_right(inv(a));
  if (x && y && *x == *y) out.push_back(*x);
  return out;
}

bool Scheme::adjacent(Label a, Label b) const { return a == b || !shared_corners(a, b).empty(); }

int Scheme::n_pair(Label eL, Label eR) const {
  auto x = v_right(eL), y = v_left(eR);
  if (!x || !y) throw SchemeError("n_pair: vertex at a boundary end");
  if (class_at(*x) != class_at(*y)) throw SchemeError("n_pair: vertices differ");
  return petals_at(*x);
}

std::vector<Scheme::Petal> Scheme::flower(int corner) const {
  const int n = petals_at(corner);
  std::vector<Petal> out;
  Petal p{{}, corner};
  for (int k = 0; k < 2 * n; ++k) {
    out.push_back(p);
    Label f = inverse_[p.corner];
    p.word.push_back(f);
    p.corner = mod(f - 1, size());
  }
  return out;
}

Word Scheme::flower_relator(int corner) const {
  auto petals = flower(corner);
  Word w = petals.back().word;
  w.push_back(inverse_[petals.back().corner]);
  return w;
}

bool Scheme::is_compact(Label e) const { return corners[mod(e - 1, size())] && corners[e]; }

std::optional<Label> Scheme::special_label() const {
  if (size() != 3) return std::nullopt;
  for (int i = 0; i < 3; ++i)
    if (is_compact(i)) return inverse_[i];
  return std::nullopt;
}

std::string Scheme::word_string(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += sides[w[i]].label;
  }
  return out;
}

Word Scheme::parse_word(std::string_view text) const {
  std::istringstream in{std::string(text)};
  Word w;
  std::string tok;
  while (in >> tok) w.push_back(label(tok));
  return w;
}

Word Scheme::inverse(const Word& w) const {
  Word out(w.rbegin(), w.rend());
  for (auto& e : out) e = inverse_[e];
  return out;
}

Word Scheme::reduce(Word w) const {
  Word out;
  for (Label e : w) {
    if (!out.empty() && out.back() == inverse_[e])
      out.pop_back();
    else
      out.push_back(e);
  }
  return out;
}

Scheme parse_scheme(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& ex) {
    throw SchemeError(fmt::format("malformed document: {}", ex.what()));
  }
  try {
    if (!doc.is_object()) throw SchemeError("malformed document: top level must be an object");
    reject_unknown(doc, {"name", "sides", "corners", "vertex_classes"}, "scheme");
    std::vector<VertexClass> classes;
    std::map<std::string, int> class_index;
    if (doc.contains("vertex_classes")) {
      for (auto it = doc["vertex_classes"].begin(); it != doc["vertex_classes"].end(); ++it) {
        reject_unknown(*it, {"petals"}, "vertex class");
        int petals = it->at("petals").get<int>();
        if (petals < 1) throw SchemeError(fmt::format("vertex class '{}' has nonpositive petals", it.key()));
        class_index[it.key()] = static_cast<int>(classes.size());
        classes.push_back({it.key(), petals});
      }
    }
    std::vector<Side> sides;
    for (const auto& js : doc.at("sides")) {
      reject_unknown(js, {"label", "inverse", "compact"}, "side");
      sides.push_back({js.at("label").get<std::string>(), js.at("inverse").get<std::string>(),
                       js.value("compact", false)});
    }
    std::vector<std::optional<int>> corners;
    for (const auto& jc : doc.at("corners")) {
      if (jc.is_null()) {
        corners.emplace_back();
        continue;
      }
      reject_unknown(jc, {"vertex"}, "corner");
      auto id = jc.at("vertex").get<std::string>();
      auto it = class_index.find(id);
      if (it == class_index.end()) throw SchemeError(fmt::format("unknown vertex class '{}'", id));
      corners.emplace_back(it->second);
    }
    return Scheme(doc.value("name", std::string("unnamed")), std::move(sides), std::move(corners),
                  std::move(classes));
  } catch (const json::exception& ex) {
    throw SchemeError(fmt::format("malformed document: {}", ex.what()));
  }
}

std::string scheme_to_json(const Scheme& s) {
  json doc;
  doc["name"] = s.name;
  doc["sides"] = json::array();
  for (const auto& side : s.sides)
    doc["sides"].push_back({{"label", side.label}, {"inverse", side.inverse}, {"compact", side.compact}});
  doc["corners"] = json::array();
  for (const auto& c : s.corners) {
    if (c)
      doc["corners"].push_back({{"vertex", s.classes[*c].id}});
    else
      doc["corners"].push_back(nullptr);
  }
  doc["vertex_classes"] = json::object();
  for (const auto& v : s.classes) doc["vertex_classes"][v.id] = {{"petals", v.petals}};
  return doc.dump(2);
}

bool ValidationReport::ok() const {
  return std::all_of(items.begin(), items.end(), [](const ValidationItem& i) { return i.pass; });
}

std::string ValidationReport::text() const {
  std::string out = fmt::format("scheme {}\n", scheme);
  for (const auto& i : items)
    out += fmt::format("  [{}] {}{}\n", i.pass ? "pass" : "FAIL", i.clause, i.detail.empty() ? "" : ": " + i.detail);
  out += fmt::format("  special case: {}\n", special_case ? "yes" : "no");
  out += "  vertex classes:\n";
  for (const auto& c : classes) out += fmt::format("    {:<8} petals {:>2}  corners {}\n", c.id, c.petals, fmt::join(c.corners, ","));
  out += fmt::format("result: {}\n", ok() ? "pass" : "fail");
  return out;
}

ValidationReport validate_scheme(const Scheme& s) {
  ValidationReport rep;
  rep.scheme = s.name;
  const int n = s.size();
  auto add = [&](std::string clause, bool pass, std::string detail = {}) {
    rep.items.push_back({std::move(clause), pass, std::move(detail)});
  };

  for (std::size_t c = 0; c < s.classes.size(); ++c) {
    ValidationReport::ClassRow row{s.classes[c].id, s.classes[c].petals, {}};
    for (int i = 0; i < n; ++i)
      if (s.corners[i] && *s.corners[i] == static_cast<int>(c)) row.corners.push_back(i);
    rep.classes.push_back(std::move(row));
  }

  {
    std::string bad;
    for (const auto& v : s.classes)
      if (v.petals < 2) bad += (bad.empty() ? "" : ", ") + v.id;
    add("petal counts at least 2", bad.empty(), bad.empty() ? "" : "classes " + bad);
  }
  {
    std::string bad;
    for (int e = 0; e < n; ++e) {
      bool want = static_cast<bool>(s.v_left(e)) && static_cast<bool>(s.v_right(e));
      if (want != s.sides[e].compact) bad += (bad.empty() ? "" : ", ") + s.sides[e].label;
    }
    add("compact flags match corners", bad.empty(), bad.empty() ? "" : "sides " + bad);
  }
  {
    std::string bad;
    for (Label e = 0; e < n; ++e) {
      auto a = s.v_left(e), b = s.v_right(s.inv(e));
      bool match = static_cast<bool>(a) == static_cast<bool>(b) && (!a || s.class_at(*a) == s.class_at(*b));
      if (!match) bad += (bad.empty() ? "" : ", ") + s.sides[e].label;
    }
    add("pairing carries corners to corners of the same class", bad.empty(),
        bad.empty() ? "" : "labels " + bad);
  }
  {
    std::string bad;
    bool petals_ok = std::all_of(s.classes.begin(), s.classes.end(), [](const VertexClass& v) { return v.petals >= 1; });
    for (int c = 0; c < n && petals_ok; ++c) {
      if (!s.corners[c]) continue;
      const int cls = s.class_at(c);
      const int np = s.petals_at(c);
      // corner orbit of the walk must close up within 2n steps and cover the class
      std::set<int> seen;
      int cur = c, period = 0;
      bool bounded = true;
      do {
        seen.insert(cur);
        cur = mod(s.crossing_label(cur) - 1, n);
        ++period;
        if (!s.corners[cur] || s.class_at(cur) != cls || period > 2 * np) {
          bounded = false;
          break;
        }
      } while (cur != c);
      std::set<int> expect;
      for (int i = 0; i < n; ++i)
        if (s.corners[i] && *s.corners[i] == cls) expect.insert(i);
      if (!bounded || (2 * np) % period != 0 || seen != expect)
        bad += fmt::format("{}corner {} (class {}, petals {})", bad.empty() ? "" : ", ", c, s.classes[cls].id, np);
    }
    add("even corners: flower walk closes after 2n(v) petals", bad.empty(), bad);
  }
  {
    std::string bad;
    for (const auto& c : rep.classes)
      if (c.corners.empty()) bad += (bad.empty() ? "" : ", ") + c.id;
    add("every vertex class has a corner", bad.empty(), bad.empty() ? "" : "classes " + bad);
  }
  {
    bool compact = std::all_of(s.corners.begin(), s.corners.end(), [](const auto& c) { return c.has_value(); });
    bool pass = true;
    std::string detail;
    if (n >= 5) {
      detail = fmt::format("N(R)={}", n);
    } else if (n == 4) {
      if (!compact) {
        detail = "N(R)=4, non-compact";
      } else {
        for (int c = 0; c < 2; ++c) {
          if (s.petals_at(c) == 2 && s.petals_at(c + 2) == 2) {
            pass = false;
            detail = fmt::format("N(R)=4 compact with two opposite vertices of petals 2 (corners {} and {})", c, c + 2);
          }
        }
        if (pass) detail = "N(R)=4 compact, no opposite pair of petals 2";
      }
    } else {
      pass = !compact;
      detail = compact ? "N(R)=3 and R compact" : "N(R)=3, non-compact";
    }
    add("number of sides", pass, detail);
  }
  rep.special_case = s.special_label().has_value();
  return rep;
}

}  // namespace fuchsian
