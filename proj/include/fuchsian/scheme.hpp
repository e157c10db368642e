#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fuchsian {

// A label is the index of the side of R whose interior label it is.
using Label = int;
using Word = std::vector<Label>;

struct SchemeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Side {
  std::string label;
  std::string inverse;
  bool compact = false;
};

struct VertexClass {
  std::string id;
  int petals = 0;
};

class Scheme {
 public:
  std::string name;
  std::vector<Side> sides;
  // corners[i] sits between side i and side i+1; value is a class index
  std::vector<std::optional<int>> corners;
  std::vector<VertexClass> classes;

  Scheme() = default;
  Scheme(std::string name, std::vector<Side> sides, std::vector<std::optional<int>> corners,
         std::vector<VertexClass> classes);

  int size() const { return static_cast<int>(sides.size()); }
  Label inv(Label e) const { return inverse_[e]; }
  Label label(std::string_view name) const;
  const std::string& name_of(Label e) const { return sides[e].label; }

  // Corner indices, absent at boundary ends.
  std::optional<int> v_left(Label e) const;
  std::optional<int> v_right(Label e) const;
  int petals_at(int corner) const;
  int class_at(int corner) const;
  std::optional<Label> rot_l(Label e) const;
  std::optional<Label> rot_r(Label e) const;
  bool adjacent(Label a, Label b) const;
  // corners through which a and b are adjacent
  std::vector<int> shared_corners(Label a, Label b) const;
  int n_pair(Label eL, Label eR) const;

  // Exterior label of the side after crossing it from corner c's side.
  Label crossing_label(int corner) const { return inverse_[corner]; }
  // Petals of the flower at the vertex of corner c, starting with R itself.
  // Each petal is (word of the domain, corner of that domain at the vertex);
  // the walk crosses the side ending at the current corner.
  struct Petal {
    Word word;
    int corner = 0;
  };
  std::vector<Petal> flower(int corner) const;
  // Labels crossed by one full turn of the flower walk (a vertex relator).
  Word flower_relator(int corner) const;

  // Compact self-paired side of a triangle (the special case), as the label g
  // with s_{g^{-1}} compact.
  std::optional<Label> special_label() const;
  bool is_compact(Label e) const;

  std::string word_string(const Word& w) const;
  Word parse_word(std::string_view text) const;
  Word inverse(const Word& w) const;
  Word reduce(Word w) const;

 private:
  std::vector<Label> inverse_;
};

Scheme parse_scheme(std::string_view document);
std::string scheme_to_json(const Scheme& s);

struct ValidationItem {
  std::string clause;
  bool pass = true;
  std::string detail;
};

struct ValidationReport {
  std::string scheme;
  std::vector<ValidationItem> items;
  bool special_case = false;
  struct ClassRow {
    std::string id;
    int petals = 0;
    std::vector<int> corners;
  };
  std::vector<ClassRow> classes;

  bool ok() const;
  std::string text() const;
};

ValidationReport validate_scheme(const Scheme& s);

std::vector<std::string> catalog_names();
// Embedded JSON documents; includes deliberately corrupted mutants.
std::string catalog_document(std::string_view name);
Scheme catalog_scheme(std::string_view name);

}  // namespace fuchsian
