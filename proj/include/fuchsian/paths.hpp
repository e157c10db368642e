#pragma once

#include <map>
#include <vector>

#include "fuchsian/scheme.hpp"

namespace fuchsian {

// Canonical identification of tessellation domains wR by their words.
class DomainIds {
 public:
  virtual ~DomainIds() = default;
  virtual int id(const Word& w) = 0;
  // id of the domain across the side of domain `id` with exterior label e
  virtual int step(int id, Label e) = 0;
};

// Domain uR named by a representative word u.
using Domain = Word;

// Levels of a thickened path. A level holds one domain, or two domains with
// the left one first when `sided` is set.
struct ThickPath {
  std::vector<std::vector<Domain>> levels;
  bool sided = true;

  int length() const { return static_cast<int>(levels.size()) - 1; }
};

// Free reduction as identification; exact for groups without relators.
class FreeReduction : public DomainIds {
 public:
  explicit FreeReduction(const Scheme& s) : scheme_(s) {}
  int id(const Word& w) override;
  int step(int id, Label e) override;

 private:
  const Scheme& scheme_;
  std::map<Word, int> ids_;
  std::vector<Word> words_;
};

}  // namespace fuchsian
