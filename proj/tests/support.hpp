#pragma once

#include <string>
#include <vector>

#include "randgroup/presentation.hpp"
#include "randgroup/words.hpp"

namespace randgroup::test {

inline Word word(const std::string& text) {
  return Word::from_reduced(parse_letters(text));
}

inline Presentation presentation(int m, int ell, double density,
                                 const std::vector<std::string>& relators) {
  std::vector<Word> words;
  words.reserve(relators.size());
  for (const std::string& r : relators) {
    words.push_back(word(r));
  }
  return Presentation::create(m, ell, density, std::move(words));
}

}  // namespace randgroup::test
