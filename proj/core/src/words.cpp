#include "randgroup/words.hpp"

#include <cctype>
#include <stdexcept>

namespace randgroup {

bool is_reduced(std::span<const Letter> letters) {
  for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
    if (cancels(letters[i], letters[i + 1])) {
      return false;
    }
  }
  return true;
}

bool is_cyclically_reduced(std::span<const Letter> letters) {
  if (!is_reduced(letters)) {
    return false;
  }
  return letters.size() < 2 || !cancels(letters.back(), letters.front());
}

Word Word::from_reduced(std::vector<Letter> letters) {
  for (const Letter& l : letters) {
    if (l.gen < 1 || (l.sign != +1 && l.sign != -1)) {
      throw std::invalid_argument("malformed letter");
    }
  }
  if (!is_reduced(letters)) {
    throw std::invalid_argument("word is not freely reduced");
  }
  return Word(std::move(letters));
}

Word free_reduce(std::span<const Letter> raw) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (const Letter& l : raw) {
    if (!stack.empty() && cancels(stack.back(), l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word::from_reduced(std::move(stack));
}

Word cyclic_reduce(const Word& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && cancels(w[lo], w[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word::from_reduced(std::vector<Letter>(w.begin() + lo, w.begin() + hi));
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word::from_reduced(std::move(out));
}

Word reduced_product(const Word& a, const Word& b) {
  std::vector<Letter> raw;
  raw.reserve(a.size() + b.size());
  raw.insert(raw.end(), a.begin(), a.end());
  raw.insert(raw.end(), b.begin(), b.end());
  return free_reduce(raw);
}

std::string format_letter(Letter l) {
  if (l.gen <= 26) {
    char c = static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen - 1);
    return std::string(1, c);
  }
  return (l.sign > 0 ? "g" : "G") + std::to_string(l.gen);
}

std::string format_word(std::span<const Letter> letters) {
  bool numeric = false;
  for (const Letter& l : letters) {
    if (l.gen > 26) {
      numeric = true;
      break;
    }
  }
  std::string out;
  for (const Letter& l : letters) {
    if (numeric) {
      out += (l.sign > 0 ? "g" : "G") + std::to_string(l.gen);
    } else {
      out += format_letter(l);
    }
  }
  return out;
}

std::vector<Letter> parse_letters(std::string_view text) {
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    // "g12"/"G12" is the numeric form; a 'g' or 'G' not followed by a digit
    // is the plain 7th generator.
    if ((c == 'g' || c == 'G') && i + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      long idx = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        idx = idx * 10 + (text[j] - '0');
        if (idx > 1'000'000) {
          throw std::invalid_argument("generator index out of range");
        }
        ++j;
      }
      if (idx < 1) {
        throw std::invalid_argument("generator index must be positive");
      }
      out.push_back(Letter{static_cast<int>(idx), c == 'g' ? +1 : -1});
      i = j;
    } else if (c >= 'a' && c <= 'z') {
      out.push_back(Letter{c - 'a' + 1, +1});
      ++i;
    } else if (c >= 'A' && c <= 'Z') {
      out.push_back(Letter{c - 'A' + 1, -1});
      ++i;
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c +
                                  "' in word at position " + std::to_string(i));
    }
  }
  return out;
}

BigInt count_reduced_words(int m, int ell) {
  if (m < 1) {
    throw std::invalid_argument("count_reduced_words: m must be >= 1");
  }
  if (ell < 0) {
    throw std::invalid_argument("count_reduced_words: ell must be >= 0");
  }
  if (ell == 0) {
    return 1;
  }
  BigInt count = 2 * m;
  BigInt base = 2 * m - 1;
  for (int i = 1; i < ell; ++i) {
    count *= base;
  }
  return count;
}

Word sample_reduced_word(int m, int ell, Rng& rng) {
  if (m < 1 || ell < 0) {
    throw std::invalid_argument("sample_reduced_word: need m >= 1 and ell >= 0");
  }
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(ell));
  for (int i = 0; i < ell; ++i) {
    if (i == 0) {
      out.push_back(Letter::from_code(static_cast<int>(rng.below(2 * m))));
    } else {
      // skip the code of the cancelling letter
      int banned = out.back().inverse().code();
      int c = static_cast<int>(rng.below(2 * m - 1));
      if (c >= banned) {
        ++c;
      }
      out.push_back(Letter::from_code(c));
    }
  }
  return Word::from_reduced(std::move(out));
}

}  // namespace randgroup
