#include "randgroup/presentation.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace randgroup {

using nlohmann::json;

std::int64_t relator_count(int m, int ell, double density) {
  if (m < 2) {
    throw std::invalid_argument("relator_count: m must be >= 2");
  }
  if (ell < 1) {
    throw std::invalid_argument("relator_count: ell must be >= 1");
  }
  if (density < 0.0 || density > 1.0) {
    throw std::invalid_argument("relator_count: density must lie in [0, 1]");
  }
  const double log_count = density * ell * std::log(2.0 * m - 1.0);
  if (log_count > 63.0 * std::log(2.0)) {
    throw std::overflow_error(
        "relator_count: (2m-1)^(d*ell) exceeds 2^63; pass an explicit count override");
  }
  const double count = std::exp(log_count);
  // half-up rounding of the floating point value
  auto rounded = static_cast<std::int64_t>(std::floor(count + 0.5));
  return rounded < 1 ? 1 : rounded;
}

Presentation Presentation::create(int m, int ell, double density,
                                  std::vector<Word> relators,
                                  std::optional<std::uint64_t> seed) {
  if (m < 1) {
    throw std::invalid_argument("Presentation: m must be >= 1");
  }
  if (ell < 1) {
    throw std::invalid_argument("Presentation: ell must be >= 1");
  }
  if (density < 0.0 || density > 1.0) {
    throw std::invalid_argument("Presentation: density must lie in [0, 1]");
  }
  std::set<std::vector<Letter>, std::less<>> seen;
  for (std::size_t k = 0; k < relators.size(); ++k) {
    const Word& r = relators[k];
    const std::string where = "relators[" + std::to_string(k) + "]";
    if (r.size() != static_cast<std::size_t>(ell)) {
      throw ParseError(where, "relator length mismatch (expected " +
                                  std::to_string(ell) + ", got " +
                                  std::to_string(r.size()) + ")");
    }
    if (!is_cyclically_reduced(std::span(r.letters()))) {
      throw ParseError(where, "relator not cyclically reduced");
    }
    for (const Letter& l : r) {
      if (l.gen > m) {
        throw ParseError(where, "letter outside the generator range");
      }
    }
    if (!seen.insert(r.letters()).second) {
      throw ParseError(where, "duplicate relator");
    }
  }

  Presentation p;
  p.m_ = m;
  p.ell_ = ell;
  p.density_ = density;
  p.seed_ = seed;
  p.relators_ = std::move(relators);
  p.doubled_.reserve(p.relators_.size() * 2);
  for (const Word& r : p.relators_) {
    std::vector<std::int32_t> fwd;
    fwd.reserve(2 * r.size());
    for (const Letter& l : r) {
      fwd.push_back(l.code());
    }
    fwd.insert(fwd.end(), fwd.begin(), fwd.begin() + static_cast<long>(r.size()));
    Word inv = invert(r);
    std::vector<std::int32_t> bwd;
    bwd.reserve(2 * inv.size());
    for (const Letter& l : inv) {
      bwd.push_back(l.code());
    }
    bwd.insert(bwd.end(), bwd.begin(), bwd.begin() + static_cast<long>(inv.size()));
    p.doubled_.push_back(std::move(fwd));
    p.doubled_.push_back(std::move(bwd));
  }
  return p;
}

std::span<const std::int32_t> Presentation::doubled(int i, bool inverted) const {
  return doubled_.at(static_cast<std::size_t>(2 * i + (inverted ? 1 : 0)));
}

Letter Presentation::oriented_letter(int i, int orientation, int pos) const {
  const Word& r = relator(i);
  const int ell = static_cast<int>(r.size());
  pos = ((pos % ell) + ell) % ell;
  if (orientation > 0) {
    return r[static_cast<std::size_t>(pos)];
  }
  return r[static_cast<std::size_t>(ell - 1 - pos)].inverse();
}

bool Presentation::operator==(const Presentation& other) const {
  return m_ == other.m_ && ell_ == other.ell_ && density_ == other.density_ &&
         seed_ == other.seed_ && relators_ == other.relators_;
}

Presentation sample_presentation(int m, int ell, double density, Rng& rng,
                                 std::optional<std::int64_t> count_override,
                                 std::int64_t count_cap,
                                 std::optional<std::uint64_t> seed_provenance) {
  const std::int64_t target =
      count_override ? *count_override : relator_count(m, ell, density);
  if (target < 1) {
    throw std::invalid_argument("sample_presentation: target count must be >= 1");
  }
  if (target > count_cap) {
    throw std::invalid_argument(
        "sample_presentation: relator count " + std::to_string(target) +
        " exceeds the cap " + std::to_string(count_cap));
  }

  std::vector<Word> relators;
  relators.reserve(static_cast<std::size_t>(target));
  std::set<std::vector<Letter>, std::less<>> seen;
  std::int64_t attempts = 0;
  const std::int64_t attempt_budget = 100 * target;
  while (static_cast<std::int64_t>(relators.size()) < target) {
    if (++attempts > attempt_budget) {
      throw std::runtime_error(
          "sample_presentation: rejection budget exhausted; density too high for this ell");
    }
    Word w = sample_reduced_word(m, ell, rng);
    if (!is_cyclically_reduced(std::span(w.letters()))) {
      continue;
    }
    if (!seen.insert(w.letters()).second) {
      continue;
    }
    relators.push_back(std::move(w));
  }
  return Presentation::create(m, ell, density, std::move(relators), seed_provenance);
}

Presentation sample_presentation(int m, int ell, double density, std::uint64_t seed,
                                 std::optional<std::int64_t> count_override,
                                 std::int64_t count_cap) {
  Rng rng(seed);
  return sample_presentation(m, ell, density, rng, count_override, count_cap, seed);
}

std::string presentation_to_json(const Presentation& p) {
  json doc;
  doc["m"] = p.m();
  doc["ell"] = p.ell();
  doc["density"] = p.density();
  if (p.seed()) {
    doc["seed"] = *p.seed();
  } else {
    doc["seed"] = nullptr;
  }
  json rel = json::array();
  for (const Word& r : p.relators()) {
    rel.push_back(format_word(r));
  }
  doc["relators"] = std::move(rel);
  return doc.dump(2) + "\n";
}

Presentation presentation_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  auto require = [&](const char* field) -> const json& {
    if (!doc.contains(field)) {
      throw ParseError(field, "missing field");
    }
    return doc[field];
  };
  const json& jm = require("m");
  if (!jm.is_number_integer()) {
    throw ParseError("m", "expected an integer");
  }
  const json& jell = require("ell");
  if (!jell.is_number_integer()) {
    throw ParseError("ell", "expected an integer");
  }
  const json& jd = require("density");
  if (!jd.is_number()) {
    throw ParseError("density", "expected a number");
  }
  const json& jseed = require("seed");
  std::optional<std::uint64_t> seed;
  if (jseed.is_null()) {
    seed = std::nullopt;
  } else if (jseed.is_number_unsigned() || jseed.is_number_integer()) {
    seed = jseed.get<std::uint64_t>();
  } else {
    throw ParseError("seed", "expected an integer or null");
  }
  const json& jrel = require("relators");
  if (!jrel.is_array()) {
    throw ParseError("relators", "expected an array");
  }

  const int ell = jell.get<int>();
  std::vector<Word> relators;
  relators.reserve(jrel.size());
  for (std::size_t k = 0; k < jrel.size(); ++k) {
    const std::string where = "relators[" + std::to_string(k) + "]";
    if (!jrel[k].is_string()) {
      throw ParseError(where, "expected a string");
    }
    std::vector<Letter> raw;
    try {
      raw = parse_letters(jrel[k].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where, e.what());
    }
    if (!is_reduced(raw)) {
      throw ParseError(where, "relator not reduced");
    }
    if (static_cast<int>(raw.size()) != ell) {
      throw ParseError(where, "relator length mismatch (expected " +
                                  std::to_string(ell) + ", got " +
                                  std::to_string(raw.size()) + ")");
    }
    relators.push_back(Word::from_reduced(std::move(raw)));
  }
  return Presentation::create(jm.get<int>(), ell, jd.get<double>(),
                              std::move(relators), seed);
}

void store(const Presentation& p, std::ostream& sink) {
  sink << presentation_to_json(p);
}

Presentation load(std::istream& source) {
  std::ostringstream buf;
  buf << source.rdbuf();
  return presentation_from_json(buf.str());
}

}  // namespace randgroup
