#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace randgroup {

// Suffix automaton over small integer alphabets, with generalized (multi
// string) construction. Transitions are stored flat, one row per state.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(int alphabet) : alphabet_(alphabet) {
    new_state(0, -1);
  }

  // Appends one string to the indexed corpus. Returns the primary state of
  // each position (the state whose class ends exactly there).
  std::vector<std::int32_t> add_string(std::span<const std::int32_t> s) {
    std::vector<std::int32_t> primary;
    primary.reserve(s.size());
    std::int32_t last = 0;
    for (std::int32_t c : s) {
      last = extend(last, c);
      primary.push_back(last);
    }
    return primary;
  }

  std::int32_t state_count() const { return static_cast<std::int32_t>(len_.size()); }
  std::int32_t len(std::int32_t v) const { return len_[static_cast<std::size_t>(v)]; }
  std::int32_t link(std::int32_t v) const { return link_[static_cast<std::size_t>(v)]; }

  // Longest factor of the corpus ending at each position of `s` (the
  // standard link-walk scan).
  std::vector<std::int32_t> match_lengths(std::span<const std::int32_t> s) const {
    std::vector<std::int32_t> out;
    out.reserve(s.size());
    std::int32_t v = 0;
    std::int32_t l = 0;
    for (std::int32_t c : s) {
      step(v, l, c);
      out.push_back(l);
    }
    return out;
  }

  // Longest factor of the corpus that occurs in `s`, capped at `cap`.
  std::int32_t max_factor(std::span<const std::int32_t> s, std::int32_t cap) const {
    std::int32_t best = 0;
    std::int32_t v = 0;
    std::int32_t l = 0;
    for (std::int32_t c : s) {
      step(v, l, c);
      best = std::max(best, std::min(l, cap));
      if (best == cap) {
        break;
      }
    }
    return best;
  }

  bool contains(std::span<const std::int32_t> s) const {
    std::int32_t v = 0;
    for (std::int32_t c : s) {
      v = trans(v, c);
      if (v == -1) {
        return false;
      }
    }
    return true;
  }

  // States ordered by increasing len (root first); link(v) precedes v.
  std::vector<std::int32_t> states_by_len() const {
    std::vector<std::int32_t> order(static_cast<std::size_t>(state_count()));
    for (std::int32_t i = 0; i < state_count(); ++i) {
      order[static_cast<std::size_t>(i)] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::int32_t a, std::int32_t b) { return len(a) < len(b); });
    return order;
  }

  // Runs `s` through the automaton calling f(index, state, length) at each
  // position.
  template <class F>
  void scan(std::span<const std::int32_t> s, F&& f) const {
    std::int32_t v = 0;
    std::int32_t l = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      step(v, l, s[i]);
      f(i, v, l);
    }
  }

 private:
  std::int32_t trans(std::int32_t v, std::int32_t c) const {
    return trans_[static_cast<std::size_t>(v) * alphabet_ + static_cast<std::size_t>(c)];
  }
  void set_trans(std::int32_t v, std::int32_t c, std::int32_t to) {
    trans_[static_cast<std::size_t>(v) * alphabet_ + static_cast<std::size_t>(c)] = to;
  }

  std::int32_t new_state(std::int32_t len, std::int32_t link) {
    len_.push_back(len);
    link_.push_back(link);
    trans_.insert(trans_.end(), static_cast<std::size_t>(alphabet_), -1);
    return static_cast<std::int32_t>(len_.size()) - 1;
  }

  std::int32_t clone_state(std::int32_t src, std::int32_t len) {
    std::int32_t v = new_state(len, link_[static_cast<std::size_t>(src)]);
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(alphabet_); ++c) {
      set_trans(v, c, trans(src, c));
    }
    return v;
  }

  // Generalized extension: reuses existing states so that several strings can
  // share the automaton.
  std::int32_t extend(std::int32_t last, std::int32_t c) {
    if (std::int32_t q = trans(last, c); q != -1) {
      if (len_[static_cast<std::size_t>(q)] == len_[static_cast<std::size_t>(last)] + 1) {
        return q;
      }
      std::int32_t clone = clone_state(q, len_[static_cast<std::size_t>(last)] + 1);
      link_[static_cast<std::size_t>(q)] = clone;
      for (std::int32_t p = last; p != -1 && trans(p, c) == q;
           p = link_[static_cast<std::size_t>(p)]) {
        set_trans(p, c, clone);
      }
      return clone;
    }
    std::int32_t cur = new_state(len_[static_cast<std::size_t>(last)] + 1, 0);
    std::int32_t p = last;
    while (p != -1 && trans(p, c) == -1) {
      set_trans(p, c, cur);
      p = link_[static_cast<std::size_t>(p)];
    }
    if (p != -1) {
      std::int32_t q = trans(p, c);
      if (len_[static_cast<std::size_t>(q)] == len_[static_cast<std::size_t>(p)] + 1) {
        link_[static_cast<std::size_t>(cur)] = q;
      } else {
        std::int32_t clone = clone_state(q, len_[static_cast<std::size_t>(p)] + 1);
        link_[static_cast<std::size_t>(q)] = clone;
        link_[static_cast<std::size_t>(cur)] = clone;
        for (; p != -1 && trans(p, c) == q; p = link_[static_cast<std::size_t>(p)]) {
          set_trans(p, c, clone);
        }
      }
    }
    return cur;
  }

  void step(std::int32_t& v, std::int32_t& l, std::int32_t c) const {
    if (trans(v, c) != -1) {
      v = trans(v, c);
      ++l;
      return;
    }
    while (v != -1 && trans(v, c) == -1) {
      v = link_[static_cast<std::size_t>(v)];
    }
    if (v == -1) {
      v = 0;
      l = 0;
    } else {
      l = len_[static_cast<std::size_t>(v)] + 1;
      v = trans(v, c);
    }
  }

  std::size_t alphabet_;
  std::vector<std::int32_t> len_;
  std::vector<std::int32_t> link_;
  std::vector<std::int32_t> trans_;
};

// Longest factor, over a corpus fed in via scan_stream, ending at each
// position of a fixed text: build the automaton of the text, scan the
// corpus, and push per-state maxima down the suffix-link tree.
class CrossMatcher {
 public:
  CrossMatcher(std::span<const std::int32_t> text, int alphabet)
      : sam_(alphabet), text_size_(text.size()) {
    primary_ = sam_.add_string(text);
    state_best_.assign(static_cast<std::size_t>(sam_.state_count()), 0);
  }

  void scan_stream(std::span<const std::int32_t> s) {
    state_best_.resize(static_cast<std::size_t>(sam_.state_count()), 0);
    sam_.scan(s, [&](std::size_t, std::int32_t v, std::int32_t l) {
      auto& best = state_best_[static_cast<std::size_t>(v)];
      best = std::max(best, l);
    });
  }

  // best[j] = length of the longest corpus factor ending at text position j.
  // A match of length l at a state implies matches at every suffix-link
  // ancestor u, capped at len(u): push subtree maxima up, then path maxima
  // down.
  std::vector<std::int32_t> best_ending_at() const {
    const auto order = sam_.states_by_len();
    std::vector<std::int32_t> up(state_best_);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::int32_t v = *it;
      if (std::int32_t p = sam_.link(v); p >= 0) {
        auto& dst = up[static_cast<std::size_t>(p)];
        dst = std::max(dst, std::min(sam_.len(p), up[static_cast<std::size_t>(v)]));
      }
    }
    std::vector<std::int32_t> down(std::move(up));
    for (std::int32_t v : order) {
      if (std::int32_t p = sam_.link(v); p >= 0) {
        auto& d = down[static_cast<std::size_t>(v)];
        d = std::max(d, down[static_cast<std::size_t>(p)]);
      }
    }
    std::vector<std::int32_t> best(text_size_, 0);
    for (std::size_t j = 0; j < text_size_; ++j) {
      best[j] = down[static_cast<std::size_t>(primary_[j])];
    }
    return best;
  }

 private:
  SuffixAutomaton sam_;
  std::size_t text_size_;
  std::vector<std::int32_t> primary_;
  std::vector<std::int32_t> state_best_;
};

}  // namespace randgroup
