// Helpers shared by the test binaries: literal elements, random diagrams
// and a brute-force prefix-map oracle that does not use the library's
// multiply or reduce.
#ifndef THOMPSON_TESTS_SUPPORT_HPP_
#define THOMPSON_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thompson/element.hpp"
#include "thompson/generators.hpp"

namespace testing {

  using thompson::BinaryWord;
  using thompson::BranchPair;
  using thompson::Element;
  using thompson::TreeDiagram;

  inline BinaryWord bw(std::string const& s) {
    return BinaryWord::from_string(s == "-" ? "" : s);
  }

  using RawPairs = std::vector<std::pair<std::string, std::string>>;

  // "00>0 01>10 1>11"
  inline RawPairs raw(std::string const& text) {
    RawPairs out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      auto gt = tok.find('>');
      out.emplace_back(tok.substr(0, gt), tok.substr(gt + 1));
      if (out.back().first == "-") {
        out.back().first.clear();
      }
      if (out.back().second == "-") {
        out.back().second.clear();
      }
    }
    return out;
  }

  inline TreeDiagram diagram(RawPairs const& p) {
    std::vector<BranchPair> v;
    for (auto const& [d, r] : p) {
      v.push_back({BinaryWord::from_string(d), BinaryWord::from_string(r)});
    }
    return TreeDiagram::from_pairs(v);
  }

  inline Element el(std::string const& text) {
    return thompson::reduce(diagram(raw(text)));
  }

  inline RawPairs to_raw(Element const& e) {
    RawPairs out;
    for (auto const& p : e.pairs()) {
      out.emplace_back(p.domain.to_string(), p.range.to_string());
    }
    return out;
  }

  inline std::string show(Element const& e) {
    std::string s;
    for (auto const& p : e.pairs()) {
      s += (p.domain.empty() ? "-" : p.domain.to_string()) + ">"
           + (p.range.empty() ? "-" : p.range.to_string()) + " ";
    }
    return s;
  }

  // ---- random diagrams ----

  inline std::vector<std::string> random_tree(std::mt19937_64& rng, std::size_t leaves) {
    std::vector<std::string> t{""};
    while (t.size() < leaves) {
      std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
      std::size_t i = pick(rng);
      std::string u = t[i];
      t[i] = u + "0";
      t.insert(t.begin() + static_cast<std::ptrdiff_t>(i) + 1, u + "1");
    }
    return t;  // left to right
  }

  enum class Kind { F, T, V };

  inline RawPairs random_raw(std::mt19937_64& rng, std::size_t leaves, Kind kind) {
    auto d = random_tree(rng, leaves);
    auto r = random_tree(rng, leaves);
    std::vector<std::size_t> perm(leaves);
    for (std::size_t i = 0; i < leaves; ++i) {
      perm[i] = i;
    }
    if (kind == Kind::V) {
      std::shuffle(perm.begin(), perm.end(), rng);
    } else if (kind == Kind::T) {
      std::uniform_int_distribution<std::size_t> s(0, leaves - 1);
      std::size_t shift = s(rng);
      for (std::size_t i = 0; i < leaves; ++i) {
        perm[i] = (i + shift) % leaves;
      }
    }
    RawPairs out;
    for (std::size_t i = 0; i < leaves; ++i) {
      out.emplace_back(d[i], r[perm[i]]);
    }
    return out;
  }

  inline Element random_element(std::mt19937_64& rng, std::size_t max_leaves, Kind kind) {
    std::uniform_int_distribution<std::size_t> n(1, max_leaves);
    return thompson::reduce(diagram(random_raw(rng, n(rng), kind)));
  }

  // ---- brute-force oracle on strings ----

  // Image of a word under a raw diagram, if determined.
  inline std::optional<std::string> apply_raw(RawPairs const& p, std::string const& w) {
    for (auto const& [d, r] : p) {
      if (w.compare(0, d.size(), d) == 0 && w.size() >= d.size()) {
        return r + w.substr(d.size());
      }
    }
    return std::nullopt;
  }

  inline bool siblings(std::string const& a, std::string const& b) {
    return !a.empty() && a.size() == b.size() && a.back() == '0' && b.back() == '1'
           && a.compare(0, a.size() - 1, b, 0, b.size() - 1) == 0;
  }

  // Removes dipoles, searching the whole list each time, until none remain.
  inline RawPairs naive_reduce(RawPairs p) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < p.size() && !changed; ++i) {
        for (std::size_t j = 0; j < p.size() && !changed; ++j) {
          if (i != j && siblings(p[i].first, p[j].first) && siblings(p[i].second, p[j].second)) {
            std::pair<std::string, std::string> merged{p[i].first.substr(0, p[i].first.size() - 1),
                                                       p[i].second.substr(0, p[i].second.size() - 1)};
            p.erase(p.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
            p.erase(p.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
            p.push_back(merged);
            changed = true;
          }
        }
      }
    }
    std::sort(p.begin(), p.end());
    return p;
  }

  inline std::size_t max_len(RawPairs const& p) {
    std::size_t m = 0;
    for (auto const& [d, r] : p) {
      m = std::max({m, d.size(), r.size()});
    }
    return m;
  }

  // Product a then b, read off the composite prefix map on all words of a
  // length that determines every image.
  inline RawPairs naive_product(RawPairs const& a, RawPairs const& b) {
    std::size_t const len = max_len(a) + max_len(b);
    RawPairs out;
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << len); ++x) {
      std::string w;
      for (std::size_t i = 0; i < len; ++i) {
        w.push_back(((x >> (len - 1 - i)) & 1) ? '1' : '0');
      }
      auto mid = apply_raw(a, w);
      auto img = apply_raw(b, *mid);
      out.emplace_back(w, *img);
    }
    return naive_reduce(out);
  }

  inline std::string random_bits(std::mt19937_64& rng, std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) {
      s.push_back((rng() & 1) ? '1' : '0');
    }
    return s;
  }

  inline thompson::GroupWord random_word(std::mt19937_64& rng, thompson::Alphabet a,
                                         std::size_t max_len) {
    auto const letters = thompson::unit_letters(a);
    thompson::GroupWord w(a);
    std::size_t const n = rng() % (max_len + 1);
    for (std::size_t i = 0; i < n; ++i) {
      auto const& l = letters[rng() % letters.size()];
      w.push(l.base, l.exponent);
    }
    return w;
  }

}  // namespace testing

#endif  // THOMPSON_TESTS_SUPPORT_HPP_
