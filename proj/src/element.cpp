#include "thompson/element.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <unordered_set>

#include "thompson/error.hpp"

namespace thompson {

  namespace {

    // a = p0 and b = p1 for a common p.
    bool are_siblings(BinaryWord const& a, BinaryWord const& b) {
      if (a.size() != b.size() || a.empty() || a.back() || !b.back()) {
        return false;
      }
      return a.prefix(a.size() - 1) == b.prefix(b.size() - 1);
    }

    bool is_dipole(BranchPair const& left, BranchPair const& right) {
      return are_siblings(left.domain, right.domain) && are_siblings(left.range, right.range);
    }

    BranchPair merge_dipole(BranchPair const& left) {
      return BranchPair{left.domain.prefix(left.domain.size() - 1),
                        left.range.prefix(left.range.size() - 1)};
    }

    bool by_domain(BranchPair const& x, BranchPair const& y) {
      return x.domain < y.domain;
    }

    // pairs must be sorted by domain.
    Element reduce_sorted(std::vector<BranchPair> pairs) {
      std::vector<BranchPair> stack;
      stack.reserve(pairs.size());
      for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
        stack.push_back(std::move(*it));
        while (stack.size() >= 2 && is_dipole(stack[stack.size() - 1], stack[stack.size() - 2])) {
          BranchPair merged = merge_dipole(stack.back());
          stack.pop_back();
          stack.back() = std::move(merged);
        }
      }
      std::reverse(stack.begin(), stack.end());
      return Element::from_reduced_pairs_unchecked(std::move(stack));
    }

    void put_varint(std::string& out, std::uint64_t x) {
      while (x >= 0x80) {
        out.push_back(static_cast<char>((x & 0x7f) | 0x80));
        x >>= 7;
      }
      out.push_back(static_cast<char>(x));
    }

    std::uint64_t get_varint(std::string_view bytes, std::size_t& pos) {
      std::uint64_t x = 0;
      int shift = 0;
      while (true) {
        if (pos >= bytes.size()) {
          throw Error(ErrorKind::FormatError, "truncated element encoding");
        }
        auto b = static_cast<unsigned char>(bytes[pos++]);
        x |= std::uint64_t(b & 0x7f) << shift;
        if ((b & 0x80) == 0) {
          return x;
        }
        shift += 7;
      }
    }

    void put_word(std::string& out, BinaryWord const& w) {
      put_varint(out, w.number_of_runs());
      if (w.number_of_runs() == 0) {
        return;
      }
      out.push_back(w.first_symbol() ? 1 : 0);
      for (auto r : w.runs()) {
        put_varint(out, r);
      }
    }

    BinaryWord get_word(std::string_view bytes, std::size_t& pos) {
      std::uint64_t const n = get_varint(bytes, pos);
      BinaryWord w;
      if (n == 0) {
        return w;
      }
      if (pos >= bytes.size()) {
        throw Error(ErrorKind::FormatError, "truncated element encoding");
      }
      bool s = bytes[pos++] != 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        w.push_back(s, get_varint(bytes, pos));
        s = !s;
      }
      return w;
    }

  }  // namespace

  std::string_view name(Membership m) noexcept {
    switch (m) {
      case Membership::F:
        return "F";
      case Membership::T_only:
        return "T-only";
      case Membership::V_only:
        return "V-only";
    }
    return "?";
  }

  void check_complete_prefix_code(std::vector<BinaryWord> const& sorted) {
    if (sorted.empty()) {
      throw Error(ErrorKind::IncompleteCode, "empty set of branches");
    }
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      if (sorted[i].is_prefix_of(sorted[i + 1])) {
        throw Error(ErrorKind::PrefixViolation,
                    "branch \"" + sorted[i].to_string() + "\" is a prefix of \""
                        + sorted[i + 1].to_string() + "\"");
      }
    }
    if (!sorted.front().is_constant(false)) {
      throw Error(ErrorKind::IncompleteCode,
                  "no branch covers the left end; leftmost branch is \""
                      + sorted.front().to_string() + "\"");
    }
    if (!sorted.back().is_constant(true)) {
      throw Error(ErrorKind::IncompleteCode,
                  "no branch covers the right end; rightmost branch is \""
                      + sorted.back().to_string() + "\"");
    }
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      BinaryWord const& a = sorted[i];
      BinaryWord const& b = sorted[i + 1];
      // a = p 0 1^j must be followed by p 1 0^k.
      BinaryWord expected = a.prefix(a.size() - a.trailing(true));
      expected.pop_back();
      expected.push_back(true);
      if (!expected.is_prefix_of(b) || !b.drop(expected.size()).is_constant(false)) {
        throw Error(ErrorKind::IncompleteCode,
                    "gap between branches \"" + a.to_string() + "\" and \"" + b.to_string()
                        + "\"");
      }
    }
  }

  BinaryTree make_tree(std::vector<BinaryWord> branches) {
    std::sort(branches.begin(), branches.end());
    check_complete_prefix_code(branches);
    return BinaryTree(std::move(branches));
  }

  TreeDiagram TreeDiagram::from_pairs(std::vector<BranchPair> pairs) {
    std::unordered_set<BinaryWord, BinaryWordHash> seen_domain, seen_range;
    for (auto const& p : pairs) {
      if (!seen_domain.insert(p.domain).second) {
        throw Error(ErrorKind::NotABijection,
                    "domain branch \"" + p.domain.to_string() + "\" occurs twice");
      }
      if (!seen_range.insert(p.range).second) {
        throw Error(ErrorKind::NotABijection,
                    "range branch \"" + p.range.to_string() + "\" occurs twice");
      }
    }
    std::sort(pairs.begin(), pairs.end(), by_domain);
    std::vector<BinaryWord> words;
    words.reserve(pairs.size());
    for (auto const& p : pairs) {
      words.push_back(p.domain);
    }
    check_complete_prefix_code(words);
    words.clear();
    for (auto const& p : pairs) {
      words.push_back(p.range);
    }
    std::sort(words.begin(), words.end());
    check_complete_prefix_code(words);
    return TreeDiagram(std::move(pairs));
  }

  BinaryTree TreeDiagram::domain_tree() const {
    std::vector<BinaryWord> b;
    for (auto const& p : _pairs) {
      b.push_back(p.domain);
    }
    return make_tree(std::move(b));
  }

  BinaryTree TreeDiagram::range_tree() const {
    std::vector<BinaryWord> b;
    for (auto const& p : _pairs) {
      b.push_back(p.range);
    }
    return make_tree(std::move(b));
  }

  std::vector<BinaryWord> Element::range_branches() const {
    std::vector<BinaryWord> out;
    out.reserve(_pairs.size());
    for (auto const& p : _pairs) {
      out.push_back(p.range);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool Element::has_range_branch(BinaryWord const& v) const {
    return std::any_of(_pairs.begin(), _pairs.end(), [&](auto const& p) { return p.range == v; });
  }

  bool Element::has_branch(BinaryWord const& u, BinaryWord const& v) const {
    auto it = std::lower_bound(_pairs.begin(), _pairs.end(), BranchPair{u, {}}, by_domain);
    return it != _pairs.end() && it->domain == u && it->range == v;
  }

  bool Element::range_strictly_extends(BinaryWord const& v) const {
    return std::any_of(
        _pairs.begin(), _pairs.end(), [&](auto const& p) { return v.is_strict_prefix_of(p.range); });
  }

  std::string Element::encode() const {
    std::string out;
    put_varint(out, _pairs.size());
    for (auto const& p : _pairs) {
      put_word(out, p.domain);
      put_word(out, p.range);
    }
    return out;
  }

  Element Element::decode(std::string_view bytes) {
    std::size_t pos = 0;
    std::uint64_t const n = get_varint(bytes, pos);
    std::vector<BranchPair> pairs;
    pairs.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      BinaryWord d = get_word(bytes, pos);
      BinaryWord r = get_word(bytes, pos);
      pairs.push_back({std::move(d), std::move(r)});
    }
    return from_reduced_pairs_unchecked(std::move(pairs));
  }

  std::size_t Element::hash() const noexcept {
    std::size_t h = _pairs.size();
    for (auto const& p : _pairs) {
      h ^= p.domain.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= p.range.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::vector<std::size_t> dipoles(std::vector<BranchPair> const& sorted_pairs) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < sorted_pairs.size(); ++i) {
      if (is_dipole(sorted_pairs[i], sorted_pairs[i + 1])) {
        out.push_back(i);
      }
    }
    return out;
  }

  Element reduce(TreeDiagram const& d) {
    return reduce_sorted(d.pairs());
  }

  Element reduce_randomized(TreeDiagram const& d, std::mt19937_64& rng) {
    std::vector<BranchPair> pairs = d.pairs();
    while (true) {
      auto const found = dipoles(pairs);
      if (found.empty()) {
        break;
      }
      std::uniform_int_distribution<std::size_t> pick(0, found.size() - 1);
      std::size_t const i = found[pick(rng)];
      pairs[i] = merge_dipole(pairs[i]);
      pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return Element::from_reduced_pairs_unchecked(std::move(pairs));
  }

  Element multiply(Element const& a, Element const& b) {
    auto const& ap = a.pairs();
    auto const& bp = b.pairs();
    std::vector<std::size_t> order(ap.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return ap[x].range < ap[y].range;
    });
    // Walk the range leaves of a and the domain leaves of b together. Both
    // partition the Cantor set into dyadic intervals listed left to right, so
    // at every step one current interval contains the other.
    std::vector<BranchPair> out;
    out.reserve(ap.size() + bp.size());
    std::size_t i = 0, j = 0;
    while (i < order.size() && j < bp.size()) {
      BranchPair const& x = ap[order[i]];
      BranchPair const& y = bp[j];
      if (y.domain.is_prefix_of(x.range)) {
        BinaryWord s = x.range.drop(y.domain.size());
        bool const closes = s.is_constant(true);
        out.push_back({x.domain, y.range + s});
        ++i;
        if (closes) {
          ++j;
        }
      } else {
        assert(x.range.is_prefix_of(y.domain));
        BinaryWord t = y.domain.drop(x.range.size());
        bool const closes = t.is_constant(true);
        out.push_back({x.domain + t, y.range});
        ++j;
        if (closes) {
          ++i;
        }
      }
    }
    std::sort(out.begin(), out.end(), by_domain);
    return reduce_sorted(std::move(out));
  }

  Element invert(Element const& a) {
    std::vector<BranchPair> out;
    out.reserve(a.num_leaves());
    for (auto const& p : a.pairs()) {
      out.push_back({p.range, p.domain});
    }
    std::sort(out.begin(), out.end(), by_domain);
    return Element::from_reduced_pairs_unchecked(std::move(out));
  }

  BinaryWord apply_prefix(Element const& a, BinaryWord const& w) {
    auto const& p = a.pairs();
    auto it = std::upper_bound(
        p.begin(), p.end(), w, [](BinaryWord const& x, BranchPair const& y) { return x < y.domain; });
    if (it != p.begin()) {
      auto const& cand = *std::prev(it);
      if (cand.domain.is_prefix_of(w)) {
        return cand.range + w.drop(cand.domain.size());
      }
    }
    throw Error(ErrorKind::Undetermined,
                "\"" + w.to_string() + "\" is a proper prefix of a domain branch");
  }

  EdgeDepths edge_depths(Element const& a) {
    EdgeDepths d{0, 0};
    for (auto const& p : a.pairs()) {
      if (p.range.is_constant(false)) {
        d.left = p.range.size();
      }
      if (p.range.is_constant(true)) {
        d.right = p.range.size();
      }
    }
    return d;
  }

  std::vector<std::size_t> leaf_permutation(Element const& a) {
    auto const& p = a.pairs();
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return p[x].range < p[y].range;
    });
    std::vector<std::size_t> perm(p.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      perm[order[rank]] = rank;
    }
    return perm;
  }

  Membership classify(Element const& a) {
    auto const perm = leaf_permutation(a);
    std::size_t const n = perm.size();
    bool rotation = true;
    for (std::size_t i = 0; i < n && rotation; ++i) {
      rotation = perm[i] == (perm[0] + i) % n;
    }
    if (!rotation) {
      return Membership::V_only;
    }
    return perm[0] == 0 ? Membership::F : Membership::T_only;
  }

  Element copy_into_interval(Element const& h, BinaryWord const& u) {
    if (classify(h) != Membership::F) {
      throw Error(ErrorKind::NotInF, "only elements of F can be copied into an interval");
    }
    std::vector<BranchPair> out;
    out.reserve(h.num_leaves() + u.size());
    for (auto const& p : h.pairs()) {
      out.push_back({u + p.domain, u + p.range});
    }
    BinaryWord prefix;
    bool s = u.empty() ? false : u.first_symbol();
    for (auto r : u.runs()) {
      // Each position of u contributes its sibling p (1 - s); positions
      // inside a run share the prefix structure, so walk them one at a time.
      for (BinaryWord::run_type k = 0; k < r; ++k) {
        BinaryWord side = prefix.with(!s);
        out.push_back({side, side});
        prefix.push_back(s);
      }
      s = !s;
    }
    std::sort(out.begin(), out.end(), by_domain);
    return reduce_sorted(std::move(out));
  }

  bool fixes_interval_pointwise(Element const& a, BinaryWord const& u) {
    for (auto const& p : a.pairs()) {
      if ((p.domain.is_prefix_of(u) || u.is_prefix_of(p.domain)) && p.domain != p.range) {
        return false;
      }
    }
    return true;
  }

}  // namespace thompson
