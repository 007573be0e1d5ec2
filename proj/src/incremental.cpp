#include "thompson/incremental.hpp"

#include <algorithm>
#include <numeric>

#include "thompson/error.hpp"

namespace thompson {

  namespace {

    std::uint64_t common_prefix(BinaryWord const& a, BinaryWord const& b) {
      if (a.empty() || b.empty() || a.first_symbol() != b.first_symbol()) {
        return 0;
      }
      auto ra = a.runs(), rb = b.runs();
      std::uint64_t n = 0;
      for (std::size_t i = 0; i < ra.size() && i < rb.size(); ++i) {
        if (ra[i] != rb[i]) {
          return n + std::min(ra[i], rb[i]);
        }
        n += ra[i];
      }
      return n;
    }

  }  // namespace

  std::int32_t IncrementalDiagram::Tree::alloc() {
    if (!free.empty()) {
      std::int32_t x = free.back();
      free.pop_back();
      nodes[x] = Node{};
      return x;
    }
    if (nodes.size() >= static_cast<std::size_t>(INT32_MAX)) {
      throw Error(ErrorKind::ResourceLimit, "diagram too large");
    }
    nodes.emplace_back();
    return static_cast<std::int32_t>(nodes.size() - 1);
  }

  void IncrementalDiagram::Tree::release(std::int32_t x) {
    nodes[x] = Node{};
    free.push_back(x);
  }

  IncrementalDiagram::Pattern IncrementalDiagram::compile(Element const& h) {
    Pattern p;
    for (auto const& bp : h.pairs()) {
      p.domain.push_back(bp.domain.to_string());
      p.range.push_back(bp.range.to_string());
    }
    return p;
  }

  // Builds the trie of a sorted complete prefix code and returns its leaves
  // in the given order. A stack holds the path to the previous leaf, so each
  // node is created once even for very long branches.
  std::vector<std::int32_t> IncrementalDiagram::build(Tree& t,
                                                      std::vector<BinaryWord const*> const& sorted) {
    t.root = t.alloc();
    std::vector<std::int32_t> path{t.root};
    std::vector<std::int32_t> leaves;
    leaves.reserve(sorted.size());
    BinaryWord const* prev = nullptr;
    for (BinaryWord const* w : sorted) {
      std::uint64_t const lcp = prev == nullptr ? 0 : common_prefix(*prev, *w);
      path.resize(lcp + 1);
      std::uint64_t pos = 0;
      bool s = w->first_symbol();
      for (auto run : w->runs()) {
        if (pos + run <= lcp) {
          pos += run;
          s = !s;
          continue;
        }
        for (std::uint64_t k = pos < lcp ? lcp - pos : 0; k < run; ++k) {
          std::int32_t cur = path.back();
          std::int32_t next = t.nodes[cur].child[s];
          if (next < 0) {
            next = t.alloc();
            t.nodes[next].parent = cur;
            t.nodes[cur].child[s] = next;
          }
          path.push_back(next);
        }
        pos += run;
        s = !s;
      }
      leaves.push_back(path.back());
      prev = w;
    }
    return leaves;
  }

  IncrementalDiagram::IncrementalDiagram(Element const& g) {
    auto const& pairs = g.pairs();
    std::vector<BinaryWord const*> dom;
    dom.reserve(pairs.size());
    for (auto const& p : pairs) {
      dom.push_back(&p.domain);
    }
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pairs[a].range < pairs[b].range; });
    std::vector<BinaryWord const*> ran;
    ran.reserve(pairs.size());
    for (auto i : order) {
      ran.push_back(&pairs[i].range);
    }
    auto const dl = build(_dom, dom);
    auto const rl = build(_ran, ran);
    for (std::size_t k = 0; k < order.size(); ++k) {
      std::int32_t const d = dl[order[k]];
      _dom.nodes[d].partner = rl[k];
      _ran.nodes[rl[k]].partner = d;
    }
    _leaves = pairs.size();
  }

  void IncrementalDiagram::split(std::int32_t r) {
    std::int32_t const d = _ran.nodes[r].partner;
    for (int s = 0; s < 2; ++s) {
      std::int32_t rc = _ran.alloc();
      std::int32_t dc = _dom.alloc();
      _ran.nodes[rc].parent = r;
      _ran.nodes[r].child[s] = rc;
      _dom.nodes[dc].parent = d;
      _dom.nodes[d].child[s] = dc;
      _ran.nodes[rc].partner = dc;
      _dom.nodes[dc].partner = rc;
    }
    _ran.nodes[r].partner = -1;
    _dom.nodes[d].partner = -1;
    ++_leaves;
  }

  bool IncrementalDiagram::try_collapse(std::int32_t x) {
    Node const& n = _ran.nodes[x];
    std::int32_t const a = n.child[0], b = n.child[1];
    if (!_ran.is_leaf(a) || !_ran.is_leaf(b)) {
      return false;
    }
    std::int32_t const da = _ran.nodes[a].partner, db = _ran.nodes[b].partner;
    std::int32_t const p = _dom.nodes[da].parent;
    if (p < 0 || _dom.nodes[p].child[0] != da || _dom.nodes[p].child[1] != db) {
      return false;
    }
    _ran.release(a);
    _ran.release(b);
    _dom.release(da);
    _dom.release(db);
    _ran.nodes[x].child[0] = _ran.nodes[x].child[1] = -1;
    _dom.nodes[p].child[0] = _dom.nodes[p].child[1] = -1;
    _ran.nodes[x].partner = p;
    _dom.nodes[p].partner = x;
    --_leaves;
    return true;
  }

  void IncrementalDiagram::right_multiply(Pattern const& h) {
    std::size_t const k = h.domain.size();
    if (k == 1) {
      return;  // identity
    }
    // Refine the range tree until it contains the domain tree of h.
    std::vector<std::int32_t> hang(k);
    std::vector<std::int32_t> old_top;
    for (std::size_t i = 0; i < k; ++i) {
      std::int32_t cur = _ran.root;
      for (char c : h.domain[i]) {
        if (_ran.is_leaf(cur)) {
          split(cur);
        }
        if (std::find(old_top.begin(), old_top.end(), cur) == old_top.end()) {
          old_top.push_back(cur);
        }
        cur = _ran.nodes[cur].child[c == '1'];
      }
      hang[i] = cur;
    }
    for (auto x : old_top) {
      _ran.release(x);
    }
    // Rebuild the top as the range tree of h, hanging each subtree at the
    // image of its position.
    std::vector<std::pair<std::size_t, std::int32_t>> new_top;  // (depth, node)
    std::int32_t const root = _ran.alloc();
    new_top.emplace_back(0, root);
    for (std::size_t i = 0; i < k; ++i) {
      std::string const& path = h.range[i];
      std::int32_t cur = root;
      for (std::size_t pos = 0; pos + 1 < path.size(); ++pos) {
        int const s = path[pos] == '1';
        std::int32_t next = _ran.nodes[cur].child[s];
        if (next < 0) {
          next = _ran.alloc();
          _ran.nodes[next].parent = cur;
          _ran.nodes[cur].child[s] = next;
          new_top.emplace_back(pos + 1, next);
        }
        cur = next;
      }
      int const s = path.back() == '1';
      _ran.nodes[cur].child[s] = hang[i];
      _ran.nodes[hang[i]].parent = cur;
    }
    _ran.root = root;
    std::sort(new_top.begin(), new_top.end(),
              [](auto const& x, auto const& y) { return x.first > y.first; });
    for (auto const& [depth, x] : new_top) {
      try_collapse(x);
    }
  }

  std::uint64_t IncrementalDiagram::left_depth() const {
    std::uint64_t d = 0;
    for (std::int32_t x = _ran.root; !_ran.is_leaf(x); x = _ran.nodes[x].child[0]) {
      ++d;
    }
    return d;
  }

  std::uint64_t IncrementalDiagram::right_depth() const {
    std::uint64_t d = 0;
    for (std::int32_t x = _ran.root; !_ran.is_leaf(x); x = _ran.nodes[x].child[1]) {
      ++d;
    }
    return d;
  }

  // Branch of every leaf, indexed by node id (other entries stay empty).
  std::vector<BinaryWord> IncrementalDiagram::leaf_words(Tree const& t) {
    std::vector<BinaryWord> out(t.nodes.size());
    BinaryWord word;
    std::int32_t cur = t.root;
    while (true) {
      if (!t.is_leaf(cur)) {
        cur = t.nodes[cur].child[0];
        word.push_back(false);
        continue;
      }
      out[cur] = word;
      while (cur != t.root && t.nodes[t.nodes[cur].parent].child[1] == cur) {
        cur = t.nodes[cur].parent;
        word.pop_back();
      }
      if (cur == t.root) {
        break;
      }
      word.pop_back();
      cur = t.nodes[t.nodes[cur].parent].child[1];
      word.push_back(true);
    }
    return out;
  }

  Element IncrementalDiagram::to_element() const {
    auto dw = leaf_words(_dom);
    auto rw = leaf_words(_ran);
    std::vector<BranchPair> pairs;
    pairs.reserve(_leaves);
    // Leaves in left to right order of the domain tree.
    std::int32_t cur = _dom.root;
    std::vector<std::int32_t> stack{cur};
    while (!stack.empty()) {
      cur = stack.back();
      stack.pop_back();
      if (_dom.is_leaf(cur)) {
        pairs.push_back({std::move(dw[cur]), std::move(rw[_dom.nodes[cur].partner])});
      } else {
        stack.push_back(_dom.nodes[cur].child[1]);
        stack.push_back(_dom.nodes[cur].child[0]);
      }
    }
    return Element::from_reduced_pairs_unchecked(std::move(pairs));
  }

  std::optional<std::string> IncrementalDiagram::audit() const {
    auto walk = [](Tree const& t, Tree const& other, char const* name,
                   std::uint64_t& leaves) -> std::optional<std::string> {
      std::vector<std::int32_t> stack{t.root};
      if (t.nodes[t.root].parent != -1) {
        return std::string(name) + " root has a parent";
      }
      while (!stack.empty()) {
        std::int32_t x = stack.back();
        stack.pop_back();
        Node const& n = t.nodes[x];
        if ((n.child[0] < 0) != (n.child[1] < 0)) {
          return std::string(name) + " node with one child";
        }
        if (n.child[0] < 0) {
          ++leaves;
          if (n.partner < 0 || other.nodes[n.partner].partner != x) {
            return std::string(name) + " leaf with broken pairing";
          }
          continue;
        }
        if (n.partner >= 0) {
          return std::string(name) + " inner node carries a partner";
        }
        for (int s = 0; s < 2; ++s) {
          if (t.nodes[n.child[s]].parent != x) {
            return std::string(name) + " parent pointer mismatch";
          }
          stack.push_back(n.child[s]);
        }
      }
      return std::nullopt;
    };
    std::uint64_t nd = 0, nr = 0;
    if (auto e = walk(_dom, _ran, "domain", nd)) {
      return e;
    }
    if (auto e = walk(_ran, _dom, "range", nr)) {
      return e;
    }
    if (nd != _leaves || nr != _leaves) {
      return "leaf count " + std::to_string(_leaves) + " but trees have " + std::to_string(nd)
             + " and " + std::to_string(nr);
    }
    for (std::size_t x = 0; x < _ran.nodes.size(); ++x) {
      Node const& n = _ran.nodes[x];
      if (n.child[0] < 0 || !_ran.is_leaf(n.child[0]) || !_ran.is_leaf(n.child[1])) {
        continue;
      }
      bool reachable = n.parent >= 0 || static_cast<std::int32_t>(x) == _ran.root;
      if (!reachable) {
        continue;
      }
      std::int32_t const da = _ran.nodes[n.child[0]].partner;
      std::int32_t const db = _ran.nodes[n.child[1]].partner;
      std::int32_t const p = _dom.nodes[da].parent;
      if (p >= 0 && _dom.nodes[p].child[0] == da && _dom.nodes[p].child[1] == db) {
        return "dipole left unreduced";
      }
    }
    return std::nullopt;
  }

}  // namespace thompson
