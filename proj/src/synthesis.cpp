#include "thompson/synthesis.hpp"

#include <algorithm>

#include "thompson/cayley.hpp"
#include "thompson/error.hpp"

namespace thompson {

  namespace {

    BinaryWord ones(std::uint64_t n) {
      return BinaryWord::repeat(true, n);
    }

    // Leaves of a right vine with k leaves hanging at p.
    void vine(BinaryWord const& p, std::uint64_t k, std::vector<BinaryWord>& out) {
      BinaryWord u = p;
      for (std::uint64_t i = 0; i + 1 < k; ++i) {
        out.push_back(u.with(false));
        u.push_back(true);
      }
      out.push_back(u);
    }

    // Appends x_k^e written over A.
    void push_x(GroupWord& w, std::uint64_t k, std::int64_t e) {
      if (e == 0) {
        return;
      }
      if (k == 0) {
        w.push(Generator::x0, e);
        return;
      }
      auto const j = static_cast<std::int64_t>(k - 1);
      w.push(Generator::x0, -j);
      w.push(Generator::x1, e);
      w.push(Generator::x0, j);
    }

    GroupWord r2_word() {
      return parse_word("x0 c1^-1");
    }

    // The half-turn {0 -> 1, 1 -> 0} copied into the node 1^t, or into 1^t 0
    // when below is set.
    GroupWord swap_at(std::uint64_t t, bool below) {
      GroupWord core(Alphabet::C);
      if (!below) {
        if (t == 0) {
          return r2_word();
        }
        core = r2_word() * parse_word("pi0") * r2_word();
      } else {
        if (t == 0) {
          return parse_word("pi0");
        }
        core = parse_word("c1 pi0 c1^-1");
      }
      GroupWord w(Alphabet::C);
      w.push(Generator::x0, -static_cast<std::int64_t>(t - 1));
      w.append(core);
      w.push(Generator::x0, static_cast<std::int64_t>(t - 1));
      return w;
    }

    std::vector<BinaryWord> domain_leaves(Element const& a) {
      std::vector<BinaryWord> out;
      out.reserve(a.num_leaves());
      for (auto const& p : a.pairs()) {
        out.push_back(p.domain);
      }
      return out;
    }

    // Rotation of T: a = (D, id, W) r2 (W', id, R) where W has a vine with
    // n - s leaves on the left and one with s leaves on the right, and W'
    // swaps them.
    GroupWord rotation_word(Element const& a) {
      auto const perm = leaf_permutation(a);
      std::uint64_t const n = perm.size();
      std::uint64_t const s = perm[0];
      auto const dom = domain_leaves(a);
      auto ran = a.range_branches();
      std::sort(ran.begin(), ran.end());
      std::vector<BinaryWord> w, w2;
      vine(BinaryWord::from_string("0"), n - s, w);
      vine(BinaryWord::from_string("1"), s, w);
      vine(BinaryWord::from_string("0"), s, w2);
      vine(BinaryWord::from_string("1"), n - s, w2);
      GroupWord out(Alphabet::B);
      out.append(normal_form_word(tree_map(dom, w)));
      out.append(r2_word());
      out.append(normal_form_word(tree_map(w2, ran)));
      return out;
    }

    // Tree used to move the leaf at position p to position t < p: leaves
    // 0..t-1 on a vine, then a node b whose left subtree holds positions
    // t..p-1 and whose right child is position p, then the rest on a vine.
    // Returns (before, after, below) where below tells whether b = 1^t 0.
    struct SwapTrees {
      std::vector<BinaryWord> before, after;
      bool below;
    };

    SwapTrees swap_trees(std::uint64_t n, std::uint64_t t, std::uint64_t p) {
      SwapTrees st;
      for (std::uint64_t i = 0; i < t; ++i) {
        BinaryWord u = ones(i).with(false);
        st.before.push_back(u);
        st.after.push_back(u);
      }
      st.below = p + 1 < n;
      BinaryWord b = ones(t);
      if (st.below) {
        b.push_back(false);
      }
      vine(b.with(false), p - t, st.before);
      st.before.push_back(b.with(true));
      st.after.push_back(b.with(false));
      vine(b.with(true), p - t, st.after);
      if (st.below) {
        vine(ones(t + 1), n - 1 - p, st.before);
        vine(ones(t + 1), n - 1 - p, st.after);
      }
      return st;
    }

    // Sorting the labels into range order with block swaps.
    GroupWord permutation_word(Element const& a) {
      auto const perm = leaf_permutation(a);
      std::uint64_t const n = perm.size();
      std::vector<std::uint64_t> target(n);  // label wanted at each position
      for (std::uint64_t i = 0; i < n; ++i) {
        target[perm[i]] = i;
      }
      std::vector<std::uint64_t> labels(n);
      for (std::uint64_t i = 0; i < n; ++i) {
        labels[i] = i;
      }
      GroupWord out(Alphabet::C);
      std::vector<BinaryWord> current = domain_leaves(a);
      for (std::uint64_t t = 0; t < n; ++t) {
        auto const p = static_cast<std::uint64_t>(
            std::find(labels.begin() + static_cast<std::ptrdiff_t>(t), labels.end(), target[t])
            - labels.begin());
        if (p == t) {
          continue;
        }
        auto st = swap_trees(n, t, p);
        out.append(normal_form_word(tree_map(current, st.before)));
        out.append(swap_at(t, st.below));
        current = std::move(st.after);
        std::rotate(labels.begin() + static_cast<std::ptrdiff_t>(t),
                    labels.begin() + static_cast<std::ptrdiff_t>(p),
                    labels.begin() + static_cast<std::ptrdiff_t>(p + 1));
      }
      auto ran = a.range_branches();
      std::sort(ran.begin(), ran.end());
      out.append(normal_form_word(tree_map(current, ran)));
      return out;
    }

  }  // namespace

  std::string_view name(SynthesisPath p) noexcept {
    switch (p) {
      case SynthesisPath::geodesic:
        return "geodesic";
      case SynthesisPath::normal_form:
        return "normal-form";
      case SynthesisPath::rotation:
        return "rotation";
      case SynthesisPath::block_rotations:
        return "block-rotations";
    }
    return "?";
  }

  std::vector<std::uint64_t> leaf_exponents(std::vector<BinaryWord> const& leaves) {
    std::vector<std::uint64_t> out;
    out.reserve(leaves.size());
    for (auto const& u : leaves) {
      std::uint64_t const t = u.trailing(false);
      if (t == 0) {
        out.push_back(0);
        continue;
      }
      // u = v 0^t with v empty or ending in 1; the run of left edges stops
      // at the node v, which is on the right side iff v is all ones
      bool const right_side = u.prefix(u.size() - t).is_constant(true);
      out.push_back(right_side ? t - 1 : t);
    }
    return out;
  }

  Element tree_map(std::vector<BinaryWord> const& domain, std::vector<BinaryWord> const& range) {
    if (domain.size() != range.size()) {
      throw Error(ErrorKind::NotABijection, "trees have different leaf counts");
    }
    std::vector<BranchPair> pairs;
    pairs.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
      pairs.push_back({domain[i], range[i]});
    }
    return reduce(TreeDiagram::from_pairs(std::move(pairs)));
  }

  GroupWord normal_form_word(Element const& f) {
    if (classify(f) != Membership::F) {
      throw Error(ErrorKind::NotInF, "normal form needs an element of F");
    }
    auto const a = leaf_exponents(domain_leaves(f));
    auto ran = f.range_branches();
    std::sort(ran.begin(), ran.end());
    auto const b = leaf_exponents(ran);
    GroupWord w(Alphabet::A);
    for (std::size_t k = 0; k < a.size(); ++k) {
      push_x(w, k, static_cast<std::int64_t>(a[k]));
    }
    for (std::size_t k = b.size(); k-- > 0;) {
      push_x(w, k, -static_cast<std::int64_t>(b[k]));
    }
    return w;
  }

  Synthesis synthesize_word(Element const& a, Alphabet alphabet, unsigned bfs_cap) {
    Membership const m = classify(a);
    if ((alphabet == Alphabet::A && m != Membership::F)
        || (alphabet == Alphabet::B && m == Membership::V_only)) {
      throw Error(ErrorKind::NotInGroup, "element is " + std::string(name(m))
                                             + ", outside the group of alphabet "
                                             + std::string(name(alphabet)));
    }
    Synthesis s;
    if (auto g = geodesic(a, alphabet, bfs_cap)) {
      s.word = std::move(*g);
      s.minimal = true;
      s.path = SynthesisPath::geodesic;
      return s;
    }
    switch (m) {
      case Membership::F:
        s.word = normal_form_word(a);
        s.path = SynthesisPath::normal_form;
        break;
      case Membership::T_only:
        s.word = rotation_word(a);
        s.path = SynthesisPath::rotation;
        break;
      case Membership::V_only:
        s.word = permutation_word(a);
        s.path = SynthesisPath::block_rotations;
        break;
    }
    s.word.set_alphabet(alphabet);
    if (!(eval_word(s.word) == a)) {
      throw Error(ErrorKind::SynthesisFailure,
                  std::string("fallback word (") + std::string(name(s.path))
                      + ") does not evaluate to the element");
    }
    return s;
  }

}  // namespace thompson
