#ifndef THOMPSON_ELEMENT_HPP_
#define THOMPSON_ELEMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "binary_word.hpp"

namespace thompson {

  // A finite full binary tree, stored as its set of branches (root-to-leaf
  // words) in left to right order.
  class BinaryTree {
   public:
    BinaryTree() : _branches{BinaryWord()} {}

    [[nodiscard]] std::vector<BinaryWord> const& branches() const noexcept {
      return _branches;
    }
    [[nodiscard]] std::size_t num_leaves() const noexcept {
      return _branches.size();
    }

    friend bool operator==(BinaryTree const&, BinaryTree const&) = default;

   private:
    friend BinaryTree make_tree(std::vector<BinaryWord> branches);
    explicit BinaryTree(std::vector<BinaryWord> b) : _branches(std::move(b)) {}
    std::vector<BinaryWord> _branches;
  };

  // Validates that `branches` is a complete prefix code. Throws
  // Error(PrefixViolation) if one branch is a prefix of another and
  // Error(IncompleteCode) if some infinite word has no branch as a prefix.
  BinaryTree make_tree(std::vector<BinaryWord> branches);

  // Order-insensitive check used by make_tree; exposed for parsers. The input
  // must be sorted.
  void check_complete_prefix_code(std::vector<BinaryWord> const& sorted);

  // u -> v: the leaf u of the domain tree is sent to the leaf v of the range
  // tree, i.e. the interval [u) is mapped linearly onto [v).
  struct BranchPair {
    BinaryWord domain;
    BinaryWord range;

    friend bool operator==(BranchPair const&, BranchPair const&) = default;
  };

  // A (not necessarily reduced) tree-pair diagram.
  class TreeDiagram {
   public:
    // Validates both trees and the bijection. Throws NotABijection for a
    // repeated domain or range branch, otherwise the make_tree errors.
    static TreeDiagram from_pairs(std::vector<BranchPair> pairs);

    [[nodiscard]] std::vector<BranchPair> const& pairs() const noexcept {
      return _pairs;
    }
    [[nodiscard]] std::size_t num_leaves() const noexcept {
      return _pairs.size();
    }
    [[nodiscard]] BinaryTree domain_tree() const;
    [[nodiscard]] BinaryTree range_tree() const;

   private:
    explicit TreeDiagram(std::vector<BranchPair> p) : _pairs(std::move(p)) {}
    std::vector<BranchPair> _pairs;  // sorted by domain
  };

  enum class Membership { F, T_only, V_only };
  std::string_view name(Membership m) noexcept;

  // An element of Thompson's group V, held as its reduced tree-pair diagram.
  // The branch pairs are sorted by domain branch, so equality of elements is
  // equality of the pair lists.
  class Element {
   public:
    Element() : _pairs{BranchPair{}} {}

    static Element identity() {
      return Element();
    }

    [[nodiscard]] std::vector<BranchPair> const& pairs() const noexcept {
      return _pairs;
    }
    [[nodiscard]] std::size_t num_leaves() const noexcept {
      return _pairs.size();
    }
    [[nodiscard]] bool is_identity() const noexcept {
      return _pairs.size() == 1;
    }

    // Range branches in left to right order.
    [[nodiscard]] std::vector<BinaryWord> range_branches() const;
    [[nodiscard]] bool has_range_branch(BinaryWord const& v) const;
    [[nodiscard]] bool has_branch(BinaryWord const& u, BinaryWord const& v) const;
    // Some range branch has v as a strict prefix.
    [[nodiscard]] bool range_strictly_extends(BinaryWord const& v) const;

    // Compact binary encoding used as a hash key by the Cayley oracle.
    [[nodiscard]] std::string encode() const;
    static Element decode(std::string_view bytes);

    [[nodiscard]] std::size_t hash() const noexcept;

    friend bool operator==(Element const&, Element const&) = default;

    // Callers must pass pairs that are sorted by domain, reduced and valid.
    static Element from_reduced_pairs_unchecked(std::vector<BranchPair> pairs) {
      Element e;
      e._pairs = std::move(pairs);
      return e;
    }

   private:
    std::vector<BranchPair> _pairs;
  };

  struct ElementHash {
    std::size_t operator()(Element const& e) const noexcept {
      return e.hash();
    }
  };

  // Removes dipoles until none remain. The result does not depend on the
  // order of removal; this one scans right to left.
  Element reduce(TreeDiagram const& d);

  // Removes one uniformly chosen dipole at a time. Quadratic; meant for
  // checking confluence of reduce().
  Element reduce_randomized(TreeDiagram const& d, std::mt19937_64& rng);

  // Dipoles currently present in d, as indices i such that pairs()[i] and
  // pairs()[i + 1] form a dipole.
  std::vector<std::size_t> dipoles(std::vector<BranchPair> const& sorted_pairs);

  // Composition from left to right: (a b)(x) = b(a(x)).
  Element multiply(Element const& a, Element const& b);
  Element invert(Element const& a);

  inline std::size_t num_leaves(Element const& a) noexcept {
    return a.num_leaves();
  }

  // If w = u s for a domain branch u -> v, returns v s. Throws
  // Error(Undetermined) when w is a proper prefix of a domain branch.
  BinaryWord apply_prefix(Element const& a, BinaryWord const& w);

  struct EdgeDepths {
    std::uint64_t left;   // length of the leftmost range branch
    std::uint64_t right;  // length of the rightmost range branch
    friend bool operator==(EdgeDepths const&, EdgeDepths const&) = default;
  };
  EdgeDepths edge_depths(Element const& a);

  // Leaf permutation as indices: the i-th domain leaf (left to right) goes to
  // the perm[i]-th range leaf.
  std::vector<std::size_t> leaf_permutation(Element const& a);

  Membership classify(Element const& a);

  // The copy h_[u] of h in F_[u]. Throws Error(NotInF) if h is not in F.
  Element copy_into_interval(Element const& h, BinaryWord const& u);

  bool fixes_interval_pointwise(Element const& a, BinaryWord const& u);

}  // namespace thompson

#endif  // THOMPSON_ELEMENT_HPP_
