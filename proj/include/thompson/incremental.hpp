#ifndef THOMPSON_INCREMENTAL_HPP_
#define THOMPSON_INCREMENTAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "element.hpp"

namespace thompson {

  // A reduced tree-pair diagram held as two linked binary trees whose leaves
  // are paired, for evaluating long words one letter at a time.
  //
  // Right multiplication by an element h touches only the carets of the
  // range tree that lie above the domain leaves of h, so for the generators
  // it costs O(1) regardless of the size of the diagram. Reducedness is kept
  // after every step.
  class IncrementalDiagram {
   public:
    // Branch pairs of the right factor as '0'/'1' strings.
    struct Pattern {
      std::vector<std::string> domain;
      std::vector<std::string> range;
    };
    static Pattern compile(Element const& h);

    IncrementalDiagram() : IncrementalDiagram(Element()) {}
    explicit IncrementalDiagram(Element const& g);

    // this := this * h.
    void right_multiply(Pattern const& h);

    [[nodiscard]] std::uint64_t num_leaves() const noexcept {
      return _leaves;
    }
    // Lengths of the leftmost and rightmost range branches; O(depth).
    [[nodiscard]] std::uint64_t left_depth() const;
    [[nodiscard]] std::uint64_t right_depth() const;

    [[nodiscard]] Element to_element() const;

    // Full structural recount: tree shape, pairing, leaf count, and absence
    // of dipoles. Returns a description of the first problem found.
    [[nodiscard]] std::optional<std::string> audit() const;

   private:
    struct Node {
      std::int32_t parent = -1;
      std::int32_t child[2] = {-1, -1};
      std::int32_t partner = -1;  // leaves only
    };
    struct Tree {
      std::vector<Node> nodes;
      std::vector<std::int32_t> free;
      std::int32_t root = -1;

      std::int32_t alloc();
      void release(std::int32_t x);
      [[nodiscard]] bool is_leaf(std::int32_t x) const {
        return nodes[x].child[0] < 0;
      }
    };

    void split(std::int32_t r);
    bool try_collapse(std::int32_t x);
    static std::vector<std::int32_t> build(Tree& t, std::vector<BinaryWord const*> const& sorted);
    static std::vector<BinaryWord> leaf_words(Tree const& t);

    Tree _dom;
    Tree _ran;
    std::uint64_t _leaves = 0;
  };

}  // namespace thompson

#endif  // THOMPSON_INCREMENTAL_HPP_
