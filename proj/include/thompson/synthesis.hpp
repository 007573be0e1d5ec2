#ifndef THOMPSON_SYNTHESIS_HPP_
#define THOMPSON_SYNTHESIS_HPP_

#include <string>
#include <vector>

#include "element.hpp"
#include "generators.hpp"

namespace thompson {

  // How a word was obtained.
  enum class SynthesisPath { geodesic, normal_form, rotation, block_rotations };
  std::string_view name(SynthesisPath p) noexcept;

  struct Synthesis {
    GroupWord word;
    bool minimal = false;
    SynthesisPath path = SynthesisPath::geodesic;
  };

  // Exponents of the leaves of a tree, left to right: the length of the
  // maximal run of left edges ending at the leaf that does not reach the
  // right side of the tree.
  std::vector<std::uint64_t> leaf_exponents(std::vector<BinaryWord> const& leaves);

  // The word x_0^a0 x_1^a1 ... x_k^-bk ... x_0^-b0 with exponents read off the
  // domain (a) and range (b) trees, each x_i rewritten over {x0, x1}.
  // Throws Error(NotInF) outside F.
  GroupWord normal_form_word(Element const& f);

  // An order-preserving element between two trees given by their leaves in
  // left to right order.
  Element tree_map(std::vector<BinaryWord> const& domain, std::vector<BinaryWord> const& range);

  // A geodesic when a lies within distance bfs_cap, otherwise a fallback:
  // the normal form over A; one half-turn between two normal forms for
  // elements of T; a sequence of block swaps between normal forms for V.
  // The result is checked against a. Throws Error(NotInGroup) when a is
  // outside the group generated by the alphabet.
  Synthesis synthesize_word(Element const& a, Alphabet alphabet, unsigned bfs_cap);

}  // namespace thompson

#endif  // THOMPSON_SYNTHESIS_HPP_
